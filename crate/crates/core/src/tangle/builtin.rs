//! Fixed representatives for the four generator families of the Y-diagram
//! group, plus surgery presentations of the ambient homology ball.

use serde::Deserialize;

use super::{LinkDiagram, Sign, StringLinkDiagram, TangleEvent};
use crate::error::{Error, Result};

use TangleEvent::{Cap, Crossing, Cup};

/// One ±1-framed surgery knot, declared split from the string link and
/// from the other surgery knots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryComponent {
    pub knot: LinkDiagram,
    pub framing: i64,
}

/// The ambient homology ball as surgery on a split union of ±1-framed
/// knots in D²×I. Splitness is declared by the format and not checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AmbientPresentation {
    pub components: Vec<SurgeryComponent>,
}

impl AmbientPresentation {
    pub fn new(components: Vec<SurgeryComponent>) -> Result<Self> {
        for c in &components {
            if c.framing != 1 && c.framing != -1 {
                return Err(Error::Precondition(format!("surgery framing {} is not ±1", c.framing)));
            }
            if c.knot.component_count() != 1 {
                return Err(Error::ComponentCount { expected: 1, found: c.knot.component_count() });
            }
        }
        Ok(AmbientPresentation { components })
    }

    pub fn empty() -> Self {
        AmbientPresentation::default()
    }

    /// Parses a JSON list of `{"knot": ..., "framing": ±1}` where the knot is
    /// a one-strand tangle (text or JSON mirror) or `{"pd": [[a,b,c,d], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Entry {
            knot: serde_json::Value,
            framing: i64,
        }
        let entries: Vec<Entry> = serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
        let components = entries
            .into_iter()
            .map(|e| Ok(SurgeryComponent { knot: knot_from_json(&e.knot)?, framing: e.framing }))
            .collect::<Result<Vec<_>>>()?;
        AmbientPresentation::new(components)
    }
}

fn knot_from_json(v: &serde_json::Value) -> Result<LinkDiagram> {
    match v {
        serde_json::Value::String(s) => StringLinkDiagram::parse(s)?.close_all(),
        serde_json::Value::Object(map) if map.contains_key("pd") => {
            let codes: Vec<[usize; 4]> =
                serde_json::from_value(map["pd"].clone()).map_err(|e| Error::Syntax(e.to_string()))?;
            LinkDiagram::from_pd(&codes)
        }
        serde_json::Value::Object(_) => StringLinkDiagram::from_json(&v.to_string())?.close_all(),
        _ => Err(Error::Syntax("knot must be a tangle string, tangle object or PD object".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// A 0-framed right-handed trefoil tied locally in strand `i`.
    TrefoilInsert { i: usize },
    /// Strands `i` and `j` forming a Whitehead link, framings 0.
    Whitehead { i: usize, j: usize },
    /// Strands `i`, `j`, `k` banded with the Borromean rings, normalized so
    /// that μ(i,j,k) = +1.
    Borromean { i: usize, j: usize, k: usize },
    /// −1 surgery on a left-handed trefoil: the Poincaré sphere.
    Poincare,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinDiagram {
    StringLink(StringLinkDiagram),
    Ambient(AmbientPresentation),
}

impl BuiltinDiagram {
    pub fn string_link(self) -> Option<StringLinkDiagram> {
        match self {
            BuiltinDiagram::StringLink(s) => Some(s),
            BuiltinDiagram::Ambient(_) => None,
        }
    }

    pub fn ambient(self) -> Option<AmbientPresentation> {
        match self {
            BuiltinDiagram::Ambient(a) => Some(a),
            BuiltinDiagram::StringLink(_) => None,
        }
    }
}

/// Builds the named representative on `n` strands. Names are
/// `trefoil_insert`, `whitehead`, `borromean`, `poincare`.
pub fn builtin(name: &str, n: usize, indices: &[usize]) -> Result<BuiltinDiagram> {
    let want = |k: usize| -> Result<()> {
        if indices.len() != k {
            return Err(Error::Index(format!("{name} takes {k} indices, got {}", indices.len())));
        }
        Ok(())
    };
    let b = match name {
        "trefoil_insert" | "trefoil" => {
            want(1)?;
            Builtin::TrefoilInsert { i: indices[0] }
        }
        "whitehead" => {
            want(2)?;
            Builtin::Whitehead { i: indices[0], j: indices[1] }
        }
        "borromean" => {
            want(3)?;
            Builtin::Borromean { i: indices[0], j: indices[1], k: indices[2] }
        }
        "poincare" => {
            want(0)?;
            Builtin::Poincare
        }
        _ => return Err(Error::Syntax(format!("unknown built-in `{name}`"))),
    };
    b.build(n)
}

/// Long right-handed trefoil on slot `p`, its writhe cancelled by three
/// negative curls.
fn trefoil_events(p: usize) -> Vec<TangleEvent> {
    let mut ev = vec![Cup { pos: p + 1 }];
    ev.extend([Crossing { pos: p, sign: Sign::Pos }; 3]);
    ev.push(Cap { pos: p + 1 });
    for _ in 0..3 {
        ev.extend([Cup { pos: p + 1 }, Crossing { pos: p, sign: Sign::Neg }, Cap { pos: p + 1 }]);
    }
    ev
}

/// Two-strand Whitehead string link on slots `p`, `p+1`: the second strand
/// is partially closed through a third braid strand on its right.
const WHITEHEAD: &str = "strands 2; u3 x1+ x2- x1+ x2- x1+ n3 u3 x2- n3";

/// Pure braid (σ₂σ₁⁻¹)³ whose closure is the Borromean rings, with
/// μ(1,2,3) = +1.
const BORROMEAN: &str = "strands 3; x2+ x1- x2+ x1- x2+ x1-";

/// Its left-right reflection, with μ(1,2,3) = −1.
const BORROMEAN_REFLECTED: &str = "strands 3; x1+ x2- x1+ x2- x1+ x2-";

fn shifted(text: &str, by: usize) -> Vec<TangleEvent> {
    let d = StringLinkDiagram::parse(text).expect("built-in word is valid");
    d.events().iter().map(|e| e.with_pos(e.pos() + by)).collect()
}

/// Conjugates `core`, acting on slots `base..base+targets.len()`, so that it
/// acts on the strands at the given increasing slots instead.
fn placed(base: usize, targets: &[usize], core: Vec<TangleEvent>) -> Vec<TangleEvent> {
    let mut gather = Vec::new();
    for (offset, &slot) in targets.iter().enumerate() {
        let to = base + offset;
        for s in (to..slot).rev() {
            gather.push(Crossing { pos: s, sign: Sign::Pos });
        }
    }
    let scatter: Vec<TangleEvent> = gather
        .iter()
        .rev()
        .map(|e| match *e {
            Crossing { pos, sign } => Crossing { pos, sign: sign.flip() },
            other => other,
        })
        .collect();
    let mut ev = gather;
    ev.extend(core);
    ev.extend(scatter);
    ev
}

impl Builtin {
    fn indices(&self) -> Vec<usize> {
        match *self {
            Builtin::TrefoilInsert { i } => vec![i],
            Builtin::Whitehead { i, j } => vec![i, j],
            Builtin::Borromean { i, j, k } => vec![i, j, k],
            Builtin::Poincare => vec![],
        }
    }

    pub fn build(&self, n: usize) -> Result<BuiltinDiagram> {
        let idx = self.indices();
        for (a, &i) in idx.iter().enumerate() {
            if i == 0 || i > n {
                return Err(Error::Index(format!("index {i} out of range 1..={n}")));
            }
            if idx[..a].contains(&i) {
                return Err(Error::Index(format!("index {i} repeated")));
            }
        }
        let events = match *self {
            Builtin::Poincare => {
                let left = StringLinkDiagram::parse("strands 1; u2 x1- x1- x1- n2").expect("valid");
                let knot = left.close_all()?;
                return Ok(BuiltinDiagram::Ambient(AmbientPresentation::new(vec![SurgeryComponent {
                    knot,
                    framing: -1,
                }])?));
            }
            Builtin::TrefoilInsert { i } => trefoil_events(i),
            Builtin::Whitehead { i, j } => {
                let (a, b) = (i.min(j), i.max(j));
                placed(a, &[a, b], shifted(WHITEHEAD, a - 1))
            }
            Builtin::Borromean { i, j, k } => {
                let mut sorted = [i, j, k];
                sorted.sort_unstable();
                let inversions = [(i, j), (i, k), (j, k)].iter().filter(|(x, y)| x > y).count();
                let word = if inversions % 2 == 0 { BORROMEAN } else { BORROMEAN_REFLECTED };
                placed(sorted[0], &sorted, shifted(word, sorted[0] - 1))
            }
        };
        Ok(BuiltinDiagram::StringLink(StringLinkDiagram::new(n, events)?))
    }
}
