//! Degree-1 classification data of string links in homology balls, the
//! degree-2 Vassiliev data of classical string links, the `t` map between
//! them and the basis relabeling for the Milnor-Johnson correspondence.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{pair_map, triple_map, AlgebraElement, Label, NormalForm};
use crate::conway::{self, DEFAULT_CROSSING_CAP};
use crate::error::{Error, Result};
use crate::milnor::{self, DEFAULT_MAGNUS_CAP};
use crate::tangle::{AmbientPresentation, Builtin, StringLinkDiagram};

/// Resource caps threaded through every invariant computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub magnus: usize,
    pub crossings: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { magnus: DEFAULT_MAGNUS_CAP, crossings: DEFAULT_CROSSING_CAP }
    }
}

/// The τ-data: μ₃ over ℤ, mod-2 Sato-Levine per pair, Arf per strand and
/// the Rochlin invariant of the ambient ball. Zero map entries are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantVector {
    pub mu3: BTreeMap<(usize, usize, usize), i64>,
    pub sl2: BTreeMap<(usize, usize), u8>,
    pub arf: Vec<u8>,
    pub rochlin: u8,
}

impl InvariantVector {
    pub fn to_json(&self) -> Value {
        json!({
            "mu3": triple_map(&self.mu3),
            "sl2": pair_map(&self.sl2),
            "arf": self.arf,
            "rochlin": self.rochlin,
        })
    }

    /// The same data as coordinates in `Λ³H ⊕ Λ²H₍₂₎ ⊕ H₍₂₎ ⊕ ℤ₂`.
    pub fn to_normal_form(&self) -> NormalForm {
        NormalForm { lambda3: self.mu3.clone(), lambda2: self.sl2.clone(), h2: self.arf.clone(), rochlin: self.rochlin }
    }
}

/// `(μ₃, V₂, φ)` of a classical string link.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VassilievVector {
    pub mu3: BTreeMap<(usize, usize, usize), i64>,
    pub v2: BTreeMap<(usize, usize), i64>,
    pub phi: Vec<i64>,
}

impl VassilievVector {
    pub fn to_json(&self) -> Value {
        json!({ "mu3": triple_map(&self.mu3), "v2": pair_map(&self.v2), "phi": self.phi })
    }
}

/// Rejects string links with a non-zero framing or linking number.
pub fn require_trivial_linking(sigma: &StringLinkDiagram) -> Result<()> {
    for (i, f) in sigma.framings().into_iter().enumerate() {
        if f != 0 {
            return Err(Error::Precondition(format!("framing of strand {} is {f}", i + 1)));
        }
    }
    let lk = sigma.linking_matrix();
    for i in 0..sigma.n() {
        for j in i + 1..sigma.n() {
            if lk[i][j] != 0 {
                return Err(Error::Precondition(format!("lk({},{}) = {}", i + 1, j + 1, lk[i][j])));
            }
        }
    }
    Ok(())
}

/// Sum of the Arf invariants of the ±1-framed surgery knots, in ℤ₂.
pub fn rochlin(ambient: &AmbientPresentation, caps: Caps) -> Result<u8> {
    let mut r = 0;
    for c in &ambient.components {
        if c.framing != 1 && c.framing != -1 {
            return Err(Error::Precondition(format!("surgery framing {} is not ±1", c.framing)));
        }
        r ^= conway::arf(&c.knot, caps.crossings)?;
    }
    Ok(r)
}

pub fn tau(sigma: &StringLinkDiagram, ambient: Option<&AmbientPresentation>, caps: Caps) -> Result<InvariantVector> {
    require_trivial_linking(sigma)?;
    let n = sigma.n();
    let mu3 = milnor::mu3_table(sigma, caps.magnus)?;
    let mut sl2 = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if conway::sl2(&sigma.close(&[i, j])?, caps.crossings)? == 1 {
                sl2.insert((i, j), 1);
            }
        }
    }
    let arf = (1..=n).map(|i| conway::arf(&sigma.close(&[i])?, caps.crossings)).collect::<Result<Vec<_>>>()?;
    let rochlin = match ambient {
        Some(a) => rochlin(a, caps)?,
        None => 0,
    };
    Ok(InvariantVector { mu3, sl2, arf, rochlin })
}

fn same_n(a: &StringLinkDiagram, b: &StringLinkDiagram) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::StrandMismatch { left: a.n(), right: b.n() });
    }
    Ok(())
}

/// Y₂-equivalence of string links in homology balls, decided by τ and μ₃.
pub fn y2_equivalent(
    a: (&StringLinkDiagram, Option<&AmbientPresentation>),
    b: (&StringLinkDiagram, Option<&AmbientPresentation>),
    caps: Caps,
) -> Result<bool> {
    same_n(a.0, b.0)?;
    Ok(tau(a.0, a.1, caps)? == tau(b.0, b.1, caps)?)
}

pub fn vassiliev_vector(sigma: &StringLinkDiagram, caps: Caps) -> Result<VassilievVector> {
    require_trivial_linking(sigma)?;
    let n = sigma.n();
    let mu3 = milnor::mu3_table(sigma, caps.magnus)?;
    let mut v2 = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let v = conway::v2(&sigma.substring(&[i, j])?, caps.crossings)?;
            if v != 0 {
                v2.insert((i, j), v);
            }
        }
    }
    let phi = (1..=n).map(|i| conway::casson(&sigma.close(&[i])?, caps.crossings)).collect::<Result<Vec<_>>>()?;
    Ok(VassilievVector { mu3, v2, phi })
}

/// C₃-equivalence of classical string links, decided by `(μ₃, V₂, φ)`.
pub fn clasp_pass_equivalent(a: &StringLinkDiagram, b: &StringLinkDiagram, caps: Caps) -> Result<bool> {
    same_n(a, b)?;
    Ok(vassiliev_vector(a, caps)? == vassiliev_vector(b, caps)?)
}

/// `Λ³H ⊕ S²H → Λ³H ⊕ Λ²H₍₂₎ ⊕ H₍₂₎`: identity on Λ³H,
/// `e_i⊗e_j ↦ ē_i∧ē_j` for `i ≠ j` and `e_i⊗e_i ↦ ē_i`.
pub fn t_map(v: &VassilievVector) -> NormalForm {
    NormalForm {
        lambda3: v.mu3.clone(),
        lambda2: v.v2.iter().filter(|(_, x)| *x % 2 != 0).map(|(&k, _)| (k, 1)).collect(),
        h2: v.phi.iter().map(|x| x.rem_euclid(2) as u8).collect(),
        rochlin: 0,
    }
}

/// Which string each handle of the surface basis goes to: `a_i ↦ e_{a[i-1]}`
/// and `b_i ↦ e_{b[i-1]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandleCorrespondence {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl HandleCorrespondence {
    /// `a_i ↦ e_{2i−1}`, `b_i ↦ e_{2i}`.
    pub fn standard(genus: usize) -> Self {
        HandleCorrespondence { a: (1..=genus).map(|i| 2 * i - 1).collect(), b: (1..=genus).map(|i| 2 * i).collect() }
    }

    pub fn new(a: Vec<usize>, b: Vec<usize>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Dimension { expected: a.len(), found: b.len() });
        }
        let c = HandleCorrespondence { a, b };
        let n = c.permutation();
        let mut sorted = n.clone();
        sorted.sort_unstable();
        if sorted != (1..=n.len()).collect::<Vec<_>>() {
            return Err(Error::Permutation(format!("{n:?} is not a permutation of 1..={}", n.len())));
        }
        Ok(c)
    }

    pub fn genus(&self) -> usize {
        self.a.len()
    }

    /// Image of the surface coordinates `[a_1..a_g, b_1..b_g]`.
    pub fn permutation(&self) -> Vec<usize> {
        self.a.iter().chain(&self.b).copied().collect()
    }
}

/// Rewrites an element over the surface basis (coordinates
/// `[a_1..a_g, b_1..b_g]`) in the string basis `e_1..e_{2g}`.
pub fn mj_relabel(x: &AlgebraElement, corr: &HandleCorrespondence) -> Result<AlgebraElement> {
    if x.n() != 2 * corr.genus() {
        return Err(Error::Dimension { expected: 2 * corr.genus(), found: x.n() });
    }
    x.relabel(&corr.permutation())
}

/// The algebra generator a built-in family represents: trefoil ↔
/// `Y[e_i;e_i;e_i]`, Whitehead ↔ `Y[e_i;e_i;e_j]`, Borromean ↔
/// `Y[e_i;e_j;e_k]`, Poincaré ↔ `Y[s;s;s]`.
pub fn algebra_generator(b: &Builtin, n: usize) -> Result<AlgebraElement> {
    let e = |i: usize| -> Result<Label> {
        if i == 0 || i > n {
            return Err(Error::Index(format!("index {i} out of range 1..={n}")));
        }
        Ok(Label::e(i, n))
    };
    let labels = match *b {
        Builtin::TrefoilInsert { i } => [e(i)?, e(i)?, e(i)?],
        Builtin::Whitehead { i, j } => [e(i)?, e(i)?, e(j)?],
        Builtin::Borromean { i, j, k } => [e(i)?, e(j)?, e(k)?],
        Builtin::Poincare => [Label::s(n), Label::s(n), Label::s(n)],
    };
    AlgebraElement::from_term(1, labels)
}

/// τ of a built-in representative, with the trivial string link standing in
/// for the ambient-only Poincaré case.
pub fn builtin_tau(b: &Builtin, n: usize, caps: Caps) -> Result<InvariantVector> {
    match b.build(n)? {
        crate::tangle::BuiltinDiagram::StringLink(s) => tau(&s, None, caps),
        crate::tangle::BuiltinDiagram::Ambient(a) => tau(&StringLinkDiagram::trivial(n), Some(&a), caps),
    }
}
