//! Conway polynomial by skein recursion, and the invariants read from its
//! low coefficients: Casson (a₂), Arf (a₂ mod 2), Sato-Levine (a₃) and V₂.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::tangle::{LinkDiagram, PdCrossing, Sign, StringLinkDiagram};

pub const DEFAULT_CROSSING_CAP: usize = 20;

/// Integer polynomial a₀ + a₁z + a₂z² + … with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConwayPoly {
    coeffs: Vec<i64>,
}

impl ConwayPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ConwayPoly { coeffs }
    }

    pub fn zero() -> Self {
        ConwayPoly::default()
    }

    pub fn one() -> Self {
        ConwayPoly { coeffs: vec![1] }
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_shifted(&mut self, other: &ConwayPoly, sign: i64) {
        if self.coeffs.len() < other.coeffs.len() + 1 {
            self.coeffs.resize(other.coeffs.len() + 1, 0);
        }
        for (k, &c) in other.coeffs.iter().enumerate() {
            self.coeffs[k + 1] += sign * c;
        }
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }
}

impl fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            if !first {
                write!(f, " ")?;
            }
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "z")?,
                (1, m) => write!(f, "{m}z")?,
                (k, 1) => write!(f, "z^{k}")?,
                (k, m) => write!(f, "{m}z^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Conway polynomial with the default crossing cap.
pub fn conway(link: &LinkDiagram) -> Result<ConwayPoly> {
    conway_with_cap(link, DEFAULT_CROSSING_CAP)
}

pub fn conway_with_cap(link: &LinkDiagram, cap: usize) -> Result<ConwayPoly> {
    if link.crossing_count() > cap {
        return Err(Error::ResourceLimit(format!(
            "{} crossings exceeds the cap of {cap}",
            link.crossing_count()
        )));
    }
    let mut memo = HashMap::new();
    Ok(skein(link.clone(), &mut memo))
}

type Memo = HashMap<Vec<usize>, ConwayPoly>;

fn skein(d: LinkDiagram, memo: &mut Memo) -> ConwayPoly {
    let d = remove_curls(d);
    let comps = d.components();
    let total = comps.len() + d.free_loops();
    if d.crossing_count() == 0 {
        return if total == 1 { ConwayPoly::one() } else { ConwayPoly::zero() };
    }
    if d.free_loops() > 0 || !is_connected(&d) {
        return ConwayPoly::zero();
    }
    let key = canonical_key(&d, &comps);
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let result = match first_ascending(&d, &comps) {
        None => {
            if total == 1 {
                ConwayPoly::one()
            } else {
                ConwayPoly::zero()
            }
        }
        Some(idx) => {
            // ∇(L₊) − ∇(L₋) = z∇(L₀)
            let sign = d.crossings()[idx].sign;
            let mut p = skein(d.switch(idx), memo);
            let p0 = skein(d.smooth(idx), memo);
            p.add_shifted(&p0, sign.value());
            p
        }
    };
    memo.insert(key, result.clone());
    result
}

/// First crossing met as an under-crossing before being met as an
/// over-crossing, traversing components in order from their smallest arcs.
fn first_ascending(d: &LinkDiagram, comps: &[Vec<usize>]) -> Option<usize> {
    let heads = d.heads();
    let mut seen = vec![false; d.crossing_count()];
    for comp in comps {
        for a in comp {
            let h = heads[a];
            if !seen[h.crossing] {
                if h.under {
                    return Some(h.crossing);
                }
                seen[h.crossing] = true;
            }
        }
    }
    None
}

/// Removes Reidemeister I curls (crossings with two cyclically adjacent
/// ports on the same arc).
fn remove_curls(mut d: LinkDiagram) -> LinkDiagram {
    loop {
        let found = d.crossings().iter().enumerate().find_map(|(i, c)| {
            (0..4).find(|&p| c.arcs[p] == c.arcs[(p + 1) % 4]).map(|p| (i, p))
        });
        let Some((idx, p)) = found else { return d };
        let c = d.crossings()[idx];
        let x = c.arcs[(p + 2) % 4];
        let y = c.arcs[(p + 3) % 4];
        let mut rest: Vec<PdCrossing> =
            d.crossings().iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, c)| *c).collect();
        let mut free = d.free_loops();
        if x == y {
            // a figure-eight curl that is a whole component
            free += 1;
        } else {
            let (keep, drop) = (x.min(y), x.max(y));
            for c in &mut rest {
                for a in &mut c.arcs {
                    if *a == drop {
                        *a = keep;
                    }
                }
            }
        }
        d = LinkDiagram::from_parts_unchecked(rest, free);
    }
}

fn is_connected(d: &LinkDiagram) -> bool {
    let n = d.crossing_count();
    if n == 0 {
        return true;
    }
    let mut by_arc: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, c) in d.crossings().iter().enumerate() {
        for a in c.arcs {
            by_arc.entry(a).or_default().push(i);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for a in d.crossings()[i].arcs {
            for &j in &by_arc[&a] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Relabels arcs by traversal order (components in order, each from a
/// chosen starting arc) and lists the crossings in sorted order. Knots use
/// the lexicographically least code over all starting arcs.
fn canonical_key(d: &LinkDiagram, comps: &[Vec<usize>]) -> Vec<usize> {
    let code_for = |starts: &[usize]| -> Vec<usize> {
        let mut label: HashMap<usize, usize> = HashMap::new();
        let mut next = 0;
        for (comp, &s) in comps.iter().zip(starts) {
            let len = comp.len();
            for k in 0..len {
                label.insert(comp[(s + k) % len], next);
                next += 1;
            }
        }
        let mut rows: Vec<[usize; 5]> = d
            .crossings()
            .iter()
            .map(|c| {
                let a = c.arcs.map(|x| label[&x]);
                [a[0], a[1], a[2], a[3], (c.sign == Sign::Pos) as usize]
            })
            .collect();
        rows.sort_unstable();
        let mut code = Vec::with_capacity(rows.len() * 5 + comps.len() + 1);
        code.push(d.free_loops());
        code.extend(comps.iter().map(|c| c.len()));
        code.extend(rows.into_iter().flatten());
        code
    };
    if comps.len() == 1 {
        (0..comps[0].len()).map(|s| code_for(&[s])).min().unwrap()
    } else {
        code_for(&vec![0; comps.len()])
    }
}

fn require_components(link: &LinkDiagram, k: usize) -> Result<()> {
    let found = link.component_count();
    if found != k {
        return Err(Error::ComponentCount { expected: k, found });
    }
    Ok(())
}

/// The Casson knot invariant: a₂ of the Conway polynomial.
pub fn casson(knot: &LinkDiagram, cap: usize) -> Result<i64> {
    require_components(knot, 1)?;
    Ok(conway_with_cap(knot, cap)?.coeff(2))
}

/// Arf invariant of a knot, as a₂ mod 2.
pub fn arf(knot: &LinkDiagram, cap: usize) -> Result<u8> {
    Ok(casson(knot, cap)?.rem_euclid(2) as u8)
}

/// Sato-Levine invariant of a two-component link with vanishing linking
/// number, as a₃ of the Conway polynomial.
pub fn sato_levine(link: &LinkDiagram, cap: usize) -> Result<i64> {
    require_components(link, 2)?;
    if link.free_loops() == 0 {
        let lk = link.linking_number(0, 1);
        if lk != 0 {
            return Err(Error::Precondition(format!("linking number of the two components is {lk}, not 0")));
        }
    }
    Ok(conway_with_cap(link, cap)?.coeff(3))
}

/// Mod-2 Sato-Levine invariant.
pub fn sl2(link: &LinkDiagram, cap: usize) -> Result<u8> {
    Ok(sato_levine(link, cap)?.rem_euclid(2) as u8)
}

/// V₂(σ) = φ(plat closure) − φ(σ̂₁) − φ(σ̂₂) for a two-string link.
pub fn v2(sigma: &StringLinkDiagram, cap: usize) -> Result<i64> {
    if sigma.n() != 2 {
        return Err(Error::StrandCount { expected: 2, found: sigma.n() });
    }
    let plat = casson(&sigma.plat_close()?, cap)?;
    let first = casson(&sigma.close(&[1])?, cap)?;
    let second = casson(&sigma.close(&[2])?, cap)?;
    Ok(plat - first - second)
}
