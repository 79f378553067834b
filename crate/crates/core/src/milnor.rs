//! Wirtinger solving in the truncated Magnus ring, longitudes and Milnor's
//! triple linking numbers.
//!
//! Every arc of strand `i` is expressed in the bottom meridians. Passing
//! under an arc carrying `g` at a crossing of oriented sign `ε` conjugates:
//! `next = g^{-ε} · prev · g^{ε}`. The longitude of strand `i` is the
//! product of the `g^{ε}` met in order, corrected by `(1 + X_i)^{-f_i}` on
//! the right so its `X_i` coefficient vanishes.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::freegroup::MagnusSeries;
use crate::tangle::StringLinkDiagram;

pub const DEFAULT_MAGNUS_CAP: usize = 3;

/// Converged arc series, indexed by 0-based strand and arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcAssignment {
    q: usize,
    arcs: Vec<Vec<MagnusSeries>>,
    sweeps: usize,
}

impl ArcAssignment {
    pub fn cap(&self) -> usize {
        self.q
    }

    /// Series of arc `arc` (0 = bottom) of strand `strand` (1-based).
    pub fn arc(&self, strand: usize, arc: usize) -> &MagnusSeries {
        &self.arcs[strand - 1][arc]
    }

    pub fn arc_count(&self, strand: usize) -> usize {
        self.arcs[strand - 1].len()
    }

    /// Sweeps used, including the final one that changed nothing.
    pub fn sweeps(&self) -> usize {
        self.sweeps
    }
}

pub fn wirtinger_solve(sigma: &StringLinkDiagram, q: usize) -> Result<ArcAssignment> {
    if q == 0 {
        return Err(Error::Precondition("Magnus degree cap must be at least 1".into()));
    }
    let st = sigma.structure();
    let n = sigma.n();
    let mut arcs: Vec<Vec<MagnusSeries>> =
        (0..n).map(|i| vec![MagnusSeries::generator(i + 1, q); st.arc_count(i)]).collect();
    for sweep in 1..=q + 2 {
        let mut changed = false;
        for i in 0..n {
            for (a, &c) in st.under_passes[i].iter().enumerate() {
                let cr = &st.crossings[c];
                let g = &arcs[cr.over.0][cr.over.1];
                let (left, right) = match cr.sign.value() {
                    1 => (g.inverse()?, g.clone()),
                    _ => (g.clone(), g.inverse()?),
                };
                let next = &(&left * &arcs[i][a]) * &right;
                if next != arcs[i][a + 1] {
                    arcs[i][a + 1] = next;
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(ArcAssignment { q, arcs, sweeps: sweep });
        }
    }
    Err(Error::NonConvergence(q + 2))
}

/// Framing-corrected longitudes with framings and the linking matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongitudeData {
    pub longitudes: Vec<MagnusSeries>,
    pub framings: Vec<i64>,
    pub linking: Vec<Vec<i64>>,
}

impl LongitudeData {
    /// Longitude of strand `i` (1-based).
    pub fn longitude(&self, i: usize) -> &MagnusSeries {
        &self.longitudes[i - 1]
    }

    pub fn lk(&self, i: usize, j: usize) -> i64 {
        self.linking[i - 1][j - 1]
    }

    /// Fails unless all framings and linking numbers vanish.
    pub fn require_trivial_linking(&self) -> Result<()> {
        let n = self.framings.len();
        for i in 0..n {
            if self.framings[i] != 0 {
                return Err(Error::Precondition(format!("framing of strand {} is {}", i + 1, self.framings[i])));
            }
            for j in i + 1..n {
                if self.linking[i][j] != 0 {
                    return Err(Error::Precondition(format!("lk({},{}) = {}", i + 1, j + 1, self.linking[i][j])));
                }
            }
        }
        Ok(())
    }
}

pub fn longitudes(sigma: &StringLinkDiagram, q: usize) -> Result<LongitudeData> {
    let arcs = wirtinger_solve(sigma, q)?;
    let st = sigma.structure();
    let n = sigma.n();
    let mut framings = vec![0; n];
    let mut linking = vec![vec![0; n]; n];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut lambda = MagnusSeries::one(q);
        for &c in &st.under_passes[i] {
            let cr = &st.crossings[c];
            let g = &arcs.arcs[cr.over.0][cr.over.1];
            lambda = &lambda * &g.pow(cr.sign.value())?;
            if cr.over.0 == i {
                framings[i] += cr.sign.value();
            } else {
                linking[i][cr.over.0] += cr.sign.value();
            }
        }
        let correction = MagnusSeries::generator(i + 1, q).pow(-framings[i])?;
        out.push(&lambda * &correction);
    }
    Ok(LongitudeData { longitudes: out, framings, linking })
}

/// The longitudes `(λ_1, …, λ_n)` of the Artin action `x_i ↦ λ_i⁻¹ x_i λ_i`.
pub fn artin_action(sigma: &StringLinkDiagram, q: usize) -> Result<Vec<MagnusSeries>> {
    Ok(longitudes(sigma, q)?.longitudes)
}

fn check_triple(n: usize, i: usize, j: usize, k: usize) -> Result<()> {
    for x in [i, j, k] {
        if x == 0 || x > n {
            return Err(Error::Index(format!("index {x} out of range 1..={n}")));
        }
    }
    if i == j || j == k || i == k {
        return Err(Error::Index(format!("indices ({i},{j},{k}) are not distinct")));
    }
    Ok(())
}

fn coefficient(lambda: &MagnusSeries, i: usize, j: usize) -> Result<i64> {
    lambda
        .coeff(&[i, j])
        .to_i64()
        .ok_or_else(|| Error::ResourceLimit("triple linking number exceeds 64 bits".into()))
}

/// μ(i,j,k): the coefficient of `X_i X_j` in `λ_k`, at the default cap.
pub fn mu3(sigma: &StringLinkDiagram, i: usize, j: usize, k: usize) -> Result<i64> {
    mu3_with_cap(sigma, i, j, k, DEFAULT_MAGNUS_CAP)
}

pub fn mu3_with_cap(sigma: &StringLinkDiagram, i: usize, j: usize, k: usize, q: usize) -> Result<i64> {
    check_triple(sigma.n(), i, j, k)?;
    if q < 2 {
        return Err(Error::Precondition("triple linking numbers need Magnus cap at least 2".into()));
    }
    let data = longitudes(sigma, q)?;
    data.require_trivial_linking()?;
    coefficient(data.longitude(k), i, j)
}

/// All μ(i,j,k) with `i < j < k`, zeros omitted.
pub fn mu3_table(sigma: &StringLinkDiagram, q: usize) -> Result<BTreeMap<(usize, usize, usize), i64>> {
    if q < 2 {
        return Err(Error::Precondition("triple linking numbers need Magnus cap at least 2".into()));
    }
    let data = longitudes(sigma, q)?;
    data.require_trivial_linking()?;
    let n = sigma.n();
    let mut out = BTreeMap::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let v = coefficient(data.longitude(k), i, j)?;
                if v != 0 {
                    out.insert((i, j, k), v);
                }
            }
        }
    }
    Ok(out)
}
