//! Free-group words and their truncated Magnus expansions.
//!
//! Generators are numbered from 1. The Magnus expansion sends `x_i` to
//! `1 + X_i` in the ring of non-commutative power series over ℤ, truncated
//! above a fixed degree cap.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A word in the free group, as letters `(generator, ±1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(usize, i8)>,
}

impl Word {
    /// Builds a word, rejecting generator 0 and exponents other than ±1.
    pub fn new(letters: Vec<(usize, i8)>) -> Result<Self> {
        for &(g, e) in &letters {
            if g == 0 {
                return Err(Error::Index("generators are numbered from 1".into()));
            }
            if e != 1 && e != -1 {
                return Err(Error::Syntax(format!("exponent {e} is not ±1")));
            }
        }
        Ok(Word { letters })
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(i: usize) -> Self {
        assert!(i >= 1, "generators are numbered from 1");
        Word { letters: vec![(i, 1)] }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    /// Concatenation (not reduced).
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    pub fn reduce(&self) -> Word {
        reduce(self)
    }
}

/// Freely reduced representative of the same element.
pub fn reduce(w: &Word) -> Word {
    let mut out: Vec<(usize, i8)> = Vec::with_capacity(w.letters.len());
    for &(g, e) in &w.letters {
        match out.last() {
            Some(&(h, f)) if h == g && f == -e => {
                out.pop();
            }
            _ => out.push((g, e)),
        }
    }
    Word { letters: out }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, &(g, e)) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^-1")?;
            }
        }
        Ok(())
    }
}

/// Monomial `X_{i_1} ⋯ X_{i_d}` as its index sequence.
pub type Monomial = Vec<usize>;

/// Truncated power series: every stored monomial has length at most `cap`
/// and a non-zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MagnusSeries {
    cap: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MagnusSeries {
    pub fn zero(cap: usize) -> Self {
        MagnusSeries { cap, terms: BTreeMap::new() }
    }

    pub fn one(cap: usize) -> Self {
        Self::constant(cap, 1)
    }

    pub fn constant(cap: usize, c: i64) -> Self {
        let mut s = Self::zero(cap);
        s.add_term(Vec::new(), BigInt::from(c));
        s
    }

    /// `1 + X_i`.
    pub fn generator(i: usize, cap: usize) -> Self {
        let mut s = Self::one(cap);
        s.add_term(vec![i], BigInt::one());
        s
    }

    /// Builds a series from terms, dropping zeros and anything above `cap`.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(cap: usize, terms: I) -> Self {
        let mut s = Self::zero(cap);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, m: &[usize]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if m.len() > self.cap || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The homogeneous part of degree `d`.
    pub fn degree_part(&self, d: usize) -> MagnusSeries {
        MagnusSeries {
            cap: self.cap,
            terms: self.terms.iter().filter(|(m, _)| m.len() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Drops every monomial longer than `q` and lowers the cap to `q`.
    pub fn truncate(&self, q: usize) -> MagnusSeries {
        let cap = q.min(self.cap);
        MagnusSeries {
            cap,
            terms: self.terms.iter().filter(|(m, _)| m.len() <= cap).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &MagnusSeries) -> Result<MagnusSeries> {
        check_caps(self, other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MagnusSeries {
        MagnusSeries { cap: self.cap, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &MagnusSeries) -> Result<MagnusSeries> {
        series_mul(self, other)
    }

    pub fn inverse(&self) -> Result<MagnusSeries> {
        series_inverse(self)
    }

    /// Integer power; negative exponents need a unit constant term.
    pub fn pow(&self, e: i64) -> Result<MagnusSeries> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = MagnusSeries::one(self.cap);
        for _ in 0..e.unsigned_abs() {
            out = series_mul(&out, &base)?;
        }
        Ok(out)
    }

    /// Largest absolute coefficient, handy in diagnostics.
    pub fn height(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

fn check_caps(a: &MagnusSeries, b: &MagnusSeries) -> Result<()> {
    if a.cap != b.cap {
        return Err(Error::CapMismatch(a.cap, b.cap));
    }
    Ok(())
}

pub fn series_mul(a: &MagnusSeries, b: &MagnusSeries) -> Result<MagnusSeries> {
    check_caps(a, b)?;
    let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if ma.len() + mb.len() > a.cap {
                continue;
            }
            let mut m = ma.clone();
            m.extend_from_slice(mb);
            *acc.entry(m).or_default() += ca * cb;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(MagnusSeries { cap: a.cap, terms: acc })
}

/// Two-sided inverse of a series with constant term 1, as `Σ (1 − a)^k`.
pub fn series_inverse(a: &MagnusSeries) -> Result<MagnusSeries> {
    if !a.constant_term().is_one() {
        return Err(Error::NonUnit);
    }
    let nilpotent = MagnusSeries::one(a.cap).add(&a.neg())?;
    let mut out = MagnusSeries::one(a.cap);
    let mut power = MagnusSeries::one(a.cap);
    for _ in 0..a.cap {
        power = series_mul(&power, &nilpotent)?;
        out = out.add(&power)?;
    }
    Ok(out)
}

impl Mul for &MagnusSeries {
    type Output = MagnusSeries;
    /// Panics on a cap mismatch; use [`series_mul`] for the checked form.
    fn mul(self, rhs: &MagnusSeries) -> MagnusSeries {
        series_mul(self, rhs).expect("degree caps differ")
    }
}

/// Magnus expansion of `w` truncated above degree `q`.
pub fn magnus(w: &Word, q: usize) -> MagnusSeries {
    let mut out = MagnusSeries::one(q);
    for &(g, e) in &w.letters {
        let letter = if e == 1 { MagnusSeries::generator(g, q) } else { generator_inverse(g, q) };
        out = &out * &letter;
    }
    out
}

/// `(1 + X_g)⁻¹ = Σ (−X_g)^k`.
fn generator_inverse(g: usize, q: usize) -> MagnusSeries {
    MagnusSeries::from_terms(q, (0..=q).map(|k| (vec![g; k], BigInt::from(if k % 2 == 0 { 1 } else { -1 }))))
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then(a.cmp(b)));
        for (k, (m, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for i in m {
                write!(f, "X{i}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[(usize, i8)]) -> Word {
        Word::new(letters.to_vec()).unwrap()
    }

    fn series(cap: usize, terms: &[(&[usize], i64)]) -> MagnusSeries {
        MagnusSeries::from_terms(cap, terms.iter().map(|(m, c)| (m.to_vec(), BigInt::from(*c))))
    }

    #[test]
    fn free_reduction() {
        assert!(reduce(&w(&[(1, 1), (1, -1)])).is_empty());
        assert_eq!(reduce(&w(&[(1, 1), (2, 1), (2, -1), (1, 1)])), w(&[(1, 1), (1, 1)]));
        let r = w(&[(1, 1), (2, -1), (1, 1)]);
        assert_eq!(reduce(&r), r);
        assert_eq!(reduce(&w(&[(2, 1), (1, 1), (1, -1), (2, -1), (3, 1)])), w(&[(3, 1)]));
    }

    #[test]
    fn expansions() {
        assert_eq!(magnus(&Word::generator(1), 2), series(2, &[(&[], 1), (&[1], 1)]));
        assert_eq!(magnus(&w(&[(1, -1)]), 2), series(2, &[(&[], 1), (&[1], -1), (&[1, 1], 1)]));
        let c = Word::commutator(&Word::generator(1), &Word::generator(2));
        assert_eq!(magnus(&c, 2), series(2, &[(&[], 1), (&[1, 2], 1), (&[2, 1], -1)]));
        assert_eq!(magnus(&c, 2).to_string(), "1 + X1X2 - X2X1");
    }

    #[test]
    fn inverses() {
        let a = MagnusSeries::generator(1, 2);
        let b = series(2, &[(&[], 1), (&[1], -1), (&[1, 1], 1)]);
        assert_eq!(series_mul(&a, &b).unwrap(), MagnusSeries::one(2));
        assert_eq!(series_inverse(&MagnusSeries::one(4)).unwrap(), MagnusSeries::one(4));
        assert_eq!(series_mul(&a, &MagnusSeries::one(2)).unwrap(), a);
        assert!(matches!(series_inverse(&MagnusSeries::constant(2, 2)), Err(Error::NonUnit)));
        assert!(matches!(series_mul(&a, &MagnusSeries::one(3)), Err(Error::CapMismatch(2, 3))));
        let x = series(3, &[(&[], 1), (&[1], 2), (&[2, 1], -3), (&[1, 2, 2], 5)]);
        let xi = x.inverse().unwrap();
        assert_eq!(&x * &xi, MagnusSeries::one(3));
        assert_eq!(&xi * &x, MagnusSeries::one(3));
        assert_eq!(x.pow(-2).unwrap(), &xi * &xi);
    }

    #[test]
    fn word_rejects_bad_letters() {
        assert!(Word::new(vec![(0, 1)]).is_err());
        assert!(Word::new(vec![(1, 2)]).is_err());
        assert_eq!(w(&[(1, 1), (2, -1)]).to_string(), "x1 x2^-1");
    }
}
