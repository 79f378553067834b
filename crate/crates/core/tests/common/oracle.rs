//! Conway polynomial oracles that share no code with the library's skein
//! engine beyond the PD data structure.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use ylink::tangle::{LinkDiagram, Sign};

/// Polynomial in z as a coefficient vector, trimmed.
pub type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn times_z(a: &Poly, sign: i64) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0];
    out.extend(a.iter().map(|x| x * sign));
    out
}

/// First crossing met as an under-crossing before it is met as an
/// over-crossing. Components are taken in order of decreasing largest arc,
/// each starting from its largest arc.
fn first_ascending(d: &LinkDiagram) -> Option<usize> {
    let mut enter: HashMap<usize, (usize, bool, usize)> = HashMap::new();
    for (idx, c) in d.crossings().iter().enumerate() {
        enter.insert(c.under_in(), (idx, true, c.under_out()));
        enter.insert(c.over_in(), (idx, false, c.over_out()));
    }
    let mut comps = d.components();
    comps.sort_by_key(|c| std::cmp::Reverse(*c.iter().max().unwrap()));
    let mut seen = vec![false; d.crossings().len()];
    for comp in comps {
        let start = *comp.iter().max().unwrap();
        let mut arc = start;
        loop {
            let (idx, under, next) = enter[&arc];
            if !seen[idx] {
                if under {
                    return Some(idx);
                }
                seen[idx] = true;
            }
            arc = next;
            if arc == start {
                break;
            }
        }
    }
    None
}

/// Unmemoized skein recursion without curl removal.
pub fn naive_conway(d: &LinkDiagram) -> Poly {
    match first_ascending(d) {
        None => {
            if d.component_count() == 1 {
                vec![1]
            } else {
                Vec::new()
            }
        }
        Some(idx) => {
            let sign = d.crossings()[idx].sign;
            let switched = naive_conway(&d.switch(idx));
            let smoothed = naive_conway(&d.smooth(idx));
            add(&switched, &times_z(&smoothed, if sign == Sign::Pos { 1 } else { -1 }))
        }
    }
}

fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut out = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            out = -out;
        }
        let pivot = m[col][col].clone();
        out *= &pivot;
        for r in col + 1..n {
            let f = &m[r][col] / &pivot;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    out
}

/// Coefficients of the polynomial through the given points.
fn interpolate(points: &[(i64, BigRational)]) -> Vec<BigRational> {
    let n = points.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from_integer(BigInt::from(*xj));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        for (k, b) in basis.iter().enumerate() {
            out[k] += b * yi / &denom;
        }
    }
    out
}

/// Alexander polynomial of a knot from a Wirtinger presentation via Fox
/// calculus, converted to the Conway variable. `None` for links.
pub fn alexander_conway(d: &LinkDiagram) -> Option<Poly> {
    if d.component_count() != 1 {
        return None;
    }
    let cs = d.crossings();
    if cs.is_empty() {
        return Some(vec![1]);
    }
    // generators: arcs merged through over-passes
    let mut parent: HashMap<usize, usize> = HashMap::new();
    fn find(p: &HashMap<usize, usize>, a: usize) -> usize {
        let mut x = a;
        while let Some(&y) = p.get(&x) {
            if y == x {
                break;
            }
            x = y;
        }
        x
    }
    for c in cs {
        for a in c.arcs {
            parent.entry(a).or_insert(a);
        }
    }
    for c in cs {
        let (a, b) = (find(&parent, c.over_in()), find(&parent, c.over_out()));
        if a != b {
            parent.insert(a, b);
        }
    }
    let mut classes: Vec<usize> = parent.keys().map(|&a| find(&parent, a)).collect();
    classes.sort_unstable();
    classes.dedup();
    let index: HashMap<usize, usize> = classes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let g = classes.len();
    let rows: Vec<(Sign, usize, usize, usize)> = cs
        .iter()
        .map(|c| {
            let k = index[&find(&parent, c.over_in())];
            let i = index[&find(&parent, c.under_in())];
            let j = index[&find(&parent, c.under_out())];
            (c.sign, k, i, j)
        })
        .collect();
    let size = rows.len().min(g) - 1;
    let eval = |t: i64| -> BigRational {
        let t = BigRational::from_integer(BigInt::from(t));
        let one = BigRational::one();
        let mut m = vec![vec![BigRational::zero(); g]; rows.len()];
        for (r, &(sign, k, i, j)) in rows.iter().enumerate() {
            match sign {
                Sign::Pos => {
                    m[r][k] += &one - &t;
                    m[r][i] += &t;
                    m[r][j] -= &one;
                }
                Sign::Neg => {
                    m[r][k] += &t - &one;
                    m[r][i] += &one;
                    m[r][j] -= &t;
                }
            }
        }
        let minor: Vec<Vec<BigRational>> = m[1..=size].iter().map(|row| row[1..=size].to_vec()).collect();
        det(minor)
    };
    let points: Vec<(i64, BigRational)> = (2..2 + rows.len() as i64 + 2).map(|t| (t, eval(t))).collect();
    let coeffs = interpolate(&points);
    assert!(coeffs.iter().all(|c| c.is_integer()), "interpolation left a fraction");
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| c.to_integer()).collect();
    while ints.last().is_some_and(|c| c.is_zero()) {
        ints.pop();
    }
    let lead = ints.iter().position(|c| !c.is_zero())?;
    let ints: Vec<i64> = ints[lead..].iter().map(|c| c.to_i64().unwrap()).collect();
    let deg = ints.len() - 1;
    assert!(deg % 2 == 0, "knot Alexander polynomial has odd span");
    let half = deg / 2;
    let sign = if ints.iter().sum::<i64>() < 0 { -1 } else { 1 };
    // symmetric form: c_0 + Σ_m c_m (t^m + t^{-m})
    let sym: Vec<i64> = (0..=half).map(|m| sign * ints[half + m]).collect();
    // t^m + t^{-m} as a polynomial in u = t + 1/t, then u = z² + 2
    let mut cheb: Vec<Vec<i64>> = vec![vec![2], vec![0, 1]];
    for m in 2..=half.max(1) {
        let mut next = vec![0; m + 1];
        for (k, c) in cheb[m - 1].iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, c) in cheb[m - 2].iter().enumerate() {
            next[k] -= c;
        }
        cheb.push(next);
    }
    let mut in_u = vec![0i64; half + 1];
    in_u[0] += sym[0];
    for m in 1..=half {
        for (k, c) in cheb[m].iter().enumerate() {
            in_u[k] += sym[m] * c;
        }
    }
    // substitute u = z² + 2
    let mut out = vec![0i64; 2 * half + 1];
    let mut power = vec![1i64];
    for c in &in_u {
        for (k, p) in power.iter().enumerate() {
            out[k] += c * p;
        }
        let mut next = vec![0; power.len() + 2];
        for (k, p) in power.iter().enumerate() {
            next[k] += 2 * p;
            next[k + 2] += p;
        }
        power = next;
    }
    Some(trim(out))
}
