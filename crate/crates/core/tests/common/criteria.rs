//! The eight acceptance checks. Each returns a short summary on success
//! and the first counterexample on failure.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use ylink::algebra::{add, canonical_generators, coordinates, equal, normalize, AlgebraElement, Label};
use ylink::classify::{mj_relabel, t_map, tau, vassiliev_vector, Caps, HandleCorrespondence, InvariantVector};
use ylink::conway::{casson, conway, sl2, v2};
use ylink::milnor::mu3_table;
use ylink::tangle::{builtin, StringLinkDiagram};

use super::oracle::naive_conway;
use super::{corpus, random_move, random_sl1, random_word, rng};

pub type Outcome = Result<String, String>;

fn caps() -> Caps {
    Caps { crossings: 32, ..Caps::default() }
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|err| err.to_string())
}

fn zero_tau(n: usize) -> InvariantVector {
    InvariantVector { mu3: BTreeMap::new(), sl2: BTreeMap::new(), arf: vec![0; n], rochlin: 0 }
}

pub fn generator_golden_values() -> Outcome {
    let timed = |name: &str, n: usize, idx: &[usize]| -> Result<InvariantVector, String> {
        let start = std::time::Instant::now();
        let d = e(builtin(name, n, idx))?;
        let t = match d.clone().string_link() {
            Some(s) => e(tau(&s, None, Caps::default()))?,
            None => e(tau(&StringLinkDiagram::trivial(n), d.ambient().as_ref(), Caps::default()))?,
        };
        check(start.elapsed().as_secs_f64() < 1.0, || format!("{name} took {:?}", start.elapsed()))?;
        Ok(t)
    };
    let mut want = zero_tau(3);
    want.mu3.insert((1, 2, 3), 1);
    let got = timed("borromean", 3, &[1, 2, 3])?;
    check(got == want, || format!("borromean: {got:?}"))?;
    let mut want = zero_tau(2);
    want.sl2.insert((1, 2), 1);
    let got = timed("whitehead", 2, &[1, 2])?;
    check(got == want, || format!("whitehead: {got:?}"))?;
    let mut want = zero_tau(2);
    want.arf[0] = 1;
    let got = timed("trefoil_insert", 2, &[1])?;
    check(got == want, || format!("trefoil_insert: {got:?}"))?;
    for n in 1..=4 {
        let mut want = zero_tau(n);
        want.rochlin = 1;
        let got = timed("poincare", n, &[])?;
        check(got == want, || format!("poincare on {n} strands: {got:?}"))?;
    }
    Ok("four generator families".into())
}

fn random_label(rng: &mut StdRng, n: usize) -> Label {
    Label::new((0..n).map(|_| rng.gen_range(-3..=3)).collect(), rng.gen_range(0..=1))
}

fn y(a: &Label, b: &Label, c: &Label) -> AlgebraElement {
    AlgebraElement::from_term(1, [a.clone(), b.clone(), c.clone()]).unwrap()
}

pub fn algebra_rank_and_relations() -> Outcome {
    for n in 2..=5 {
        let gens = canonical_generators(n);
        let expected = n * (n - 1) * (n - 2) / 6 + n * (n - 1) / 2 + n + 1;
        check(gens.len() == expected, || format!("n={n}: {} generators", gens.len()))?;
        for (idx, g) in gens.iter().enumerate() {
            let c = coordinates(&e(normalize(g))?);
            let unit: Vec<i64> = (0..gens.len()).map(|k| (k == idx) as i64).collect();
            check(c == unit, || format!("n={n}: {g} normalizes to {c:?}"))?;
        }
    }
    let mut rng = rng(21);
    let n = 4;
    let s = Label::s(n);
    for case in 0..500 {
        let [z0, z1, z2, z3] = std::array::from_fn(|_| random_label(&mut rng, n));
        let sum = e(z0.add(&z1))?;
        let multi = e(equal(&y(&sum, &z2, &z3), &e(add(&y(&z0, &z2, &z3), &y(&z1, &z2, &z3)))?))?;
        let slide = e(equal(&y(&z1, &z1, &z2), &y(&s, &z1, &z2)))?;
        let anti = e(equal(&y(&z1, &z2, &z3), &y(&z2, &z1, &z3).neg()))?;
        let torsion = e(normalize(&y(&s, &z1, &z2).scale(2)))?.is_zero();
        check(multi && slide && anti && torsion, || {
            format!("case {case}: multilinear {multi}, slide {slide}, antisymmetric {anti}, torsion {torsion}")
        })?;
    }
    Ok("n = 2..5 bases, 500 relation instances".into())
}

pub fn congruence() -> Outcome {
    let mut rng = rng(31);
    let (mut odd, mut arf_odd) = (0, 0);
    for case in 0..120 {
        let sigma = random_sl1(&mut rng, 2, 12);
        let v = e(v2(&sigma, caps().crossings))?;
        let b = e(sl2(&e(sigma.close(&[1, 2]))?, caps().crossings))?;
        check(v.rem_euclid(2) as u8 == b, || format!("case {case} {sigma}: v2 = {v}, sl2 = {b}"))?;
        odd += b as usize;
        for i in 1..=2 {
            let k = e(sigma.close(&[i]))?;
            let phi = e(casson(&k, caps().crossings))?;
            let arf = e(ylink::conway::arf(&k, caps().crossings))?;
            check(phi.rem_euclid(2) as u8 == arf, || format!("case {case} strand {i}: casson {phi}, arf {arf}"))?;
            arf_odd += arf as usize;
        }
    }
    check(odd > 0 && arf_odd > 0, || "no case exercised an odd value".into())?;
    Ok(format!("120 diagrams, {odd} with sl2 = 1, {arf_odd} strands with arf = 1"))
}

pub fn invariance() -> Outcome {
    let mut rng = rng(41);
    let mut moves = 0;
    while moves < 240 {
        let n = rng.gen_range(2..=3);
        let mut sigma = random_sl1(&mut rng, n, 8);
        let link = |s: &StringLinkDiagram| -> Result<_, String> { e(conway(&e(s.close_all())?)) };
        let before = (link(&sigma)?, e(mu3_table(&sigma, 3))?, e(tau(&sigma, None, caps()))?);
        for _ in 0..4 {
            let (label, next) = random_move(&mut rng, &sigma, true);
            let after = (link(&next)?, e(mu3_table(&next, 3))?, e(tau(&next, None, caps()))?);
            check(after == before, || format!("{label} on {sigma}: {before:?} became {after:?}"))?;
            sigma = next;
            moves += 1;
        }
    }
    Ok(format!("{moves} moves"))
}

pub fn homomorphism() -> Outcome {
    let mut rng = rng(51);
    let n = 3;
    for case in 0..110 {
        let a = random_sl1(&mut rng, n, 8);
        let b = random_sl1(&mut rng, n, 8);
        let ab = e(a.stack(&b))?;
        let (ta, tb, tab) = (e(tau(&a, None, caps()))?, e(tau(&b, None, caps()))?, e(tau(&ab, None, caps()))?);
        let sum = e(ta.to_normal_form().add(&tb.to_normal_form()))?;
        check(sum == tab.to_normal_form(), || format!("case {case} {a} | {b}: {ta:?} + {tb:?} vs {tab:?}"))?;
        for i in 1..=n {
            let phi = |s: &StringLinkDiagram| -> Result<i64, String> { e(casson(&e(s.close(&[i]))?, caps().crossings)) };
            let (x, y, z) = (phi(&a)?, phi(&b)?, phi(&ab)?);
            check(x + y == z, || format!("case {case} strand {i}: casson {x} + {y} vs {z}"))?;
        }
    }
    Ok("110 stacked pairs".into())
}

pub fn skein_oracle() -> Outcome {
    let mut checked = 0;
    for (name, d) in corpus() {
        if d.crossing_count() > 8 {
            continue;
        }
        let got = e(conway(&d))?;
        let want = naive_conway(&d);
        check(got.coeffs() == want.as_slice(), || format!("{name}: {got:?} vs {want:?}"))?;
        checked += 1;
        let pinned: Option<&[i64]> = match name.as_str() {
            "trefoil_right.tangle" | "trefoil_left.tangle" => Some(&[1, 0, 1]),
            "figure_eight.pd.json" => Some(&[1, 0, -1]),
            _ => None,
        };
        if let Some(p) = pinned {
            check(got.coeffs() == p, || format!("{name}: {got:?}"))?;
        }
    }
    Ok(format!("{checked} corpus diagrams"))
}

pub fn vassiliev_degree() -> Outcome {
    let mut rng = rng(71);
    let mut done = 0;
    while done < 60 {
        let sigma = random_word(&mut rng, 2, 9);
        let crossings = sigma.crossing_events();
        if crossings.len() < 3 {
            continue;
        }
        let chosen: Vec<usize> = crossings.choose_multiple(&mut rng, 3).copied().collect();
        let mut total = 0;
        for mask in 0..8u32 {
            let mut d = sigma.clone();
            for (bit, &ev) in chosen.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    d = e(d.with_crossing_changed(ev))?;
                }
            }
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            total += sign * e(v2(&d, caps().crossings))?;
        }
        check(total == 0, || format!("{sigma} at events {chosen:?}: alternating sum {total}"))?;
        done += 1;
    }
    Ok(format!("{done} instances"))
}

pub fn commuting_square() -> Outcome {
    let mut rng = rng(81);
    for case in 0..110 {
        let n = rng.gen_range(2..=4);
        let sigma = random_sl1(&mut rng, n, 10);
        let v = e(vassiliev_vector(&sigma, caps()))?;
        let t = e(tau(&sigma, None, caps()))?.to_normal_form();
        check(t_map(&v) == t, || format!("case {case} {sigma}: {v:?} vs {t:?}"))?;
    }
    for case in 0..220 {
        let genus = rng.gen_range(1..=3);
        let n = 2 * genus;
        let mut perm: Vec<usize> = (1..=n).collect();
        perm.shuffle(&mut rng);
        let corr = if rng.gen_bool(0.5) {
            HandleCorrespondence::standard(genus)
        } else {
            e(HandleCorrespondence::new(perm[..genus].to_vec(), perm[genus..].to_vec()))?
        };
        let mut x = AlgebraElement::zero(n);
        for _ in 0..rng.gen_range(0..5) {
            let labels = std::array::from_fn(|_| random_label(&mut rng, n));
            e(x.add_term(rng.gen_range(-3..=3), labels))?;
        }
        let lhs = e(normalize(&e(mj_relabel(&x, &corr))?))?;
        let rhs = e(e(normalize(&x))?.relabel(&corr.permutation()))?;
        check(lhs == rhs, || format!("case {case} {x}: {lhs:?} vs {rhs:?}"))?;
    }
    Ok("110 string links, 220 algebra elements".into())
}
