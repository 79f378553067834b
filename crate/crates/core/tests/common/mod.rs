#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use ylink::tangle::{apply_move, builtin, Move, Sign, Site, StringLinkDiagram, TangleEvent};

use TangleEvent::{Cap, Crossing, Cup};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn random_sign(rng: &mut StdRng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

pub fn widths(sigma: &StringLinkDiagram) -> Vec<usize> {
    let mut w = sigma.n() as isize;
    let mut out = vec![w as usize];
    for e in sigma.events() {
        w += e.width_delta();
        out.push(w as usize);
    }
    out
}

/// A random valid event word on `n` strands with at most `max_crossings`
/// crossings: cups, crossings and caps in random order, retried until the
/// string-link condition holds.
pub fn random_word(rng: &mut StdRng, n: usize, max_crossings: usize) -> StringLinkDiagram {
    loop {
        let mut w = n;
        let mut events = Vec::new();
        let mut crossings = 0;
        let steps = rng.gen_range(1..=max_crossings + 4);
        for _ in 0..steps {
            let roll: f64 = rng.gen();
            if roll < 0.3 && w < n + 4 {
                events.push(Cup { pos: rng.gen_range(1..=w + 1) });
                w += 2;
            } else if roll < 0.5 && w > n && w >= 2 {
                events.push(Cap { pos: rng.gen_range(1..w) });
                w -= 2;
            } else if w >= 2 && crossings < max_crossings {
                events.push(Crossing { pos: rng.gen_range(1..w), sign: random_sign(rng) });
                crossings += 1;
            }
        }
        while w > n {
            events.push(Cap { pos: rng.gen_range(1..w) });
            w -= 2;
        }
        if let Ok(d) = StringLinkDiagram::new(n, events) {
            return d;
        }
    }
}

/// Full twists between strands `i < j` (slots at the top of a string
/// link), changing lk(i,j) by `count`.
pub fn twist_events(i: usize, j: usize, count: i64) -> Vec<TangleEvent> {
    let mut gather: Vec<TangleEvent> = ((i + 1)..j).rev().map(|s| Crossing { pos: s, sign: Sign::Pos }).collect();
    let scatter: Vec<TangleEvent> = gather
        .iter()
        .rev()
        .map(|e| match *e {
            Crossing { pos, sign } => Crossing { pos, sign: sign.flip() },
            other => other,
        })
        .collect();
    let twist_sign = if count > 0 { Sign::Pos } else { Sign::Neg };
    for _ in 0..count.unsigned_abs() {
        gather.extend([Crossing { pos: i, sign: twist_sign }, Crossing { pos: i, sign: twist_sign }]);
    }
    gather.extend(scatter);
    gather
}

/// A curl on the strand at top slot `i` with framing contribution `sign`.
pub fn kink_events(i: usize, sign: Sign) -> Vec<TangleEvent> {
    vec![Cup { pos: i + 1 }, Crossing { pos: i, sign }, Cap { pos: i + 1 }]
}

/// Appends twists and curls so that all linking numbers and framings
/// vanish.
pub fn make_trivially_linked(sigma: &StringLinkDiagram) -> StringLinkDiagram {
    let n = sigma.n();
    let mut events = sigma.events().to_vec();
    let lk = sigma.linking_matrix();
    for i in 0..n {
        for j in i + 1..n {
            if lk[i][j] != 0 {
                events.extend(twist_events(i + 1, j + 1, -lk[i][j]));
            }
        }
    }
    let fixed = StringLinkDiagram::new(n, events).expect("twists keep validity");
    let mut events = fixed.events().to_vec();
    for (i, f) in fixed.framings().into_iter().enumerate() {
        let sign = if f > 0 { Sign::Neg } else { Sign::Pos };
        for _ in 0..f.unsigned_abs() {
            events.extend(kink_events(i + 1, sign));
        }
    }
    let out = StringLinkDiagram::new(n, events).expect("curls keep validity");
    debug_assert!(out.framings().iter().all(|&f| f == 0));
    out
}

/// A random built-in representative on `n` strands, possibly mirrored.
pub fn random_builtin(rng: &mut StdRng, n: usize) -> StringLinkDiagram {
    let mut idx: Vec<usize> = (1..=n).collect();
    idx.shuffle(rng);
    let choice = rng.gen_range(0..3);
    let d = match choice {
        0 => builtin("trefoil_insert", n, &idx[..1]),
        1 if n >= 2 => builtin("whitehead", n, &idx[..2]),
        _ if n >= 3 => builtin("borromean", n, &idx[..3]),
        _ => builtin("trefoil_insert", n, &idx[..1]),
    };
    let d = d.unwrap().string_link().unwrap();
    if rng.gen_bool(0.5) {
        mirror(&d)
    } else {
        d
    }
}

pub fn mirror(sigma: &StringLinkDiagram) -> StringLinkDiagram {
    let events = sigma
        .events()
        .iter()
        .map(|e| match *e {
            Crossing { pos, sign } => Crossing { pos, sign: sign.flip() },
            other => other,
        })
        .collect();
    StringLinkDiagram::new(sigma.n(), events).unwrap()
}

/// A random string link with vanishing framings and linking numbers and at
/// most `max_crossings` crossings, sometimes built around a generator.
pub fn random_sl1(rng: &mut StdRng, n: usize, max_crossings: usize) -> StringLinkDiagram {
    loop {
        let budget = rng.gen_range(2..=max_crossings / 2 + 2);
        let base = random_word(rng, n, budget);
        let d = if rng.gen_bool(0.5) {
            let b = random_builtin(rng, n);
            if rng.gen_bool(0.5) { base.stack(&b) } else { b.stack(&base) }.unwrap()
        } else {
            base
        };
        let d = make_trivially_linked(&d);
        if d.crossing_count() <= max_crossings {
            return d;
        }
    }
}

fn legal_removal_sites(sigma: &StringLinkDiagram, mv: Move) -> Vec<Site> {
    (0..sigma.events().len())
        .map(|event| Site { event, slot: 1 })
        .filter(|&site| apply_move(sigma, mv, site).is_ok())
        .collect()
}

/// A random move applied at a random legal site. With `framing_safe`, a
/// curl is inserted together with an opposite curl at the same site.
pub fn random_move(rng: &mut StdRng, sigma: &StringLinkDiagram, framing_safe: bool) -> (String, StringLinkDiagram) {
    let w = widths(sigma);
    loop {
        let t = rng.gen_range(0..=sigma.events().len());
        let slot = rng.gen_range(1..=w[t]);
        let site = Site { event: t, slot };
        let kind = rng.gen_range(0..8);
        let result = match kind {
            0 => {
                let sign = random_sign(rng);
                let left = rng.gen_bool(0.5);
                let once = apply_move(sigma, Move::R1Insert { sign, left }, site);
                if framing_safe {
                    once.and_then(|d| apply_move(&d, Move::R1Insert { sign: sign.flip(), left: !left }, site))
                } else {
                    once
                }
                .map(|d| (format!("R1Insert({sign:?},{left}) at {site:?}"), d))
            }
            1 => apply_move(sigma, Move::R2Insert { sign: random_sign(rng) }, site).map(|d| (format!("R2Insert at {site:?}"), d)),
            2 => apply_move(sigma, Move::ZigzagInsert { left: rng.gen_bool(0.5) }, site)
                .map(|d| (format!("ZigzagInsert at {site:?}"), d)),
            3..=7 => {
                let mv = [Move::R1Remove, Move::R2Remove, Move::R3, Move::ZigzagRemove, Move::FarCommute][kind - 3];
                if framing_safe && mv == Move::R1Remove {
                    continue;
                }
                let sites = legal_removal_sites(sigma, mv);
                match sites.choose(rng) {
                    Some(&s) => apply_move(sigma, mv, s).map(|d| (format!("{mv:?} at {s:?}"), d)),
                    None => continue,
                }
            }
            _ => unreachable!(),
        };
        if let Ok((label, d)) = result {
            let d = StringLinkDiagram::new(d.n(), d.events().to_vec())
                .unwrap_or_else(|e| panic!("{label} on {sigma} produced an invalid diagram: {e}"));
            return (label, d);
        }
    }
}
pub mod criteria;
pub mod oracle;

use ylink::tangle::LinkDiagram;

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// Every closed diagram in the test corpus, by file name.
pub fn corpus() -> Vec<(String, LinkDiagram)> {
    let mut names: Vec<String> = std::fs::read_dir(data_path(""))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| !n.contains(".ambient."))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let text = std::fs::read_to_string(data_path(&name)).unwrap();
            let d = if name.ends_with(".pd.json") {
                let v: serde_json::Value = serde_json::from_str(&text).unwrap();
                let codes: Vec<[usize; 4]> = serde_json::from_value(v["pd"].clone()).unwrap();
                LinkDiagram::from_pd(&codes).unwrap()
            } else {
                StringLinkDiagram::parse_any(&text).unwrap().close_all().unwrap()
            };
            (name, d)
        })
        .collect()
}
