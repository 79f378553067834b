//! Walking strands through an event word.
//!
//! Segment `(t, s)` is the piece of slot `s` in layer `t`, the band between
//! event `t-1` and event `t`. Crossing ports are numbered counterclockwise
//! from the lower left: 0 = lower left, 1 = lower right, 2 = upper right,
//! 3 = upper left.

use super::{layer_widths, Sign, TangleEvent};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Passage {
    pub event: usize,
    pub in_port: u8,
    pub out_port: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum WalkEnd {
    Top(usize),
    Bottom(usize),
    Closed,
}

pub(crate) struct Walk {
    pub passages: Vec<Passage>,
    pub visited: Vec<(usize, usize)>,
    pub end: WalkEnd,
}

/// Whether the strand entering a crossing at `port` is the over strand.
pub(crate) fn is_over_port(sign: Sign, port: u8) -> bool {
    match sign {
        Sign::Pos => port == 0 || port == 2,
        Sign::Neg => port == 1 || port == 3,
    }
}

/// Oriented sign of a crossing from the ports at which the over and under
/// strands enter.
pub(crate) fn oriented_sign(over_in: u8, under_in: u8) -> Sign {
    if over_in == (under_in + 3) % 4 {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

pub(crate) fn walk(events: &[TangleEvent], widths: &[usize], start: (usize, usize, bool)) -> Walk {
    let m = events.len();
    let (mut t, mut s, mut up) = start;
    let mut passages = Vec::new();
    let mut visited = Vec::new();
    let limit: usize = widths.iter().sum::<usize>() + 1;
    loop {
        visited.push((t, s));
        if up {
            if t == m {
                return Walk { passages, visited, end: WalkEnd::Top(s) };
            }
            match events[t] {
                TangleEvent::Crossing { pos, .. } if s == pos || s == pos + 1 => {
                    let (in_port, out_port, next) = if s == pos { (0, 2, pos + 1) } else { (1, 3, pos) };
                    passages.push(Passage { event: t, in_port, out_port });
                    t += 1;
                    s = next;
                }
                TangleEvent::Crossing { .. } => t += 1,
                TangleEvent::Cup { pos } => {
                    if s >= pos {
                        s += 2;
                    }
                    t += 1;
                }
                TangleEvent::Cap { pos } => {
                    if s == pos {
                        s = pos + 1;
                        up = false;
                    } else if s == pos + 1 {
                        s = pos;
                        up = false;
                    } else {
                        if s > pos + 1 {
                            s -= 2;
                        }
                        t += 1;
                    }
                }
            }
        } else {
            if t == 0 {
                return Walk { passages, visited, end: WalkEnd::Bottom(s) };
            }
            match events[t - 1] {
                TangleEvent::Crossing { pos, .. } if s == pos || s == pos + 1 => {
                    let (in_port, out_port, next) = if s == pos { (3, 1, pos + 1) } else { (2, 0, pos) };
                    passages.push(Passage { event: t - 1, in_port, out_port });
                    t -= 1;
                    s = next;
                }
                TangleEvent::Crossing { .. } => t -= 1,
                TangleEvent::Cup { pos } => {
                    if s == pos {
                        s = pos + 1;
                        up = true;
                    } else if s == pos + 1 {
                        s = pos;
                        up = true;
                    } else {
                        if s > pos + 1 {
                            s -= 2;
                        }
                        t -= 1;
                    }
                }
                TangleEvent::Cap { pos } => {
                    if s >= pos {
                        s += 2;
                    }
                    t -= 1;
                }
            }
        }
        if (t, s, up) == start {
            return Walk { passages, visited, end: WalkEnd::Closed };
        }
        debug_assert!(visited.len() <= limit, "walk exceeded segment count");
    }
}

pub(crate) fn check_string_link(n: usize, events: &[TangleEvent], widths: &[usize]) -> Result<()> {
    let mut seen: Vec<Vec<bool>> = widths.iter().map(|&w| vec![false; w + 1]).collect();
    for i in 1..=n {
        let w = walk(events, widths, (0, i, true));
        match w.end {
            WalkEnd::Top(j) if j == i => {}
            WalkEnd::Top(j) => {
                return Err(Error::Permutation(format!("strand from bottom {i} exits at top {j}")));
            }
            WalkEnd::Bottom(j) => {
                return Err(Error::Permutation(format!("strand from bottom {i} returns to bottom {j}")));
            }
            WalkEnd::Closed => unreachable!("a walk from the boundary cannot close up"),
        }
        for (t, s) in w.visited {
            seen[t][s] = true;
        }
    }
    for (t, row) in seen.iter().enumerate() {
        if let Some(s) = (1..row.len()).find(|&s| !row[s]) {
            return Err(Error::Permutation(format!("closed component through slot {s} of layer {t}")));
        }
    }
    Ok(())
}

/// For every layer, the (1-based) strand owning each slot.
pub(crate) fn segment_owners(n: usize, events: &[TangleEvent]) -> Vec<Vec<usize>> {
    let widths = layer_widths(n, events).expect("validated diagram");
    let mut owners: Vec<Vec<usize>> = widths.iter().map(|&w| vec![0; w]).collect();
    for i in 1..=n {
        for (t, s) in walk(events, &widths, (0, i, true)).visited {
            owners[t][s - 1] = i;
        }
    }
    owners
}

#[derive(Clone, Debug)]
pub(crate) struct CrossingInfo {
    /// (strand, Wirtinger arc index of that strand) of the over strand.
    pub over: (usize, usize),
    /// (strand, arc index before the under-passage) of the under strand.
    pub under: (usize, usize),
    /// Oriented sign.
    pub sign: Sign,
}

#[derive(Clone, Debug)]
pub(crate) struct StrandStructure {
    /// Crossings in event order. Strands are 0-based here.
    pub crossings: Vec<CrossingInfo>,
    /// Per strand, indices into `crossings` of its under-passages in
    /// traversal order.
    pub under_passes: Vec<Vec<usize>>,
}

impl StrandStructure {
    pub fn arc_count(&self, strand: usize) -> usize {
        self.under_passes[strand].len() + 1
    }
}

#[derive(Default, Clone, Copy)]
struct Half {
    strand: usize,
    arc: usize,
    in_port: u8,
}

pub(crate) fn strand_structure(n: usize, events: &[TangleEvent]) -> StrandStructure {
    let widths = layer_widths(n, events).expect("validated diagram");
    let mut over: Vec<Option<Half>> = vec![None; events.len()];
    let mut under: Vec<Option<Half>> = vec![None; events.len()];
    let mut under_events: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let mut arc = 0;
        for p in walk(events, &widths, (0, i + 1, true)).passages {
            let TangleEvent::Crossing { sign, .. } = events[p.event] else { unreachable!() };
            let half = Half { strand: i, arc, in_port: p.in_port };
            if is_over_port(sign, p.in_port) {
                over[p.event] = Some(half);
            } else {
                under[p.event] = Some(half);
                under_events[i].push(p.event);
                arc += 1;
            }
        }
    }
    let mut crossings = Vec::new();
    let mut index_of = vec![usize::MAX; events.len()];
    for (t, ev) in events.iter().enumerate() {
        if let TangleEvent::Crossing { .. } = ev {
            let o = over[t].expect("over strand traced");
            let u = under[t].expect("under strand traced");
            index_of[t] = crossings.len();
            crossings.push(CrossingInfo {
                over: (o.strand, o.arc),
                under: (u.strand, u.arc),
                sign: oriented_sign(o.in_port, u.in_port),
            });
        }
    }
    let under_passes = under_events.into_iter().map(|v| v.into_iter().map(|t| index_of[t]).collect()).collect();
    StrandStructure { crossings, under_passes }
}
