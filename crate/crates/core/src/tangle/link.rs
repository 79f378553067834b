//! Oriented link diagrams in planar-diagram (PD) form.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::trace::{self, is_over_port, oriented_sign, WalkEnd};
use super::{layer_widths, Sign, TangleEvent};
use crate::error::{Error, Result};

/// One crossing: the four incident arcs counterclockwise starting from the
/// incoming under-arc, and the oriented sign. The under strand runs
/// `arcs[0] -> arcs[2]`; the over strand runs `arcs[3] -> arcs[1]` for a
/// positive crossing and `arcs[1] -> arcs[3]` for a negative one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PdCrossing {
    pub arcs: [usize; 4],
    pub sign: Sign,
}

impl PdCrossing {
    pub fn under_in(&self) -> usize {
        self.arcs[0]
    }

    pub fn under_out(&self) -> usize {
        self.arcs[2]
    }

    pub fn over_in(&self) -> usize {
        match self.sign {
            Sign::Pos => self.arcs[3],
            Sign::Neg => self.arcs[1],
        }
    }

    pub fn over_out(&self) -> usize {
        match self.sign {
            Sign::Pos => self.arcs[1],
            Sign::Neg => self.arcs[3],
        }
    }

    /// The same crossing with the strands' over/under roles exchanged.
    pub fn switched(&self) -> PdCrossing {
        let [a, b, c, d] = self.arcs;
        match self.sign {
            Sign::Pos => PdCrossing { arcs: [d, a, b, c], sign: Sign::Neg },
            Sign::Neg => PdCrossing { arcs: [b, c, d, a], sign: Sign::Pos },
        }
    }
}

/// An oriented link diagram. Components without crossings are kept as a
/// count of free loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<PdCrossing>,
    free_loops: usize,
}

/// Where the strand along an arc goes next.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Head {
    pub crossing: usize,
    pub under: bool,
    pub next: usize,
}

impl LinkDiagram {
    /// Checks that every arc occurs exactly twice, once entering and once
    /// leaving a crossing.
    pub fn new(crossings: Vec<PdCrossing>, free_loops: usize) -> Result<Self> {
        let mut ins: HashMap<usize, usize> = HashMap::new();
        let mut outs: HashMap<usize, usize> = HashMap::new();
        for c in &crossings {
            *ins.entry(c.under_in()).or_default() += 1;
            *ins.entry(c.over_in()).or_default() += 1;
            *outs.entry(c.under_out()).or_default() += 1;
            *outs.entry(c.over_out()).or_default() += 1;
        }
        for (arc, &k) in &ins {
            if k != 1 || outs.get(arc) != Some(&1) {
                return Err(Error::Pd(format!("arc {arc} must enter and leave exactly once")));
            }
        }
        if outs.len() != ins.len() {
            return Err(Error::Pd("some arc leaves a crossing but never enters one".into()));
        }
        Ok(LinkDiagram { crossings, free_loops })
    }

    pub(crate) fn from_parts_unchecked(crossings: Vec<PdCrossing>, free_loops: usize) -> Self {
        LinkDiagram { crossings, free_loops }
    }

    /// Builds a diagram from bare PD quadruples, inferring each crossing's
    /// sign from the orientation forced by the under-strands.
    pub fn from_pd(codes: &[[usize; 4]]) -> Result<Self> {
        // For each arc, whether its end at a given (crossing, port) is a head.
        let mut occurrences: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (i, q) in codes.iter().enumerate() {
            for (p, &a) in q.iter().enumerate() {
                occurrences.entry(a).or_default().push((i, p));
            }
        }
        for (a, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(Error::Pd(format!("arc {a} occurs {} times", occ.len())));
            }
        }
        // head[(i,p)] = true when the arc enters crossing i at port p
        let mut head: HashMap<(usize, usize), bool> = HashMap::new();
        for i in 0..codes.len() {
            head.insert((i, 0), true);
            head.insert((i, 2), false);
        }
        let mut signs: Vec<Option<Sign>> = vec![None; codes.len()];
        loop {
            let mut progress = false;
            for (i, q) in codes.iter().enumerate() {
                if signs[i].is_some() {
                    continue;
                }
                for (port, sign_if_head) in [(1, Sign::Neg), (3, Sign::Pos)] {
                    let other = occurrences[&q[port]].iter().copied().find(|&o| o != (i, port));
                    let Some(other) = other else { continue };
                    if let Some(&other_is_head) = head.get(&other) {
                        let here_is_head = !other_is_head;
                        let s = if here_is_head { sign_if_head } else { sign_if_head.flip() };
                        signs[i] = Some(s);
                        let (h1, h3) = if s == Sign::Pos { (false, true) } else { (true, false) };
                        head.insert((i, 1), h1);
                        head.insert((i, 3), h3);
                        progress = true;
                        break;
                    }
                }
            }
            if !progress {
                break;
            }
        }
        let crossings = codes
            .iter()
            .zip(&signs)
            .map(|(q, s)| {
                s.map(|sign| PdCrossing { arcs: *q, sign })
                    .ok_or_else(|| Error::Pd(format!("cannot orient over-strand of crossing {q:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        LinkDiagram::new(crossings, 0)
    }

    pub fn unlink(components: usize) -> Self {
        LinkDiagram { crossings: Vec::new(), free_loops: components }
    }

    pub fn crossings(&self) -> &[PdCrossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub(crate) fn heads(&self) -> HashMap<usize, Head> {
        let mut heads = HashMap::with_capacity(2 * self.crossings.len());
        for (i, c) in self.crossings.iter().enumerate() {
            heads.insert(c.under_in(), Head { crossing: i, under: true, next: c.under_out() });
            heads.insert(c.over_in(), Head { crossing: i, under: false, next: c.over_out() });
        }
        heads
    }

    /// Components that meet at least one crossing, each as its arc sequence
    /// starting from its smallest arc, ordered by that smallest arc.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let heads = self.heads();
        let arcs: BTreeSet<usize> = heads.keys().copied().collect();
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for &start in &arcs {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut a = start;
            loop {
                seen.insert(a);
                comp.push(a);
                a = heads[&a].next;
                if a == start {
                    break;
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len() + self.free_loops
    }

    /// Map from arc to the index of its component in `components()`.
    pub fn component_of(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for (k, comp) in self.components().iter().enumerate() {
            for &a in comp {
                m.insert(a, k);
            }
        }
        m
    }

    /// Linking number of components `i` and `j` (indices into
    /// `components()`).
    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        let comp = self.component_of();
        let mut twice = 0;
        for c in &self.crossings {
            let (p, q) = (comp[&c.under_in()], comp[&c.over_in()]);
            if (p == i && q == j) || (p == j && q == i) {
                twice += c.sign.value();
            }
        }
        if i == j {
            0
        } else {
            twice / 2
        }
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Exchanges over and under at crossing `idx`.
    pub fn switch(&self, idx: usize) -> LinkDiagram {
        let mut crossings = self.crossings.clone();
        crossings[idx] = crossings[idx].switched();
        LinkDiagram { crossings, free_loops: self.free_loops }
    }

    /// The mirror image (every crossing switched).
    pub fn mirror(&self) -> LinkDiagram {
        LinkDiagram { crossings: self.crossings.iter().map(PdCrossing::switched).collect(), free_loops: self.free_loops }
    }

    /// Oriented resolution of crossing `idx`.
    pub fn smooth(&self, idx: usize) -> LinkDiagram {
        let c = self.crossings[idx];
        // incoming under joins outgoing over; incoming over joins outgoing under
        let pairs = [(c.under_in(), c.over_out()), (c.over_in(), c.under_out())];
        let mut rest: Vec<PdCrossing> = self.crossings.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, c)| *c).collect();
        let mut free = self.free_loops;
        let mut rename: HashMap<usize, usize> = HashMap::new();
        let find = |rename: &HashMap<usize, usize>, mut a: usize| {
            while let Some(&b) = rename.get(&a) {
                a = b;
            }
            a
        };
        for (x, y) in pairs {
            let (x, y) = (find(&rename, x), find(&rename, y));
            if x == y {
                // both ends of the merged arc belonged to this crossing
                free += 1;
            } else {
                let (keep, drop) = (x.min(y), x.max(y));
                rename.insert(drop, keep);
            }
        }
        for c in &mut rest {
            for a in &mut c.arcs {
                *a = find(&rename, *a);
            }
        }
        LinkDiagram { crossings: rest, free_loops: free }
    }

    /// Connected sum of two knot diagrams, banding the smallest arc of each.
    pub fn connected_sum(&self, other: &LinkDiagram) -> Result<LinkDiagram> {
        for d in [self, other] {
            if d.component_count() != 1 {
                return Err(Error::ComponentCount { expected: 1, found: d.component_count() });
            }
        }
        if self.crossings.is_empty() {
            return Ok(other.clone());
        }
        if other.crossings.is_empty() {
            return Ok(self.clone());
        }
        let shift = self.crossings.iter().flat_map(|c| c.arcs).max().unwrap_or(0);
        let theirs: Vec<PdCrossing> = other
            .crossings
            .iter()
            .map(|c| PdCrossing { arcs: c.arcs.map(|a| a + shift), sign: c.sign })
            .collect();
        let x = self.crossings.iter().flat_map(|c| c.arcs).min().unwrap();
        let y = theirs.iter().flat_map(|c| c.arcs).min().unwrap();
        let fresh = theirs.iter().flat_map(|c| c.arcs).max().unwrap() + 1;
        // x: A -> B, y: C -> D  becomes  x: A -> D, fresh: C -> B
        let mut all: Vec<PdCrossing> = self.crossings.clone();
        relabel_head(&mut all, x, fresh);
        let mut theirs = theirs;
        relabel_head(&mut theirs, y, x);
        all.extend(theirs);
        // y now only occurs as a tail; fresh only as a head
        for c in &mut all {
            let out_y = [c.under_out(), c.over_out()].contains(&y);
            if out_y {
                for a in &mut c.arcs {
                    if *a == y {
                        *a = fresh;
                    }
                }
            }
        }
        LinkDiagram::new(all, 0)
    }
}

fn relabel_head(cs: &mut [PdCrossing], arc: usize, to: usize) {
    for c in cs.iter_mut() {
        if c.under_in() == arc {
            c.arcs[0] = to;
            return;
        }
        if c.over_in() == arc {
            match c.sign {
                Sign::Pos => c.arcs[3] = to,
                Sign::Neg => c.arcs[1] = to,
            }
            return;
        }
    }
}

/// PD form of a closed event word (zero width at both ends). `starts` gives,
/// per component, a segment and direction; components are traversed and
/// their arcs numbered in that order.
pub(crate) fn closed_word_pd(events: &[TangleEvent], starts: &[(usize, usize, bool)]) -> Result<LinkDiagram> {
    let widths = layer_widths(0, events)?;
    if *widths.last().unwrap() != 0 {
        return Err(Error::Width { event: events.len(), detail: "closed word must end at width 0".into() });
    }
    // ports[event] = arc ids at ports 0..4
    let mut ports: Vec<[usize; 4]> = vec![[0; 4]; events.len()];
    let mut over_in: Vec<Option<u8>> = vec![None; events.len()];
    let mut under_in: Vec<Option<u8>> = vec![None; events.len()];
    let mut next_arc = 1;
    let mut free_loops = 0;
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &start in starts {
        let w = trace::walk(events, &widths, start);
        if w.end != WalkEnd::Closed {
            return Err(Error::Pd("closure left an open strand".into()));
        }
        covered.extend(w.visited);
        let r = w.passages.len();
        if r == 0 {
            free_loops += 1;
            continue;
        }
        let base = next_arc;
        next_arc += r;
        for (j, p) in w.passages.iter().enumerate() {
            let incoming = base + (j + r - 1) % r;
            let outgoing = base + j;
            ports[p.event][p.in_port as usize] = incoming;
            ports[p.event][p.out_port as usize] = outgoing;
            let TangleEvent::Crossing { sign, .. } = events[p.event] else { unreachable!() };
            if is_over_port(sign, p.in_port) {
                over_in[p.event] = Some(p.in_port);
            } else {
                under_in[p.event] = Some(p.in_port);
            }
        }
    }
    let segments: usize = widths.iter().sum();
    if covered.len() != segments {
        return Err(Error::Pd("closed word has components not listed among the starts".into()));
    }
    let mut crossings = Vec::new();
    for (t, ev) in events.iter().enumerate() {
        if let TangleEvent::Crossing { .. } = ev {
            let (o, u) = (over_in[t].unwrap(), under_in[t].unwrap());
            let q = ports[t];
            let arcs = [0, 1, 2, 3].map(|k| q[(u as usize + k) % 4]);
            crossings.push(PdCrossing { arcs, sign: oriented_sign(o, u) });
        }
    }
    LinkDiagram::new(crossings, free_loops)
}
