//! Framed string links in D²×I encoded as Morse event words.
//!
//! A diagram is read bottom to top. Each event acts on the current row of
//! strand slots (numbered from 1): a crossing swaps slots `k` and `k+1`, a
//! cup inserts two fresh slots at `k`, a cap joins slots `k` and `k+1`.
//! Framing is the blackboard framing, i.e. the self-writhe of each strand.

mod builtin;
mod link;
mod moves;
mod trace;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builtin::{builtin, AmbientPresentation, Builtin, BuiltinDiagram, SurgeryComponent};
pub use link::{LinkDiagram, PdCrossing};
pub use moves::{apply_move, Move, Site};
pub(crate) use trace::StrandStructure;

/// Over/under sign. For a crossing event this is the geometric flag
/// (`Pos` when the strand entering from the lower left passes over); for a
/// PD crossing it is the oriented crossing sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TangleEvent {
    Crossing { pos: usize, sign: Sign },
    Cup { pos: usize },
    Cap { pos: usize },
}

impl TangleEvent {
    pub fn pos(&self) -> usize {
        match *self {
            TangleEvent::Crossing { pos, .. } | TangleEvent::Cup { pos } | TangleEvent::Cap { pos } => pos,
        }
    }

    pub(crate) fn with_pos(self, pos: usize) -> TangleEvent {
        match self {
            TangleEvent::Crossing { sign, .. } => TangleEvent::Crossing { pos, sign },
            TangleEvent::Cup { .. } => TangleEvent::Cup { pos },
            TangleEvent::Cap { .. } => TangleEvent::Cap { pos },
        }
    }

    /// Change in row width caused by this event.
    pub fn width_delta(&self) -> isize {
        match self {
            TangleEvent::Crossing { .. } => 0,
            TangleEvent::Cup { .. } => 2,
            TangleEvent::Cap { .. } => -2,
        }
    }

    fn check(&self, width: usize) -> std::result::Result<(), String> {
        let pos = self.pos();
        if pos == 0 {
            return Err(format!("{self}: slots are numbered from 1"));
        }
        match self {
            TangleEvent::Crossing { .. } | TangleEvent::Cap { .. } if pos + 1 > width => {
                Err(format!("{self}: slot {} exceeds width {width}", pos + 1))
            }
            TangleEvent::Cup { .. } if pos > width + 1 => {
                Err(format!("{self}: insertion slot {pos} exceeds width {width} + 1"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TangleEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleEvent::Crossing { pos, sign: Sign::Pos } => write!(f, "x{pos}+"),
            TangleEvent::Crossing { pos, sign: Sign::Neg } => write!(f, "x{pos}-"),
            TangleEvent::Cup { pos } => write!(f, "u{pos}"),
            TangleEvent::Cap { pos } => write!(f, "n{pos}"),
        }
    }
}

/// Row widths of an event word starting from `bottom` slots, one entry per
/// layer (so `events.len() + 1` entries).
pub(crate) fn layer_widths(bottom: usize, events: &[TangleEvent]) -> Result<Vec<usize>> {
    let mut widths = Vec::with_capacity(events.len() + 1);
    let mut w = bottom;
    widths.push(w);
    for (idx, ev) in events.iter().enumerate() {
        ev.check(w).map_err(|detail| Error::Width { event: idx + 1, detail })?;
        w = (w as isize + ev.width_delta()) as usize;
        widths.push(w);
    }
    Ok(widths)
}

/// An `n`-component string link diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringLinkDiagram {
    n: usize,
    events: Vec<TangleEvent>,
}

impl StringLinkDiagram {
    /// Validates width bookkeeping and the string-link condition: the strand
    /// entering at bottom slot `i` leaves at top slot `i`, upward at both
    /// ends, and there are no closed components.
    pub fn new(n: usize, events: Vec<TangleEvent>) -> Result<Self> {
        let widths = layer_widths(n, &events)?;
        let top = *widths.last().unwrap();
        if top != n {
            return Err(Error::Width {
                event: events.len(),
                detail: format!("final width {top} differs from strand count {n}"),
            });
        }
        trace::check_string_link(n, &events, &widths)?;
        Ok(StringLinkDiagram { n, events })
    }

    pub fn trivial(n: usize) -> Self {
        StringLinkDiagram { n, events: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn events(&self) -> &[TangleEvent] {
        &self.events
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, TangleEvent::Crossing { .. })).count()
    }

    /// Parses the textual form `strands <n>; <events...>`.
    pub fn parse(text: &str) -> Result<Self> {
        let text: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join("\n");
        let text = text.trim();
        let rest = text
            .strip_prefix("strands")
            .ok_or_else(|| Error::Syntax("expected header `strands <n>;`".into()))?;
        let (count, body) = rest
            .split_once(';')
            .ok_or_else(|| Error::Syntax("missing `;` after strand count".into()))?;
        let n: usize = count
            .trim()
            .parse()
            .map_err(|_| Error::Syntax(format!("bad strand count `{}`", count.trim())))?;
        let events = body.split_whitespace().map(parse_event).collect::<Result<Vec<_>>>()?;
        StringLinkDiagram::new(n, events)
    }

    /// Parses either the text grammar or its JSON mirror.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse(text)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: JsonTangle = serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
        raw.into_diagram()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let events: Vec<JsonEvent> = self.events.iter().map(JsonEvent::from).collect();
        serde_json::json!({ "strands": self.n, "events": events })
    }

    /// Stacks `other` on top of `self`.
    pub fn stack(&self, other: &StringLinkDiagram) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::StrandMismatch { left: self.n, right: other.n });
        }
        let mut events = self.events.clone();
        events.extend_from_slice(&other.events);
        Ok(StringLinkDiagram { n: self.n, events })
    }

    /// The sub-string-link formed by the selected strands (1-based, in the
    /// given order of increasing index), renumbered `1..=k`.
    pub fn substring(&self, strands: &[usize]) -> Result<Self> {
        let mut keep = vec![false; self.n + 1];
        for &s in strands {
            if s == 0 || s > self.n {
                return Err(Error::Index(format!("strand {s} out of range 1..={}", self.n)));
            }
            if keep[s] {
                return Err(Error::Index(format!("strand {s} selected twice")));
            }
            keep[s] = true;
        }
        if strands.is_empty() {
            return Err(Error::EmptySelection);
        }
        let owners = trace::segment_owners(self.n, &self.events);
        let mut events = Vec::new();
        for (t, ev) in self.events.iter().enumerate() {
            // Owner of a slot in the row below / above this event.
            let below = &owners[t];
            let above = &owners[t + 1];
            let kept_before = |row: &Vec<usize>, slot: usize| row[..slot - 1].iter().filter(|&&o| keep[o]).count();
            match *ev {
                TangleEvent::Crossing { pos, .. } => {
                    if keep[below[pos - 1]] && keep[below[pos]] {
                        events.push(ev.with_pos(kept_before(below, pos) + 1));
                    }
                }
                TangleEvent::Cup { pos } => {
                    if keep[above[pos - 1]] {
                        events.push(ev.with_pos(kept_before(above, pos) + 1));
                    }
                }
                TangleEvent::Cap { pos } => {
                    if keep[below[pos - 1]] {
                        events.push(ev.with_pos(kept_before(below, pos) + 1));
                    }
                }
            }
        }
        let mut sorted = strands.to_vec();
        sorted.sort_unstable();
        if sorted != strands {
            return Err(Error::Index("strand selection must be increasing".into()));
        }
        StringLinkDiagram::new(strands.len(), events)
    }

    /// The sublink of the closure consisting of the selected components,
    /// numbered in increasing strand order.
    pub fn close(&self, strands: &[usize]) -> Result<LinkDiagram> {
        if strands.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut sel = strands.to_vec();
        sel.sort_unstable();
        sel.dedup();
        let sub = if sel.len() == self.n { self.clone() } else { self.substring(&sel)? };
        let k = sub.n;
        let mut word: Vec<TangleEvent> = (1..=k).map(|p| TangleEvent::Cup { pos: p }).collect();
        word.extend_from_slice(&sub.events);
        word.extend((1..=k).rev().map(|p| TangleEvent::Cap { pos: p }));
        let starts: Vec<(usize, usize, bool)> = (1..=k).map(|i| (k, i, true)).collect();
        link::closed_word_pd(&word, &starts)
    }

    pub fn close_all(&self) -> Result<LinkDiagram> {
        let all: Vec<usize> = (1..=self.n).collect();
        self.close(&all)
    }

    /// Joins the two top endpoints together and the two bottom endpoints
    /// together.
    pub fn plat_close(&self) -> Result<LinkDiagram> {
        if self.n != 2 {
            return Err(Error::StrandCount { expected: 2, found: self.n });
        }
        let mut word = vec![TangleEvent::Cup { pos: 1 }];
        word.extend_from_slice(&self.events);
        word.push(TangleEvent::Cap { pos: 1 });
        link::closed_word_pd(&word, &[(1, 1, true)])
    }

    /// Indices (into `events`) of the crossing events.
    pub fn crossing_events(&self) -> Vec<usize> {
        self.events
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, TangleEvent::Crossing { .. }))
            .map(|(i, _)| i)
            .collect()
    }

    /// The same diagram with the over/under information of one crossing
    /// event exchanged.
    pub fn with_crossing_changed(&self, event: usize) -> Result<Self> {
        let mut events = self.events.clone();
        match events.get_mut(event) {
            Some(TangleEvent::Crossing { sign, .. }) => *sign = sign.flip(),
            _ => return Err(Error::Index(format!("event {event} is not a crossing"))),
        }
        Ok(StringLinkDiagram { n: self.n, events })
    }

    pub(crate) fn from_parts_unchecked(n: usize, events: Vec<TangleEvent>) -> Self {
        StringLinkDiagram { n, events }
    }

    pub(crate) fn structure(&self) -> StrandStructure {
        trace::strand_structure(self.n, &self.events)
    }

    /// Self-writhe of each strand (the blackboard framing).
    pub fn framings(&self) -> Vec<i64> {
        let st = self.structure();
        let mut f = vec![0; self.n];
        for c in &st.crossings {
            if c.over.0 == c.under.0 {
                f[c.under.0] += c.sign.value();
            }
        }
        f
    }

    /// Linking matrix read from crossing signs (zero diagonal).
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let st = self.structure();
        let mut lk = vec![vec![0; self.n]; self.n];
        for c in &st.crossings {
            let (u, o) = (c.under.0, c.over.0);
            if u != o {
                lk[u][o] += c.sign.value();
            }
        }
        lk
    }
}

impl fmt::Display for StringLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands {};", self.n)?;
        for e in &self.events {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

fn parse_event(tok: &str) -> Result<TangleEvent> {
    let bad = || Error::Syntax(format!("unrecognized event `{tok}`"));
    let mut chars = tok.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let rest = chars.as_str();
    match kind {
        'x' => {
            let (num, sign) = if let Some(num) = rest.strip_suffix('+') {
                (num, Sign::Pos)
            } else if let Some(num) = rest.strip_suffix('-') {
                (num, Sign::Neg)
            } else {
                return Err(bad());
            };
            let pos = num.parse().map_err(|_| bad())?;
            Ok(TangleEvent::Crossing { pos, sign })
        }
        'u' => Ok(TangleEvent::Cup { pos: rest.parse().map_err(|_| bad())? }),
        'n' => Ok(TangleEvent::Cap { pos: rest.parse().map_err(|_| bad())? }),
        _ => Err(bad()),
    }
}

#[derive(Deserialize)]
struct JsonTangle {
    strands: usize,
    #[serde(default)]
    events: Vec<JsonEvent>,
}

#[derive(Serialize, Deserialize)]
struct JsonEvent {
    kind: JsonKind,
    pos: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sign: Option<i64>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase")]
enum JsonKind {
    #[serde(alias = "x")]
    Crossing,
    #[serde(alias = "u")]
    Cup,
    #[serde(alias = "n")]
    Cap,
}

impl From<&TangleEvent> for JsonEvent {
    fn from(e: &TangleEvent) -> Self {
        match *e {
            TangleEvent::Crossing { pos, sign } => JsonEvent { kind: JsonKind::Crossing, pos, sign: Some(sign.value()) },
            TangleEvent::Cup { pos } => JsonEvent { kind: JsonKind::Cup, pos, sign: None },
            TangleEvent::Cap { pos } => JsonEvent { kind: JsonKind::Cap, pos, sign: None },
        }
    }
}

impl JsonTangle {
    fn into_diagram(self) -> Result<StringLinkDiagram> {
        let events = self
            .events
            .into_iter()
            .map(|e| match e.kind {
                JsonKind::Crossing => {
                    let s = e.sign.ok_or_else(|| Error::Syntax("crossing without sign".into()))?;
                    let sign = Sign::from_value(s).ok_or_else(|| Error::Syntax(format!("crossing sign {s} is not ±1")))?;
                    Ok(TangleEvent::Crossing { pos: e.pos, sign })
                }
                JsonKind::Cup => Ok(TangleEvent::Cup { pos: e.pos }),
                JsonKind::Cap => Ok(TangleEvent::Cap { pos: e.pos }),
            })
            .collect::<Result<Vec<_>>>()?;
        StringLinkDiagram::new(self.strands, events)
    }
}
