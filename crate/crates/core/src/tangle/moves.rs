//! Local diagram moves on event words.

use super::{layer_widths, Sign, StringLinkDiagram, TangleEvent};
use crate::error::{Error, Result};

use TangleEvent::{Cap, Crossing, Cup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Insert a curl on the strand at `site.slot`, looping to its right
    /// (or left).
    R1Insert { sign: Sign, left: bool },
    /// Remove a curl whose three events start at `site.event`.
    R1Remove,
    /// Insert a cancelling crossing pair on slots `site.slot`, `site.slot+1`.
    R2Insert { sign: Sign },
    /// Remove a cancelling crossing pair starting at `site.event`.
    R2Remove,
    /// Rewrite the three crossings starting at `site.event` by the braid
    /// relation.
    R3,
    /// Insert a cup/cap zigzag on the strand at `site.slot`.
    ZigzagInsert { left: bool },
    /// Cancel a cup immediately followed by an adjacent cap.
    ZigzagRemove,
    /// Exchange the events at `site.event` and `site.event + 1`, which must
    /// have disjoint support.
    FarCommute,
}

/// Where a move applies: `event` is an index into the event list (for
/// insertions, the layer at which new events go), `slot` a strand slot in
/// that layer. Removal moves ignore `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Site {
    pub event: usize,
    pub slot: usize,
}

pub fn apply_move(sigma: &StringLinkDiagram, mv: Move, site: Site) -> Result<StringLinkDiagram> {
    let events = sigma.events();
    let widths = layer_widths(sigma.n(), events)?;
    let illegal = |why: &str| Error::IllegalMove(format!("{mv:?} at {site:?}: {why}"));
    let t = site.event;
    let k = site.slot;
    let insert = |new: &[TangleEvent]| -> Result<StringLinkDiagram> {
        let mut out = events[..t].to_vec();
        out.extend_from_slice(new);
        out.extend_from_slice(&events[t..]);
        Ok(StringLinkDiagram::from_parts_unchecked(sigma.n(), out))
    };
    let replace = |len: usize, new: &[TangleEvent]| -> Result<StringLinkDiagram> {
        let mut out = events[..t].to_vec();
        out.extend_from_slice(new);
        out.extend_from_slice(&events[t + len..]);
        Ok(StringLinkDiagram::from_parts_unchecked(sigma.n(), out))
    };
    let window = |len: usize| -> Result<&[TangleEvent]> {
        events.get(t..t + len).ok_or_else(|| illegal("window runs past the last event"))
    };

    match mv {
        Move::R1Insert { sign, left } => {
            if t > events.len() || k == 0 || k > widths[t] {
                return Err(illegal("no strand at that slot"));
            }
            if left {
                insert(&[Cup { pos: k }, Crossing { pos: k + 1, sign }, Cap { pos: k }])
            } else {
                insert(&[Cup { pos: k + 1 }, Crossing { pos: k, sign }, Cap { pos: k + 1 }])
            }
        }
        Move::R1Remove => match window(3)? {
            [Cup { pos: a }, Crossing { pos: b, .. }, Cap { pos: c }] if a == c && (*b + 1 == *a || *b == *a + 1) => {
                replace(3, &[])
            }
            _ => Err(illegal("no curl here")),
        },
        Move::R2Insert { sign } => {
            if t > events.len() || k == 0 || k + 1 > widths[t] {
                return Err(illegal("need two strands at the slot"));
            }
            insert(&[Crossing { pos: k, sign }, Crossing { pos: k, sign: sign.flip() }])
        }
        Move::R2Remove => match window(2)? {
            [Crossing { pos: a, sign: s }, Crossing { pos: b, sign: r }] if a == b && *s == r.flip() => replace(2, &[]),
            _ => Err(illegal("no cancelling pair here")),
        },
        Move::R3 => match *window(3)? {
            [Crossing { pos: p, sign: a }, Crossing { pos: q, sign: b }, Crossing { pos: r, sign: c }]
                if p == r && (q == p + 1 || p == q + 1) =>
            {
                // the three over/under relations must form a linear order
                if (a, b, c) == (Sign::Pos, Sign::Neg, Sign::Pos) || (a, b, c) == (Sign::Neg, Sign::Pos, Sign::Neg) {
                    return Err(illegal("crossing pattern is not a Reidemeister III triangle"));
                }
                replace(3, &[Crossing { pos: q, sign: c }, Crossing { pos: p, sign: b }, Crossing { pos: q, sign: a }])
            }
            _ => Err(illegal("no braid triangle here")),
        },
        Move::ZigzagInsert { left } => {
            if t > events.len() || k == 0 || k > widths[t] {
                return Err(illegal("no strand at that slot"));
            }
            if left {
                insert(&[Cup { pos: k }, Cap { pos: k + 1 }])
            } else {
                insert(&[Cup { pos: k + 1 }, Cap { pos: k }])
            }
        }
        Move::ZigzagRemove => match window(2)? {
            [Cup { pos: a }, Cap { pos: b }] if *b + 1 == *a || *b == *a + 1 => replace(2, &[]),
            _ => Err(illegal("no zigzag here")),
        },
        Move::FarCommute => {
            let pair = window(2)?;
            let (lower, upper) = (pair[0], pair[1]);
            let (lo_lo, lo_hi) = upper_interval(lower);
            let (up_lo, up_hi) = lower_interval(upper);
            if up_lo >= lo_hi && !(lo_lo == lo_hi && up_lo == lo_hi && up_lo == up_hi) {
                // upper event lies to the right: it moves below and shifts
                let moved = upper.with_pos((upper.pos() as isize - lower.width_delta()) as usize);
                replace(2, &[moved, lower])
            } else if up_hi <= lo_lo {
                let moved = lower.with_pos((lower.pos() as isize + upper.width_delta()) as usize);
                replace(2, &[upper, moved])
            } else {
                Err(illegal("events share support"))
            }
        }
    }
}

/// Occupied coordinates in the row above an event, as a half-open interval;
/// slot `s` spans `[s, s+1)` and a point is a gap between slots.
fn upper_interval(e: TangleEvent) -> (usize, usize) {
    let p = e.pos();
    match e {
        Crossing { .. } | Cup { .. } => (p, p + 2),
        Cap { .. } => (p, p),
    }
}

fn lower_interval(e: TangleEvent) -> (usize, usize) {
    let p = e.pos();
    match e {
        Crossing { .. } | Cap { .. } => (p, p + 2),
        Cup { .. } => (p, p),
    }
}
