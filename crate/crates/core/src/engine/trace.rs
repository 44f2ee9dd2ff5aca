//! Completion traces: one event per line,
//!
//! ```text
//! FILL <under|over> <row> <col> <value>
//! MERGE <a> <b>
//! ADJOIN <under|over> <row> <col>
//! ```
//!
//! Indices refer to the numbering current when the event happens. `MERGE`
//! merges two generators, cascades and renumbers exactly like
//! [`reduce`](super::reduce); `ADJOIN` appends generator `n + 1` and stores it
//! in the given cell.

use std::fmt;
use std::str::FromStr;

use super::{reduce, EquivalenceTracker};
use crate::algebra::Op;
use crate::error::{Error, Result};
use crate::presentation::PresentationMatrix;
use crate::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEvent {
    Fill {
        op: Op,
        row: Element,
        col: Element,
        value: Element,
    },
    Merge(Element, Element),
    Adjoin {
        op: Op,
        row: Element,
        col: Element,
    },
}

fn block_name(op: Op) -> &'static str {
    match op {
        Op::Under => "under",
        Op::Over => "over",
    }
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TraceEvent::Fill {
                op,
                row,
                col,
                value,
            } => write!(f, "FILL {} {row} {col} {value}", block_name(op)),
            TraceEvent::Merge(a, b) => write!(f, "MERGE {a} {b}"),
            TraceEvent::Adjoin { op, row, col } => {
                write!(f, "ADJOIN {} {row} {col}", block_name(op))
            }
        }
    }
}

impl FromStr for TraceEvent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let num = |i: usize| -> Result<Element, String> {
            parts
                .get(i)
                .ok_or_else(|| format!("missing field {i} in `{s}`"))?
                .parse()
                .map_err(|_| format!("bad number in `{s}`"))
        };
        let op = |i: usize| match parts.get(i) {
            Some(&"under") => Ok(Op::Under),
            Some(&"over") => Ok(Op::Over),
            _ => Err(format!("expected `under` or `over` in `{s}`")),
        };
        let (event, arity) = match parts.first() {
            Some(&"FILL") => (
                TraceEvent::Fill {
                    op: op(1)?,
                    row: num(2)?,
                    col: num(3)?,
                    value: num(4)?,
                },
                5,
            ),
            Some(&"MERGE") => (TraceEvent::Merge(num(1)?, num(2)?), 3),
            Some(&"ADJOIN") => (
                TraceEvent::Adjoin {
                    op: op(1)?,
                    row: num(2)?,
                    col: num(3)?,
                },
                4,
            ),
            _ => return Err(format!("unknown trace event `{s}`")),
        };
        if parts.len() != arity {
            return Err(format!("wrong number of fields in `{s}`"));
        }
        Ok(event)
    }
}

pub fn format_trace(events: &[TraceEvent]) -> String {
    events.iter().map(|e| format!("{e}\n")).collect()
}

pub fn parse_trace(text: &str) -> Result<Vec<TraceEvent>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.parse().map_err(|message| Error::Parse {
                line: i + 1,
                column: 1,
                message,
            })
        })
        .collect()
}

fn in_range(m: &PresentationMatrix, xs: &[Element]) -> bool {
    xs.iter().all(|&x| x >= 1 && x as usize <= m.size())
}

/// Re-applies `events` to `start`.
pub fn replay(start: &PresentationMatrix, events: &[TraceEvent]) -> Result<PresentationMatrix> {
    let mut m = start.clone();
    for (i, event) in events.iter().enumerate() {
        let bad =
            |why: &str| Error::Precondition(format!("trace event {} (`{event}`): {why}", i + 1));
        match *event {
            TraceEvent::Fill {
                op,
                row,
                col,
                value,
            } => {
                if !in_range(&m, &[row, col, value]) {
                    return Err(bad("index out of range"));
                }
                if m.get(op, row, col) != 0 {
                    return Err(bad("cell already known"));
                }
                m.set(op, row, col, value);
            }
            TraceEvent::Merge(a, b) => {
                if !in_range(&m, &[a, b]) {
                    return Err(bad("index out of range"));
                }
                let mut tracker = EquivalenceTracker::new(m.size());
                tracker.merge(a, b);
                m = reduce(&m, &mut tracker);
            }
            TraceEvent::Adjoin { op, row, col } => {
                if !in_range(&m, &[row, col]) {
                    return Err(bad("index out of range"));
                }
                if m.get(op, row, col) != 0 {
                    return Err(bad("cell already known"));
                }
                m = m.expand();
                let fresh = m.size() as Element;
                m.set(op, row, col, fresh);
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn event_text_round_trips() {
        let events = vec![
            TraceEvent::Adjoin {
                op: Op::Under,
                row: 1,
                col: 1,
            },
            TraceEvent::Fill {
                op: Op::Over,
                row: 1,
                col: 1,
                value: 2,
            },
            TraceEvent::Merge(2, 3),
        ];
        let text = format_trace(&events);
        assert_eq!(text, "ADJOIN under 1 1\nFILL over 1 1 2\nMERGE 2 3\n");
        assert_eq!(parse_trace(&text).unwrap(), events);
        assert!(parse_trace("FILL sideways 1 1 1").is_err());
        assert!(parse_trace("MERGE 1").is_err());
        assert!(parse_trace("MERGE 1 2 3").is_err());
        assert!(parse_trace("JUMP").is_err());
    }

    #[test]
    fn replay_applies_events() {
        let start = PresentationMatrix::zeros(1);
        let events = parse_trace("ADJOIN under 1 1\nFILL over 1 1 2\nFILL under 2 1 1\n").unwrap();
        let m = replay(&start, &events).unwrap();
        assert_eq!(
            m,
            PresentationMatrix::from_rows(&[&[2, 0, 2, 0], &[1, 0, 0, 0]]).unwrap()
        );
        assert!(replay(&start, &parse_trace("FILL under 1 1 2").unwrap()).is_err());
        assert!(replay(&m, &parse_trace("FILL under 1 1 2").unwrap()).is_err());
        let merged = replay(&m, &parse_trace("MERGE 1 2").unwrap()).unwrap();
        assert_eq!(merged, PresentationMatrix::from_rows(&[&[1, 1]]).unwrap());
    }
}
