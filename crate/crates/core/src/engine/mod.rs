//! Completion of partial presentation matrices into finite bikei tables.

mod complete;
mod identity;
mod reduce;
mod score;
mod sweep;
mod trace;
mod tracker;

use std::fmt;
use std::str::FromStr;

pub use complete::{complete, CompletionOutcome, Stats, Status};
pub use reduce::reduce;
pub use score::{adjoin_generator, score_zeros};
pub use sweep::propagate_once;
pub use trace::{format_trace, parse_trace, replay, TraceEvent};
pub use tracker::EquivalenceTracker;

/// How the engine picks the unknown cell that receives a fresh generator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum ZeroStrategy {
    /// The cell whose assignment fills the most other cells.
    #[default]
    Score,
    /// The first unknown cell in (block, row, column) order.
    Lex,
}

impl fmt::Display for ZeroStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZeroStrategy::Score => "score",
            ZeroStrategy::Lex => "lex",
        })
    }
}

impl FromStr for ZeroStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "score" => Ok(ZeroStrategy::Score),
            "lex" => Ok(ZeroStrategy::Lex),
            _ => Err(format!(
                "unknown zero strategy `{s}` (expected score or lex)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EngineConfig {
    /// Largest number of generators the engine may reach.
    pub max_size: usize,
    pub zero_strategy: ZeroStrategy,
    /// Record every fill, merge and adjoined generator.
    pub trace: bool,
    /// Impose the medial identities as well as the bikei axioms.
    pub medial: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_size: 500,
            zero_strategy: ZeroStrategy::Score,
            trace: false,
            medial: true,
        }
    }
}
