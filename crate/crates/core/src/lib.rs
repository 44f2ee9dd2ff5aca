//! Fundamental medial bikei of virtual knots and links.
//!
//! A *bikei* is a finite set with two involutory operations, written here as
//! `under` and `over`, satisfying the bikei axioms; a *medial* bikei also
//! satisfies three exchange identities. This crate
//!
//! - represents finite bikei as complete `n × 2n` operation tables
//!   ([`BikeiTable`]) and checks the axioms exhaustively,
//! - parses bikei presentations and signed Gauss codes and turns them into
//!   short-form presentation matrices ([`PresentationMatrix`]),
//! - completes presentation matrices into operation tables by axiom
//!   propagation, generator merging and generator adjunction
//!   ([`engine::complete`]), and
//! - compares finite results up to isomorphism.

pub mod algebra;
pub mod diagram;
pub mod engine;
pub mod error;
pub mod presentation;
pub mod text;

pub use algebra::{AxiomId, AxiomViolation, BikeiTable, Isomorphism, Op, Profile};
pub use diagram::DiagramCode;
pub use engine::{CompletionOutcome, EngineConfig, ZeroStrategy};
pub use error::{Error, Result};
pub use presentation::{BikeiWord, Presentation, PresentationMatrix, Relation, ShortForm};

/// Element index of a finite bikei or generator index of a presentation.
///
/// Indices start at 1; `0` marks an unknown entry in a presentation matrix.
pub type Element = u32;
