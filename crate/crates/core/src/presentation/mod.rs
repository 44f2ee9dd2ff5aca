//! Bikei words and presentations, and their short-form matrix encoding.

mod matrix;
mod parse;
mod short_form;

use std::fmt;

pub use matrix::{PresentationMatrix, Relation};
pub use parse::parse_presentation;
pub use short_form::{to_short_form, ShortForm};

use crate::algebra::{BikeiTable, Op};
use crate::Element;

/// A term built from generators with the two bikei operations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BikeiWord {
    Gen(Element),
    Apply(Op, Box<BikeiWord>, Box<BikeiWord>),
}

impl BikeiWord {
    pub fn gen(i: Element) -> Self {
        BikeiWord::Gen(i)
    }

    pub fn under(l: BikeiWord, r: BikeiWord) -> Self {
        BikeiWord::Apply(Op::Under, Box::new(l), Box::new(r))
    }

    pub fn over(l: BikeiWord, r: BikeiWord) -> Self {
        BikeiWord::Apply(Op::Over, Box::new(l), Box::new(r))
    }

    pub fn max_generator(&self) -> Element {
        match self {
            BikeiWord::Gen(i) => *i,
            BikeiWord::Apply(_, l, r) => l.max_generator().max(r.max_generator()),
        }
    }

    /// Evaluates the word in `t` with generator `i` sent to `assignment[i - 1]`.
    pub fn evaluate(&self, t: &BikeiTable, assignment: &[Element]) -> Element {
        match self {
            BikeiWord::Gen(i) => assignment[*i as usize - 1],
            BikeiWord::Apply(op, l, r) => {
                t.apply(*op, l.evaluate(t, assignment), r.evaluate(t, assignment))
            }
        }
    }

    fn fmt_inner(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        match self {
            BikeiWord::Gen(i) => write!(f, "x{i}"),
            BikeiWord::Apply(op, l, r) => {
                if !top {
                    f.write_str("(")?;
                }
                l.fmt_inner(f, false)?;
                write!(f, " {} ", op.symbol())?;
                r.fmt_inner(f, false)?;
                if !top {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

/// Printed with the outermost parentheses dropped, as accepted by the parser.
impl fmt::Display for BikeiWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_inner(f, true)
    }
}

/// `⟨x1, …, xn | lhs = rhs, …⟩`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<(BikeiWord, BikeiWord)>,
}

impl Presentation {
    /// The free presentation on `generators` generators.
    pub fn free(generators: usize) -> Self {
        Presentation {
            generators,
            relations: Vec::new(),
        }
    }

    /// Checks every relation in `t` with generator `i` sent to `assignment[i - 1]`.
    pub fn holds_in(&self, t: &BikeiTable, assignment: &[Element]) -> bool {
        self.relations
            .iter()
            .all(|(l, r)| l.evaluate(t, assignment) == r.evaluate(t, assignment))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {};", self.generators)?;
        for (l, r) in &self.relations {
            writeln!(f, "{l} = {r}")?;
        }
        Ok(())
    }
}
