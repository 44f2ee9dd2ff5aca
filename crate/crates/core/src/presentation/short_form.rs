use std::collections::HashMap;

use super::{BikeiWord, Presentation, PresentationMatrix, Relation};
use crate::algebra::Op;
use crate::Element;

/// A presentation in short form: the matrix of `x_j = x_k op x_l`
/// relations, plus relations `x_a = x_b` that have no matrix cell and are
/// handed to the engine as merges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortForm {
    pub matrix: PresentationMatrix,
    pub merges: Vec<(Element, Element)>,
}

struct Builder {
    next: Element,
    cells: HashMap<(Op, Element, Element), Element>,
    relations: Vec<Relation>,
    merges: Vec<(Element, Element)>,
}

impl Builder {
    fn merge(&mut self, a: Element, b: Element) {
        if a != b {
            self.merges.push((a.min(b), a.max(b)));
        }
    }

    fn define(&mut self, op: Op, x: Element, y: Element, result: Element) {
        match self.cells.get(&(op, x, y)) {
            Some(&existing) => self.merge(existing, result),
            None => {
                self.cells.insert((op, x, y), result);
                self.relations.push(Relation { op, x, y, result });
            }
        }
    }

    /// Names `word` by a generator, adding a fresh generator for every
    /// compound subterm not already named (innermost first, left to right).
    fn flatten(&mut self, word: &BikeiWord) -> Element {
        match word {
            BikeiWord::Gen(i) => *i,
            BikeiWord::Apply(op, l, r) => {
                let x = self.flatten(l);
                let y = self.flatten(r);
                if let Some(&g) = self.cells.get(&(*op, x, y)) {
                    return g;
                }
                self.next += 1;
                let g = self.next;
                self.define(*op, x, y, g);
                g
            }
        }
    }
}

/// Converts a presentation to short form by adjoining one generator per
/// compound subterm. Fresh generators are numbered `n + 1, n + 2, …` in
/// order of introduction.
pub fn to_short_form(p: &Presentation) -> ShortForm {
    let mut b = Builder {
        next: p.generators as Element,
        cells: HashMap::new(),
        relations: Vec::new(),
        merges: Vec::new(),
    };
    for (lhs, rhs) in &p.relations {
        match (lhs, rhs) {
            (BikeiWord::Gen(a), BikeiWord::Gen(c)) => b.merge(*a, *c),
            (BikeiWord::Gen(c), BikeiWord::Apply(op, l, r))
            | (BikeiWord::Apply(op, l, r), BikeiWord::Gen(c)) => {
                let x = b.flatten(l);
                let y = b.flatten(r);
                b.define(*op, x, y, *c);
            }
            (BikeiWord::Apply(op, l, r), rhs) => {
                let x = b.flatten(l);
                let y = b.flatten(r);
                let c = b.flatten(rhs);
                b.define(*op, x, y, c);
            }
        }
    }
    let (matrix, conflicts) = PresentationMatrix::from_relations(b.next as usize, &b.relations)
        .expect("generators in range");
    debug_assert!(conflicts.is_empty());
    let mut merges = b.merges;
    merges.sort_unstable();
    merges.dedup();
    ShortForm { matrix, merges }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn short(text: &str) -> ShortForm {
        to_short_form(&parse_presentation(text).unwrap())
    }

    #[test]
    fn introduces_generators_like_the_worked_example() {
        let s = short("gens 2; (x1 ^ x2) _ x1 = x2 ^ x2");
        let expected = PresentationMatrix::from_rows(&[
            &[0, 0, 0, 0, 0, 3, 0, 0],
            &[0, 0, 0, 0, 0, 4, 0, 0],
            &[4, 0, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 0, 0],
        ])
        .unwrap();
        assert_eq!(s.matrix, expected);
        assert!(s.merges.is_empty());
    }

    #[test]
    fn short_form_input_is_unchanged() {
        let s = short("gens 4\nx2 = x1 _ x3\nx4 = x3 ^ x1\nx3 = x1 ^ x2\nx2 _ x1 = x4");
        assert_eq!(s.matrix.size(), 4);
        assert_eq!(s.matrix.relations().len(), 4);
        assert_eq!(s.matrix.get(Op::Under, 2, 1), 4);
    }

    #[test]
    fn single_relation_fills_one_cell() {
        let s = short("gens 1; x1 _ x1 = x1");
        assert_eq!(s.matrix, PresentationMatrix::from_rows(&[&[1, 0]]).unwrap());
    }

    #[test]
    fn generator_equations_become_merges() {
        let s = short("gens 3; x1 = x3; x2 = x2; x1 _ x2 = x3; x3 = x1 _ x2; x2 = x1 _ x2");
        assert_eq!(s.matrix.size(), 3);
        assert_eq!(s.merges, vec![(1, 3), (2, 3)]);
    }

    #[test]
    fn repeated_subterms_share_a_generator() {
        let s = short("gens 2; (x1 _ x2) ^ (x1 _ x2) = x1");
        assert_eq!(s.matrix.size(), 3);
        assert_eq!(s.matrix.get(Op::Under, 1, 2), 3);
        assert_eq!(s.matrix.get(Op::Over, 3, 3), 1);
    }
}
