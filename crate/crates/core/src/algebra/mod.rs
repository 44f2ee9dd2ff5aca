//! Finite bikei: complete operation tables, axiom checks, standard families
//! and isomorphism testing.

mod axioms;
pub(crate) mod families;
mod iso;

use std::fmt;

pub use axioms::{check_bikei_axioms, check_medial, AxiomId, AxiomViolation};
pub use families::{alexander_bikei, core_kei, takasaki_kei, trivial_bikei, unknot_bikei};
pub use iso::{invariant_profile, is_isomorphic, Isomorphism, Profile};

use crate::error::{Error, Result};
use crate::text;
use crate::Element;

/// One of the two bikei operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// `x ▁ y`, the left block of a bikei matrix.
    Under,
    /// `x ▔ y`, the right block of a bikei matrix.
    Over,
}

impl Op {
    pub const BOTH: [Op; 2] = [Op::Under, Op::Over];

    /// Block index in the matrix layout: 0 for `Under`, 1 for `Over`.
    pub fn block(self) -> usize {
        match self {
            Op::Under => 0,
            Op::Over => 1,
        }
    }

    pub fn from_block(block: usize) -> Option<Op> {
        match block {
            0 => Some(Op::Under),
            1 => Some(Op::Over),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Op::Under => '_',
            Op::Over => '^',
        }
    }
}

/// A complete finite bikei operation table on elements `1..=n`.
///
/// Row `j`, column `k` of the under block holds `x_j ▁ x_k`; the over block
/// holds `x_j ▔ x_k`. Construction only checks that the table is total; use
/// [`check_bikei_axioms`] and [`check_medial`] to check the axioms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BikeiTable {
    n: usize,
    under: Vec<Element>,
    over: Vec<Element>,
}

impl BikeiTable {
    /// Builds a table from row-major `n × n` blocks.
    pub fn new(n: usize, under: Vec<Element>, over: Vec<Element>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable(
                "table must have at least one element".into(),
            ));
        }
        for (name, block) in [("under", &under), ("over", &over)] {
            if block.len() != n * n {
                return Err(Error::MalformedTable(format!(
                    "{name} block has {} entries, expected {}",
                    block.len(),
                    n * n
                )));
            }
            if let Some(pos) = block.iter().position(|&e| e == 0 || e as usize > n) {
                return Err(Error::MalformedTable(format!(
                    "{name}[{}][{}] = {} is outside 1..={n}",
                    pos / n + 1,
                    pos % n + 1,
                    block[pos]
                )));
            }
        }
        Ok(BikeiTable { n, under, over })
    }

    /// Builds a table from a function giving `(x ▁ y, x ▔ y)` for 1-based `x`, `y`.
    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(Element, Element) -> (Element, Element),
    ) -> Result<Self> {
        let mut under = Vec::with_capacity(n * n);
        let mut over = Vec::with_capacity(n * n);
        for x in 1..=n as Element {
            for y in 1..=n as Element {
                let (u, o) = f(x, y);
                under.push(u);
                over.push(o);
            }
        }
        BikeiTable::new(n, under, over)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let blocks = text::parse_blocks(text, false)?;
        BikeiTable::new(blocks.n, blocks.under, blocks.over)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn under(&self, x: Element, y: Element) -> Element {
        self.under[(x as usize - 1) * self.n + (y as usize - 1)]
    }

    #[inline]
    pub fn over(&self, x: Element, y: Element) -> Element {
        self.over[(x as usize - 1) * self.n + (y as usize - 1)]
    }

    #[inline]
    pub fn apply(&self, op: Op, x: Element, y: Element) -> Element {
        match op {
            Op::Under => self.under(x, y),
            Op::Over => self.over(x, y),
        }
    }

    /// Row-major under block.
    pub fn under_block(&self) -> &[Element] {
        &self.under
    }

    /// Row-major over block.
    pub fn over_block(&self) -> &[Element] {
        &self.over
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        1..=self.n as Element
    }

    /// Swaps the two operations.
    pub fn vertical_mirror(&self) -> BikeiTable {
        BikeiTable {
            n: self.n,
            under: self.over.clone(),
            over: self.under.clone(),
        }
    }

    /// Componentwise product; the pair `(i, j)` becomes element
    /// `(i - 1) * other.size() + j`.
    pub fn cartesian_product(&self, other: &BikeiTable) -> BikeiTable {
        let m = other.n as Element;
        let pair = |i: Element, j: Element| (i - 1) * m + j;
        let split = |e: Element| ((e - 1) / m + 1, (e - 1) % m + 1);
        BikeiTable::from_fn(self.n * other.n, |x, y| {
            let (x1, x2) = split(x);
            let (y1, y2) = split(y);
            (
                pair(self.under(x1, y1), other.under(x2, y2)),
                pair(self.over(x1, y1), other.over(x2, y2)),
            )
        })
        .expect("product of total tables is total")
    }

    /// Renames element `x` to `perm[x - 1]`.
    pub fn relabel(&self, perm: &[Element]) -> Result<BikeiTable> {
        let n = self.n;
        let mut seen = vec![false; n + 1];
        if perm.len() != n
            || perm.iter().any(|&p| {
                p == 0 || p as usize > n || std::mem::replace(&mut seen[p as usize], true)
            })
        {
            return Err(Error::InvalidParameters(
                "relabeling is not a permutation".into(),
            ));
        }
        let mut under = vec![0; n * n];
        let mut over = vec![0; n * n];
        for x in self.elements() {
            for y in self.elements() {
                let (px, py) = (
                    perm[x as usize - 1] as usize - 1,
                    perm[y as usize - 1] as usize - 1,
                );
                under[px * n + py] = perm[self.under(x, y) as usize - 1];
                over[px * n + py] = perm[self.over(x, y) as usize - 1];
            }
        }
        Ok(BikeiTable { n, under, over })
    }

    /// Renders the table in the shared text format.
    pub fn to_text(&self) -> String {
        text::format_blocks(self.n, &self.under, &self.over)
    }
}

impl fmt::Debug for BikeiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BikeiTable(\n{})", self.to_text())
    }
}

impl fmt::Display for BikeiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
