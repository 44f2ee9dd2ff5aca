use std::fmt;

use crate::algebra::{BikeiTable, Op};
use crate::error::{Error, Result};
use crate::text;
use crate::Element;

/// One short-form relation: `result = x ▁ y` or `result = x ▔ y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub op: Op,
    pub x: Element,
    pub y: Element,
    pub result: Element,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x{} = x{} {} x{}",
            self.result,
            self.x,
            self.op.symbol(),
            self.y
        )
    }
}

/// A partial `n × 2n` operation table; `0` marks an unknown entry.
///
/// Nonzero entries are exactly the short-form relations of a presentation:
/// `under[k][y] = j` encodes `x_j = x_k ▁ x_y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PresentationMatrix {
    n: usize,
    cells: [Vec<Element>; 2],
}

impl PresentationMatrix {
    /// The all-unknown matrix on `n` generators.
    pub fn zeros(n: usize) -> Self {
        PresentationMatrix {
            n,
            cells: [vec![0; n * n], vec![0; n * n]],
        }
    }

    pub fn new(n: usize, under: Vec<Element>, over: Vec<Element>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTable(
                "matrix must have at least one generator".into(),
            ));
        }
        for block in [&under, &over] {
            if block.len() != n * n {
                return Err(Error::MalformedTable(format!(
                    "block has {} entries, expected {}",
                    block.len(),
                    n * n
                )));
            }
            if let Some(bad) = block.iter().find(|&&e| e as usize > n) {
                return Err(Error::MalformedTable(format!(
                    "entry {bad} outside 0..={n}"
                )));
            }
        }
        Ok(PresentationMatrix {
            n,
            cells: [under, over],
        })
    }

    /// Builds a matrix from rows of `2n` entries (under block, then over block).
    pub fn from_rows(rows: &[&[Element]]) -> Result<Self> {
        let n = rows.len();
        let mut under = Vec::with_capacity(n * n);
        let mut over = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != 2 * n {
                return Err(Error::MalformedTable(format!(
                    "row has {} entries, expected {}",
                    row.len(),
                    2 * n
                )));
            }
            under.extend_from_slice(&row[..n]);
            over.extend_from_slice(&row[n..]);
        }
        PresentationMatrix::new(n, under, over)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let b = text::parse_blocks(text, true)?;
        PresentationMatrix::new(b.n, b.under, b.over)
    }

    pub fn to_text(&self) -> String {
        text::format_blocks(self.n, &self.cells[0], &self.cells[1])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, op: Op, x: Element, y: Element) -> Element {
        self.cells[op.block()][(x as usize - 1) * self.n + (y as usize - 1)]
    }

    #[inline]
    pub fn set(&mut self, op: Op, x: Element, y: Element, value: Element) {
        debug_assert!(value as usize <= self.n);
        self.cells[op.block()][(x as usize - 1) * self.n + (y as usize - 1)] = value;
    }

    pub fn block(&self, op: Op) -> &[Element] {
        &self.cells[op.block()]
    }

    pub fn zero_count(&self) -> usize {
        self.cells
            .iter()
            .map(|b| b.iter().filter(|&&e| e == 0).count())
            .sum()
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|b| b.iter().all(|&e| e != 0))
    }

    /// Unknown cells in `(block, row, column)` order.
    pub fn zero_cells(&self) -> impl Iterator<Item = (Op, Element, Element)> + '_ {
        let n = self.n;
        Op::BOTH.into_iter().flat_map(move |op| {
            self.cells[op.block()]
                .iter()
                .enumerate()
                .filter(|(_, &e)| e == 0)
                .map(move |(i, _)| (op, (i / n) as Element + 1, (i % n) as Element + 1))
        })
    }

    /// Appends one all-unknown generator.
    pub fn expand(&self) -> PresentationMatrix {
        let n = self.n;
        let m = n + 1;
        let mut cells = [vec![0; m * m], vec![0; m * m]];
        for (dst, src) in cells.iter_mut().zip(&self.cells) {
            for row in 0..n {
                dst[row * m..row * m + n].copy_from_slice(&src[row * n..(row + 1) * n]);
            }
        }
        PresentationMatrix { n: m, cells }
    }

    /// One relation per nonzero entry, in `(block, row, column)` order.
    pub fn relations(&self) -> Vec<Relation> {
        let n = self.n;
        let mut out = Vec::new();
        for op in Op::BOTH {
            for (i, &result) in self.cells[op.block()].iter().enumerate() {
                if result != 0 {
                    out.push(Relation {
                        op,
                        x: (i / n) as Element + 1,
                        y: (i % n) as Element + 1,
                        result,
                    });
                }
            }
        }
        out
    }

    /// Encodes relations on `n` generators. Two relations giving the same
    /// cell different values are returned as merge pairs instead.
    pub fn from_relations(
        n: usize,
        relations: &[Relation],
    ) -> Result<(Self, Vec<(Element, Element)>)> {
        let mut m = PresentationMatrix::zeros(n);
        let mut merges = Vec::new();
        for r in relations {
            if [r.x, r.y, r.result]
                .iter()
                .any(|&e| e == 0 || e as usize > n)
            {
                return Err(Error::MalformedTable(format!(
                    "relation `{r}` uses a generator outside 1..={n}"
                )));
            }
            match m.get(r.op, r.x, r.y) {
                0 => m.set(r.op, r.x, r.y, r.result),
                v if v == r.result => {}
                v => merges.push((v.min(r.result), v.max(r.result))),
            }
        }
        Ok((m, merges))
    }

    /// The complete table, if no entry is unknown.
    pub fn to_table(&self) -> Option<BikeiTable> {
        if !self.is_complete() {
            return None;
        }
        BikeiTable::new(self.n, self.cells[0].clone(), self.cells[1].clone()).ok()
    }
}

impl From<&BikeiTable> for PresentationMatrix {
    fn from(t: &BikeiTable) -> Self {
        PresentationMatrix {
            n: t.size(),
            cells: [t.under_block().to_vec(), t.over_block().to_vec()],
        }
    }
}

impl fmt::Debug for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PresentationMatrix(\n{})", self.to_text())
    }
}

impl fmt::Display for PresentationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
