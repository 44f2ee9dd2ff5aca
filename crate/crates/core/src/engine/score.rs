use super::identity::{identities, Action, Identity};
use super::sweep::sweep;
use super::{EngineConfig, EquivalenceTracker, ZeroStrategy};
use crate::algebra::Op;
use crate::error::{Error, Result};
use crate::presentation::PresentationMatrix;
use crate::Element;

pub type Cell = (Op, Element, Element);

/// Scores every unknown cell of `m`, in (block, row, column) order.
///
/// The score of a cell is the number of entries one [`propagate_once`]
/// sweep fills after the matrix is expanded and the cell set to the fresh
/// generator `n + 1`. `m` is not modified.
///
/// [`propagate_once`]: super::propagate_once
pub fn score_zeros(m: &PresentationMatrix, medial: bool) -> Result<Vec<(Cell, usize)>> {
    let zeros: Vec<Cell> = m.zero_cells().collect();
    if zeros.is_empty() {
        return Err(Error::Precondition("matrix has no unknown cells".into()));
    }
    let ids = identities(medial);
    let base = m.expand();
    let fresh = base.size() as Element;
    Ok(zeros
        .into_iter()
        .map(|(op, row, col)| {
            let mut trial = base.clone();
            trial.set(op, row, col, fresh);
            let mut tracker = EquivalenceTracker::new(trial.size());
            let mut events = Vec::new();
            sweep(&mut trial, &mut tracker, &ids, &mut events);
            ((op, row, col), events.len())
        })
        .collect())
}

/// Expands `m` by one generator and stores it in the cell chosen by
/// `cfg.zero_strategy`: the highest [`score_zeros`] score (ties go to the
/// earliest cell) or the first unknown cell.
pub fn adjoin_generator(m: &PresentationMatrix, cfg: &EngineConfig) -> Result<PresentationMatrix> {
    let Some(first) = m.zero_cells().next() else {
        return Err(Error::Precondition("matrix has no unknown cells".into()));
    };
    if m.size() >= cfg.max_size {
        return Err(Error::BoundExceeded {
            bound: cfg.max_size,
        });
    }
    let (op, row, col) = match cfg.zero_strategy {
        ZeroStrategy::Lex => first,
        ZeroStrategy::Score => best(score_zeros(m, cfg.medial)?),
    };
    let mut out = m.expand();
    let fresh = out.size() as Element;
    out.set(op, row, col, fresh);
    Ok(out)
}

fn best(scored: impl IntoIterator<Item = (Cell, usize)>) -> Cell {
    let mut top: Option<(Cell, usize)> = None;
    for (cell, score) in scored {
        if top.is_none_or(|(_, s)| score > s) {
            top = Some((cell, score));
        }
    }
    top.expect("at least one candidate").0
}

/// How many candidate cells the engine scores before adjoining.
const CANDIDATES: usize = 32;

/// The engine's cell choice.
///
/// Under SCORE the candidates are the first unknown cells, in (block, row,
/// column) order, of the smallest square `1..=k` that still has any; each is
/// scored by the distinct cells directly forced by the instantiations
/// through it. Restricting to the innermost square keeps the choice fair, so
/// no row is extended forever while others wait.
pub(crate) fn choose_cell(
    m: &PresentationMatrix,
    ids: &[Identity],
    strategy: ZeroStrategy,
) -> Option<Cell> {
    let first = m.zero_cells().next()?;
    if strategy == ZeroStrategy::Lex {
        return Some(first);
    }
    let shell = m.zero_cells().map(|(_, r, c)| r.max(c)).min()?;
    let candidates = m
        .zero_cells()
        .filter(|&(_, r, c)| r.max(c) == shell)
        .take(CANDIDATES);
    Some(best(
        candidates.map(|cell| (cell, local_score(m, ids, cell))),
    ))
}

fn local_score(m: &PresentationMatrix, ids: &[Identity], cell: Cell) -> usize {
    let n = m.size() as Element;
    let fresh = n + 1;
    let get = |op: Op, a: Element, b: Element| {
        if (op, a, b) == cell {
            fresh
        } else if a == fresh || b == fresh {
            0
        } else {
            m.get(op, a, b)
        }
    };
    let mut forced: Vec<Cell> = Vec::new();
    for id in ids {
        for plan in id.plans.iter().filter(|p| p.op == cell.0) {
            id.for_each_triggered_by(plan, cell.1, cell.2, fresh, &get, &mut |_, action| {
                if let Action::Fill { op, x, y, .. } = action {
                    forced.push((op, x, y));
                }
            });
        }
    }
    forced.sort_unstable();
    forced.dedup();
    forced.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_scores() {
        let m = PresentationMatrix::zeros(1);
        let scores = score_zeros(&m, true).unwrap();
        assert_eq!(scores.len(), 2);
        assert_eq!(scores[0].1, scores[1].1);
        assert!(scores[0].1 >= 3, "{scores:?}");
    }

    #[test]
    fn complete_matrix_has_nothing_to_score() {
        let m = PresentationMatrix::from_rows(&[&[2, 2, 2, 2], &[1, 1, 1, 1]]).unwrap();
        assert!(score_zeros(&m, true).is_err());
        assert!(adjoin_generator(&m, &EngineConfig::default()).is_err());
    }

    #[test]
    fn lex_adjoins_first_cell() {
        let cfg = EngineConfig {
            zero_strategy: ZeroStrategy::Lex,
            ..EngineConfig::default()
        };
        let m = adjoin_generator(&PresentationMatrix::zeros(1), &cfg).unwrap();
        assert_eq!(
            m,
            PresentationMatrix::from_rows(&[&[2, 0, 0, 0], &[0, 0, 0, 0]]).unwrap()
        );
        let tight = EngineConfig { max_size: 1, ..cfg };
        assert!(matches!(
            adjoin_generator(&PresentationMatrix::zeros(1), &tight),
            Err(Error::BoundExceeded { bound: 1 })
        ));
    }

    #[test]
    fn score_ties_go_to_first_cell() {
        let m = adjoin_generator(&PresentationMatrix::zeros(1), &EngineConfig::default()).unwrap();
        assert_eq!(m.get(Op::Under, 1, 1), 2);
        let ids = identities(true);
        assert_eq!(
            choose_cell(&PresentationMatrix::zeros(1), &ids, ZeroStrategy::Score),
            Some((Op::Under, 1, 1))
        );
    }
}
