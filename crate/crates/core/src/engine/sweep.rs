use super::identity::{identities, Action, Identity};
use super::trace::TraceEvent;
use super::EquivalenceTracker;
use crate::presentation::PresentationMatrix;
use crate::Element;

/// One full pass over every instantiation of the identities, axioms in
/// order and variable tuples in ascending lexicographic order. Entries filled
/// during the pass are visible to later instantiations of the same pass.
pub(crate) fn sweep(
    m: &mut PresentationMatrix,
    tracker: &mut EquivalenceTracker,
    ids: &[Identity],
    events: &mut Vec<TraceEvent>,
) -> bool {
    let n = m.size() as Element;
    let mut changed = false;
    for id in ids {
        let mut vars = [1; 4];
        for v in vars.iter_mut().skip(id.vars) {
            *v = 0;
        }
        loop {
            let action = {
                let get = |op, a, b| m.get(op, a, b);
                id.act(&vars, &get)
            };
            match action {
                Action::None => {}
                Action::Fill { op, x, y, value } => {
                    m.set(op, x, y, value);
                    events.push(TraceEvent::Fill {
                        op,
                        row: x,
                        col: y,
                        value,
                    });
                    changed = true;
                }
                Action::Merge(a, b) => changed |= tracker.merge(a, b),
            }
            let mut i = id.vars;
            while i > 0 {
                i -= 1;
                if vars[i] < n {
                    vars[i] += 1;
                    break;
                }
                vars[i] = 1;
            }
            if vars[..id.vars].iter().all(|&v| v == 1) {
                break;
            }
        }
    }
    changed
}

/// Runs one deterministic propagation sweep over `m`.
///
/// Cells whose value is forced are filled in place; instantiations whose two
/// sides evaluate to different generators are recorded as merges in
/// `tracker`. Returns the new matrix and whether anything was filled or a
/// new merge recorded. Known entries are never overwritten.
pub fn propagate_once(
    m: &PresentationMatrix,
    tracker: &mut EquivalenceTracker,
    medial: bool,
) -> (PresentationMatrix, bool) {
    let mut out = m.clone();
    let changed = sweep(&mut out, tracker, &identities(medial), &mut Vec::new());
    (out, changed)
}
