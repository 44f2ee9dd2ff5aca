use super::EquivalenceTracker;
use crate::algebra::Op;
use crate::presentation::PresentationMatrix;
use crate::Element;

/// Applies every merge recorded in `tracker` to `m`.
///
/// Merged generators are replaced by the smallest member of their class;
/// their rows and columns are combined in both blocks, and two different
/// known values landing in the same cell are merged in turn until nothing
/// conflicts. Surviving generators are then renumbered `1..=n'` in their
/// original order. `tracker` is reset to the new size.
pub fn reduce(m: &PresentationMatrix, tracker: &mut EquivalenceTracker) -> PresentationMatrix {
    reduce_with_map(m, tracker).0
}

/// As [`reduce`], also returning `map` with `map[x]` the new index of old
/// generator `x` (`map[0]` unused).
pub(crate) fn reduce_with_map(
    m: &PresentationMatrix,
    tracker: &mut EquivalenceTracker,
) -> (PresentationMatrix, Vec<Element>) {
    let n = m.size();
    debug_assert_eq!(tracker.size(), n);
    let mut merged = [vec![0 as Element; n * n], vec![0 as Element; n * n]];
    loop {
        let mut conflict = false;
        for block in merged.iter_mut() {
            block.fill(0);
        }
        for op in Op::BOTH {
            let src = m.block(op);
            let dst = &mut merged[op.block()];
            for (i, &value) in src.iter().enumerate() {
                if value == 0 {
                    continue;
                }
                let r = tracker.find((i / n) as Element + 1);
                let c = tracker.find((i % n) as Element + 1);
                let v = tracker.find(value);
                let slot = &mut dst[(r as usize - 1) * n + (c as usize - 1)];
                if *slot == 0 {
                    *slot = v;
                } else {
                    let existing = tracker.find(*slot);
                    if existing != v {
                        tracker.merge(existing, v);
                        conflict = true;
                    }
                }
            }
        }
        if !conflict {
            break;
        }
    }

    let mut map = vec![0 as Element; n + 1];
    let mut next = 0;
    for x in 1..=n as Element {
        if tracker.find(x) == x {
            next += 1;
            map[x as usize] = next;
        }
    }
    for x in 1..=n as Element {
        map[x as usize] = map[tracker.find(x) as usize];
    }
    let size = next as usize;
    let mut out = PresentationMatrix::zeros(size);
    for op in Op::BOTH {
        let block = &merged[op.block()];
        for r in 1..=n as Element {
            if tracker.find(r) != r {
                continue;
            }
            for c in 1..=n as Element {
                if tracker.find(c) != c {
                    continue;
                }
                let v = block[(r as usize - 1) * n + (c as usize - 1)];
                if v != 0 {
                    out.set(op, map[r as usize], map[c as usize], map[v as usize]);
                }
            }
        }
    }
    *tracker = EquivalenceTracker::new(size);
    (out, map)
}
