use std::collections::VecDeque;

use super::identity::{identities, Action, Identity};
use super::reduce::reduce_with_map;
use super::score::choose_cell;
use super::sweep::sweep;
use super::{EngineConfig, EquivalenceTracker, TraceEvent};
use crate::algebra::{check_bikei_axioms, check_medial, BikeiTable, Op};
use crate::error::{Error, Result};
use crate::presentation::PresentationMatrix;
use crate::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Finite,
    BoundExceeded,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub fills: usize,
    pub merges: usize,
    pub adjoined: usize,
    pub peak_size: usize,
}

#[derive(Debug, Clone)]
pub struct CompletionOutcome {
    pub status: Status,
    /// The completed table, present iff `status` is [`Status::Finite`].
    pub table: Option<BikeiTable>,
    pub final_size: usize,
    pub bound: usize,
    /// `generator_map[x]` is the element input generator `x` ended up as
    /// (`generator_map[0]` unused).
    pub generator_map: Vec<Element>,
    pub trace: Option<Vec<TraceEvent>>,
    pub stats: Stats,
}

impl CompletionOutcome {
    pub fn is_finite(&self) -> bool {
        self.status == Status::Finite
    }
}

/// Completes `m` to a finite bikei (medial unless `cfg.medial` is off),
/// after first identifying each pair of generators in `seeds`.
///
/// Deduction is incremental: every newly known cell is checked against the
/// identity instantiations passing through it, merges are applied as soon
/// as they are found, and when nothing more follows a fresh generator is
/// adjoined. A total table is swept once more in full and verified before it
/// is returned.
pub fn complete(
    m: &PresentationMatrix,
    seeds: &[(Element, Element)],
    cfg: &EngineConfig,
) -> Result<CompletionOutcome> {
    if cfg.max_size == 0 {
        return Err(Error::Precondition("max size must be at least 1".into()));
    }
    let n = m.size();
    if let Some(&(a, b)) = seeds
        .iter()
        .find(|&&(a, b)| a == 0 || b == 0 || a as usize > n || b as usize > n)
    {
        return Err(Error::Precondition(format!(
            "merge ({a}, {b}) names a generator outside 1..={n}"
        )));
    }
    let mut run = Run::new(m.clone(), cfg);
    for &(a, b) in seeds {
        run.tracker.merge(a, b);
    }
    run.apply_merges();
    run.enqueue_all();
    run.finish()
}

struct Run<'a> {
    cfg: &'a EngineConfig,
    ids: Vec<Identity>,
    m: PresentationMatrix,
    tracker: EquivalenceTracker,
    queue: VecDeque<(Op, Element, Element)>,
    actions: Vec<Action>,
    events: Option<Vec<TraceEvent>>,
    map: Vec<Element>,
    stats: Stats,
}

impl<'a> Run<'a> {
    fn new(m: PresentationMatrix, cfg: &'a EngineConfig) -> Self {
        let n = m.size();
        Run {
            cfg,
            ids: identities(cfg.medial),
            tracker: EquivalenceTracker::new(n),
            m,
            queue: VecDeque::new(),
            actions: Vec::new(),
            events: cfg.trace.then(Vec::new),
            map: (0..=n as Element).collect(),
            stats: Stats {
                peak_size: n,
                ..Stats::default()
            },
        }
    }

    fn log(&mut self, event: TraceEvent) {
        if let Some(events) = &mut self.events {
            events.push(event);
        }
    }

    fn enqueue_all(&mut self) {
        let n = self.m.size() as Element;
        for op in Op::BOTH {
            for r in 1..=n {
                for c in 1..=n {
                    if self.m.get(op, r, c) != 0 {
                        self.queue.push_back((op, r, c));
                    }
                }
            }
        }
    }

    fn finish(mut self) -> Result<CompletionOutcome> {
        loop {
            self.drain();
            if self.m.is_complete() {
                let mut events = Vec::new();
                sweep(&mut self.m, &mut self.tracker, &self.ids, &mut events);
                debug_assert!(events.is_empty(), "a total table has nothing to fill");
                if self.tracker.has_pending() {
                    self.apply_merges();
                    continue;
                }
                return self.finite();
            }
            if self.m.size() >= self.cfg.max_size {
                return Ok(self.outcome(Status::BoundExceeded, None));
            }
            self.adjoin();
        }
    }

    fn adjoin(&mut self) {
        let (op, row, col) = choose_cell(&self.m, &self.ids, self.cfg.zero_strategy)
            .expect("matrix has an unknown cell");
        self.log(TraceEvent::Adjoin { op, row, col });
        self.m = self.m.expand();
        let fresh = self.m.size() as Element;
        self.m.set(op, row, col, fresh);
        self.tracker = EquivalenceTracker::new(self.m.size());
        self.queue.push_back((op, row, col));
        self.stats.adjoined += 1;
        self.stats.peak_size = self.stats.peak_size.max(self.m.size());
    }

    fn drain(&mut self) {
        while let Some((op, row, col)) = self.queue.pop_front() {
            self.process(op, row, col);
            if self.tracker.has_pending() {
                self.apply_merges();
            }
        }
    }

    fn process(&mut self, op: Op, row: Element, col: Element) {
        if self.m.get(op, row, col) == 0 {
            return;
        }
        let Run {
            ids, m, actions, ..
        } = self;
        actions.clear();
        for id in ids.iter() {
            for plan in id.plans.iter().filter(|p| p.op == op) {
                id.for_each_triggered(plan, row, col, m, &mut |_, action| {
                    if action != Action::None {
                        actions.push(action)
                    }
                });
            }
        }
        for i in 0..self.actions.len() {
            match self.actions[i] {
                Action::None => {}
                Action::Fill { op, x, y, value } => self.fill(op, x, y, value),
                Action::Merge(a, b) => {
                    self.tracker.merge(a, b);
                }
            }
        }
    }

    fn fill(&mut self, op: Op, x: Element, y: Element, value: Element) {
        match self.m.get(op, x, y) {
            0 => {
                self.m.set(op, x, y, value);
                self.log(TraceEvent::Fill {
                    op,
                    row: x,
                    col: y,
                    value,
                });
                self.queue.push_back((op, x, y));
                self.stats.fills += 1;
            }
            known if known != value => {
                self.tracker.merge(known, value);
            }
            _ => {}
        }
    }

    /// Applies the pending merges one at a time, then revisits every known
    /// cell in the rows and columns of generators that absorbed others.
    fn apply_merges(&mut self) {
        let pending = self.tracker.take_pending();
        let n0 = self.m.size();
        let mut to: Vec<Element> = (0..=n0 as Element).collect();
        for (a, b) in pending {
            let (a, b) = (to[a as usize], to[b as usize]);
            if a == b {
                continue;
            }
            self.log(TraceEvent::Merge(a.min(b), a.max(b)));
            self.stats.merges += 1;
            let mut single = EquivalenceTracker::new(self.m.size());
            single.merge(a, b);
            let (m, step) = reduce_with_map(&self.m, &mut single);
            self.m = m;
            for x in to.iter_mut() {
                *x = step[*x as usize];
            }
        }
        self.tracker = EquivalenceTracker::new(self.m.size());
        for x in self.map.iter_mut() {
            *x = to[*x as usize];
        }
        for (_, a, b) in self.queue.iter_mut() {
            *a = to[*a as usize];
            *b = to[*b as usize];
        }
        let n = self.m.size() as Element;
        let mut absorbed = vec![0usize; n as usize + 1];
        for &x in &to[1..] {
            absorbed[x as usize] += 1;
        }
        for g in (1..=n).filter(|&g| absorbed[g as usize] > 1) {
            for op in Op::BOTH {
                for k in 1..=n {
                    for (r, c) in [(g, k), (k, g)] {
                        if self.m.get(op, r, c) != 0 {
                            self.queue.push_back((op, r, c));
                        }
                    }
                }
            }
        }
    }

    fn finite(self) -> Result<CompletionOutcome> {
        let table = self
            .m
            .to_table()
            .ok_or_else(|| Error::EngineBug("completed matrix is not total".into()))?;
        let mut violations = check_bikei_axioms(&table);
        if self.cfg.medial {
            violations.extend(check_medial(&table));
        }
        if let Some(v) = violations.first() {
            return Err(Error::EngineBug(format!(
                "completed table violates {} axiom instance(s), first {v}",
                violations.len()
            )));
        }
        Ok(self.outcome(Status::Finite, Some(table)))
    }

    fn outcome(self, status: Status, table: Option<BikeiTable>) -> CompletionOutcome {
        CompletionOutcome {
            status,
            table,
            final_size: self.m.size(),
            bound: self.cfg.max_size,
            generator_map: self.map,
            trace: self.events,
            stats: self.stats,
        }
    }
}
