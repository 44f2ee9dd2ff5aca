use bikei::algebra::{check_bikei_axioms, check_medial, is_isomorphic};
use bikei::engine::{
    adjoin_generator, complete, propagate_once, reduce, replay, score_zeros, CompletionOutcome,
    EquivalenceTracker, Status,
};
use bikei::{BikeiTable, DiagramCode, Element, EngineConfig, Op, PresentationMatrix, ZeroStrategy};
use proptest::prelude::*;

fn data(path: &str) -> PresentationMatrix {
    let full = format!(
        "{}/../../data/matrices/{path}.txt",
        env!("CARGO_MANIFEST_DIR")
    );
    PresentationMatrix::parse(&std::fs::read_to_string(full).unwrap()).unwrap()
}

fn lex() -> EngineConfig {
    EngineConfig {
        zero_strategy: ZeroStrategy::Lex,
        ..EngineConfig::default()
    }
}

/// The completion loop run literally: full sweeps to a fixpoint, merges
/// after each sweep, then one adjoined generator.
fn reference(m: &PresentationMatrix, cfg: &EngineConfig) -> Option<BikeiTable> {
    let mut m = m.clone();
    let mut tr = EquivalenceTracker::new(m.size());
    loop {
        loop {
            let (next, changed) = propagate_once(&m, &mut tr, cfg.medial);
            m = next;
            if tr.has_pending() {
                m = reduce(&m, &mut tr);
            } else if !changed {
                break;
            }
        }
        if m.is_complete() {
            return m.to_table();
        }
        m = adjoin_generator(&m, cfg).ok()?;
        tr = EquivalenceTracker::new(m.size());
    }
}

type Input = (&'static str, PresentationMatrix, Vec<(Element, Element)>);

fn inputs() -> Vec<Input> {
    let mut out = vec![
        ("unknot", data("unknot"), vec![]),
        ("virtual trefoil", data("virtual_trefoil"), vec![]),
        ("second unknot", data("second_unknot"), vec![]),
        ("4.71", data("virtual_4_71"), vec![]),
    ];
    for (name, code) in [("trefoil", "O1+U2+O3+U1+O2+U3+"), ("hopf", "O1+;U1+")] {
        let short = code.parse::<DiagramCode>().unwrap().to_presentation();
        out.push((name, short.matrix, short.merges));
    }
    out
}

fn run(
    m: &PresentationMatrix,
    seeds: &[(Element, Element)],
    cfg: &EngineConfig,
) -> CompletionOutcome {
    complete(m, seeds, cfg).unwrap()
}

#[test]
fn incremental_engine_agrees_with_reference_loop() {
    let cfg = EngineConfig {
        max_size: 40,
        ..lex()
    };
    for (name, m, seeds) in inputs()
        .into_iter()
        .filter(|(name, _, _)| *name != "hopf" && *name != "trefoil")
    {
        let ours = run(&m, &seeds, &cfg).table.unwrap();
        let theirs =
            reference(&m, &cfg).unwrap_or_else(|| panic!("reference did not finish {name}"));
        assert!(is_isomorphic(&ours, &theirs).is_some(), "{name}");
    }
    let trefoil = "O1+U2+O3+U1+O2+U3+"
        .parse::<DiagramCode>()
        .unwrap()
        .to_presentation();
    assert!(trefoil.merges.is_empty());
    let ours = run(&trefoil.matrix, &[], &cfg).table.unwrap();
    assert_eq!(ours.size(), 18);
    assert!(is_isomorphic(&ours, &reference(&trefoil.matrix, &cfg).unwrap()).is_some());
}

#[test]
fn outputs_contain_the_input_relations() {
    for (name, m, seeds) in inputs() {
        let out = run(&m, &seeds, &EngineConfig::default());
        let t = out.table.as_ref().unwrap();
        let f = |x: Element| out.generator_map[x as usize];
        for r in m.relations() {
            assert_eq!(t.apply(r.op, f(r.x), f(r.y)), f(r.result), "{name}: {r:?}");
        }
        for &(a, b) in &seeds {
            assert_eq!(f(a), f(b), "{name}");
        }
        assert!(
            check_bikei_axioms(t).is_empty() && check_medial(t).is_empty(),
            "{name}"
        );
    }
}

#[test]
fn finite_outputs_are_fixed_points() {
    for (name, m, seeds) in inputs() {
        let t = run(&m, &seeds, &EngineConfig::default()).table.unwrap();
        let again = run(&PresentationMatrix::from(&t), &[], &EngineConfig::default());
        assert_eq!(again.table.as_ref(), Some(&t), "{name}");
        assert_eq!(
            (again.stats.merges, again.stats.adjoined, again.stats.fills),
            (0, 0, 0),
            "{name}"
        );
    }
}

#[test]
fn traces_replay_to_the_output() {
    for strategy in [ZeroStrategy::Score, ZeroStrategy::Lex] {
        let cfg = EngineConfig {
            trace: true,
            zero_strategy: strategy,
            max_size: 60,
            ..EngineConfig::default()
        };
        for (name, m, seeds) in inputs() {
            let out = run(&m, &seeds, &cfg);
            let mut start = m.clone();
            if !seeds.is_empty() {
                let mut tr = EquivalenceTracker::new(m.size());
                for &(a, b) in &seeds {
                    tr.merge(a, b);
                }
                start = reduce(&start, &mut tr);
            }
            let mut events = out.trace.clone().unwrap();
            if !seeds.is_empty() {
                // seed merges are recorded first; the reduced start already has them
                let k = events
                    .iter()
                    .take_while(|e| matches!(e, bikei::engine::TraceEvent::Merge(..)))
                    .count();
                events.drain(..k);
            }
            let replayed = replay(&start, &events).unwrap();
            match out.table {
                Some(t) => assert_eq!(replayed, PresentationMatrix::from(&t), "{name} {strategy}"),
                None => assert_eq!(replayed.size(), out.final_size, "{name} {strategy}"),
            }
        }
    }
}

#[test]
fn unlink_stops_at_the_bound() {
    let out = run(
        &data("unlink"),
        &[],
        &EngineConfig {
            max_size: 30,
            ..EngineConfig::default()
        },
    );
    assert_eq!(out.status, Status::BoundExceeded);
    assert!(out.table.is_none());
    assert!(out.final_size >= 30);
    assert_eq!(out.bound, 30);
}

#[test]
fn seeds_must_name_generators() {
    assert!(complete(&data("unknot"), &[(1, 2)], &EngineConfig::default()).is_err());
    assert!(complete(
        &data("unknot"),
        &[],
        &EngineConfig {
            max_size: 0,
            ..EngineConfig::default()
        }
    )
    .is_err());
}

#[test]
fn unknot_lookahead_scores() {
    let scores = score_zeros(&PresentationMatrix::zeros(1), true).unwrap();
    assert_eq!(scores, vec![((Op::Under, 1, 1), 7), ((Op::Over, 1, 1), 7)]);
}

fn partial() -> impl Strategy<Value = PresentationMatrix> {
    (1usize..5).prop_flat_map(|n| {
        let cell = prop_oneof![3 => Just(0 as Element), 1 => 1..=n as Element];
        (
            prop::collection::vec(cell.clone(), n * n),
            prop::collection::vec(cell, n * n),
        )
            .prop_map(move |(u, o)| PresentationMatrix::new(n, u, o).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sweeps_never_overwrite(m in partial()) {
        let mut tr = EquivalenceTracker::new(m.size());
        let (next, changed) = propagate_once(&m, &mut tr, true);
        for op in Op::BOTH {
            for (before, after) in m.block(op).iter().zip(next.block(op)) {
                prop_assert!(*before == 0 || before == after);
            }
        }
        prop_assert_eq!(changed, next != m || tr.has_pending());
    }

    #[test]
    fn random_presentations_complete_soundly(m in partial(), lexical in any::<bool>()) {
        let cfg = EngineConfig {
            max_size: 24,
            trace: true,
            zero_strategy: if lexical { ZeroStrategy::Lex } else { ZeroStrategy::Score },
            ..EngineConfig::default()
        };
        let out = complete(&m, &[], &cfg).unwrap();
        let replayed = replay(&m, out.trace.as_ref().unwrap()).unwrap();
        match &out.table {
            Some(t) => {
                prop_assert!(check_bikei_axioms(t).is_empty() && check_medial(t).is_empty());
                let f = |x: Element| out.generator_map[x as usize];
                for r in m.relations() {
                    prop_assert_eq!(t.apply(r.op, f(r.x), f(r.y)), f(r.result));
                }
                prop_assert_eq!(replayed, PresentationMatrix::from(t));
            }
            None => prop_assert!(out.final_size >= 24),
        }
    }
}
