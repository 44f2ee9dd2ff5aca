use bikei::algebra::is_isomorphic;
use bikei::diagram::{parse_corpus, Pass, Role, Sign};
use bikei::engine::complete;
use bikei::presentation::{parse_presentation, to_short_form};
use bikei::{DiagramCode, EngineConfig, Op};
use proptest::prelude::*;

/// A random code: `k` crossings, each passed once over and once under,
/// dealt into `c` components.
fn code() -> impl Strategy<Value = DiagramCode> {
    (0usize..6, 1usize..4)
        .prop_flat_map(|(k, c)| {
            let passes: Vec<(u32, Role)> = (1..=k as u32)
                .flat_map(|x| [(x, Role::Over), (x, Role::Under)])
                .collect();
            (
                Just(passes).prop_shuffle(),
                prop::collection::vec(0..c, 2 * k),
                prop::collection::vec(any::<bool>(), k),
                Just(c),
            )
        })
        .prop_map(|(passes, comps, signs, c)| {
            let mut components = vec![Vec::new(); c];
            for ((crossing, role), comp) in passes.into_iter().zip(comps) {
                let sign = if signs[crossing as usize - 1] {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                components[comp].push(Pass {
                    crossing,
                    role,
                    sign,
                });
            }
            DiagramCode::new(components).unwrap()
        })
}

proptest! {
    #[test]
    fn relation_and_generator_counts(d in code()) {
        let (n, relations) = d.relations();
        let passes: usize = d.components().iter().map(|c| c.len().max(1)).sum();
        prop_assert_eq!(n, passes);
        prop_assert_eq!(relations.len(), 2 * d.crossing_count());
        prop_assert_eq!(relations.iter().filter(|r| r.op == Op::Under).count(), d.crossing_count());
    }

    #[test]
    fn ports_are_used_once_each_way(d in code()) {
        let labels = d.label_semiarcs();
        let mut ins = vec![0; labels.semiarc_count + 1];
        let mut outs = vec![0; labels.semiarc_count + 1];
        for c in &labels.crossings {
            ins[c.under_in as usize] += 1;
            ins[c.over_in as usize] += 1;
            outs[c.under_out as usize] += 1;
            outs[c.over_out as usize] += 1;
        }
        let with_passes: usize = d.components().iter().filter(|c| !c.is_empty()).map(|c| c.len()).sum();
        prop_assert_eq!(ins.iter().sum::<usize>(), with_passes);
        prop_assert!(ins.iter().all(|&k| k <= 1) && outs.iter().all(|&k| k <= 1));
    }

    #[test]
    fn text_round_trips(d in code()) {
        let text = d.to_string();
        prop_assert_eq!(text.parse::<DiagramCode>().unwrap(), d);
    }

    #[test]
    fn rotation_and_reversal_keep_the_relation_count(d in code(), by in 0usize..8) {
        for c in 0..d.components().len() {
            let r = d.rotated(c, by).reversed(c);
            prop_assert_eq!(r.relations().1.len(), d.relations().1.len());
            prop_assert_eq!(r.relations().0, d.relations().0);
        }
    }
}

#[test]
fn word_presentation_of_the_virtual_trefoil() {
    let code: DiagramCode = "O1+U2+U1+O2+".parse().unwrap();
    let (n, relations) = code.relations();
    let text = std::iter::once(format!("gens {n}"))
        .chain(
            relations
                .iter()
                .map(|r| format!("x{} = x{} {} x{}", r.result, r.x, r.op.symbol(), r.y)),
        )
        .collect::<Vec<_>>()
        .join("\n");
    let short = to_short_form(&parse_presentation(&text).unwrap());
    let from_words = complete(&short.matrix, &short.merges, &EngineConfig::default())
        .unwrap()
        .table
        .unwrap();
    let direct = code.to_presentation();
    let from_code = complete(&direct.matrix, &direct.merges, &EngineConfig::default())
        .unwrap()
        .table
        .unwrap();
    assert_eq!(from_words.size(), 2);
    assert!(is_isomorphic(&from_words, &from_code).is_some());
}

#[test]
fn nested_words_complete_like_flat_ones() {
    // x2 = (x1 _ x1) ^ x1 needs a fresh generator for x1 _ x1
    let nested = to_short_form(&parse_presentation("gens 2; x2 = (x1 _ x1) ^ x1").unwrap());
    assert_eq!(nested.matrix.size(), 3);
    let flat = to_short_form(&parse_presentation("gens 3; x3 = x1 _ x1; x2 = x3 ^ x1").unwrap());
    let cfg = EngineConfig::default();
    let a = complete(&nested.matrix, &nested.merges, &cfg)
        .unwrap()
        .table
        .unwrap();
    let b = complete(&flat.matrix, &flat.merges, &cfg)
        .unwrap()
        .table
        .unwrap();
    assert!(is_isomorphic(&a, &b).is_some());
}

#[test]
fn shipped_corpus_parses() {
    let dir = format!("{}/../../data", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(format!("{dir}/corpus.txt")).unwrap();
    let entries = parse_corpus(&text).unwrap();
    assert_eq!(entries.len(), 6);
    for (name, code) in entries {
        match code.strip_prefix('@') {
            Some(file) => assert!(
                std::path::Path::new(&format!("{dir}/{file}")).is_file(),
                "{name}"
            ),
            None => assert!(code.parse::<DiagramCode>().is_ok(), "{name}"),
        }
    }
}
