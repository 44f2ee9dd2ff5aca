//! Completes the fundamental medial bikei of a few Gauss codes and reports
//! sizes and timings.
//!
//! ```text
//! cargo run --release -p bikei-core --example completion -- [lex|score] [max-size]
//! ```

use std::time::Instant;

use bikei::{DiagramCode, EngineConfig, ZeroStrategy};

const CODES: &[(&str, &str)] = &[
    ("unknot", ""),
    ("virtual trefoil", "O1+U2+U1+O2+"),
    ("virtual hopf", "O1+;U1+"),
    ("trefoil", "O1+U2+O3+U1+O2+U3+"),
    ("figure-eight", "U1-O2-U3+O1-U4+O3+U2-O4+"),
    ("virtual 4-crossing", "O1+U2+O3-U4-U1+O2+U3-O4-"),
    ("unlink", ";"),
];

fn main() {
    let mut args = std::env::args().skip(1);
    let zero_strategy: ZeroStrategy = args
        .next()
        .map_or(Ok(ZeroStrategy::Score), |s| s.parse())
        .unwrap();
    let max_size = args.next().map_or(500, |s| s.parse().unwrap());
    let cfg = EngineConfig {
        zero_strategy,
        max_size,
        ..EngineConfig::default()
    };
    for (name, code) in CODES {
        let code: DiagramCode = code.parse().unwrap();
        let short = code.to_presentation();
        let start = Instant::now();
        let out = bikei::engine::complete(&short.matrix, &short.merges, &cfg).unwrap();
        println!(
            "{name:>16}: {:?} n={} peak={} adjoined={} merges={} in {:.2?}",
            out.status,
            out.final_size,
            out.stats.peak_size,
            out.stats.adjoined,
            out.stats.merges,
            start.elapsed()
        );
    }
}
