//! `bikei`: complete presentations, compute the fundamental medial bikei of
//! Gauss codes, verify and compare tables, classify corpora.

mod cache;
mod classify;
mod pipeline;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use bikei::algebra::{check_bikei_axioms, check_medial, is_isomorphic};
use bikei::diagram::parse_corpus;
use bikei::{BikeiTable, EngineConfig, Error, ZeroStrategy};
use clap::{Parser, Subcommand};

use cache::Cache;
use pipeline::{parse_code_arg, parse_matrix_input, read, render, Completed, Runner};

const EXIT_INPUT: u8 = 1;
const EXIT_BOUND: u8 = 2;
const EXIT_NEGATIVE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "bikei", version, about)]
struct Cli {
    /// Give up once this many generators are in play.
    #[arg(long, global = true, default_value_t = 500)]
    max_size: usize,

    /// Which unknown cell receives the next fresh generator.
    #[arg(long, global = true, default_value_t = ZeroStrategy::Score)]
    zero_strategy: ZeroStrategy,

    /// Complete to a bikei without the medial identities.
    #[arg(long, global = true)]
    plain_bikei: bool,

    /// Write the completion event log to this file.
    #[arg(long, global = true)]
    trace: Option<PathBuf>,

    /// Reuse completed tables stored in this directory.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Complete a presentation matrix (or `gens` presentation) file.
    Complete { file: PathBuf },
    /// Complete the presentation of a signed Gauss code, given inline or as a file.
    Knot { code: String },
    /// Test two tables for isomorphism and print a witness.
    Iso { a: PathBuf, b: PathBuf },
    /// Check a table against the bikei axioms.
    Verify {
        file: PathBuf,
        /// Also check the medial identities.
        #[arg(long)]
        medial: bool,
    },
    /// Complete every `name: code` entry of a corpus and group the results
    /// into isomorphism classes.
    Classify {
        corpus: PathBuf,
        /// Report file; the report goes to standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

impl Cli {
    fn runner(&self) -> Runner {
        Runner {
            cfg: EngineConfig {
                max_size: self.max_size,
                zero_strategy: self.zero_strategy,
                medial: !self.plain_bikei,
                ..EngineConfig::default()
            },
            cache: self.cache.clone().map(Cache::new),
            trace: self.trace.clone(),
        }
    }
}

fn print_completed(c: Completed) -> u8 {
    match c {
        Completed::Finite(t) => {
            print!("{}", render(&t));
            0
        }
        Completed::Exceeded { bound } => {
            println!("exceeded bound {bound}");
            EXIT_BOUND
        }
    }
}

fn load_table(path: &Path) -> Result<BikeiTable> {
    BikeiTable::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    let runner = cli.runner();
    match &cli.command {
        Command::Complete { file } => {
            let input = parse_matrix_input(&read(file)?)
                .with_context(|| format!("in {}", file.display()))?;
            Ok(print_completed(runner.run(&input)?))
        }
        Command::Knot { code } => Ok(print_completed(runner.run(&parse_code_arg(code)?)?)),
        Command::Iso { a, b } => {
            let (a, b) = (load_table(a)?, load_table(b)?);
            match is_isomorphic(&a, &b) {
                Some(iso) => {
                    let images: Vec<String> = iso.map.iter().map(|x| x.to_string()).collect();
                    println!("isomorphic");
                    println!("{}", images.join(" "));
                    Ok(0)
                }
                None => {
                    println!("not isomorphic");
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Verify { file, medial } => {
            let t = load_table(file)?;
            let mut violations = check_bikei_axioms(&t);
            if *medial {
                violations.extend(check_medial(&t));
            }
            for v in &violations {
                println!("{v}");
            }
            Ok(if violations.is_empty() {
                0
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Classify { corpus, output } => {
            let entries =
                parse_corpus(&read(corpus)?).with_context(|| format!("in {}", corpus.display()))?;
            let base = corpus.parent().map(PathBuf::from).unwrap_or_default();
            let report = classify::classify(&entries, &base, &runner);
            match output {
                Some(path) => {
                    fs::write(path, report.to_text())
                        .with_context(|| format!("writing {}", path.display()))?;
                    print!("{}", report.summary());
                }
                None => print!("{}", report.to_text()),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // clap's own usage errors exit with 2, which is taken by the bound report
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = matches!(e.downcast_ref::<Error>(), Some(Error::EngineBug(_)));
            ExitCode::from(if internal { EXIT_INTERNAL } else { EXIT_INPUT })
        }
    }
}
