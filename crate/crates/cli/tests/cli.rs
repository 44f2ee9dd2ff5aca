use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use bikei::algebra::{alexander_bikei, check_bikei_axioms};
use bikei::engine::parse_trace;
use bikei::BikeiTable;

fn data(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", rel]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn bikei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bikei"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or("").to_string()
}

#[test]
fn complete_unknot_matrix() {
    let o = bikei(&["complete", &data("matrices/unknot.txt")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "n=2\n2 2 2 2\n1 1 1 1\n");
}

#[test]
fn complete_virtual_4_71() {
    let o = bikei(&["complete", &data("matrices/virtual_4_71.txt")]);
    assert_eq!(code(&o), 0);
    assert_eq!(first_line(&o), "n=6");
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn free_two_generators_exceed_the_bound() {
    let o = bikei(&["--max-size", "30", "complete", &data("matrices/unlink.txt")]);
    assert_eq!(code(&o), 2);
    assert_eq!(stdout(&o), "exceeded bound 30\n");
}

#[test]
fn malformed_matrix_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.txt");
    fs::write(&f, "2\n1 2 0\n").unwrap();
    let o = bikei(&["complete", f.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error:"));
    assert_eq!(code(&bikei(&["complete", "/nonexistent/matrix.txt"])), 1);
    assert_eq!(code(&bikei(&["complete"])), 1);
}

#[test]
fn presentation_files_complete_too() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.txt");
    fs::write(&f, "gens 1;\n").unwrap();
    let o = bikei(&["complete", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(first_line(&o), "n=2");
}

#[test]
fn knot_codes() {
    for (c, n) in [("O1+U2+U1+O2+", 2), ("O1+U2+O3+U1+O2+U3+", 18), ("", 2)] {
        let o = bikei(&["knot", c]);
        assert_eq!(code(&o), 0, "{c}");
        assert_eq!(first_line(&o), format!("n={n}"), "{c}");
    }
    assert_eq!(code(&bikei(&["knot", "O1+U1-"])), 1);
    assert_eq!(code(&bikei(&["knot", "O1+U2+"])), 1);
}

#[test]
fn knot_reads_code_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("trefoil.txt");
    fs::write(&f, "# classical trefoil\nO1+U2+O3+U1+O2+U3+\n").unwrap();
    assert_eq!(first_line(&bikei(&["knot", f.to_str().unwrap()])), "n=18");
}

#[test]
fn plain_bikei_flag_drops_the_medial_identities() {
    let medial = bikei(&["knot", "O1+U2+U1+O2+"]);
    let plain = bikei(&["--plain-bikei", "knot", "O1+U2+U1+O2+"]);
    assert_eq!(code(&plain), 0);
    let t = BikeiTable::parse(&stdout(&plain)).unwrap();
    assert!(check_bikei_axioms(&t).is_empty());
    assert!(t.size() >= BikeiTable::parse(&stdout(&medial)).unwrap().size());
}

#[test]
fn printed_tables_reverify() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args) in [
        ("trefoil", vec!["knot", "O1+U2+O3+U1+O2+U3+"]),
        ("hopf", vec!["knot", "O1+;U1+"]),
        (
            "lex",
            vec!["--zero-strategy", "lex", "knot", "O1+U2+O3+U1+O2+U3+"],
        ),
    ] {
        let o = bikei(&args);
        assert_eq!(code(&o), 0, "{name}");
        let f = dir.path().join(name);
        fs::write(&f, stdout(&o)).unwrap();
        let v = bikei(&["verify", "--medial", f.to_str().unwrap()]);
        assert_eq!(code(&v), 0, "{name}: {}", stdout(&v));
        assert_eq!(stdout(&v), "");
    }
}

#[test]
fn iso_examples() {
    let unknot = data("tables/unknot.txt");
    let o = bikei(&["iso", &unknot, &unknot]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "isomorphic\n1 2\n");

    let o = bikei(&["iso", &unknot, &data("tables/trivial2.txt")]);
    assert_eq!(code(&o), 3);
    assert_eq!(stdout(&o), "not isomorphic\n");

    let dir = tempfile::tempdir().unwrap();
    let result = dir.path().join("471.txt");
    fs::write(
        &result,
        stdout(&bikei(&["complete", &data("matrices/virtual_4_71.txt")])),
    )
    .unwrap();
    let o = bikei(&[
        "iso",
        result.to_str().unwrap(),
        &data("tables/virtual_4_71_mirror.txt"),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    assert_eq!(
        code(&bikei(&["iso", &unknot, &data("matrices/unknot.txt")])),
        1
    );
}

#[test]
fn verify_examples() {
    let z4 = data("tables/alexander_z4.txt");
    assert_eq!(code(&bikei(&["verify", "--medial", &z4])), 0);
    assert_eq!(
        BikeiTable::parse(&fs::read_to_string(&z4).unwrap()).unwrap(),
        alexander_bikei(4, 3, 1).unwrap()
    );

    let s3 = data("tables/core_kei_s3.txt");
    assert_eq!(code(&bikei(&["verify", &s3])), 0);
    let o = bikei(&["verify", "--medial", &s3]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).lines().all(|l| l.starts_with("(m.")));
    assert!(
        stdout(&o).contains("(m.i) x=2 y=3 z=4 w=1:"),
        "{}",
        stdout(&o)
    );

    assert_eq!(code(&bikei(&["verify", &data("matrices/unknot.txt")])), 1);
}

#[test]
fn corrupted_table_names_the_broken_axiom() {
    let text = fs::read_to_string(data("tables/alexander_z4.txt")).unwrap();
    let corrupted = text.replacen("3 1 3 1 | 3 3 3 3", "3 1 3 1 | 1 3 3 3", 1);
    assert_ne!(text, corrupted);
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("z4.txt");
    fs::write(&f, corrupted).unwrap();
    let o = bikei(&["verify", f.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("(i)"), "{}", stdout(&o));
}

fn classify(corpus: &str, extra: &[&str]) -> (Output, String) {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("corpus.txt");
    let r = dir.path().join("report.tsv");
    fs::write(&c, corpus).unwrap();
    let mut args = extra.to_vec();
    args.extend(["classify", c.to_str().unwrap(), "-o", r.to_str().unwrap()]);
    let o = bikei(&args);
    let report = fs::read_to_string(&r).unwrap_or_default();
    (o, report)
}

#[test]
fn classify_examples() {
    let (o, report) = classify("unknot:\nvirtual trefoil: O1+U2+U1+O2+\n", &[]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        report,
        "unknot\tFINITE\t2\t1\nvirtual trefoil\tFINITE\t2\t1\n# classes\n1\t2\tunknot\tunknot, virtual trefoil\n"
    );

    let (_, report) = classify("unknot:\ntrefoil: O1+U2+O3+U1+O2+U3+\n", &[]);
    assert!(report.contains("trefoil\tFINITE\t18\t2\n"));
    assert!(report.ends_with("# classes\n1\t2\tunknot\tunknot\n2\t18\ttrefoil\ttrefoil\n"));

    let (o, report) = classify("# nothing\n", &[]);
    assert_eq!(code(&o), 0);
    assert_eq!(report, "");
}

#[test]
fn classify_records_bad_and_unbounded_entries() {
    let (o, report) = classify("bad: O1+O1+\nunlink: ;\nunknot:\n", &["--max-size", "20"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<&str> = report.lines().collect();
    assert!(lines[0].starts_with("bad\tERROR\t-\t-\t"));
    assert_eq!(lines[1], "unlink\tBOUND_EXCEEDED\t-\t-");
    assert!(lines[2].starts_with("unknot\tFINITE\t2\t1"));
    assert!(stdout(&o).starts_with("3 entries"));
}

#[test]
fn classify_is_deterministic_and_matches_the_shipped_corpus() {
    let corpus = data("corpus.txt");
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let r = dir.path().join("r.tsv");
        let o = bikei(&["classify", &corpus, "-o", r.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        fs::read_to_string(r).unwrap()
    };
    let a = run();
    assert_eq!(a, run());
    let sizes: Vec<&str> = a
        .lines()
        .skip_while(|l| *l != "# classes")
        .skip(1)
        .map(|l| l.split('\t').nth(1).unwrap())
        .collect();
    assert_eq!(sizes, ["2", "18", "50", "6", "8"]);
}

#[test]
fn cache_hits_skip_the_engine() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let first = bikei(&["--cache", c, "knot", "O1+U2+O3+U1+O2+U3+"]);
    let entries: Vec<_> = fs::read_dir(&cache).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let path = entries[0].as_ref().unwrap().path();

    // a planted entry is returned verbatim, proving the engine did not run
    fs::write(&path, "2\n2 2 2 2\n1 1 1 1\n").unwrap();
    let second = bikei(&["--cache", c, "knot", "O1+U2+O3+U1+O2+U3+"]);
    assert_eq!(first_line(&first), "n=18");
    assert_eq!(first_line(&second), "n=2");

    let other = bikei(&[
        "--cache",
        c,
        "--zero-strategy",
        "lex",
        "knot",
        "O1+U2+O3+U1+O2+U3+",
    ]);
    assert_eq!(first_line(&other), "n=18");
}

#[test]
fn trace_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("trace.txt");
    let o = bikei(&[
        "--trace",
        t.to_str().unwrap(),
        "complete",
        &data("matrices/unknot.txt"),
    ]);
    assert_eq!(code(&o), 0);
    let events = parse_trace(&fs::read_to_string(&t).unwrap()).unwrap();
    assert!(!events.is_empty());
}
