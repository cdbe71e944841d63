#[path = "common/synth.rs"]
mod synth;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_prf");

fn prf(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn prf")
}

fn ok(args: &[&str]) -> String {
    let out = prf(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn fail(args: &[&str]) -> String {
    let out = prf(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    String::from_utf8(out.stderr).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn body(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect()
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/synth")
}

/// Small corpus plus topics in a fresh directory.
fn tiny(dir: &Path, docs: &[(&str, &str)], topics: &[(&str, &str)]) {
    let corpus: String = docs
        .iter()
        .map(|(id, text)| format!("{{\"id\": \"{id}\", \"text\": \"{text}\"}}\n"))
        .collect();
    std::fs::write(dir.join("corpus.jsonl"), corpus).unwrap();
    let topics: String = topics.iter().map(|(id, t)| format!("{id}\t{t}\n")).collect();
    std::fs::write(dir.join("topics.tsv"), topics).unwrap();
}

#[test]
fn index_reports_collection_size() {
    let dir = tempfile::tempdir().unwrap();
    tiny(dir.path(), &[("a", "one two"), ("b", "two three")], &[]);
    let out = ok(&["index", "--corpus", s(&dir.path().join("corpus.jsonl")), "--index", s(&dir.path().join("x.idx"))]);
    assert!(out.starts_with("N=2 "), "{out}");
    assert!(out.contains("vocabulary=3 tokens=4"), "{out}");
}

#[test]
fn index_errors() {
    let dir = tempfile::tempdir().unwrap();
    let idx = dir.path().join("x.idx");
    fail(&["index", "--corpus", s(&dir.path().join("missing.jsonl")), "--index", s(&idx)]);
    tiny(dir.path(), &[("a", "one"), ("dup7", "two"), ("dup7", "three")], &[]);
    let err = fail(&["index", "--corpus", s(&dir.path().join("corpus.jsonl")), "--index", s(&idx)]);
    assert!(err.contains("dup7"), "{err}");
}

#[test]
fn baseline_run_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    tiny(
        d,
        &[("d1", "apple banana apple"), ("d2", "banana cherry"), ("d3", "apple cherry cherry date")],
        &[("1", "apple"), ("2", "cherry banana")],
    );
    ok(&["index", "--corpus", s(&d.join("corpus.jsonl")), "--index", s(&d.join("x.idx"))]);
    ok(&["run", "--index", s(&d.join("x.idx")), "--topics", s(&d.join("topics.tsv")), "--out", s(d)]);
    let run = std::fs::read_to_string(d.join("baseline.run")).unwrap();
    // scores from an independent evaluation of the log-tf idf cosine formula
    let golden = "1 Q0 d1 1 0.894427 baseline\n\
                  1 Q0 d3 2 0.370396 baseline\n\
                  2 Q0 d2 1 1.414214 baseline\n\
                  2 Q0 d3 2 0.740792 baseline\n\
                  2 Q0 d1 3 0.447214 baseline\n";
    assert_eq!(body(&run), golden);
    assert!(run.starts_with("# prf "));
    assert!(run.contains("# index: fingerprint="));
}

#[test]
fn noop_expansion_reproduces_baseline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    // the query terms never share a document with any other term
    tiny(d, &[("d1", "alpha beta"), ("d2", "alpha"), ("d3", "beta"), ("d4", "gamma delta")], &[("1", "alpha beta")]);
    ok(&["index", "--corpus", s(&d.join("corpus.jsonl")), "--index", s(&d.join("x.idx"))]);
    let (idx, topics) = (d.join("x.idx"), d.join("topics.tsv"));
    let common = ["--index", s(&idx), "--topics", s(&topics), "--out", s(d)];
    ok(&[&["run"], &common[..]].concat());
    ok(&[&["run", "--mode", "expanded", "--method", "coo", "--tag", "baseline2"], &common[..]].concat());
    let a = body(&std::fs::read_to_string(d.join("baseline.run")).unwrap());
    let b = body(&std::fs::read_to_string(d.join("baseline2.run")).unwrap()).replace("baseline2", "baseline");
    assert_eq!(a, b);
    let queries = std::fs::read_to_string(d.join("baseline2.queries")).unwrap();
    assert_eq!(body(&queries), "1\talpha:1.000000\tbeta:1.000000\n");
}

#[test]
fn run_errors() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    tiny(d, &[], &[("1", "x")]);
    fail(&["run", "--index", s(&d.join("nope.idx")), "--topics", s(&d.join("topics.tsv")), "--out", s(d)]);
    fail(&["run", "--topics", s(&d.join("topics.tsv")), "--out", s(d)]);
}

#[test]
fn eval_self_comparison_and_known_ap() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("qrels"), "1 0 a 1\n1 0 b 1\n1 0 x 0\n").unwrap();
    std::fs::write(d.join("r.run"), "1 Q0 a 1 3.0 t\n1 Q0 x 2 2.0 t\n1 Q0 b 3 1.0 t\n").unwrap();
    let out = ok(&[
        "eval", "--run", s(&d.join("r.run")), "--qrels", s(&d.join("qrels")), "--baseline", s(&d.join("r.run")), "--out", s(d),
    ]);
    assert!(out.contains("MAP        0.8333   0.8333    +0.00%"), "{out}");
    for line in out.lines().skip(1).take(5) {
        assert!(line.ends_with("+0.00%"), "{line}");
    }
    assert!(out.contains("topic,ap,r_prec,p@5,p@10\n1,0.8333333333333333,0.5,0.4,0.2\n"), "{out}");
    let summary = std::fs::read_to_string(d.join("t.summary.csv")).unwrap();
    assert!(body(&summary).starts_with("measure,value,baseline,change\nMAP,0.8333333333333333,0.8333333333333333,+0.00%\n"));
    assert!(d.join("t.eval.csv").exists());
}

#[test]
fn eval_reports_malformed_line() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("qrels"), "1 0 a 1\n").unwrap();
    std::fs::write(d.join("r.run"), "1 Q0 a 1 3.0 t\n1 Q0 b two 1.0 t\n").unwrap();
    let err = fail(&["eval", "--run", s(&d.join("r.run")), "--qrels", s(&d.join("qrels"))]);
    assert!(err.contains("line 2"), "{err}");
}

fn fixture_index(dir: &Path) -> PathBuf {
    let idx = dir.join("synth.idx");
    ok(&["index", "--config", s(&fixture_dir().join("prf.conf")), "--index", s(&idx)]);
    idx
}

#[test]
fn sweep_shapes() {
    let dir = tempfile::tempdir().unwrap();
    let idx = fixture_index(dir.path());
    let conf = fixture_dir().join("prf.conf");
    let out = ok(&["sweep-terms", "--config", s(&conf), "--index", s(&idx), "--terms-grid", "5,10"]);
    let rows: Vec<&str> = out.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 10);
    for m in ["coo", "kld", "bo1", "boco", "kldco"] {
        let params: Vec<&str> = rows.iter().filter(|r| r.starts_with(&format!("{m},"))).map(|r| r.split(',').nth(1).unwrap()).collect();
        assert_eq!(params, ["5", "10"]);
    }
    let out = ok(&["sweep-docs", "--config", s(&conf), "--index", s(&idx), "--docs-grid", "1"]);
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 6);
    assert!(!out.contains("error"));
}

#[test]
fn sweep_records_failing_points() {
    let dir = tempfile::tempdir().unwrap();
    let idx = fixture_index(dir.path());
    let conf = fixture_dir().join("prf.conf");
    let out = prf(&[
        "sweep-terms", "--config", s(&conf), "--index", s(&idx), "--terms-grid", "5", "--methods", "coo,kld", "--reweight", "sumcc",
    ]);
    assert!(!out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("\nkld,5,error,error\n"), "{stdout}");
    assert!(stdout.lines().any(|l| l.starts_with("coo,5,0.")), "{stdout}");
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let idx = fixture_index(dir.path());
    let conf = dir.path().join("exp.conf");
    std::fs::write(
        &conf,
        format!(
            "index = {}\ntopics = {}\nqrels = {}\nmethods = bo1\nterms_grid = 5\n",
            s(&idx),
            s(&fixture_dir().join("topics.tsv")),
            s(&fixture_dir().join("qrels.txt"))
        ),
    )
    .unwrap();
    let a = ok(&["sweep-terms", "--config", s(&conf)]);
    assert!(a.lines().any(|l| l.starts_with("bo1,5,")));
    let b = ok(&["sweep-terms", "--config", s(&conf), "--methods", "kld", "--terms-grid", "7"]);
    assert!(b.lines().any(|l| l.starts_with("kld,7,")));
    assert!(!b.contains("bo1"));
}

#[test]
fn committed_fixture_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    synth::write(dir.path()).unwrap();
    for (name, _) in synth::render(&synth::generate()) {
        let fresh = std::fs::read(dir.path().join(name)).unwrap();
        let committed = std::fs::read(fixture_dir().join(name)).unwrap();
        assert!(fresh == committed, "{name} differs from the generator output");
    }
}
