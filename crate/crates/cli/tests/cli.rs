use std::fs;
use std::process::{Command, Output};

fn cyclosum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclosum"))
        .args(args)
        .env_remove("CYCLOSUM_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_closed_forms_small_range() {
    let o = cyclosum(&["verify", "--identities", "eq1_1,eq1_2,eq1_3", "--n", "2..10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 27);
    let passes = text.lines().filter(|l| l.contains(r#""verdict":"pass""#)).count();
    let skips = text.lines().filter(|l| l.contains(r#""verdict":"skipped""#)).count();
    // eq1_1 on even n, eq1_2 and eq1_3 on odd n
    assert_eq!((passes, skips), (5 + 4 + 4, 4 + 5 + 5));
}

#[test]
fn verify_lemma_trials() {
    let o = cyclosum(&["verify", "--identities", "lemma3_2", "--n", "3..7", "--trials", "5", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 25);
    assert!(text.lines().all(|l| l.contains(r#""verdict":"pass""#)));
}

#[test]
fn verify_rejects_bad_input() {
    assert_eq!(cyclosum(&["verify", "--n", "10..2"]).status.code(), Some(2));
    assert_eq!(cyclosum(&["verify", "--identities", "nope"]).status.code(), Some(2));
    assert_eq!(cyclosum(&["verify", "--tol", "-1", "--identities", "eq1_1"]).status.code(), Some(2));
    assert_eq!(cyclosum(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_is_reproducible_and_formats_agree() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, format: &str, jobs: &str| {
        let path = dir.path().join(name);
        let o = cyclosum(&[
            "verify", "--identities", "lemma3_2,eq3_1,thm3_1,eei", "--n", "3..6", "--trials", "3", "--seed", "7",
            "--format", format, "--jobs", jobs, "--output", path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read_to_string(path).unwrap()
    };
    let a = run("a.jsonl", "jsonl", "1");
    let b = run("b.jsonl", "jsonl", "3");
    assert_eq!(a, b);
    let csv = run("c.csv", "csv", "2");
    let from_csv = cyclosum::identities::from_csv(&csv).unwrap();
    assert_eq!(from_csv, cyclosum::identities::from_jsonl(&a).unwrap());
    let table = run("t.txt", "table", "1");
    assert!(table.starts_with("identity"));
}

#[test]
fn compute_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let sun2 = dir.path().join("sun2.json");
    fs::write(&sun2, r#"{"n":2,"dim":2,"entries":[["2:[0]","2:[1/2]"],["2:[1/2]","2:[0]"]]}"#).unwrap();
    let o = cyclosum(&["compute", "per", sun2.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "1/4"));

    let id3 = dir.path().join("id3.json");
    fs::write(&id3, r#"{"n":3,"dim":3,"entries":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#).unwrap();
    let o = cyclosum(&["compute", "det", id3.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "1"));

    let o = cyclosum(&["compute", "derangement-sums", sun2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "total: 1/4\neven_class: 0\nodd_class: 1/4\nsigned: -1/4\n");

    let big = dir.path().join("big.json");
    let rows: Vec<String> = (0..17)
        .map(|r| format!("[{}]", (0..17).map(|c| if r == c { "\"1\"" } else { "\"0\"" }).collect::<Vec<_>>().join(",")))
        .collect();
    fs::write(&big, format!(r#"{{"n":2,"dim":17,"entries":[{}]}}"#, rows.join(","))).unwrap();
    assert_eq!(cyclosum(&["compute", "per", big.to_str().unwrap()]).status.code(), Some(3));

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{not json").unwrap();
    assert_eq!(cyclosum(&["compute", "det", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn spectra() {
    let o = cyclosum(&["spectrum", "cp", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("expected: [-5, -3, -1, 1, 3, 5]"));

    let o = cyclosum(&["spectrum", "liu", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("expected: [-3, -2, -1, 1, 2, 3]"));
    assert!(text.contains("determinant: -36"));

    let o = cyclosum(&["spectrum", "minor", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("closed_form_determinant: 64/5"));

    assert_eq!(cyclosum(&["spectrum", "liu", "--n", "6"]).status.code(), Some(2));
}

#[test]
fn matrix_export_round_trips_through_compute() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("minor.json");
    let o = cyclosum(&["matrix", "minor", "--n", "5", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = cyclosum(&["compute", "det", path.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "4/5");
    let o = cyclosum(&["matrix", "sun", "--n", "2"]);
    assert_eq!(stdout(&o).trim(), r#"{"n":2,"dim":2,"entries":[["2:[0]","2:[1/2]"],["2:[1/2]","2:[0]"]]}"#);
    assert_eq!(cyclosum(&["matrix", "liu", "--n", "4"]).status.code(), Some(2));
}
