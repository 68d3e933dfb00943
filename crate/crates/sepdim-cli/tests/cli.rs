use std::path::Path;
use std::process::{Command, Output};

fn sepdim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepdim"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_solve_construct_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(sepdim(&["gen", "--family", "clique", "--n", "4", "-o", "k4.json"], d).status.success());

    let exact = sepdim(&["exact", "k4.json"], d);
    assert!(exact.status.success());
    assert_eq!(stdout(&exact).trim(), "3");

    let built = sepdim(&["construct", "k4.json", "--method", "random", "--seed", "3", "-o", "fam.json"], d);
    assert!(built.status.success());
    assert!(String::from_utf8_lossy(&built.stderr).contains("seed = 3"));
    let ledger: serde_json::Value = serde_json::from_str(&stdout(&built)).unwrap();
    assert_eq!(ledger["method"], "random");
    assert_eq!(ledger["verified"], true);

    let ok = sepdim(&["verify", "k4.json", "fam.json"], d);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("pass"));
}

#[test]
fn failed_verification_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    sepdim(&["gen", "--family", "clique", "--n", "4", "-o", "k4.json"], d);
    std::fs::write(d.join("one.json"), r#"{"n":4,"perms":[[1,2,3,4]]}"#).unwrap();
    let out = sepdim(&["verify", "k4.json", "one.json"], d);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not separated"));
}

#[test]
fn exit_codes_by_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(sepdim(&["exact", "missing.json"], d).status.code(), Some(3));
    std::fs::write(d.join("bad.json"), r#"{"n":2,"edges":[[1,5]]}"#).unwrap();
    assert_eq!(sepdim(&["exact", "bad.json"], d).status.code(), Some(3));

    sepdim(&["gen", "--family", "clique", "--n", "7", "-o", "k7.json"], d);
    // K7 exceeds the default pair budget.
    assert_eq!(sepdim(&["exact", "k7.json"], d).status.code(), Some(2));
    // The hypercube construction only accepts hypercubes.
    assert_eq!(
        sepdim(&["construct", "k7.json", "--method", "hypercube"], d).status.code(),
        Some(2)
    );
}

#[test]
fn line_graph_and_boxicity() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    sepdim(&["gen", "--family", "cycle", "--n", "5", "-o", "c5.json"], d);
    let lg = sepdim(&["linegraph", "c5.json"], d);
    assert!(lg.status.success());
    std::fs::write(d.join("l.json"), lg.stdout).unwrap();
    let pi = sepdim(&["exact", "c5.json"], d);
    let bx = sepdim(&["exact", "--boxicity", "l.json"], d);
    assert!(pi.status.success() && bx.status.success());
    assert_eq!(stdout(&pi), stdout(&bx));
}

#[test]
fn bounds_report_formats() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    sepdim(&["gen", "--family", "grid", "--rows", "3", "--cols", "3", "-o", "g.json"], d);
    let json = sepdim(&["bounds", "g.json"], d);
    assert!(json.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert!(report["entries"].as_array().unwrap().iter().any(|e| e["kind"] == "exact" && e["value"] == 2.0));
    let csv = sepdim(&["bounds", "g.json", "--format", "csv"], d);
    assert!(stdout(&csv).starts_with("instance,name,kind,value,provenance,flags"));
}

#[test]
fn bench_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = sepdim(
        &["bench", "--family", "path", "--n", "4..6", "--methods", "random", "--seeds", "0", "-o", "b.csv"],
        d,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(d.join("b.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,n,m,method,seed,size,paper_bound,exact,lower_bound,wall_time,status"
    );
    assert_eq!(lines.count(), 3);
}
