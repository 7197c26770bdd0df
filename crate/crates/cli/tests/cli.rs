use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pebalg").chain(args.iter().copied());
    let code = pebalg_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn path_graph(dir: &TempDir, n: usize) -> PathBuf {
    let g = dir.path().join(format!("path{n}.g"));
    let (code, _, err) = run(&["graph", "gen", "path", &n.to_string(), "--out", p(&g)]);
    assert_eq!(code, 0, "{err}");
    g
}

#[test]
fn black_price_of_path4() {
    let dir = TempDir::new().unwrap();
    let g = path_graph(&dir, 4);
    let (code, out, _) = run(&["peb", "price", "--variant", "black", "--graph", p(&g)]);
    assert_eq!((code, out.as_str()), (0, "2\n"));
    let (code, out, _) = run(&["peb", "price", "--variant", "reversible", "--graph", p(&g)]);
    assert_eq!((code, out.as_str()), (0, "3\n"));
    let (_, out, _) = run(&["--json", "peb", "price", "--variant", "black-white", "--graph", p(&g)]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["price"], 2);
}

#[test]
fn binary_reports_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = path_graph(&dir, 3);
    let bin = env!("CARGO_BIN_EXE_pebalg");
    let ok = Command::new(bin).args(["peb", "price", "--variant", "black", "--graph", p(&g)]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "2\n");
    let missing = Command::new(bin).args(["peb", "price", "--variant", "black", "--graph", "/nonexistent.g"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let infeasible = Command::new(bin).args(["peb", "time", "--variant", "black", "--graph", p(&g), "--space", "1"]).output().unwrap();
    assert_eq!(infeasible.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["nonsense"]).0, 2);
    assert_eq!(run(&["peb", "price", "--variant", "grey", "--graph", "x.g"]).0, 2);
    let dir = TempDir::new().unwrap();
    let g = path_graph(&dir, 2);
    assert_eq!(run(&["--field", "prime:12", "decide", "ns", "--graph", p(&g)]).0, 2);
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(run(&["peb", "validate", "--graph", p(&g), "--strategy", p(&junk)]).0, 2);
}

#[test]
fn black_strategy_round_trips_through_mc() {
    let dir = TempDir::new().unwrap();
    let g = path_graph(&dir, 5);
    let s = dir.path().join("s.json");
    let r = dir.path().join("r.json");
    let sys = dir.path().join("sys.json");
    let back = dir.path().join("back.json");
    assert_eq!(run(&["peb", "price", "--variant", "black", "--graph", p(&g), "--witness", p(&s)]).0, 0);
    let (code, out, _) = run(&["translate", "black2mc", "--graph", p(&g), "--strategy", p(&s), "--out", p(&r)]);
    assert_eq!(code, 0);
    assert!(out.contains("degree\t2\n"));
    assert_eq!(run(&["formula", "encode", "--graph", p(&g), "--out", p(&sys)]).0, 0);
    let (code, out, _) = run(&["verify", "mc", "--system", p(&sys), "--proof", p(&r)]);
    assert_eq!((code, out.lines().next()), (0, Some("degree\t2")));
    assert_eq!(run(&["verify", "pc", "--system", p(&sys), "--proof", p(&r)]).0, 0);
    let (code, out, _) = run(&["verify", "conf", "--system", p(&sys), "--proof", p(&r)]);
    assert_eq!(code, 0);
    assert!(out.contains("vspace\t2"));
    assert_eq!(run(&["translate", "mc2peb", "--graph", p(&g), "--proof", p(&r), "--out", p(&back)]).0, 0);
    let (code, out, _) = run(&["peb", "validate", "--graph", p(&g), "--strategy", p(&back)]);
    assert_eq!(code, 0);
    assert!(out.contains("space\t2"));
    let (code, out, _) = run(&["translate", "normalize", "--system", p(&sys), "--proof", p(&r), "--out", p(&back)]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn corrupted_proof_is_rejected_with_the_rule() {
    let dir = TempDir::new().unwrap();
    let g = path_graph(&dir, 2);
    let s = dir.path().join("s.json");
    let d = dir.path().join("d.json");
    let sys = dir.path().join("peb_path2.json");
    run(&["peb", "price", "--variant", "black", "--graph", p(&g), "--witness", p(&s)]);
    run(&["translate", "black2mc", "--graph", p(&g), "--strategy", p(&s), "--out", p(&d)]);
    run(&["formula", "encode", "--graph", p(&g), "--out", p(&sys)]);

    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&d).unwrap()).unwrap();
    doc["lines"][1]["poly"][0]["coeff"] = Value::from("2");
    fs::write(&d, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, _, err) = run(&["verify", "mc", "--system", p(&sys), "--proof", p(&d)]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn reversible_strategy_to_ns_certificate() {
    let dir = TempDir::new().unwrap();
    let g = path_graph(&dir, 6);
    let s = dir.path().join("s.json");
    let c = dir.path().join("c.json");
    let sys = dir.path().join("sys.json");
    run(&["peb", "price", "--variant", "reversible", "--graph", p(&g), "--witness", p(&s)]);
    let (code, out, _) = run(&["translate", "rev2ns", "--graph", p(&g), "--strategy", p(&s), "--out", p(&c)]);
    assert_eq!(code, 0);
    assert!(out.starts_with("degree\t3\n"));
    run(&["formula", "encode", "--graph", p(&g), "--out", p(&sys)]);
    assert_eq!(run(&["verify", "ns", "--system", p(&sys), "--proof", p(&c)]).0, 0);
    assert_eq!(run(&["verify", "ns", "--explicit", "--system", p(&sys), "--proof", p(&c)]).0, 0);
}

#[test]
fn decide_degrees() {
    let dir = TempDir::new().unwrap();
    let g = path_graph(&dir, 4);
    let cert = dir.path().join("c.json");
    let sys = dir.path().join("sys.json");
    assert_eq!(run(&["decide", "mc", "--graph", p(&g)]), (0, "2\n".into(), String::new()));
    assert_eq!(run(&["--field", "prime", "decide", "ns", "--graph", p(&g), "--certificate", p(&cert)]).1, "3\n");
    run(&["--field", "prime", "formula", "encode", "--graph", p(&g), "--out", p(&sys)]);
    assert_eq!(run(&["verify", "ns", "--system", p(&sys), "--proof", p(&cert)]).0, 0);
    assert_eq!(run(&["decide", "ns", "--graph", p(&g), "--degree", "2"]).0, 1);
    assert_eq!(run(&["decide", "pc", "--system", p(&sys), "--degree", "2"]).0, 0);
}

#[test]
fn dimacs_input_is_encoded() {
    let dir = TempDir::new().unwrap();
    let g = path_graph(&dir, 3);
    let cnf = dir.path().join("f.cnf");
    let sys = dir.path().join("sys.json");
    assert_eq!(run(&["formula", "gen", "--graph", p(&g), "--out", p(&cnf)]).0, 0);
    assert!(fs::read_to_string(&cnf).unwrap().starts_with("p cnf 3 4\n"));
    assert_eq!(run(&["formula", "encode", "--cnf", p(&cnf), "--out", p(&sys)]).0, 0);
    assert_eq!(run(&["decide", "mc", "--system", p(&sys)]).1, "2\n");
}

#[test]
fn equalities_report_is_a_tsv_table() {
    let (code, out, err) = run(&["--field", "prime", "report", "equalities", "--nmax", "5"]);
    assert_eq!(code, 0, "{err}");
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("graph\tbw\tblack\trev\tpc_deg\tmc_deg\tns_deg\tmc==black\tns==rev"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() > 100);
    assert!(rows.iter().all(|r| r.ends_with("\ttrue\ttrue")));
    assert!(rows.iter().any(|r| r.starts_with("path_16\t")));
}

#[test]
fn tradeoff_report() {
    let args = ["report", "tradeoff", "--nmax", "3", "--path-max", "8", "--pyramid-max", "2", "--tree-max", "1"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph\tvariant\tspace\tmin_time\n"));
    assert!(out.contains("path_8\tblack\t2\t"));
    assert!(out.contains("path_8\treversible\t"));
    let (_, out, _) = run(&[&["--json"], &args[..], &["--variants", "black"]].concat());
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v.as_array().unwrap().iter().all(|r| r["variant"] == "black"));
}
