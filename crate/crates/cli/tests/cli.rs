use std::process::{Command, Output};

use mmlab::Report;

fn mmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn session(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".mm").tempfile().unwrap();
    std::io::Write::write_all(&mut f, text.as_bytes()).unwrap();
    f
}

const TWISTED: &str = "ring Q[x,y,z];\nideal I = x^2 - y, x^3 - z;\nideal P = x, y;\npoly g = y^3 - z^2;\n";

#[test]
fn verify_decomposition_exits_zero() {
    let o = mmlab(&["mm", "verify", "--claim", "theorem1", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("PASS theorem1 d=2"));
}

#[test]
fn cert_prints_minimal_degree() {
    let o = mmlab(&["cert", "--d", "2", "--target", "s*(c4-c1)", "--gens", "J", "--max-deg", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().next() == Some("D* = 3"), "{}", stdout(&o));
}

#[test]
fn cert_without_certificate_exits_one() {
    let o = mmlab(&["cert", "--d", "2", "--target", "s", "--gens", "J", "--max-deg", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no certificate up to degree 2"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("witness"));
}

#[test]
fn gb_prints_reduced_basis() {
    let f = session(TWISTED);
    let path = f.path().to_str().unwrap();
    let o = mmlab(&["gb", path, "--ideal", "I", "--order", "lex"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x^2 - y, x*y - z, x*z - y^2, y^3 - z^2");
    let o = mmlab(&["nf", path, "--ideal", "I", "--poly", "g"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn ideal_queries_exit_by_answer() {
    let f = session(TWISTED);
    let path = f.path().to_str().unwrap();
    assert_eq!(mmlab(&["ideal", "member", path, "I", "--poly", "g"]).status.code(), Some(0));
    assert_eq!(mmlab(&["ideal", "member", path, "I", "--poly", "x"]).status.code(), Some(1));
    assert_eq!(mmlab(&["ideal", "equal", path, "I", "I"]).status.code(), Some(0));
    assert_eq!(mmlab(&["ideal", "equal", path, "I", "P"]).status.code(), Some(1));
    assert_eq!(mmlab(&["ideal", "radical-member", path, "P", "--poly", "x^3"]).status.code(), Some(0));
    let o = mmlab(&["ideal", "dim", path, "I"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = mmlab(&["ideal", "eliminate", path, "I", "--vars", "x"]);
    assert_eq!(stdout(&o).trim(), "y^3 - z^2");
    let o = mmlab(&["ideal", "colon", path, "P", "--by", "z"]);
    assert_eq!(stdout(&o).trim(), "x, y");
    let o = mmlab(&["ideal", "intersect", path, "P", "x - 1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|k| dir.path().join(format!("r{k}.json"))).collect();
    for (k, p) in paths.iter().enumerate() {
        let jobs = if k == 0 { "1" } else { "3" };
        let o = mmlab(&["mm", "verify", "--claim", "prop4,lemma3,identities", "--d", "2", "--jobs", jobs, "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let reports: Vec<Report> = paths
        .iter()
        .map(|p| Report::from_json(&std::fs::read_to_string(p).unwrap()).unwrap())
        .collect();
    assert_eq!(reports[0].schema, "mmlab-report-v1");
    assert_eq!(reports[0].claims.len(), 3);
    let a = reports[0].without_timings().to_json();
    let b = reports[1].without_timings().to_json();
    assert_eq!(a, b);
}

#[test]
fn all_claims_at_degree_one() {
    let o = mmlab(&["mm", "verify", "--claim", "all", "--d", "1", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let report = Report::from_json(&stdout(&o)).unwrap();
    let names: Vec<_> = report.claims.iter().map(|c| c.claim.as_str()).collect();
    assert_eq!(names, ["theorem1", "prop4", "prop5", "lemma2", "lemma3", "prop6", "heights", "identities"]);
    assert!(report.all_pass());
}

#[test]
fn generated_session_runs() {
    let o = mmlab(&["mm", "gen", "--d", "2", "--profile", "shortened"]);
    assert_eq!(o.status.code(), Some(0));
    let f = session(&stdout(&o));
    let o = mmlab(&["run", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("PASS theorem1 d=2"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mmlab(&["mm", "verify", "--d", "two"]).status.code(), Some(2));
    assert_eq!(mmlab(&["mm", "verify", "--d", "2", "--claim", "nonsense"]).status.code(), Some(2));
    // Split mode over the rationals has no roots to split by.
    assert_eq!(mmlab(&["mm", "verify", "--d", "2", "--mode", "split"]).status.code(), Some(2));
    assert_eq!(mmlab(&["gb", "/nonexistent.mm", "--ideal", "J"]).status.code(), Some(2));
    let f = session("ring Q[x];\nideal I = x;\n");
    assert_eq!(mmlab(&["gb", f.path().to_str().unwrap(), "--ideal", "I", "--order", "weird"]).status.code(), Some(2));
}
