use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    root.join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derham")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn homology_of_fixture_sphere() {
    let o = run(&["homology", &fixture("sphere2.cplx")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("H_0: betti 1"));
    assert!(s.contains("H_1: betti 0"));
    assert!(s.contains("H_2: betti 1"));
}

#[test]
fn projective_plane_torsion() {
    let o = run(&["homology", &fixture("rp2.cplx")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H_1: betti 0, torsion [2]"));
}

#[test]
fn verify_dd_passes() {
    let o = run(&["verify-dD", "--p", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn derham_betti_of_torus() {
    let o = run(&["derham-betti", "--torus", "2", "--grid", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for row in ["0  1  1", "1  2  2", "2  1  1"] {
        assert!(s.contains(row), "{s}");
    }
}

#[test]
fn global_retract_of_torus_cycle() {
    let o = run(&["global-retract", &fixture("torus_cycle.cur"), "--complex-file", &fixture("torus2_3.cplx")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("check cycle: pass"));
}

#[test]
fn pairing_value() {
    let o = run(&["pair", &fixture("exact_triangle.cur"), "--form", "(x2) dx{1}"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("= -1/24"));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn syntax_error_exit_code() {
    let o = run(&["d", "--expr", "1 * d[0](y1) dy{1} @ point(1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column"));
}

#[test]
fn missing_file_exit_code() {
    let o = run(&["homology", "/definitely/not/here.cplx"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn json_report_fields() {
    let dir = std::env::temp_dir().join(format!("derham-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&["solve-point", &fixture("delta_prime.cur"), "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "solve-point");
    assert_eq!(v["verified"], true);
    assert!(v["elapsed_ms"].is_u64());
    assert_eq!(v["inputs"]["files"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(v["outputs"].is_object());
    std::fs::remove_dir_all(&dir).ok();
}
