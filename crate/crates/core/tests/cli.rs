//! Runs the compiled binary against files and built-in families.

use std::path::Path;
use std::process::{Command, Output};

use lieprod::families::{build_family, FamilyKind, FamilySpec};
use lieprod::input::ManifoldInput;
use lieprod::poly::Poly;
use lieprod::report::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieprod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let report: Report = serde_json::from_slice(&out.stdout).expect("json report");
    (report, out.status.code().unwrap())
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn family_check_passes() {
    for family in ["riemannian", "pseudo"] {
        let (report, code) = json(&["check", "--family", family]);
        assert_eq!(code, 0);
        assert_eq!(report.schema_version, 1);
        assert!(report.verdicts().any(|v| v.check == "jacobi" && v.passed));
    }
}

#[test]
fn symmetric_constants_fail_antisymmetry() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "sym.json",
        r#"{"dim": 2, "structure_constants": [[1,2,1,"1"],[2,1,1,"1"]], "metric": {"diagonal": ["1","1"]}}"#,
    );
    let (report, code) = json(&["check", "--input", &path]);
    assert_eq!(code, 1);
    let v = report
        .verdicts()
        .find(|v| v.check == "antisymmetry")
        .unwrap();
    assert!(!v.passed);
    assert!(v.details[0].starts_with("(121)"));
}

#[test]
fn invalid_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let singular = write(
        dir.path(),
        "singular.json",
        r#"{"dim": 4, "metric": {"diagonal": ["1","1","1","0"]}}"#,
    );
    let (report, code) = json(&["check", "--input", &singular]);
    assert_eq!(code, 2);
    assert!(report.to_human().contains("not invertible"));
    assert_eq!(json(&["classify", "--input", &singular]).1, 2);
    let garbage = write(dir.path(), "garbage.json", "{ not json");
    assert_eq!(run(&["check", "--input", &garbage]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(
        run(&["check", "--input", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["curvature", "--family", "pseudo", "--lambda", "1,2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn classify_without_structure_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "flat.json",
        r#"{"dim": 3, "metric": {"diagonal": ["1","1","1"]}}"#,
    );
    assert_eq!(json(&["classify", "--input", &path]).1, 2);
    let (report, code) = json(&["curvature", "--input", &path]);
    assert_eq!(code, 0);
    assert_eq!(
        report.section("summary").unwrap().components["flat"],
        "true"
    );
    assert!(report
        .section("curvature tensor")
        .unwrap()
        .components
        .is_empty());
}

#[test]
fn curvature_symbolic_and_numeric() {
    let (report, _) = json(&["curvature", "--family", "riemannian"]);
    assert_eq!(
        report.section("scalar curvature").unwrap().components["tau"],
        "3/2*l1^2 + 3/2*l2^2 + 3/2*l3^2 + 3/2*l4^2"
    );
    let (report, code) = json(&["curvature", "--family", "pseudo", "--lambda", "1,1,1,1"]);
    assert_eq!(code, 0);
    assert_eq!(
        report.section("scalar curvature").unwrap().components["tau"],
        "0"
    );
}

#[test]
fn json_components_reparse() {
    let (report, _) = json(&["curvature", "--family", "pseudo"]);
    for title in [
        "curvature tensor",
        "Ricci tensor",
        "scalar curvature",
        "sectional curvatures",
    ] {
        for value in report.section(title).unwrap().components.values() {
            let p: Poly = value.parse().unwrap();
            assert_eq!(&p.to_string(), value);
        }
    }
}

#[test]
fn classify_families() {
    let (report, code) = json(&["classify", "--family", "riemannian"]);
    assert_eq!(code, 0);
    assert_eq!(
        report.section("classification").unwrap().components["class"],
        "W3"
    );
    assert_eq!(
        report.section("tensor F").unwrap().components["F_211"],
        "l1"
    );
    let (report, _) = json(&["classify", "--family", "pseudo"]);
    let planes = &report.section("basic plane types").unwrap().components;
    assert!(planes.values().all(|t| t == "P-invariant"));
    let (report, _) = json(&["classify", "--family", "riemannian", "--lambda", "0,0,0,0"]);
    assert_eq!(
        report.section("classification").unwrap().components["class"],
        "W0"
    );
}

#[test]
fn input_file_matches_builtin_family() {
    let dir = tempfile::tempdir().unwrap();
    let family = build_family(&FamilySpec::symbolic(FamilyKind::Riemannian));
    let path = write(
        dir.path(),
        "fam.json",
        &ManifoldInput::from_family(&family).to_json(),
    );
    let (from_file, _) = json(&["classify", "--input", &path]);
    let (builtin, _) = json(&["classify", "--family", "riemannian"]);
    assert_eq!(from_file.section("norms"), builtin.section("norms"));
    let (report, code) = json(&["curvature", "--input", &path, "--at", "l1=1,l2=0,l3=0,l4=0"]);
    assert_eq!(code, 0);
    assert_eq!(
        report.section("scalar curvature").unwrap().components["tau"],
        "3/2"
    );
}

#[test]
fn verify_paper_lists_exactly_the_divergent_entries() {
    let (clean, code) = json(&["verify-paper"]);
    assert_eq!(code, 1);
    let failing = |r: &Report| -> Vec<String> {
        r.verdicts()
            .filter(|v| !v.passed)
            .map(|v| v.check.clone())
            .collect()
    };
    let baseline = failing(&clean);
    assert!(baseline.iter().all(|c| !c.contains("R_1221")));
    let (corrupted, code) = json(&["verify-paper", "--corrupt", "riemannian:R:R_1221=7"]);
    assert_eq!(code, 1);
    let mut extra = failing(&corrupted);
    extra.retain(|c| !baseline.contains(c));
    assert_eq!(extra, ["R_1221 matches published value"]);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let status = run(&[
        "check",
        "--family",
        "pseudo",
        "--format",
        "json",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let report: Report = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report.command, "check");
}
