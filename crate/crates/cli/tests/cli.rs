use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use bfv_cli::{Window, EXIT_USAGE};

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn bfv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bfv"))
        .args(args)
        .env("BFV_FIXTURES", fixtures_dir())
        .output()
        .expect("the binary runs")
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = bfv(&all);
    let report = serde_json::from_slice(&out.stdout).expect("structured report");
    (out.status.code().unwrap(), report)
}

fn output<'a>(report: &'a Value, name: &str) -> &'a str {
    report["outputs"]
        .as_array()
        .unwrap()
        .iter()
        .find(|o| o["name"] == name)
        .unwrap_or_else(|| panic!("no output {name}"))["value"]
        .as_str()
        .unwrap()
}

fn statuses(report: &Value) -> Vec<(String, String)> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["name"].as_str().unwrap().to_string(),
                c["status"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("bfv-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn coisotropic_so3_passes() {
    let (code, report) = structured(&["check-coisotropic", "so3"]);
    assert_eq!(code, 0);
    assert_eq!(report["command"], "check-coisotropic");
    assert_eq!(statuses(&report), vec![("coisotropic".to_string(), "pass".to_string())]);
    assert_eq!(report["instance_digest"].as_str().unwrap().len(), 64);

    let (code, report) = structured(&["check-coisotropic", "symplectic_point"]);
    assert_eq!(code, 1);
    assert_eq!(report["checks"][0]["defect"], "1");
}

#[test]
fn expected_obstruction_is_a_pass() {
    let (code, report) = structured(&["build-charge", "symplectic_point", "--expect-obstruction"]);
    assert_eq!(code, 0, "{report}");
    let obstruction = output(&report, "obstruction");
    assert!(obstruction == "c1 c2" || obstruction == "-c1 c2", "{obstruction}");

    let (code, report) = structured(&["build-charge", "symplectic_point"]);
    assert_eq!(code, 1);
    assert!(statuses(&report).contains(&("charge".into(), "fail".into())));

    let (code, _) = structured(&["build-charge", "so3", "--expect-obstruction"]);
    assert_eq!(code, 1);
}

#[test]
fn zero_bivector_charge_is_tautological() {
    for name in ["zero_point", "zero_line"] {
        let (code, report) = structured(&["verify-all", name]);
        assert_eq!(code, 0, "{report}");
        assert!(statuses(&report).iter().all(|(_, s)| s == "pass"));
        assert_eq!(output(&report, "omega_is_tautological"), "true");
    }
    let (_, report) = structured(&["verify-all", "zero_line"]);
    assert_eq!(output(&report, "omega"), "y1 c1 + y2 c2");
}

#[test]
fn verify_all_covers_every_fixture() {
    for name in ["so3", "symplectic_point", "rank_one", "euler12", "curved21"] {
        let (code, report) = structured(&["verify-all", name]);
        assert_eq!(code, 0, "{name}: {report}");
        let names: Vec<String> = statuses(&report).into_iter().map(|(n, _)| n).collect();
        assert!(names.contains(&"round trip: structure".to_string()), "{name}");
    }
    let (_, report) = structured(&["verify-all", "so3"]);
    assert!(statuses(&report).iter().any(|(n, _)| n == "D^2 = 0 on 50 products"));
}

#[test]
fn text_and_file_output() {
    let out = bfv(&["build-bracket", "rank_one"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command   "), "{text}");
    assert!(text.contains("structure: [P,P] = 0"));
    assert!(text.ends_with("2/2 checks passed\n"));
    // wall time goes to stderr only
    assert!(String::from_utf8(out.stderr).unwrap().contains("finished in"));

    let path = std::env::temp_dir().join(format!("bfv-cli-{}-report.txt", std::process::id()));
    let out = bfv(&["build-bracket", "rank_one", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn connection_files() {
    let (code, report) = structured(&["compare-connections", "rank_one"]);
    assert_eq!(code, 0, "{report}");
    assert!(output(&report, "automorphism").contains("y1 -> -x1 y1 c1 b1 + y1"));

    let gamma = fixtures_dir().join("connections/gamma_x.json");
    let (code, report) = structured(&[
        "compare-connections",
        "zero_line",
        "--connection2",
        gamma.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{report}");
    // from the instance-style connection back to the flat one
    let (code, _) = structured(&[
        "compare-connections",
        "rank_one",
        "--connection",
        gamma.to_str().unwrap(),
        "--connection2",
        temp_file("flat.json", "[]").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    // a connection override changes the corrected structure but not its certificates
    let (code, report) = structured(&["build-bracket", "zero_line", "--connection", gamma.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_ne!(output(&report, "p_hat"), "c1 cd1 + c2 cd2");
}

#[test]
fn linear_automorphisms() {
    let unipotent = fixtures_dir().join("matrices/unipotent.json");
    let (code, report) = structured(&["apply-automorphism", "euler12", "--matrix", unipotent.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");
    assert_eq!(statuses(&report).len(), 4);

    let singular = fixtures_dir().join("matrices/singular.json");
    let (code, report) = structured(&["apply-automorphism", "euler12", "--matrix", singular.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(report["checks"][0]["status"], "error");
    assert!(report["checks"][0]["defect"]
        .as_str()
        .unwrap()
        .contains("determinant x1"));

    let scalar = temp_file("scalar.json", r#"[["-1","0","0"],["0","-1","0"],["0","0","-1"]]"#);
    let (code, report) = structured(&["apply-automorphism", "so3", "--matrix", scalar.to_str().unwrap()]);
    assert_eq!(code, 0, "{report}");
}

#[test]
fn gauge_and_cohomology() {
    let (code, report) = structured(&["gauge-charges", "so3"]);
    assert_eq!(code, 0, "{report}");
    assert_ne!(output(&report, "omega"), output(&report, "omega_prime"));

    let (code, report) = structured(&["gauge-charges", "symplectic_point"]);
    assert_eq!(code, 1, "{report}");

    let (code, report) = structured(&["cohomology", "zero_point", "--max-degree", "3", "--window", "0..0"]);
    assert_eq!(code, 0, "{report}");
    assert!(output(&report, "H^0").starts_with("1 "));
    let (_, report) = structured(&["cohomology", "zero_point", "--window=-1..-1"]);
    assert!(output(&report, "H^-1").starts_with("0 "));
}

#[test]
fn usage_errors() {
    for args in [
        &["frobnicate", "so3"][..],
        &["verify-all", "no_such_instance"],
        &["build-bracket", "so3", "--window", "0..1"],
        &["verify-all", "so3", "--expect-obstruction"],
        &["check-coisotropic", "so3", "--connection2", "x.json"],
        &["apply-automorphism", "so3"],
        &["cohomology", "so3", "--window", "2..1"],
        &["verify-all", "so3", "--format", "xml"],
    ] {
        let out = bfv(args);
        assert_eq!(out.status.code(), Some(EXIT_USAGE), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn instance_load_errors() {
    let repeated = temp_file(
        "repeated.json",
        r#"{"base_dim":0,"fiber_dim":2,"poisson":[{"i":"y1","j":"y1","coeff":"1"}]}"#,
    );
    let out = bfv(&["verify-all", repeated.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(EXIT_USAGE));

    let non_poisson = temp_file(
        "jacobi.json",
        r#"{"base_dim":0,"fiber_dim":3,"poisson":[{"i":"y1","j":"y2","coeff":"y2"},{"i":"y2","j":"y3","coeff":"y1"}]}"#,
    );
    let out = bfv(&["verify-all", non_poisson.to_str().unwrap()]);
    // {y1,y2} = 1, {y1,y3} = y2 satisfies Jacobi and loads fine
    let poisson = temp_file(
        "poisson.json",
        r#"{"base_dim":0,"fiber_dim":3,"poisson":[{"i":"y1","j":"y2","coeff":"1"},{"i":"y1","j":"y3","coeff":"y2"}]}"#,
    );
    assert_ne!(
        bfv(&["build-bracket", poisson.to_str().unwrap()]).status.code(),
        Some(EXIT_USAGE)
    );
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not a Poisson structure"), "{err}");

    let broken = temp_file("broken.json", "{\"base_dim\": 0,\n \"fiber_dim\": }");
    let out = bfv(&["verify-all", broken.to_str().unwrap()]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
}

#[test]
fn reports_are_deterministic() {
    for format in ["text", "structured"] {
        let a = bfv(&["compare-connections", "euler12", "--format", format]);
        let b = bfv(&["compare-connections", "euler12", "--format", format]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn window_syntax() {
    assert_eq!("-1..1".parse::<Window>().unwrap(), Window(-1..=1));
    assert_eq!("3..3".parse::<Window>().unwrap(), Window(3..=3));
    assert!("1..0".parse::<Window>().is_err());
    assert!("1-2".parse::<Window>().is_err());
    assert!("a..2".parse::<Window>().is_err());
}
