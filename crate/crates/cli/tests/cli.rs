use std::process::{Command, Output};

fn clex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clex"))
        .args(args)
        .env_remove("CLEX_MAX_NODES")
        .output()
        .expect("failed to run clex")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_counts() {
    let o = clex(&["enumerate", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("14 triangulations, 21 edges"));
}

#[test]
fn recurrence_reports_period() {
    let o = clex(&["recurrence"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("period 5 confirmed"));
}

#[test]
fn single_cluster_variable() {
    let o = clex(&["cluster-vars", "--n", "2", "--diagonal", "2,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(2,4) = (x2*x4 + x3*x5)/x1"));
}

#[test]
fn homology_csv() {
    let o = clex(&["homology", "--n", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(
        lines.next(),
        Some("n,rank,torsion,four_cycles,five_cycles,label_classes")
    );
    assert_eq!(lines.next(), Some("3,5,,3,6,6"));
}

#[test]
fn verify_n2_passes() {
    let o = clex(&["verify", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("[FAIL]"));
}

#[test]
fn verify_n3_reports_failures() {
    let o = clex(&["verify", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL]"));
}

#[test]
fn usage_errors() {
    for args in [
        &["enumerate", "--n", "0"][..],
        &["cluster-vars", "--n", "2", "--diagonal", "2,2"],
        &["cluster-vars", "--n", "2", "--diagonal", "x"],
        &["frobnicate"],
        &["verify", "--n", "2", "--theorem", "nope"],
    ] {
        assert_eq!(clex(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn resource_limits() {
    assert_eq!(clex(&["verify", "--n", "9"]).status.code(), Some(3));
    assert_eq!(
        clex(&["--max-nodes", "5", "enumerate", "--n", "3"])
            .status
            .code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_clex"))
        .args(["enumerate", "--n", "3"])
        .env("CLEX_MAX_NODES", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["relations", "--n", "3", "--format", "json"][..],
        &["graph", "--n", "3", "--format", "json"],
    ] {
        assert_eq!(clex(args).stdout, clex(args).stdout, "{args:?}");
    }
}
