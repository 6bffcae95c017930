//! End-to-end behavior of the `stringy` binary: exit codes, determinism,
//! and the negative controls.

use std::path::PathBuf;
use std::process::{Command, Output};

fn dataset(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../datasets")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stringy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("stringy-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn validate_good_dataset_exits_zero() {
    let out = run(&["validate", dataset("sym2-P1.sod").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn validate_missing_file_exits_two() {
    let out = run(&["validate", "/nonexistent/nowhere.sod"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_syntax_error_exits_two() {
    let path = temp_file("syntax.sod", "stringy-dataset v1\nflavor NEITHER\n");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_corrupted_normal_class_exits_one_and_names_the_check() {
    // replacing N with 2T breaks the normal-bundle decomposition
    let text = std::fs::read_to_string(dataset("sym2-P1.sod")).unwrap();
    let corrupted = text.replace(
        "sector (12) normal 1*T@12",
        "sector (12) normal 2*T@12",
    );
    assert_ne!(text, corrupted);
    let path = temp_file("corrupt-normal.sod", &corrupted);
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("normal-decomposition"), "{stdout}");
}

#[test]
fn verify_goldens_exit_zero() {
    for name in ["point-Z2.sod", "sym2-P1.sod"] {
        let out = run(&["verify", dataset(name).to_str().unwrap()]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn verify_negative_control_exits_one_with_localized_witness() {
    // uniformly scaling one triple's pushforward survives validation but
    // breaks associativity exactly at that triple
    use stringy_cli::dataset::{parse, serialize};
    use stringy_core::algebra::LinearMap;
    use stringy_core::linalg::Matrix;
    use stringy_core::rat::rint;

    let text = std::fs::read_to_string(dataset("sym3-P1.sod")).unwrap();
    let mut p = parse(&text).unwrap();
    let a = p.group.index_of("(12)").unwrap();
    let b = p.group.index_of("(13)").unwrap();
    let t = p.triples.get_mut(&(a, b)).unwrap();
    let mut doubled = Matrix::zeros(t.push3.matrix.rows(), t.push3.matrix.cols());
    for i in 0..t.push3.matrix.rows() {
        for j in 0..t.push3.matrix.cols() {
            doubled.set(i, j, t.push3.matrix.get(i, j) * rint(2));
        }
    }
    t.push3 = LinearMap::new(t.push3.source.clone(), t.push3.target.clone(), doubled).unwrap();
    let path = temp_file("negative-control.sod", &serialize(&p));

    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(
        stdout.contains("axioms.associativity") && stdout.contains("(12),(13)"),
        "{stdout}"
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["verify", "point-S3.sod"],
        vec!["table", "sym2-P1.sod", "--route", "pushpull"],
        vec!["cocycles", "sym2-P1.sod", "--format", "records"],
    ] {
        let mut full: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        full[1] = dataset(&full[1]).to_str().unwrap().to_string();
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let first = run(&refs);
        let second = run(&refs);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn table_routes_agree_through_the_cli() {
    let path = dataset("sym2-P1.sod");
    let pull = run(&["table", path.to_str().unwrap(), "--route", "pullpush"]);
    let push = run(&["table", path.to_str().unwrap(), "--route", "pushpull"]);
    assert_eq!(pull.status.code(), Some(0));
    // identical tables modulo the route line
    let strip = |bytes: &[u8]| {
        String::from_utf8_lossy(bytes)
            .lines()
            .filter(|l| !l.starts_with("route"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&pull.stdout), strip(&push.stdout));
    // and the worked entry is present
    assert!(String::from_utf8_lossy(&pull.stdout)
        .contains("((12),(12)) 1 * 1 = x⊗1 + 1⊗x"));
}

#[test]
fn table_with_alt_section_set() {
    let path = dataset("sym2-P1.sod");
    let alt = run(&[
        "table",
        path.to_str().unwrap(),
        "--route",
        "pushpull",
        "--section-set",
        "alt",
    ]);
    assert_eq!(alt.status.code(), Some(0));
    let default = run(&["table", path.to_str().unwrap(), "--route", "pushpull"]);
    assert_eq!(alt.stdout, default.stdout, "products are section independent");
}

#[test]
fn cocycles_point_s3_all_unit() {
    let out = run(&["cocycles", dataset("point-S3.sod").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    let gamma_lines: Vec<&str> = stdout.lines().filter(|l| l.starts_with("gamma")).collect();
    assert_eq!(gamma_lines.len(), 36);
    assert!(gamma_lines.iter().all(|l| l.ends_with("value 1")), "{stdout}");
}

#[test]
fn build_writes_a_parseable_dataset() {
    let path = std::env::temp_dir().join(format!("stringy-test-{}-built.sod", std::process::id()));
    let out = run(&["build", "point", "z3", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let verify = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate", "x"]).status.code(), Some(2));
    assert_eq!(
        run(&["table", "x.sod", "--route", "sideways"]).status.code(),
        Some(2)
    );
}
