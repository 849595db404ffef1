use std::process::{Command, Output};

fn charexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charexp"))
        .args(args)
        .env_remove("CHAREXP_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_json_has_header_and_terms() {
    let o = charexp(&["expand", "--N", "2", "--seq", "quadratic", "--param", "x=0.3", "--max-boxes", "4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["N"], 2);
    assert_eq!(v["source_name"], "quadratic(x=0.3)");
    assert_eq!(v["cutoffs"]["max_boxes"], 4);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms[0]["label"], "0,0");
    assert_eq!(terms[0]["coefficient"][0], 1.0);
    assert!(terms.iter().all(|t| t["flagged_zero"].is_boolean()));
}

#[test]
fn expand_csv_columns() {
    let o = charexp(&[
        "expand", "--N", "1", "--seq", "bessel", "--param", "x=0.5", "--max-boxes", "0", "--det-power-range", "-1:1",
        "--output", "csv",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "label,re,im,flagged_zero");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("\"0@-1\","));
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("charexp-out-{}.json", std::process::id()));
    let o = charexp(&[
        "char", "--N", "2", "--label", "1,0", "--phases", "0.5,-0.5", "--out", path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let re = v["value"][0].as_f64().unwrap();
    assert!((re - 2.0 * 0.5f64.cos()).abs() < 1e-12);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn reconstruct_matches_direct_product() {
    let o = charexp(&[
        "reconstruct", "--N", "3", "--seq", "geometric", "--param", "z=0.4", "--max-boxes", "40", "--phases",
        "0.3,-1.2,2.5",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["abs_error"].as_f64().unwrap() < 1e-12);
}

#[test]
fn extract_on_a_shrunken_contour() {
    let o = charexp(&[
        "extract", "--N", "2", "--seq", "chebyshev-u", "--param", "x=0.2", "--label", "2,0", "--radius", "0.7",
        "--tolerance", "1e-8",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn orthogonality_table_and_mc_seed_from_env() {
    let o = charexp(&["verify-orthogonality", "--N", "1", "--max-boxes", "2", "--output", "table"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("passed         true"));

    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_charexp"))
            .args(["verify-orthogonality", "--N", "2", "--max-boxes", "1", "--integrator", "mc", "--samples", "5000"])
            .env("CHAREXP_SEED", seed)
            .output()
            .unwrap()
    };
    let (a, b, c) = (run("3"), run("3"), run("4"));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let explicit = charexp(&[
        "verify-orthogonality", "--N", "2", "--max-boxes", "1", "--integrator", "mc", "--samples", "5000", "--seed", "3",
    ]);
    assert_eq!(a.stdout, explicit.stdout);
}

#[test]
fn failures_have_nonzero_exit_codes() {
    // argument errors
    assert_eq!(charexp(&["expand", "--N", "2", "--unknown"]).status.code(), Some(2));
    // domain errors
    let o = charexp(&["expand", "--N", "2", "--seq", "geometric", "--param", "z=1", "--max-boxes", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    // torus quadrature is limited to small rank
    assert_eq!(charexp(&["verify-orthogonality", "--N", "4"]).status.code(), Some(2));
    // tolerance failures
    let o = charexp(&[
        "extract", "--N", "2", "--seq", "geometric", "--param", "z=0.5", "--label", "2,0", "--grid", "8",
        "--tolerance", "1e-9",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stdout.is_empty());
}
