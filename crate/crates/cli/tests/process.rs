use std::process::{Command, Output};

use irlfrac::closedforms::{classical_power, power_upper};
use irlfrac::{c64, CutRatio};

fn irlfrac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irlfrac")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(o: &Output) -> Vec<Vec<f64>> {
    stdout(o).lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn eval_header_and_first_integral_of_power() {
    let o = irlfrac(&["eval", "--function", "power", "--lambda", "1", "--order", "-1", "--side", "lower", "--x", "1", "--y", "0.5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("x,value_re,value_im,err_estimate,n_evals"));
    // ∫₀^{yx} t dt = (yx)²/2
    assert!((rows(&o)[0][1] - 0.125).abs() < 1e-14);
    let o = irlfrac(&["eval", "--function", "power", "--lambda", "0", "--order", "-1", "--x", "1", "--y", "0.5"]);
    assert!((rows(&o)[0][1] - 0.5).abs() < 1e-14);
}

#[test]
fn eval_upper_matches_closed_form() {
    let o = irlfrac(&["eval", "--function", "power", "--lambda", "0.5", "--order", "-0.5", "--side", "upper", "--x", "1", "--y", "0.5"]);
    assert_eq!(code(&o), 0);
    let expected = power_upper(c64(0.5), c64(-0.5), 1.0, CutRatio::new(0.5).unwrap()).unwrap();
    let got = rows(&o)[0][1];
    assert!((got - expected.re).abs() < 1e-10 * expected.re.abs(), "{got} vs {expected}");
}

#[test]
fn both_sides_sum_to_classical() {
    let both = irlfrac(&["eval", "--function", "sin", "--order", "-0.3", "--side", "both", "--x", "0.5:2:4", "--y", "0.25"]);
    let classical = irlfrac(&["eval", "--function", "sin", "--order", "-0.3", "--side", "classical", "--x", "0.5:2:4", "--y", "0.25"]);
    let (b, c) = (rows(&both), rows(&classical));
    assert_eq!(b.len(), 4);
    for (rb, rc) in b.iter().zip(&c) {
        assert_eq!(rb[0], rc[0]);
        let sum = rb[5] + rb[7];
        assert!((sum - rc[1]).abs() < 1e-9 * rc[1].abs(), "{sum} vs {}", rc[1]);
        assert!((rb[1] - sum).abs() < 1e-15);
    }
}

#[test]
fn table_row_counts_and_continuation() {
    let o = irlfrac(&["table", "--function", "sin", "--order", "-0.4", "--x", "0.5:1.5:3", "--y", "0.1:0.9:9"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("sweep_var,x,value_re,value_im,err_estimate"));
    assert_eq!(rows(&o).len(), 27);

    let o = irlfrac(&["table", "--function", "power", "--lambda", "0.5", "--order", "-0.4:0.4:9", "--side", "upper", "--x", "1.3", "--y", "0.5"]);
    assert_eq!(code(&o), 0);
    let y = CutRatio::new(0.5).unwrap();
    for r in rows(&o) {
        let expected = power_upper(c64(0.5), c64(r[0]), 1.3, y).unwrap().re;
        assert!((r[2] - expected).abs() < 1e-8 * expected.abs(), "mu={}: {} vs {expected}", r[0], r[2]);
    }
}

#[test]
fn classical_column_matches_power_rule() {
    let o = irlfrac(&["eval", "--function", "power", "--lambda", "2", "--order", "-1", "--side", "classical", "--x", "1.5", "--y", "0.5"]);
    let expected = classical_power(c64(2.0), c64(-1.0), 1.5).unwrap().re;
    assert!((rows(&o)[0][1] - 1.5f64.powi(3) / 3.0).abs() < 1e-12);
    assert!((expected - 1.125).abs() < 1e-12);
}

#[test]
fn config_errors_exit_two() {
    for args in [
        &["table", "--function", "sin", "--order", "0.3", "--x", "0.5:1:0", "--y", "0.1:0.9:9"][..],
        &["eval", "--function", "expr", "--order", "1", "--x", "1", "--y", "0.5"],
        &["eval", "--function", "sin", "--order", "1", "--x", "1", "--y", "1.5"],
        &["eval", "--function", "sin", "--alpha", "2", "--order", "1", "--x", "1", "--y", "0.5"],
        &["eval", "--function", "power2", "--lambda", "1", "--alpha", "0.5", "--order", "-1", "--x", "2", "--y", "0.5"],
        &["table", "--function", "sin", "--order", "-0.5", "--x", "1", "--y", "0.5"],
        &["verify", "--suite", "bogus"],
        &["verify", "--format", "xml"],
        &["frobnicate"],
    ] {
        let o = irlfrac(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn numerical_failure_exits_three() {
    let o = irlfrac(&["eval", "--function", "sin", "--order", "-0.5", "--x", "1", "--y", "0.5", "--abs-tol", "1e-300", "--rel-tol", "1e-300"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn thread_variable_is_validated_and_harmless() {
    let args = ["eval", "--function", "exp", "--order", "-0.5,0.2", "--x", "0.2:3:7", "--y", "0.3"];
    let one = Command::new(env!("CARGO_BIN_EXE_irlfrac")).args(args).env("IRLFRAC_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_irlfrac")).args(args).env("IRLFRAC_THREADS", "4").output().unwrap();
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_irlfrac")).args(args).env("IRLFRAC_THREADS", "zero").output().unwrap();
    assert_eq!(code(&bad), 2);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["eval", "--function", "power2", "--lambda", "1.5", "--alpha", "0.5", "--order", "0.4", "--side", "both", "--x", "0.1:0.9:5", "--y", "0.4"][..],
        &["verify", "--suite", "limits", "--format", "jsonl"],
    ] {
        let a = irlfrac(args);
        let b = irlfrac(args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn output_file_and_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.jsonl");
    let o = irlfrac(&["eval", "--function", "const", "--value", "2", "--order", "-1", "--x", "1:2:2", "--y", "0.5", "--format", "jsonl", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    // 2·yx
    assert!((lines[1]["value_re"].as_f64().unwrap() - 2.0).abs() < 1e-13);
    assert_eq!(lines[0].as_object().unwrap().len(), 5);
}

#[test]
fn verify_forms_passes() {
    let o = irlfrac(&["verify", "--suite", "forms"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("name,params,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tolerance,passed"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.trim_end().ends_with("unexpected=0"), "{err}");
    assert!(err.contains("suites=1 checks="));
}

#[test]
fn verify_counterexamples_marks_expected_failures() {
    let o = irlfrac(&["verify", "--suite", "counterexamples"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let failing: Vec<&str> = text.lines().filter(|l| l.ends_with(",false")).collect();
    assert_eq!(failing.len(), 6);
    assert!(failing.iter().all(|l| l.contains("expect=fail")));
}

#[test]
fn verify_all_exits_zero() {
    let o = irlfrac(&["verify", "--suite", "all"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8(o.stderr).unwrap().contains("suites=7 "));
}
