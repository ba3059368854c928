use std::process::Command;

use calabi_bell::cli::{run, EXIT_DIAGNOSTIC, EXIT_OK, EXIT_USAGE};
use calabi_bell::diastasis::BlockReport;
use calabi_bell::inequality::ScanReport;

fn invoke(args: &[&str]) -> (u8, String, String) {
    let mut argv = vec!["calabi-bell"];
    argv.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn bell_prints_value() {
    let (code, out, _) = invoke(&["bell", "--r", "4", "--j", "2", "--x", "1,1,1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "7\n");
    let (_, out, _) = invoke(&[
        "bell",
        "--r",
        "4",
        "--j",
        "2",
        "--x",
        "1,1,1",
        "--algo",
        "partition",
    ]);
    assert_eq!(out, "7\n");
    let (_, out, _) = invoke(&["bell", "--r", "4", "--x", "1,1,1,1"]);
    assert_eq!(out, "15\n");
    let (_, out, _) = invoke(&["bell", "--r", "2", "--j", "1", "--x", "-1/2,-3/4"]);
    assert_eq!(out, "-3/4\n");
}

#[test]
fn useries_both_methods() {
    let (code, out, _) = invoke(&[
        "useries", "--n", "2", "--k0", "2", "--c", "1", "--order", "4", "--method", "both",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "a_1 = 1\na_2 = -1\na_3 = 4\na_4 = -30\nmethods agree\n"
    );
}

#[test]
fn useries_eval_prints_diagnostics() {
    let (code, out, _) = invoke(&[
        "useries", "--n", "2", "--k0", "2", "--c", "1", "--eval", "1.0", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["ode_relative_residual"].as_f64().unwrap() < 1e-8);
    assert!(v["imag_residue"].as_f64().unwrap() < 1e-10);
    let (code, _, _) = invoke(&[
        "useries", "--n", "2", "--k0", "2", "--c", "1", "--eval", "-3",
    ]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn hr_values() {
    let (code, out, _) = invoke(&[
        "hr", "--n", "2", "--k0", "2", "--c", "1", "--r", "4", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "r,m,h\n1,1,1\n2,1,0\n3,1,1/3\n4,1,-2/3\n");
}

#[test]
fn scan_json_round_trips() {
    let (code, out, _) = invoke(&[
        "scan", "--n", "2", "--q", "1/2", "--rmax", "10", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let rep = ScanReport::from_json(&out).unwrap();
    assert_eq!(rep.min_negative_r, Some(4));
    assert_eq!(rep.to_json() + "\n", out);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["q"], "1/2");
    assert_eq!(v["rows"][2]["S"], "1/4");
}

#[test]
fn scan_csv_and_table() {
    let (_, out, _) = invoke(&[
        "scan", "--n", "2", "--q", "1/2", "--rmax", "10", "--format", "csv",
    ]);
    assert_eq!(out, "r,S\n1,1/2\n2,0\n3,1/4\n4,-1\n");
    let (_, out, _) = invoke(&["scan", "--n", "2", "--q", "1/2", "--rmax", "3"]);
    assert!(out.contains("not found <= 3"), "{out}");
}

#[test]
fn scan_grid_keeps_input_order() {
    let (code, out, _) = invoke(&[
        "scan", "--n", "3", "--grid", "3,1/2,1", "--rmax", "50", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let reps: Vec<ScanReport> = serde_json::from_str(&out).unwrap();
    let qs: Vec<String> = reps.iter().map(|r| r.q.to_string()).collect();
    assert_eq!(qs, vec!["3", "1/2", "1"]);
    assert!(reps.iter().all(|r| r.min_negative_r.is_some()));
}

#[test]
fn blocks_reports() {
    let (code, out, _) = invoke(&[
        "blocks", "--d", "1", "--lambda", "2", "--rmax", "5", "--format", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let rep: BlockReport = serde_json::from_str(&out).unwrap();
    assert_eq!(rep.first_negative_r(), Some(4));
    let (code, out, _) = invoke(&["blocks", "--d", "1", "--lambda", "3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("integrality already fails"), "{out}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &[
            "scan",
            "--n",
            "3",
            "--grid",
            "1/2,1,3/2,2,3",
            "--format",
            "json",
        ][..],
        &[
            "useries", "--n", "4", "--k0", "4", "--c", "1/2", "--order", "12",
        ][..],
        &["blocks", "--d", "2", "--lambda", "1", "--format", "csv"][..],
    ] {
        assert_eq!(invoke(args), invoke(args));
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["bell", "--r", "4", "--j", "2", "--x", "1,1.5"][..],
        &["bell", "--r", "4", "--j", "5", "--x", "1,1,1"][..],
        &["bell", "--r", "4", "--x", "1", "--algo", "magic"][..],
        &["useries", "--n", "1", "--k0", "2", "--c", "1"][..],
        &["scan", "--n", "2", "--q", "0.5"][..],
        &["scan", "--n", "2", "--q", "-1/2"][..],
        &["frobnicate"][..],
        &[][..],
    ] {
        let (code, _, err) = invoke(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_calabi-bell");
    let ok = Command::new(bin)
        .args(["bell", "--r", "4", "--j", "2", "--x", "1,1,1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "7\n");
    let bad = Command::new(bin)
        .args(["scan", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(i32::from(EXIT_USAGE)));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert_eq!(EXIT_DIAGNOSTIC, 2);
}
