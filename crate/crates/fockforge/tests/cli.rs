//! End-to-end checks of the `fockforge run` surface: exit codes, output
//! formats and determinism.

use std::io::Write;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fockforge"))
}

fn strip_ms(csv: &str) -> String {
    csv.lines()
        .map(|line| {
            let mut cols: Vec<&str> = line.split(',').collect();
            cols.pop();
            cols.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn unknown_key_exits_2() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "experiment=cocycle\nmodez=2").unwrap();
    let out = bin()
        .args(["run", "--config"])
        .arg(file.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("modez"), "stderr: {stderr}");
}

#[test]
fn missing_experiment_exits_2() {
    let out = bin().arg("run").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gaussian_norm_run_is_deterministic() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "experiment=gaussian-norm\ncap=10,20\nlambda=0.5").unwrap();
    let run = || {
        let out = bin()
            .args(["run", "--config"])
            .arg(file.path())
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        strip_ms(&String::from_utf8_lossy(&out.stdout))
    };
    let first = run();
    assert_eq!(first, run());
    assert!(first.starts_with(
        "experiment,param_1,param_2,measured_re,measured_im,reference_re,reference_im,abs_error"
    ));
}

#[test]
fn divergence_reports_inf_and_diverging_status() {
    let out = bin()
        .args(["run", "--experiment", "divergence"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains(",inf,"));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("diverges"), "stderr: {stderr}");
}

#[test]
fn json_output_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    let out = bin()
        .args([
            "run",
            "--experiment",
            "weyl-kernel",
            "--cap",
            "20",
            "--format",
            "json",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(parsed.as_array().unwrap().len() >= 5);
}
