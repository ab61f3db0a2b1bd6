//! End-to-end tests of the `covers` binary: exit codes, JSON output and the
//! report round trip.

use std::process::{Command, Output};

fn covers(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covers")).args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

const SECTION3_ROWS: &str = "2,2,2,2,0,0,0,0;0,0,0,0,1,1,1,1";

#[test]
fn analyze_reports_the_reference_family() {
    let out = covers(&["analyze", "--N", "4", "--rows", SECTION3_ROWS]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["genus"], 13);
    assert_eq!(report["classification"], "NOT_TOTALLY_GEODESIC");
    assert_eq!(report["sym2_invariant_dim"], 16);
    assert_eq!(report["invariant_quadratic_dim"], 5);
}

#[test]
fn validation_errors_exit_2() {
    // zero column
    let out = covers(&["analyze", "--N", "2", "--rows", "1,0,1;1,0,1"]);
    assert_eq!(out.status.code(), Some(2));
    // ramified at infinity
    let out = covers(&["analyze", "--N", "4", "--rows", "1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hypothesis_errors_exit_3() {
    // genus 1: classification needs genus >= 2
    let out = covers(&["analyze", "--N", "2", "--rows", "1,1,1,1"]);
    assert_eq!(out.status.code(), Some(3));
    // sigma of order 4
    let out = covers(&["prym", "--N", "4", "--rows", SECTION3_ROWS, "--sigma", "0,1"]);
    assert_eq!(out.status.code(), Some(3));
    // odd modulus has no involution
    let out =
        covers(&["verify-bounds", "--N", "3", "--m", "1", "--rmax", "6", "--mode", "prym"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn cap_exceeded_exits_4_with_resume_token() {
    let out = covers(&["enumerate", "--N", "2", "--m", "2", "--rmax", "8", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(4));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["resume_token"].is_string());

    // resuming with the token completes
    let token = report["resume_token"].as_str().unwrap();
    let out = covers(&[
        "enumerate", "--N", "2", "--m", "2", "--rmax", "8", "--resume", token,
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn prym_command_reports_the_branched_example() {
    let out = covers(&[
        "prym",
        "--N",
        "2",
        "--rows",
        "1,1,1,1,0,0,0,0;1,1,1,1,1,1,1,1",
        "--sigma",
        "1,1",
        "--t",
        "2,3,5,7,0,1,-1,9/2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["branch_count"], 8);
    assert_eq!(report["quotient_genus"], 1);
    assert_eq!(report["multiplication_map"]["kernel_dim"], 2);
    assert_eq!(report["surjectivity"], "B_AT_LEAST_6");
}

#[test]
fn report_round_trips_byte_identically_through_its_echo() {
    let out = covers(&["prym", "--N", "2", "--rows", "1,1,1,1,0,0,0,0;1,1,1,1,1,1,1,1", "--sigma", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let first = stdout(&out);
    let report: serde_json::Value = serde_json::from_str(&first).unwrap();
    let echo = serde_json::to_string(&report["input"]).unwrap();

    let dir = std::env::temp_dir().join(format!("covers-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("echo.json");
    std::fs::write(&path, &echo).unwrap();
    let out = covers(&["prym", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), first);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_and_scan_commands_produce_clean_reports() {
    let out = covers(&[
        "verify-bounds", "--N", "2", "--m", "2", "--rmax", "12", "--mode", "torelli",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["violations"].as_array().unwrap().len(), 0);

    let out = covers(&["star-scan", "--N", "2", "--m", "1", "--rmax", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["hits"].as_array().unwrap().len(), 1);

    let out = covers(&["bounds", "--N", "2", "--m", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["torelli"]["r_max"], 30);
    assert_eq!(report["torelli"]["genus_max"], 209);
}
