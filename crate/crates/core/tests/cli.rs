use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn nzflow(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_nzflow"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(v).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn find_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = nzflow(&["find", "--graph", "petersen", "--group", "Z5"]);
    assert_eq!(code, 0);
    assert_eq!(report["verdict"], "found");
    let saved = write(dir.path(), "report.json", &report);
    let (code, check) = nzflow(&["verify", "--graph", "petersen", "--flow", &saved, "--group", "Z5"]);
    assert_eq!((code, check["verdict"].as_str()), (0, Some("valid")));
    let witness = write(dir.path(), "flow.json", &report["witness"]);
    let (code, _) = nzflow(&["verify", "--graph", "petersen", "--flow", &witness, "--group", "Z5"]);
    assert_eq!(code, 0);
}

#[test]
fn negative_and_error_exit_codes() {
    let (code, report) = nzflow(&["find", "--graph", "petersen", "--group", "Z4"]);
    assert_eq!((code, report["verdict"].as_str()), (1, Some("absent")));
    assert_eq!(nzflow(&["find", "--graph", "no/such/file.json", "--group", "Z4"]).0, 2);
    assert_eq!(nzflow(&["find", "--graph", "petersen", "--group", "Q"]).0, 2);
    assert_eq!(nzflow(&["frobnicate"]).0, 2);
}

#[test]
fn report_shape_and_timing_flag() {
    let (_, plain) = nzflow(&["find", "--graph", "k4", "--group", "Z4"]);
    let keys: Vec<&str> = plain.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "details", "seed", "verdict", "witness"]);
    let (_, timed) = nzflow(&["--timing", "find", "--graph", "k4", "--group", "Z4"]);
    assert!(timed.get("timing_ms").is_some());
    assert_eq!(timed["witness"], plain["witness"]);
    assert_eq!(timed["command"], plain["command"]);
}

#[test]
fn reports_are_byte_identical_across_threads() {
    let run = |extra: &[&str]| {
        let mut args = extra.to_vec();
        args.extend(["find", "--graph", "petersen", "--group", "Z6"]);
        Command::new(env!("CARGO_BIN_EXE_nzflow")).args(&args).output().unwrap().stdout
    };
    let first = run(&[]);
    assert_eq!(run(&[]), first);
    assert_eq!(run(&["--threads", "4"]), first);
}

#[test]
fn certificate_written_and_replayed() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json").to_string_lossy().into_owned();
    let (code, report) = nzflow(&[
        "infinite", "check", "--presentation", "petersen_chain_fig3_1_1", "--group", "Z4",
        "--max-depth", "4", "--certificate", &cert, "--contract-onto", "petersen",
    ]);
    assert_eq!((code, report["verdict"].as_str()), (1, Some("no-with-certificate")));
    let (code, replayed) = nzflow(&["infinite", "replay", "--certificate", &cert]);
    assert_eq!(code, 0, "{replayed}");
    let (code, _) = nzflow(&[
        "infinite", "replay", "--certificate", &cert, "--presentation", "petersen_chain_fig3_1_1",
    ]);
    assert_eq!(code, 0);
    let (code, report) = nzflow(&[
        "infinite", "check", "--presentation", "ladder_fig1_1", "--group", "Z6", "--max-depth", "6",
    ]);
    assert_eq!((code, report["verdict"].as_str()), (0, Some("yes-up-to")));
}

#[test]
fn colouring_and_expansion_commands() {
    let dir = tempfile::tempdir().unwrap();
    let (code, report) = nzflow(&["color", "--graph", "k4", "--k", "3"]);
    assert_eq!(code, 0);
    let colouring = write(dir.path(), "c.json", &report["witness"]);
    assert_eq!(nzflow(&["color", "--graph", "k4", "--k", "3", "--coloring", &colouring]).0, 0);
    assert_eq!(nzflow(&["expand-regular", "--graph", "k4", "--coloring", &colouring]).0, 0);
    assert_eq!(nzflow(&["color", "--graph", "petersen", "--k", "3"]).0, 1);
    let (_, flow) = nzflow(&["find", "--graph", "k33", "--group", "Z3"]);
    let flow = write(dir.path(), "f.json", &flow);
    let (code, cubic) = nzflow(&["expand-cubic", "--graph", "k33", "--flow", &flow]);
    assert_eq!(code, 0, "{cubic}");
}

#[test]
fn tension_and_eulerian_commands() {
    let (code, report) = nzflow(&["tension", "find", "--graph", "k4", "--group", "Z4"]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.json", &report);
    assert_eq!(nzflow(&["tension", "verify", "--graph", "k4", "--tension", &t, "--group", "Z4"]).0, 0);
    assert_eq!(nzflow(&["tension", "find", "--graph", "k4", "--group", "Z3"]).0, 1);
    assert_eq!(nzflow(&["supereulerian", "--graph", "k4"]).0, 0);
    // no spanning closed trail, matching the missing Z2xZ2-flow
    assert_eq!(nzflow(&["supereulerian", "--graph", "petersen"]).0, 1);
}
