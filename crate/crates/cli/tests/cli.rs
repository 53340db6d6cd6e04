//! End-to-end checks of the `cffa` binary: exit codes, report shapes, and
//! the solve → certificate → verify round trip.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const YES_INSTANCE: &str = r#"{"agents":["a","b"],"jobs":["j1","j2","j3"],
"utilities":[[5,4,0],[0,0,6]],"edges":[[0,1]],"eta":5}"#;

const NO_INSTANCE: &str = r#"{"agents":["a","b"],"jobs":["j1","j2","j3"],
"utilities":[[5,4,0],[0,0,6]],"edges":[[0,1]],"eta":7}"#;

fn dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-cases");
    fs::create_dir_all(&d).unwrap();
    d
}

fn file(name: &str, content: &str) -> PathBuf {
    let p = dir().join(name);
    fs::write(&p, content).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cffa"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("process was signalled")
}

#[test]
fn solve_yes_then_verify_certificate() {
    let inst = file("yes.json", YES_INSTANCE);
    let cert = dir().join("yes.cert.json");
    let out = run(&[
        "solve",
        "--in",
        inst.to_str().unwrap(),
        "--alg",
        "brute",
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let report = stdout(&out);
    assert!(report.starts_with(r#"{"verdict":"yes","algorithm":"brute""#));
    assert!(report.contains(r#""certificate":{"#));

    let cert_text = fs::read_to_string(&cert).unwrap();
    assert!(cert_text.starts_with(r#"{"feasible":true"#));

    let check = run(&[
        "verify",
        "--in",
        inst.to_str().unwrap(),
        "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&check), 0, "stderr: {}", stderr(&check));
    assert_eq!(stdout(&check).trim_end(), r#"{"valid":true}"#);
}

#[test]
fn solve_no_exits_one() {
    let inst = file("no.json", NO_INSTANCE);
    let out = run(&["solve", "--in", inst.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let report = stdout(&out);
    assert!(report.contains(r#""verdict":"no""#));
    assert!(report.contains(r#""certificate":null"#));
}

#[test]
fn solve_out_redirects_stdout_to_file() {
    let inst = file("yes-out.json", YES_INSTANCE);
    let report_path = dir().join("report.json");
    let out = run(&[
        "solve",
        "--in",
        inst.to_str().unwrap(),
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    assert!(fs::read_to_string(&report_path)
        .unwrap()
        .contains(r#""verdict":"yes""#));
}

#[test]
fn verify_rejects_wrong_and_infeasible_certificates() {
    let inst = file("verify.json", YES_INSTANCE);
    let inst_arg = inst.to_str().unwrap();

    // Conflicting bundle: j1 and j2 share an edge.
    let clash = file(
        "clash.cert.json",
        r#"{"feasible":true,"assignment":{"a":["j1","j2"],"b":["j3"]}}"#,
    );
    let out = run(&["verify", "--in", inst_arg, "--cert", clash.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains(r#""valid":false"#));

    // A no-claim carries nothing to check.
    let no_claim = file("noclaim.cert.json", r#"{"feasible":false}"#);
    let out = run(&[
        "verify",
        "--in",
        inst_arg,
        "--cert",
        no_claim.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("declares the instance infeasible"));

    // Structurally broken documents are input errors, not verdicts.
    let hollow = file("hollow.cert.json", r#"{"feasible":true}"#);
    let out = run(&["verify", "--in", inst_arg, "--cert", hollow.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let phantom = file(
        "phantom.cert.json",
        r#"{"feasible":true,"assignment":{"a":["ghost"],"b":[]}}"#,
    );
    let out = run(&["verify", "--in", inst_arg, "--cert", phantom.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn bad_input_exits_two() {
    let missing = dir().join("does-not-exist.json");
    let out = run(&["solve", "--in", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cannot read"));

    let zero_eta = file(
        "zero-eta.json",
        r#"{"agents":["a"],"jobs":["x"],"utilities":[[1]],"edges":[],"eta":0}"#,
    );
    let out = run(&["solve", "--in", zero_eta.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("ETA_RANGE"));

    let inst = file("alg-check.json", YES_INSTANCE);
    let out = run(&["solve", "--in", inst.to_str().unwrap(), "--alg", "fancy"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown solver"));

    let out = run(&[
        "solve",
        "--in",
        inst.to_str().unwrap(),
        "--alg",
        "brute",
        "--exhaustive",
    ]);
    assert_eq!(code(&out), 2);

    let out = run(&["solve", "--no-such-flag"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn capacity_exits_three() {
    let big = dir().join("big.json");
    let gen = run(&[
        "gen",
        "random",
        "--agents",
        "1",
        "--jobs",
        "22",
        "--eta",
        "1",
        "--edge-percent",
        "30",
        "--out",
        big.to_str().unwrap(),
    ]);
    assert_eq!(code(&gen), 0, "stderr: {}", stderr(&gen));

    let out = run(&["solve", "--in", big.to_str().unwrap(), "--alg", "subsetconv"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("capacity"));
}

#[test]
fn gen_is_seed_deterministic() {
    let args = [
        "gen", "random", "--agents", "2", "--jobs", "6", "--eta", "5", "--seed", "9",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).starts_with(r#"{"agents":["a1","a2"]"#));

    let out = run(&[
        "gen", "cluster", "--agents", "2", "--jobs", "6", "--eta", "5", "--cliques", "0",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn reduce_three_partition_preserves_the_answer() {
    let yes_src = file("3p-yes.json", r#"{"sizes":[5,6,7,5,6,7],"bound":18}"#);
    let encoded = dir().join("3p-yes.inst.json");
    let out = run(&[
        "reduce",
        "three-partition",
        "--in",
        yes_src.to_str().unwrap(),
        "--out",
        encoded.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let solved = run(&["solve", "--in", encoded.to_str().unwrap()]);
    assert_eq!(code(&solved), 0);

    let no_src = file("3p-no.json", r#"{"sizes":[5,5,5,5,5,7],"bound":16}"#);
    let encoded_no = dir().join("3p-no.inst.json");
    let out = run(&[
        "reduce",
        "three-partition",
        "--in",
        no_src.to_str().unwrap(),
        "--out",
        encoded_no.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let solved = run(&["solve", "--in", encoded_no.to_str().unwrap()]);
    assert_eq!(code(&solved), 1);
}

#[test]
fn reduce_sbmwis_strict_rejects_lenient_clamps() {
    let src = file(
        "sb-zero.json",
        r#"{"vertices":2,"edges":[],"weights":[1,1],"size_cap":1,"target":0}"#,
    );
    let out = run(&["reduce", "sbmwis", "--in", src.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("TARGET_RANGE"));

    let out = run(&["reduce", "sbmwis", "--in", src.to_str().unwrap(), "--lenient"]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("clamped"));
    assert!(stdout(&out).contains(r#""eta":1"#));
}

#[test]
fn exhaustive_color_mode_runs() {
    let inst = file(
        "color.json",
        r#"{"agents":["a"],"jobs":["x","y"],"utilities":[[3,4]],
"edges":[],"eta":7,"bundle_cap":2}"#,
    );
    let out = run(&[
        "solve",
        "--in",
        inst.to_str().unwrap(),
        "--alg",
        "color",
        "--exhaustive",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains(r#""algorithm":"color_exhaustive""#));
}

#[test]
fn bench_prints_csv() {
    let spec = file(
        "bench.json",
        r#"{"rows":[{"gen":{"kind":"random","agents":2,"jobs":6,"eta":5,
"max_utility":9,"edge_percent":40,"seed":7},"solver":"auto","reps":2}]}"#,
    );
    let out = run(&["bench", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[0],
        "row,kind,params,solver,verdict,counters,median_elapsed_ms,status"
    );
    assert!(lines[1].starts_with("0,random,agents=2;"));
    assert!(lines[1].ends_with(",ok"));
}
