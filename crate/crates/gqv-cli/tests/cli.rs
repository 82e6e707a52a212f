//! End-to-end tests of the gqv binary: worked conjugation examples, exit
//! codes, synthesis output format, and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_gqv")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary should run")
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gqv-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn conjugating_x_through_fourier_gives_z() {
    let circuit = write_temp("f3.gqv", "dim 3\ngqvs 1\nF 0\n");
    let out = run(&["conjugate", circuit.to_str().unwrap(), "xi:0 x:1 z:0"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "xi:0 x:0 z:1");
}

#[test]
fn conjugating_xx_through_cz_adds_z_tails() {
    let circuit = write_temp("cz2.gqv", "dim 2\ngqvs 2\nCZ 0 1\n");
    let out = run(&["conjugate", circuit.to_str().unwrap(), "xi:0 x:1,1 z:0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "xi:2 x:1,1 z:1,1");
}

#[test]
fn empty_circuit_conjugation_is_identity() {
    let circuit = write_temp("id7.gqv", "dim 7\ngqvs 2\n");
    let out = run(&["conjugate", circuit.to_str().unwrap(), "xi:5 x:1,6 z:2,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "xi:5 x:1,6 z:2,0");
}

#[test]
fn parse_errors_exit_2_and_name_the_line() {
    let circuit = write_temp("badsq.gqv", "dim 4\ngqvs 1\nSQ 2 0\n");
    let out = run(&["conjugate", circuit.to_str().unwrap(), "xi:0 x:1 z:0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "stderr: {}", stderr(&out));

    let circuit = write_temp("badgate.gqv", "dim 3\ngqvs 1\nQQ 0\n");
    let out = run(&["conjugate", circuit.to_str().unwrap(), "xi:0 x:1 z:0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"));
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["conjugate", "/nonexistent/nope.gqv", "xi:0 x:1 z:0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn register_count_mismatch_exits_3() {
    let circuit = write_temp("one.gqv", "dim 3\ngqvs 1\nF 0\n");
    let out = run(&["conjugate", circuit.to_str().unwrap(), "xi:0 x:1,1 z:0,0"]);
    assert_eq!(out.status.code(), Some(3), "stderr: {}", stderr(&out));
}

#[test]
fn synth_of_identity_emits_no_gates() {
    let circuit = write_temp("id5.gqv", "dim 5\ngqvs 2\n");
    let out = run(&["synth", circuit.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dim 5"));
    assert!(text.contains("gqvs 2"));
    assert!(text.contains("# gates: 0"), "got: {text}");
}

#[test]
fn synth_output_reparses_to_an_equal_tableau() {
    let circuit = write_temp(
        "mix3.gqv",
        "dim 3\ngqvs 2\nF 0\nCZ 0 1\nP 1 1\nSUM 0 1\nSQ 2 0\nY 2 1\n",
    );
    let out = run(&["synth", circuit.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    // Output is itself a valid circuit file (count line is a comment).
    let resynth = write_temp("resynth.gqv", &text);
    let out2 = run(&["synth", resynth.to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(0));
    // Synthesis is deterministic, so synthesizing the synthesized circuit
    // reproduces it.
    assert_eq!(stdout(&out2), text);
}

#[test]
fn synth_rejects_composite_dimensions_with_exit_4() {
    let circuit = write_temp("d6.gqv", "dim 6\ngqvs 1\nF 0\n");
    let out = run(&["synth", circuit.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn synth_accepts_tableau_json() {
    let json = r#"{"spec":{"Qudit":3},"n":1,"images":[
        {"spec":{"Qudit":3},"xi":0,"xs":[0],"zs":[1]},
        {"spec":{"Qudit":3},"xi":0,"xs":[2],"zs":[0]}]}"#;
    let path = write_temp("ftab.json", json);
    let out = run(&["synth", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("F 0"), "got: {text}");
    assert!(text.contains("# gates: 1"));
}

#[test]
fn synth_rejects_non_symplectic_tableau_with_exit_5() {
    // Both images equal X(1): the pair cannot reproduce the generator
    // commutation phases.
    let json = r#"{"spec":{"Qudit":3},"n":1,"images":[
        {"spec":{"Qudit":3},"xi":0,"xs":[1],"zs":[0]},
        {"spec":{"Qudit":3},"xi":0,"xs":[1],"zs":[0]}]}"#;
    let path = write_temp("badtab.json", json);
    let out = run(&["synth", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(5), "stderr: {}", stderr(&out));
}

#[test]
fn verify_reports_are_byte_identical_across_runs() {
    let args = ["verify", "gauss", "--a-max", "8", "--seed", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("\"pass\": true"));
}

#[test]
fn verify_clifford_suite_passes_and_reports_json() {
    let out = run(&[
        "verify", "clifford", "--d", "2,3", "--n", "1", "--cases", "25", "--seed", "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"suite\": \"clifford\""));
    assert!(text.contains("\"pass\": true"));
}

#[test]
fn verify_rejects_unknown_suites_with_exit_2() {
    let out = run(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mub_and_gauss_checks_pass() {
    let out = run(&["mub-check", "--d", "2,3,5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"pass\": true"));

    let out = run(&["gauss-check", "--a-max", "12", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"pass\": true"));
}

#[test]
fn euler_decompose_identity_gives_zero_angles() {
    let out = run(&[
        "euler",
        "decompose",
        "--matrix",
        "1,0,0,0,0,0,1,0",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"phi\": 0.0"), "got: {text}");
}

#[test]
fn euler_decompose_rejects_non_unitary_input() {
    let out = run(&["euler", "decompose", "--matrix", "2,0,0,0,0,0,1,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn euler_orbit_finds_the_generic_example() {
    let out = run(&[
        "euler",
        "orbit",
        "--phi",
        "0,1.0",
        "--target",
        "0,0.7853981633974483",
        "--eps",
        "0.01",
        "--nmax",
        "100000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("N="), "got: {}", stdout(&out));
}

#[test]
fn euler_orbit_reports_a_miss_without_failing() {
    let out = run(&[
        "euler",
        "orbit",
        "--phi",
        "0,3.141592653589793",
        "--target",
        "0,0.7853981633974483",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("no hit"));
}
