use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tccore::generators::{evaluate, generator_polynomial, DecompositionResult};
use tccore::polyring::rational::frac;
use tccore::polyring::Polynomial;
use tccore::quotient::ideal_for_group;
use tccore::weyl::GroupSpec;

fn tcclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tcclass")).args(args).env_remove("TC_CACHE_DIR").output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn decompose_u3_p12() {
    let out = tcclass(&["decompose", "--group", "U", "--rank", "3", "--a", "1", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let result: DecompositionResult = serde_json::from_value(stdout_json(&out)).unwrap();
    assert!(result.certified);
    let spec = GroupSpec::unitary(3);
    let sixth = (&generator_polynomial(-1, 3, 3).unwrap() + &generator_polynomial(1, 3, 3).unwrap()).scale(&frac(1, 6));
    let ideal = ideal_for_group(&spec).unwrap();
    assert!(ideal.equal_mod(&evaluate(&result.expr, 3).unwrap(), &sixth).unwrap());
}

#[test]
fn decompose_p10_is_zero() {
    let out = tcclass(&["decompose", "--group", "U", "--rank", "2", "--a", "1", "--b", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let result: DecompositionResult = serde_json::from_value(stdout_json(&out)).unwrap();
    assert!(result.certified && result.expr.is_zero());
}

#[test]
fn odd_symplectic_degree_is_an_input_error() {
    let out = tcclass(&["decompose", "--group", "Sp", "--rank", "2", "--a", "1", "--b", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr).to_lowercase();
    assert!(msg.contains("odd"), "{msg}");
}

#[test]
fn bad_arguments_exit_with_two() {
    for args in [
        &["decompose", "--group", "G2", "--rank", "2", "--a", "1", "--b", "1"][..],
        &["decompose", "--group", "U", "--rank", "0", "--a", "1", "--b", "1"],
        &["chern2", "--example", "paper", "--grid", "3"],
        &["chern2", "--example", "nope"],
    ] {
        assert_eq!(tcclass(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_suites_pass() {
    for (group, rank, degree) in [("U", "2", "2"), ("SU", "2", "2"), ("Sp", "3", "6")] {
        let out = tcclass(&["verify", "--group", group, "--rank", rank, "--max-degree", degree, "--cases", "20"]);
        assert_eq!(out.status.code(), Some(0), "{group}({rank}): {}", String::from_utf8_lossy(&out.stdout));
        let v = stdout_json(&out);
        assert_eq!(v["passed"], true);
        if group == "Sp" {
            let mu = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "mu-vanishing").unwrap();
            assert_eq!(mu["passed"], true);
            assert!(mu["detail"].as_str().unwrap_or("").contains("exhaustive"), "{mu}");
        }
    }
}

#[test]
fn chern2_constant_is_zero() {
    let out = tcclass(&["chern2", "--example", "constant", "--grid", "32"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v["c2"].as_f64().unwrap().abs() < 1e-12);
    assert_eq!(v["reference"].as_f64(), Some(0.0));
    assert!(v.get("integral_J1_plus_J2").is_some());
}

#[test]
fn reports_are_reproducible_and_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let mut payloads = Vec::new();
    for run in 0..2 {
        let out_path = dir.path().join(format!("out-{run}.json"));
        let report_path = dir.path().join(format!("report-{run}.json"));
        let out = tcclass(&[
            "decompose",
            "--group",
            "SU",
            "--rank",
            "3",
            "--a",
            "0",
            "--b",
            "2",
            "--out",
            out_path.to_str().unwrap(),
            "--report",
            report_path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        let result: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
        let mut report: Value = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
        assert_eq!(report["outputs"], result);
        assert_eq!(report["certified"], true);
        assert!(report["timing"]["elapsed_ms"].is_number());
        report.as_object_mut().unwrap().remove("timing");
        payloads.push(report);
    }
    assert_eq!(payloads[0], payloads[1]);
}

#[test]
fn powermap_from_file_and_stdin() {
    let n = 2;
    let p = &(&Polynomial::x(n, 0) * &Polynomial::y(n, 1)) + &Polynomial::y(n, 0).pow(2);
    let text = serde_json::to_string(&p).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.json");
    std::fs::write(&input, &text).unwrap();
    let out = tcclass(&["powermap", "--k", "-2", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let image: Polynomial = serde_json::from_value(stdout_json(&out)).unwrap();
    let want = &(&Polynomial::x(n, 0) * &Polynomial::y(n, 1)).scale(&frac(-2, 1)) + &Polynomial::y(n, 0).pow(2).scale(&frac(4, 1));
    assert_eq!(image, want);

    let mut child = Command::new(env!("CARGO_BIN_EXE_tcclass"))
        .args(["powermap", "--k", "3", "--torus", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let q = &Polynomial::z(n, 0).pow(2) + &Polynomial::z(n, 1);
    child.stdin.take().unwrap().write_all(serde_json::to_string(&q).unwrap().as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let image: Polynomial = serde_json::from_value(stdout_json(&out)).unwrap();
    assert_eq!(image, &Polynomial::z(n, 0).pow(2).scale(&frac(9, 1)) + &Polynomial::z(n, 1).scale(&frac(3, 1)));

    // ψ^k is only defined on one variable family.
    let out = tcclass(&["powermap", "--k", "3", "--torus", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn normalform_kills_ideal_elements() {
    let n = 2;
    let e1 = &Polynomial::x(n, 0) + &Polynomial::x(n, 1);
    let f = &(&e1 * &Polynomial::y(n, 0)) + &Polynomial::y(n, 1);
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.json");
    std::fs::write(&input, serde_json::to_string(&f).unwrap()).unwrap();
    let out = tcclass(&["normalform", "--group", "U", "--rank", "2", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let nf: Polynomial = serde_json::from_value(stdout_json(&out)).unwrap();
    let ideal = ideal_for_group(&GroupSpec::unitary(n)).unwrap();
    assert_eq!(nf, ideal.normal_form(&Polynomial::y(n, 1)).unwrap());
}

#[test]
fn cache_dir_receives_bases() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_tcclass"))
            .args(["decompose", "--group", "SU", "--rank", "2", "--a", "1", "--b", "1"])
            .env("TC_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(first.status.code(), Some(0));
    assert!(dir.path().join("basis-SU-2.json").exists());
    let second = run();
    assert_eq!(second.stdout, first.stdout);
}
