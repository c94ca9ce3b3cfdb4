use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_terracini"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn psd_random_rays_pass() {
    let o = run(&["terracini", "--cone", "psd:3", "--random", "2", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["dim_lhs"], v["dim_rhs"]);
}

#[test]
fn square_cone_diagonal_rays_fail_with_exit_two() {
    let o = run(&["terracini", "--cone", "square-cone", "--rays", "[[1,1,1],[-1,-1,1]]"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert!(v["certificate"].is_array());
}

#[test]
fn malformed_json_is_an_error() {
    let o = run(&["terracini", "--cone", "{\"type\":", "--rays", "[[1]]"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"]["kind"], "usage");
}

#[test]
fn unknown_cone_and_bad_flags_are_errors() {
    let o = run(&["terracini", "--cone", "dodecahedron", "--rays", "[[1]]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["error"]["detail"].is_string());
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"]["kind"], "usage");
}

#[test]
fn stochastic_commands_require_a_seed() {
    for args in [
        &["terracini", "--cone", "psd:3", "--random", "2"][..],
        &["recover", "lp", "--d", "6", "--n", "3", "--k", "1", "--trials", "1"][..],
        &["veronese", "growth", "--points", "[[1,0],[0,1]]", "--deg", "4"][..],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert_eq!(json(&o)["error"]["kind"], "usage");
    }
}

#[test]
fn cone_from_stdin() {
    let cone = r#"{"type": "polyhedral", "generators": [[1,0,0],[0,1,0],[0,0,1]]}"#;
    let o = run_stdin(&["terracini", "--cone", "-", "--rays", "[[1,0,0],[0,1,0]]"], cone);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn cone_and_rays_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let cone = dir.path().join("cone.json");
    let rays = dir.path().join("rays.json");
    std::fs::write(&cone, r#"{"type": "builtin", "name": "square-cone"}"#).unwrap();
    std::fs::write(&rays, r#"{"rays": [[1,1,1],[1,-1,1]]}"#).unwrap();
    let o = run(&["terracini", "--cone", cone.to_str().unwrap(), "--rays", rays.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn tol_overrides_the_verdict_threshold() {
    let args = ["terracini", "--cone", "square-cone", "--rays", "[[1,1,1],[-1,-1,1]]"];
    assert_eq!(run(&args).status.code(), Some(2));
    let mut loose = args.to_vec();
    loose.extend(["--tol", "2"]);
    assert_eq!(run(&loose).status.code(), Some(0));
}

#[test]
fn neighborly_square_cone_fails() {
    let o = run(&["neighborly", "--cone", "square-cone", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["neighborly", "--cone", "orthant:4", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn hyperbolic_commands() {
    let o = run(&["hyperbolic", "eig", "--poly", "x1 x2 x3", "--e", "1,1,1", "--x", "3,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let ev: Vec<f64> = serde_json::from_value(json(&o)["eigenvalues"].clone()).unwrap();
    for (a, b) in ev.iter().zip([3.0, 2.0, 1.0]) {
        assert!((a - b).abs() <= 1e-12);
    }

    let o = run(&["hyperbolic", "localize", "--poly", "x1 x2 x3", "--e", "1,1,1", "--x", "1,0,0"]);
    let v = json(&o);
    assert_eq!(v["mult"], 2);
    assert_eq!(v["text"], "x2 x3");

    let o = run(&["hyperbolic", "derivative", "--poly", "x1 x2 x3", "--e", "1,1,1"]);
    assert_eq!(json(&o)["poly"]["terms"].as_array().unwrap().len(), 3);

    let o = run(&["hyperbolic", "lineality", "--poly", "x1 x2", "--e", "1,1,1"]);
    let v = json(&o);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["ambient"], 3);

    let o = run(&["hyperbolic", "mult3", "--poly", "x1 x2 x3 x4", "--e", "1,1,1,1", "--x", "0,0,0,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["mult"], 3);
}

#[test]
fn veronese_commands() {
    let o = run(&["veronese", "double-vanish", "--points", "blekherman-s", "--n", "4", "--deg", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let dim = json(&o)["dim"].as_u64().unwrap() as usize;
    let pts = terracini_core::neighborly::blekherman_s();
    assert_eq!(dim, terracini_core::neighborly::double_vanishing_dimension(&pts, 4, 4).unwrap());

    let o = run(&["veronese", "double-vanish", "--points", "blekherman-s", "--n", "3", "--deg", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["veronese", "certificate", "--points", "[[1,0],[0,1]]", "--deg", "3"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["veronese", "certificate", "--points", "[[1,0],[0,1]]", "--deg", "4"]);
    let v = json(&o);
    assert_eq!(v["functional"].as_array().unwrap().len(), 5);
    assert_eq!(v["monomials"].as_array().unwrap().len(), 5);

    let o = run(&["veronese", "growth", "--points", "[[1,0],[0,1]]", "--deg", "4", "--samples", "50", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn recover_lp_summary() {
    let o = run(&["recover", "lp", "--d", "12", "--n", "8", "--k", "1", "--trials", "6", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["trials"].as_array().unwrap().len(), 6);
    let rate = v["recovery_rate"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&rate));
}

#[test]
fn outputs_are_byte_identical_and_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["recover", "lp", "--d", "10", "--n", "5", "--k", "1", "--trials", "4", "--seed", "3"],
        vec!["recover", "sdp", "--d", "3", "--n", "8", "--k", "1", "--trials", "3", "--seed", "3"],
        vec!["recover", "dt-study", "--d", "6", "--n", "4", "--k", "1", "--trials", "3", "--plants", "3", "--seed", "3"],
        vec!["terracini", "--cone", "psd:4", "--random", "3", "--seed", "5"],
        vec!["veronese", "growth", "--points", "[[1,0],[0,1]]", "--deg", "4", "--samples", "40", "--seed", "5"],
    ];
    for (ci, args) in cases.iter().enumerate() {
        let mut outs = Vec::new();
        for (run_i, jobs) in ["1", "1", "3"].iter().enumerate() {
            let path = dir.path().join(format!("out{ci}_{run_i}.json"));
            let mut a = args.clone();
            a.extend(["--jobs", jobs, "--out", path.to_str().unwrap()]);
            let o = run(&a);
            assert_eq!(o.status.code(), Some(0), "{a:?}: {}", String::from_utf8_lossy(&o.stderr));
            outs.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(outs[0], outs[1], "{args:?}");
        assert_eq!(outs[0], outs[2], "{args:?} with --jobs 3");
    }
}

#[test]
fn manifest_round_trips_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["--seed", "4", "recover", "lp", "--d", "8", "--n", "4", "--k", "1", "--trials", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mpath = terracini::cli::manifest_path(&out);
    let m: terracini::manifest::RunManifest = serde_json::from_slice(&std::fs::read(&mpath).unwrap()).unwrap();
    assert_eq!(m.command, "recover lp");
    assert_eq!(m.seed, Some(4));
    assert_eq!(m.config["command"]["recover"]["lp"]["d"], 8);
    assert_eq!(m.outputs, vec![out.display().to_string()]);

    // Re-running the recorded command line reproduces the output.
    let first = std::fs::read(&out).unwrap();
    std::fs::remove_file(&out).unwrap();
    let o = bin().args(&m.argv[1..]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&out).unwrap(), first);
}

#[test]
fn config_file_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"kind": "lp", "d": 8, "n": 4, "k": 1, "trials": 3, "seed": 11}"#).unwrap();
    let a = json(&run(&["recover", "lp", "--config", cfg.to_str().unwrap()]));
    let b = json(&run(&["recover", "lp", "--d", "8", "--n", "4", "--k", "1", "--trials", "3", "--seed", "11"]));
    assert_eq!(a, b);
    let c = json(&run(&["recover", "lp", "--config", cfg.to_str().unwrap(), "--trials", "2"]));
    assert_eq!(c["trials"].as_array().unwrap().len(), 2);
    let o = run(&["recover", "sdp", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn csv_output() {
    let o = run(&["recover", "lp", "--d", "8", "--n", "4", "--k", "1", "--trials", "3", "--seed", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("index,k,valid,recovered"));

    let o = run(&["terracini", "--cone", "psd:3", "--random", "2", "--seed", "1", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().unwrap().clone();
    let row = r.records().next().unwrap().unwrap();
    let passed = header.iter().position(|h| h == "passed").unwrap();
    assert_eq!(&row[passed], "true");
}
