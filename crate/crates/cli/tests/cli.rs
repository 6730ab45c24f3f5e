use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slfock")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn dim_command() {
    let out = run(&["dim", "--n", "1", "--m", "1", "--p", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["dimension"], 3);
    assert_eq!(v["histogram"]["0"], 1);
    assert_eq!(v["histogram"]["1"], 2);

    let v = json(&run(&["dim", "--n", "2", "--m", "0", "--p", "2"]));
    assert_eq!(v["dimension"], 6);
    assert_eq!(v["histogram"]["2"], 3);

    assert_eq!(json(&run(&["dim", "--n", "3", "--m", "0", "--p", "0"]))["dimension"], 1);
    assert_eq!(code(&run(&["dim", "--n", "0", "--m", "0", "--p", "1"])), 2);
    assert_eq!(code(&run(&["dim", "--n", "4", "--m", "0", "--p", "8", "--cap", "100"])), 2);
}

#[test]
fn matrix_command() {
    let out = run(&["matrix", "a-", "1", "--n", "1", "--m", "0", "--p", "1", "--mode", "numeric", "--q", "1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["dim"], 2);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0][2][0].as_f64(), Some(1.0));
    assert_eq!(entries[0][2][1].as_f64(), Some(0.0));

    let out = run(&["matrix", "H", "1", "--n", "1", "--p", "0"]);
    let v = json(&out);
    assert_eq!(v["dim"], 1);
    assert!(v["entries"].as_array().unwrap().is_empty());

    assert_eq!(code(&run(&["matrix", "E", "0", "0", "--n", "1", "--p", "1", "--mode", "exact"])), 2);
    assert_eq!(code(&run(&["matrix", "a+", "3", "--n", "1", "--m", "1", "--p", "1"])), 2);
    assert_eq!(code(&run(&["matrix", "zz", "1", "--n", "1", "--p", "1"])), 2);
    assert_eq!(code(&run(&["matrix", "a+", "1", "--n", "1", "--p", "1", "--convention", "orthonormal"])), 2);
    assert_eq!(code(&run(&["matrix", "a+", "1", "--n", "1", "--p", "1", "--mode", "numeric", "--q", "-1"])), 2);
}

#[test]
fn exact_matrix_entries_are_laurent_maps() {
    // (1,1,2) unnormalized: a_2^+ on |1,0) gives q^{-1}|1,1).
    let v = json(&run(&["matrix", "a+", "2", "--n", "1", "--m", "1", "--p", "2"]));
    let entries = v["entries"].as_array().unwrap();
    let hit = entries.iter().find(|e| e[1] == 2).expect("entry in column of |1,0)");
    assert_eq!(hit[2], serde_json::json!({"-1": "1/1"}));
    assert_eq!(v["degree"], 1);
}

#[test]
fn coordinate_format() {
    let out = run(&["matrix", "a+", "1", "--n", "1", "--p", "2", "--mode", "classical", "--format", "coord"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "3 2");
    assert_eq!(lines[1], "1 0 1/1");
    assert_eq!(lines[2], "2 1 1/1");
}

#[test]
fn verify_command() {
    let out = run(&["verify", "--all", "--n", "1", "--m", "1", "--p", "2", "--mode", "exact"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["summary"]["failed"], 0);
    for suite in v["suites"].as_array().unwrap() {
        for r in suite["reports"].as_array().unwrap() {
            assert!(r["status"] == "exact_zero" || r["status"] == "skipped", "{r}");
        }
    }
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("failed=0"), "{stderr}");

    let v = json(&run(&["verify", "--suite", "serre", "--n", "1", "--m", "1", "--p", "1"]));
    let r12e: Vec<&Value> =
        v["suites"][0]["reports"].as_array().unwrap().iter().filter(|r| r["relation"] == "R12e").collect();
    assert_eq!(r12e.len(), 1);
    assert_eq!(r12e[0]["status"], "skipped");

    let out = run(&[
        "verify", "--suite", "deformed", "--n", "1", "--m", "1", "--p", "2", "--mode", "numeric", "--q", "0.7",
        "--tol", "1e-9",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["suites"][0]["reports"].as_array().unwrap().iter().all(|r| r["status"] == "residual"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code(&run(&["verify", "--n", "1", "--m", "1", "--p", "1"])), 2);
    assert_eq!(
        code(&run(&["verify", "--suite", "deformed", "--n", "1", "--m", "1", "--p", "1", "--mode", "classical"])),
        2
    );
    assert_eq!(code(&run(&["verify", "--suite", "ladder", "--n", "2", "--m", "1", "--p", "1"])), 2);
    assert_eq!(code(&run(&["verify", "--all", "--n", "1", "--m", "1", "--p", "1", "--tol", "0"])), 2);
    assert_eq!(code(&run(&["verify", "--all", "--n", "1", "--p", "1", "--mode", "numeric"])), 2);
}

#[test]
fn ladder_suite_with_rational_levels() {
    let out = run(&["verify", "--suite", "ladder", "--n", "2", "--m", "2", "--p", "2", "--eps", "1/3,5/7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["suites"][0]["summary"]["passed"], 8);
}

#[test]
fn stats_config() {
    let v = json(&run(&["stats", "config", "--p", "5", "•◦•|◦•||||"]));
    assert_eq!(v["verdict"]["verdict"], "Valid");
    assert_eq!(v["verdict"]["saturated"], true);
    assert!(v["allowed_additions"].as_array().unwrap().iter().all(|a| a["b"] == false && a["f"] == false));

    let v = json(&run(&["stats", "config", "--p", "5", "•◦•|◦◦||||"]));
    assert_eq!(v["verdict"]["verdict"], "Forbidden");
    assert_eq!(v["verdict"]["reason"]["kind"], "FermiExclusion");
    assert_eq!(v["verdict"]["reason"]["orbital"], 2);

    let v = json(&run(&["stats", "config", "--p", "5", "2b1f|1b|||||"]));
    let adds = v["allowed_additions"].as_array().unwrap();
    assert_eq!(adds[0]["f"], false);
    assert!(adds[1..].iter().all(|a| a["b"] == true && a["f"] == true));

    assert_eq!(code(&run(&["stats", "config", "--p", "5", "•?|"])), 2);
    assert_eq!(code(&run(&["stats", "config", "--p", "5", "--n", "6", "•|•"])), 2);
}

#[test]
fn stats_sweep() {
    let out = run(&["stats", "sweep", "--n", "1", "--m", "1", "--p", "1", "--eps", "1", "--beta", "0:2:0.5"]);
    assert_eq!(code(&out), 0);
    let mut reader = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(reader.headers().unwrap(), vec!["beta", "Z", "mean_occ_1"]);
    let mut count = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let beta: f64 = rec[0].parse().unwrap();
        let z: f64 = rec[1].parse().unwrap();
        assert!((z - (1.0 + 2.0 * (-beta).exp())).abs() < 1e-12);
        count += 1;
    }
    assert_eq!(count, 5);
    assert_eq!(code(&run(&["stats", "sweep", "--n", "2", "--m", "1", "--p", "1", "--beta", "0:1:1"])), 2);
    assert_eq!(code(&run(&["stats", "sweep", "--n", "1", "--m", "1", "--p", "1", "--beta", "0:1:0"])), 2);
}

#[test]
fn output_is_reproducible() {
    let args = ["verify", "--all", "--n", "2", "--m", "1", "--p", "2", "--mode", "numeric", "--q", "1/2+3/4i"];
    let a = run(&args);
    let b = run(&[&args[..], &["--workers", "1"]].concat());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("slfock-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dim.json");
    let out = run(&["dim", "--n", "1", "--m", "1", "--p", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["dimension"], 3);
    std::fs::remove_dir_all(&dir).ok();
}
