use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn qabn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qabn")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = qabn(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn run_writes_an_im_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("im.csv");
    let summary = dir.path().join("summary.json");
    let trace = dir.path().join("trace.csv");
    let out = qabn(&[
        "run",
        "--preset",
        "or_cycle",
        "--steps",
        "4",
        "--out",
        csv.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "step,value");
    assert_eq!(rows.len(), 6);
    assert!(rows[1..].iter().all(|r| r.ends_with(",0.000000000000")));

    let s: Value = serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["steps"], 4);
    assert_eq!(s["reduced"][2]["label"], "0");
    let t = fs::read_to_string(&trace).unwrap();
    assert!(t.starts_with("step,qubit,rho00_re,rho01_re,rho01_im,rho11_re\n"));
    assert_eq!(t.lines().count(), 1 + 5 * 3);
}

#[test]
fn zero_steps_gives_a_single_row() {
    let out = qabn(&["run", "--preset", "fig7", "--steps", "0"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "step,value\n0,0.000000000000\n");
}

#[test]
fn cycle_reports() {
    let v = json(&["cycle", "--preset", "or_cycle"]);
    assert_eq!(v["state_period"], 2);
    assert_eq!(v["preperiod"], 0);
    assert_eq!(v["cross_check"]["agrees"], true);
    let v = json(&["cycle", "--preset", "fig7"]);
    assert_eq!(v["state_period"], 6);
    assert_eq!(v["im_period"], 6);
    let v = json(&["cycle", "--preset", "fig9_text"]);
    assert_eq!(v["state_period"], 9300);
}

#[test]
fn frozen_and_perturb_reports() {
    let v = json(&["frozen", "--preset", "fig7"]);
    assert_eq!(v["frozen"], serde_json::json!([1, 5]));
    assert_eq!(v["islands"], serde_json::json!([[0], [2, 3, 4], [6, 7]]));
    assert_eq!(v["qubit_names"][1], "y1");

    let v = json(&["perturb", "--preset", "fig7", "--perturb-step", "11", "--perturb-qubit", "0"]);
    assert_eq!(v["island_crossing"], true);
    assert_eq!(v["im_cycle_preserved"], true);
    assert!(v["first_divergence"][4].is_u64());
}

#[test]
fn spectrum_csv() {
    let out = qabn(&["spectrum", "--preset", "fig6", "--steps", "64"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("frequency,magnitude"));
    assert_eq!(text.lines().count(), 1 + 33);
}

#[test]
fn classical_attractors_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let v = json(&["classical", "--preset", "fig1_classical", "--dot", dot.to_str().unwrap(), "--initial", "111"]);
    let sizes: Vec<u64> =
        v["attractors"].as_array().unwrap().iter().map(|a| a["basin_size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, [1, 2, 5]);
    assert_eq!(v["frozen"]["frozen"], serde_json::json!([0, 1, 2]));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));

    let e = json(&["classical", "--ensemble", "6", "--samples", "20", "--seed", "3"]);
    assert_eq!(e["samples"], 20);
}

#[test]
fn enumerate_counts() {
    let v = json(&["enumerate"]);
    assert_eq!(v["catalog"][0]["functions"], 4);
    assert_eq!(v["catalog"][1]["functions"], 16);
    assert_eq!(v["wirings"], "362880");
    assert_eq!(v["functions"].as_array().unwrap().len(), 20);
    let p = json(&["enumerate", "--presets"]);
    assert_eq!(p.as_array().unwrap().len(), 8);
}

#[test]
fn spec_files_and_line_numbered_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("net.qabn");
    fs::write(&good, "# two-step toggle\nfunctions = OR\nwiring = [0, 1, 2]\ninput = (11,0)\n").unwrap();
    assert_eq!(json(&["cycle", "--spec", good.to_str().unwrap()])["state_period"], 2);

    let bad = dir.path().join("bad.qabn");
    fs::write(&bad, "functions = OR\nwiring = [0, 1, 1]\ninput = (11,0)\n").unwrap();
    let out = qabn(&["cycle", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn exit_codes() {
    assert_eq!(qabn(&["cycle"]).status.code(), Some(2));
    assert_eq!(qabn(&["cycle", "--preset", "or_cycle", "--spec", "x"]).status.code(), Some(2));
    assert_eq!(qabn(&["frozen", "--preset", "fig7", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(qabn(&["classical", "--ensemble", "21", "--samples", "1"]).status.code(), Some(3));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        &["sweep", "--seed", "5", "--count", "24", "--functions", "2"][..],
        &["classical", "--ensemble", "10", "--samples", "40", "--seed", "9"][..],
        &["perturb", "--preset", "fig6", "--perturb-step", "3", "--perturb-qubit", "2"][..],
    ] {
        let a = qabn(args);
        let b = qabn(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn sweep_rows_follow_seed_order() {
    let out = qabn(&["sweep", "--seed", "10", "--count", "8"]);
    let seeds: Vec<u64> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["seed"].as_u64().unwrap())
        .collect();
    assert_eq!(seeds, (10..18).collect::<Vec<_>>());
}
