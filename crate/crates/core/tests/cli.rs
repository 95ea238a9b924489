use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pgdus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgdus")).args(args).output().unwrap()
}

fn json_at(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn relief_csv(dir: &Path) -> String {
    let path = dir.join("relief.csv");
    fs::write(&path, pgdus::datasets::RELIEF_TIMES_CSV).unwrap();
    path.display().to_string()
}

#[test]
fn fit_reports_converged_ml_and_mps() {
    let dir = tempfile::tempdir().unwrap();
    let data = relief_csv(dir.path());
    for (method, label) in [("ml", "ML"), ("mps", "MPS")] {
        let out = dir.path().join(format!("{method}.json"));
        let run = pgdus(&[
            "fit", "--data", &data, "--model", "pgdus-iw", "--method", method, "--out", out.to_str().unwrap(),
        ]);
        assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
        let doc = json_at(&out);
        assert_eq!(doc["schema"], "pgdus/1");
        assert_eq!(doc["command"], "fit");
        let fit = &doc["fits"][0];
        assert_eq!(fit["converged"], true);
        assert_eq!(fit["method"], label);
        assert!(fit["params"]["gamma"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    assert_eq!(pgdus(&["fit", "--data", empty.to_str().unwrap()]).status.code(), Some(2));
    let header_only = dir.path().join("header.csv");
    fs::write(&header_only, "t\n").unwrap();
    assert_eq!(pgdus(&["fit", "--data", header_only.to_str().unwrap()]).status.code(), Some(2));
    let negative = dir.path().join("neg.csv");
    fs::write(&negative, "t\n1.0\n-2.0\n3.0\n4.0\n").unwrap();
    assert_eq!(pgdus(&["fit", "--data", negative.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(pgdus(&["fit", "--model", "nope"]).status.code(), Some(2));
}

#[test]
fn gof_ranks_and_writes_reproducible_plot_data() {
    let dir = tempfile::tempdir().unwrap();
    let data = relief_csv(dir.path());
    let run_once = |tag: &str| {
        let out = dir.path().join(format!("{tag}.json"));
        let plots = dir.path().join(tag);
        let run = pgdus(&[
            "gof",
            "--data",
            &data,
            "--B",
            "100",
            "--out",
            out.to_str().unwrap(),
            "--plots",
            plots.to_str().unwrap(),
        ]);
        assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
        let cdf = fs::read_to_string(dir.path().join(format!("{tag}.cdf.csv"))).unwrap();
        let pdf = fs::read_to_string(dir.path().join(format!("{tag}.pdf.csv"))).unwrap();
        (json_at(&out), cdf, pdf)
    };
    let (doc, cdf, pdf) = run_once("a");
    assert_eq!(doc["ranking"][0]["model"], "pgdus-iw");
    assert_eq!(doc["ranking"].as_array().unwrap().len(), 4);
    assert_eq!(cdf.lines().count(), 1 + 512);
    assert_eq!(pdf.lines().count(), 1 + 512);
    assert!(cdf.starts_with("t,ecdf,"));

    let (doc2, cdf2, pdf2) = run_once("b");
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("plots");
        v
    };
    assert_eq!(strip(doc), strip(doc2));
    assert_eq!(cdf, cdf2);
    assert_eq!(pdf, pdf2);
}

#[test]
fn simulate_smoke_run_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for out in [&a, &b] {
        let run = pgdus(&["simulate", "--reps", "10", "--sizes", "30,60", "--out", out.to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("method,n,parameter,mean,bias,mse,failures\n"));
    assert_eq!(text.lines().count(), 1 + 2 * 2 * 3);
}

#[test]
fn reliability_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let single = dir.path().join("single.json");
    let multi = dir.path().join("multi.json");
    let run = pgdus(&["reliability", "--gamma1", "1", "--gamma2", "3", "--out", single.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let run = pgdus(&[
        "reliability", "--gamma1", "1", "--gamma2", "3", "--c", "1", "--k", "1", "--out", multi.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0));
    let (s, m) = (json_at(&single), json_at(&multi));
    assert_eq!(s["r"].as_f64().unwrap(), 0.25);
    assert_eq!(s["r"], m["r"]);
    assert_eq!(s["mode"], "closed-form");

    let oracle = dir.path().join("oracle.json");
    let run = pgdus(&[
        "reliability", "--gamma1", "2", "--gamma2", "1", "--c", "2", "--k", "3", "--oracle", "--draws", "200000",
        "--out", oracle.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(json_at(&oracle)["oracle"]["within_3se"], true);

    assert_eq!(pgdus(&["reliability", "--gamma1", "1", "--gamma2", "1", "--c", "4", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn reliability_from_two_files() {
    let dir = tempfile::tempdir().unwrap();
    let strength = dir.path().join("x.csv");
    let stress = dir.path().join("y.csv");
    let draw = |params: &str, seed: &str, out: &Path| {
        let run = pgdus(&["sample", "--params", params, "--n", "80", "--seed", seed, "--out", out.to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    };
    draw("1,1,2", "1", &strength);
    draw("1,1,1", "2", &stress);
    let out = dir.path().join("r.json");
    let run = pgdus(&[
        "reliability",
        "--strength",
        strength.to_str().unwrap(),
        "--stress",
        stress.to_str().unwrap(),
        "--method",
        "both",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let doc = json_at(&out);
    assert_eq!(doc["mode"], "estimate");
    let estimates = doc["estimates"].as_array().unwrap();
    assert_eq!(estimates.len(), 2);
    for e in estimates {
        let r = e["r"].as_f64().unwrap();
        assert!(r > 0.0 && r < 1.0);
    }
}

#[test]
fn sample_is_deterministic_csv() {
    let a = pgdus(&["sample", "--n", "5", "--seed", "9"]);
    let b = pgdus(&["sample", "--n", "5", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("t"));
    assert_eq!(text.lines().count(), 6);
    assert_eq!(pgdus(&["sample", "--n", "0"]).status.code(), Some(2));
}
