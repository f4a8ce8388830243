//! End-to-end runs of the `protest` binary over the checked-in fixtures.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn protest(out_dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_protest"))
        .arg("--out-dir")
        .arg(out_dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(out_dir: &Path, args: &[&str]) {
    let out = protest(out_dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

fn all_commands() -> Vec<Vec<String>> {
    let f = fixture;
    [
        vec!["consensus", "--judgments", &f("judgments.csv"), "--reliability"],
        vec!["sample-pairs", "--n-items", "41", "--degree", "6"],
        vec!["fit-bt", "--comparisons", &f("bt3_comparisons.csv")],
        vec!["eval", "--predictions", &f("predictions.csv"), "--truth", &f("truth.csv")],
        vec!["matrix", "--table", &f("predictions.csv"), "--rows", "protest,violence", "--cols", "angry,sad,happy"],
        vec!["filter", "--scores", &f("predictions.csv"), "--labels", &f("labels.csv"), "--target-recall", "0.75"],
        vec![
            "geo-report",
            "--tweets",
            &f("tweets.jsonl"),
            "--predictions",
            &f("predictions.csv"),
            "--regions",
            &f("regions.geojson"),
            "--hashtags",
            "blacklivesmatter",
        ],
        vec![
            "event-report",
            "--tweets",
            &f("tweets.jsonl"),
            "--predictions",
            &f("predictions.csv"),
            "--events",
            &f("events.toml"),
            "--regions",
            &f("regions.geojson"),
        ],
        vec!["text-corr", "--tweets", &f("tweets.jsonl"), "--predictions", &f("predictions.csv"), "--all-images"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(str::to_string).collect())
    .collect()
}

#[test]
fn every_command_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    for args in all_commands() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let dirs: Vec<PathBuf> = ["a", "b"].iter().map(|r| tmp.path().join(args[0]).join(r)).collect();
        for d in &dirs {
            ok(d, &[&["--seed", "11"][..], &args].concat());
        }
        let (ma, mb) = (manifest(&dirs[0]), manifest(&dirs[1]));
        assert_eq!(ma["config_hash"], mb["config_hash"]);
        assert_eq!(ma["seed"], 11);
        let outputs = ma["outputs"].as_array().unwrap();
        assert!(!outputs.is_empty());
        assert_eq!(outputs, mb["outputs"].as_array().unwrap());
        for o in outputs {
            let name = o["path"].as_str().unwrap();
            let (a, b) = (fs::read(dirs[0].join(name)).unwrap(), fs::read(dirs[1].join(name)).unwrap());
            assert_eq!(a, b, "{} {name}", args[0]);
        }
    }
}

#[test]
fn seed_changes_random_outputs_only() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    ok(&a, &["--seed", "1", "sample-pairs", "--n-items", "40", "--degree", "4"]);
    ok(&b, &["--seed", "2", "sample-pairs", "--n-items", "40", "--degree", "4"]);
    assert_ne!(fs::read(a.join("pairs.csv")).unwrap(), fs::read(b.join("pairs.csv")).unwrap());
    let pairs = read_csv(&a.join("pairs.csv"));
    assert_eq!(pairs[0], ["left_id", "right_id"]);
    assert_eq!(pairs.len() - 1, 40 * 4 / 2);
}

#[test]
fn fit_bt_matches_three_item_oracle() {
    let tmp = tempfile::tempdir().unwrap();
    ok(tmp.path(), &["fit-bt", "--comparisons", &fixture("bt3_comparisons.csv"), "--pseudo-count", "0"]);
    let rows = read_csv(&tmp.path().join("strengths.csv"));
    assert_eq!(rows[0], ["image_id", "pi", "log_pi", "score"]);
    // Gauge-fixed MLE of the 8-2 fixture, from grid search plus golden-section refinement.
    let oracle = [("A", 2.641275), ("B", 1.0), ("C", 0.378605)];
    for (row, (id, pi)) in rows[1..].iter().zip(oracle) {
        assert_eq!(row[0], id);
        let got: f64 = row[1].parse().unwrap();
        assert!((got - pi).abs() < 1e-3, "{id}: {got} vs {pi}");
    }
    assert_eq!(rows[1][3], "1");
    assert_eq!(rows[3][3], "0");
    let summary: Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("fit_summary.json")).unwrap()).unwrap();
    assert_eq!(summary["converged"], true);
    assert_eq!(summary["n_comparisons"], 30);
}

#[test]
fn eval_of_truth_against_itself() {
    let tmp = tempfile::tempdir().unwrap();
    ok(tmp.path(), &["eval", "--predictions", &fixture("predictions.csv"), "--truth", &fixture("truth.csv")]);
    let rows = read_csv(&tmp.path().join("eval.csv"));
    assert_eq!(rows[0], ["column", "n", "auc", "rho", "r_squared", "p_value", "status"]);
    let protest = &rows[1];
    assert_eq!((protest[0].as_str(), protest[2].as_str()), ("protest", "1"));
    let violence = &rows[2];
    assert_eq!(violence[0], "violence");
    assert_eq!(violence[2], "");
    let rho: f64 = violence[3].parse().unwrap();
    let r2: f64 = violence[4].parse().unwrap();
    assert!((rho - 1.0).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
    let roc = read_csv(&tmp.path().join("roc_protest.csv"));
    assert_eq!(roc[0], ["fpr", "tpr", "threshold"]);
    assert_eq!(roc[1], ["0", "0", "inf"]);
    assert_eq!(roc.last().unwrap()[..2], ["1", "1"]);
}

#[test]
fn filter_rounds_have_their_own_directory() {
    let tmp = tempfile::tempdir().unwrap();
    for round in ["1", "2"] {
        ok(
            tmp.path(),
            &[
                "filter",
                "--scores",
                &fixture("predictions.csv"),
                "--labels",
                &fixture("labels.csv"),
                "--target-recall",
                "0.75",
                "--low-cutoff",
                "0.05",
                "--round",
                round,
            ],
        );
    }
    for round in ["round-001", "round-002"] {
        let dir = tmp.path().join(round);
        assert_eq!(manifest(&dir)["config"]["round"], round[6..].parse::<u64>().unwrap());
        let kept = read_csv(&dir.join("kept.csv")).len() - 1;
        let pruned = read_csv(&dir.join("pruned.csv")).len() - 1;
        assert_eq!(kept + pruned, 12);
        let threshold = read_csv(&dir.join("threshold.csv"));
        let recall: f64 = threshold[1][1].parse().unwrap();
        assert!(recall >= 0.75);
    }
}

#[test]
fn geo_report_counts_and_rejections() {
    let tmp = tempfile::tempdir().unwrap();
    ok(
        tmp.path(),
        &[
            "geo-report",
            "--tweets",
            &fixture("tweets.jsonl"),
            "--predictions",
            &fixture("predictions.csv"),
            "--regions",
            &fixture("regions.geojson"),
        ],
    );
    let stats = read_csv(&tmp.path().join("region_stats.csv"));
    let names: Vec<&str> = stats[1..].iter().map(|r| r[0].as_str()).collect();
    assert_eq!(names, ["north", "south", "unassigned"]);
    let total: usize = stats[1..].iter().map(|r| r[1].parse::<usize>().unwrap()).sum();
    assert_eq!(total, 24);
    let rejections = read_csv(&tmp.path().join("rejections.csv"));
    assert_eq!(rejections.len(), 3);
    assert_eq!(rejections[1][..2], ["6", "no-gps"]);
    assert_eq!(rejections[2][..2], ["10", "malformed"]);
}

#[test]
fn config_file_sits_between_flags_and_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("run.toml");
    fs::write(&config, "seed = 5\n[fit_bt]\npseudo_count = 0.25\ntol = 1e-7\n").unwrap();
    let cfg = config.display().to_string();
    let dir = tmp.path().join("out");
    ok(&dir, &["--config", &cfg, "fit-bt", "--comparisons", &fixture("bt3_comparisons.csv"), "--tol", "1e-8"]);
    let m = manifest(&dir);
    assert_eq!(m["seed"], 5);
    assert_eq!(m["config"]["pseudo_count"], 0.25);
    assert_eq!(m["config"]["tol"], 1e-8);
    assert_eq!(m["config"]["max_iter"], 10_000);
}

#[test]
fn inputs_are_not_modified() {
    let tmp = tempfile::tempdir().unwrap();
    let before: Vec<Vec<u8>> = ["predictions.csv", "labels.csv"].iter().map(|n| fs::read(fixture(n)).unwrap()).collect();
    ok(tmp.path(), &["filter", "--scores", &fixture("predictions.csv"), "--labels", &fixture("labels.csv")]);
    let after: Vec<Vec<u8>> = ["predictions.csv", "labels.csv"].iter().map(|n| fs::read(fixture(n)).unwrap()).collect();
    assert_eq!(before, after);
    let m = manifest(tmp.path());
    assert_eq!(m["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(m["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

fn error_report(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is a JSON report")
}

#[test]
fn failures_exit_with_distinct_codes_and_json_reports() {
    let tmp = tempfile::tempdir().unwrap();
    let missing = protest(tmp.path(), &["fit-bt", "--comparisons", "/nonexistent/c.csv"]);
    assert_eq!(missing.status.code(), Some(3));
    assert_eq!(error_report(&missing)["kind"], "io-error");

    let bad = tmp.path().join("bad.csv");
    fs::write(&bad, "worker_id,left_id,right_id,winner\nw,a,b,z\n").unwrap();
    let format = protest(tmp.path(), &["fit-bt", "--comparisons", &bad.display().to_string()]);
    assert_eq!(format.status.code(), Some(4));
    assert_eq!(error_report(&format)["line"], 2);

    let infeasible = protest(tmp.path(), &["sample-pairs", "--n-items", "5", "--degree", "3"]);
    assert_eq!(error_report(&infeasible)["kind"], "infeasible-design");
    assert!(![Some(0), Some(3), Some(4)].contains(&infeasible.status.code()));

    let split = tmp.path().join("split.csv");
    fs::write(&split, "worker_id,left_id,right_id,winner\nw,a,b,a\nw,c,d,c\n").unwrap();
    let degenerate = protest(tmp.path(), &["fit-bt", "--comparisons", &split.display().to_string()]);
    assert_eq!(error_report(&degenerate)["kind"], "degenerate-mle");
    assert_ne!(degenerate.status.code(), infeasible.status.code());
}
