use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn hypgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypgroup"))
        .args(args)
        .env_remove("HYPGROUP_NODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn scan_reports_sup_ratio() {
    let out = hypgroup(&["scan", "--pres", &data("z3.grp"), "--maxlen", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["sup_ratio"]["num"], 3);
    assert_eq!(r["results"]["all_exact"], true);
    assert_eq!(r["flags"]["exact"], true);
    assert_eq!(r["tool"], "hypgroup");
    assert!(r["timing"]["wall_seconds"].is_number());

    let out = hypgroup(&["scan", "--pres", &data("f2.grp"), "--maxlen", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["sup_ratio"]["kind"], "vacuous");
}

#[test]
fn nontrivial_word_is_an_input_error() {
    let out = hypgroup(&["area", "--pres", &data("z3.grp"), "--word", "aa"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotTrivial"));
    assert!(out.stdout.is_empty());
}

#[test]
fn budget_exhaustion_exits_3_with_bounds() {
    let out = hypgroup(&[
        "area",
        "--pres",
        &data("z2.grp"),
        "--word",
        "aabbAABB",
        "--max-nodes",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["results"]["exact"], false);
    assert!(r["results"]["lower_bound"].as_u64().unwrap() <= 64);
    assert_eq!(r["flags"]["exact"], false);

    let env = Command::new(env!("CARGO_BIN_EXE_hypgroup"))
        .args(["area", "--pres", &data("z2.grp"), "--word", "aabbAABB"])
        .env("HYPGROUP_NODE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));

    let out = hypgroup(&[
        "ball",
        "--pres",
        &data("z2.grp"),
        "--radius",
        "30",
        "--limit",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn exact_area_report() {
    let out = hypgroup(&["area", "--pres", &data("z2.grp"), "--word", "aabbAABB"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["area"], 64);
    assert_eq!(r["results"]["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(
        hypgroup(&["scan", "--pres", "/nonexistent.grp", "--maxlen", "3"])
            .status
            .code(),
        Some(2)
    );
    let bad = hypgroup(&[
        "scan",
        "--pres",
        &data("z2.grp"),
        "--maxlen",
        "3",
        "--oracle",
        "exp:3",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(
        hypgroup(&["area", "--pres", &data("z3.grp"), "--word", "xyz"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hypgroup(&["scan"]).status.code(), Some(2));
}

#[test]
fn invariant_violation_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"schema_version":1,"points":2,"distances":[[0,1],[2,0]]}"#,
    )
    .unwrap();
    let out = hypgroup(&["qaudit", "--cloud", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dimension_of_line() {
    let out = hypgroup(&[
        "dimension",
        "--cloud",
        &data("line256.json"),
        "--octaves",
        "6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let slope = report(&out)["results"]["slope"].as_f64().unwrap();
    assert!((slope - 1.0).abs() <= 0.15, "{slope}");
}

#[test]
fn doubling_and_metrize_commands() {
    let out = hypgroup(&[
        "doubling",
        "--cloud",
        &data("line256.json"),
        "--radii",
        "1,2,4,8,16,32",
        "--iterate",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["c1"], 3);
    assert_eq!(r["results"]["c2"], 3.0);
    assert_eq!(
        r["results"]["iterate_failures"].as_array().unwrap().len(),
        0
    );

    let out = hypgroup(&[
        "metrize",
        "--cloud",
        &data("squared3.csv"),
        "--epsilon",
        "0.5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["c_prime"], 1.0);
    assert_eq!(r["results"]["rho_is_metric"], true);
}

#[test]
fn boundary_cloud_round_trips_through_qaudit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("boundary.json");
    let p = path.to_str().unwrap();
    let out = hypgroup(&[
        "boundary",
        "--rank",
        "2",
        "--depth",
        "3",
        "--epsilon",
        "1.0986",
        "--emit",
        p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["points"], 36);
    let out = hypgroup(&["qaudit", "--cloud", p, "--samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["is_ultrametric"], true);
    assert_eq!(r["results"]["is_metric"], true);
    assert_eq!(
        r["results"]["distance_functions"].as_array().unwrap().len(),
        5
    );
}

#[test]
fn seeds_fix_sampled_points_and_out_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("r.json");
    let args = [
        "qaudit",
        "--cloud",
        &data("line256.json"),
        "--samples",
        "4",
        "--seed",
        "9",
    ];
    let a = report(&hypgroup(&args));
    let b = report(&hypgroup(&args));
    assert_eq!(a["results"], b["results"]);
    let mut with_out: Vec<&str> = args.to_vec();
    with_out.extend(["--out", file.to_str().unwrap()]);
    let out = hypgroup(&with_out);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(written["results"], a["results"]);
}

#[test]
fn dist_and_ball_commands() {
    let out = hypgroup(&[
        "dist",
        "--pres",
        &data("z2.grp"),
        "--from",
        "ab",
        "--to",
        "BA",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"]["distance"], 4);
    assert_eq!(r["results"]["direct_distance"], 4);
    let out = hypgroup(&["ball", "--pres", &data("f2.grp"), "--radius", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["results"]["size"], 17);
}
