use std::process::Command as Process;

use proptest::prelude::*;
use rankdual_cli::{run, Command, Format, JobSpec, Shape, VariantArg};
use serde_json::Value;

fn call(args: &[&str]) -> rankdual_cli::Outcome {
    run(std::iter::once("rankdual").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = call(args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn verlinde_anchor() {
    let v = json(&["verlinde", "--r", "2", "--l", "1", "--g", "2", "--weights", "[]", "--variant", "sl"]);
    assert_eq!(v["value"], "4");
    assert_eq!(v["subset_count"], 3);
    assert_eq!(v["total_weight"], 0);
    let gl = json(&["verlinde", "--r", "2", "--l", "1", "--g", "2", "--variant", "gl"]);
    assert_eq!(gl["value"], "1");
    let tw = json(&["verlinde", "--r", "2", "--l", "1", "--g", "2", "--variant", "twisted"]);
    assert_eq!(tw["value"], "9");
}

#[test]
fn oracle_rounds_to_exact() {
    let v = json(&["verlinde", "--r", "2", "--l", "2", "--g", "2", "--weights", r#"["2,1","1,0"]"#, "--oracle"]);
    assert_eq!(v["oracle"]["rounds_to_exact"], true);
    assert_eq!(v["oracle"]["digits"], 50);
    let vi = json(&["vi", "--r", "1", "--l", "1", "--g", "0", "--d", "-1", "--weights", r#"["1","1","1"]"#, "--oracle"]);
    assert_eq!(vi["value"], "1");
    assert_eq!(vi["oracle"]["rounds_to_exact"], true);
}

#[test]
fn csv_has_instance_columns() {
    let out = call(&["verlinde", "--r", "2", "--l", "1", "--g", "2", "--variant", "twisted", "--format", "csv"]);
    assert_eq!(out.code, 0);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("r,l,g,n,d,dd,total_weight,variant,value"));
    assert_eq!(lines.next(), Some("2,1,2,0,,,0,twisted,9"));
    let out = call(&["verdict", "--r", "2", "--l", "1", "--g", "1", "--d", "1", "--dd", "0", "--weights", r#"["1,0"]"#, "--format", "csv"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 3);
}

#[test]
fn symmetry_exhaustive_passes() {
    let v = json(&["symmetry", "--N", "5", "--exhaustive"]);
    for line in v["lines"].as_array().unwrap() {
        assert_eq!(line["status"], "pass", "{line}");
        assert!(line["cases"].as_u64().unwrap() > 0);
    }
}

#[test]
fn sampled_suites_follow_the_seed() {
    let a = call(&["symmetry", "--N", "6", "--samples", "20", "--seed", "3"]);
    let b = call(&["symmetry", "--N", "6", "--samples", "20", "--seed", "3"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let p = json(&["parlin-check", "--exhaustive-max", "2", "--random-seeds", "10", "--seed", "9"]);
    assert_eq!(p["seed"], 9);
    assert!(p["lines"].as_array().unwrap().iter().all(|l| l["status"] == "pass"));
}

#[test]
fn inadmissible_verdict_is_an_input_error() {
    let out = call(&["verdict", "--r", "2", "--l", "2", "--g", "1", "--d", "0", "--dd", "0", "--weights", r#"["1,0"]"#]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("not divisible by rl"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_inputs_exit_two() {
    assert_eq!(call(&["verlinde", "--r", "2", "--l", "2", "--g", "1", "--weights", "[\"1,0\""]).code, 2);
    assert_eq!(call(&["verlinde", "--r", "2", "--l", "2", "--g", "1", "--weights", r#"["3,0"]"#]).code, 2);
    assert_eq!(call(&["verlinde", "--r", "2", "--l", "2", "--g", "1", "--weights", r#"["1,0"]"#]).code, 2);
    assert_eq!(call(&["vi", "--r", "2", "--l", "1", "--g", "0", "--d", "0"]).code, 2);
    assert_eq!(call(&["schur-eval", "--diagram", "1,0", "--N", "4", "--subset", "0,7"]).code, 2);
    assert_eq!(call(&["--job", "{\"subcommand\": \"nope\"}"]).code, 2);
    assert_eq!(call(&["verlinde", "--bogus"]).code, 2);
    assert_eq!(call(&[]).code, 2);
}

#[test]
fn outputs_are_byte_identical() {
    let args = ["normalize", "--r", "3", "--l", "2", "--g", "2", "--d", "-3", "--dd", "2", "--weights", r#"["2,1,0","1,1,1"]"#];
    let first = call(&args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    for _ in 0..3 {
        assert_eq!(call(&args).stdout, first.stdout);
    }
    let v: Value = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(v["postconditions"]["dd_zero"], true);
    assert_eq!(v["normalized"]["dd"], 0);
}

#[test]
fn schur_eval_reports_exact_value() {
    let v = json(&["schur-eval", "--diagram", "1,1", "--N", "3", "--subset", "0,1", "--oracle"]);
    assert_eq!(v["value"], "1·z (mod Phi_3)");
    assert_eq!(v["rational"], Value::Null);
    assert_eq!(v["oracle"]["rounds_to_exact"], true);
    let v = json(&["schur-eval", "--diagram", "1", "--N", "2", "--subset", "1"]);
    assert_eq!(v["rational"], "-1");
}

#[test]
fn vi_check_matches() {
    let v = json(&["vi-check", "--r", "2", "--l", "1", "--g", "1", "--d", "0"]);
    assert_eq!(v["equal"], true);
    assert_eq!(v["intersection"], v["verlinde_twisted_transposed"]);
}

#[test]
fn emitted_jobs_rerun_identically() {
    let args = ["verdict", "--r", "2", "--l", "1", "--g", "2", "--d", "0", "--dd", "0", "--format", "csv"];
    let job = call(&[&args[..], &["--emit-job"]].concat());
    assert_eq!(job.code, 0);
    let spec: JobSpec = serde_json::from_str(&job.stdout).unwrap();
    assert_eq!(spec.format, Format::Csv);
    assert_eq!(call(&["--job", &job.stdout]).stdout, call(&args).stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_rankdual");
    let ok = Process::new(bin).args(["verlinde", "--r", "2", "--l", "1", "--g", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"value\": \"4\""));
    let bad = Process::new(bin).args(["verdict", "--r", "2", "--l", "2", "--g", "1", "--d", "1", "--dd", "0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

fn shape() -> impl Strategy<Value = Shape> {
    (1usize..6, 1usize..6, 0u32..5, proptest::collection::vec("[0-3](,[0-3]){0,3}", 0..3)).prop_map(|(r, l, g, ws)| {
        Shape { r, l, g, weights: serde_json::to_string(&ws).unwrap() }
    })
}

fn command() -> impl Strategy<Value = Command> {
    prop_oneof![
        (shape(), prop_oneof![Just(VariantArg::Sl), Just(VariantArg::Gl), Just(VariantArg::Twisted)])
            .prop_map(|(shape, variant)| Command::Verlinde { shape, variant }),
        (shape(), -9i64..9).prop_map(|(shape, d)| Command::Vi { shape, d }),
        (shape(), -9i64..9).prop_map(|(shape, d)| Command::ViCheck { shape, d }),
        (2usize..9, any::<bool>(), 0usize..500)
            .prop_map(|(order, exhaustive, samples)| Command::Symmetry { order, exhaustive, samples }),
        (shape(), -9i64..9, -9i64..9, -3i64..30)
            .prop_map(|(shape, d, dd, threshold)| Command::Normalize { shape, d, dd, threshold }),
        (shape(), -9i64..9, -9i64..9, -3i64..30)
            .prop_map(|(shape, d, dd, threshold)| Command::Verdict { shape, d, dd, threshold }),
        ("[0-3](,[0-3]){0,3}", 2usize..9, "[0-8](,[0-8]){0,3}")
            .prop_map(|(diagram, order, subset)| Command::SchurEval { diagram, order, subset }),
        (0usize..4, 0usize..200, 1usize..6).prop_map(|(exhaustive_max, random_seeds, random_max)| {
            Command::ParlinCheck { exhaustive_max, random_seeds, random_max }
        }),
    ]
}

proptest! {
    #[test]
    fn job_specs_round_trip(
        command in command(),
        csv in any::<bool>(),
        oracle in any::<bool>(),
        precision in 10usize..200,
        seed in any::<u64>(),
        timings in any::<bool>(),
    ) {
        let job = JobSpec {
            command,
            format: if csv { Format::Csv } else { Format::Json },
            oracle,
            precision,
            seed,
            timings,
        };
        let text = serde_json::to_string(&job).unwrap();
        prop_assert_eq!(serde_json::from_str::<JobSpec>(&text).unwrap(), job);
    }
}
