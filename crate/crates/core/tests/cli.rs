use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freefermion"))
        .args(args)
        .env_remove("FREEFERMION_THREADS")
        .output()
        .expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

fn shadow_sim(out: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "shadow-sim",
        "--modes",
        "4",
        "--eta",
        "2",
        "--samples",
        "3000",
        "--seed",
        "7",
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn zero_samples_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "shadow-sim",
        "--modes",
        "4",
        "--samples",
        "0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(
        err.starts_with("error[") && err.contains("samples must be >= 1"),
        "{err}"
    );
    assert_eq!(err.trim_end().lines().count(), 1);
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["shadow-sim", "--modes"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[E_USAGE]"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn shadow_sim_is_reproducible_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let outs: Vec<_> = ["1", "3", "1"]
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let out = dir.path().join(format!("run{i}"));
            std::fs::create_dir(&out).unwrap();
            let o = shadow_sim(
                &out,
                &[
                    "--threads",
                    t,
                    "--write-samples",
                    "--noise",
                    "bit_flip:0.05",
                ],
            );
            assert!(o.status.success(), "{}", stderr(&o));
            out
        })
        .collect();
    for file in [
        "estimates.json",
        "mitigated_estimates.json",
        "error_curve.csv",
        "samples.csv",
    ] {
        let first = read(&outs[0].join(file));
        assert!(!first.is_empty());
        for other in &outs[1..] {
            assert_eq!(first, read(&other.join(file)), "{file}");
        }
    }
    let summary: serde_json::Value =
        serde_json::from_slice(&shadow_sim(&outs[0], &[]).stdout).unwrap();
    assert_eq!(summary["modes_simulated"], 5);
    assert_eq!(summary["ancilla_added"], true);
    let curve = read(&outs[0].join("error_curve.csv"));
    assert_eq!(curve.lines().count(), 1 + 2);
}

#[test]
fn compile_identity_gives_no_rotations() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("id.json");
    let out = dir.path().join("prog.json");
    let stats = dir.path().join("stats.json");
    std::fs::write(
        &input,
        r#"{"n_modes": 2, "kind": "orthogonal", "data": [1,0,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1]}"#,
    )
    .unwrap();
    for scheme in ["naive", "blocked"] {
        let o = run(&[
            "compile",
            "--input",
            input.to_str().unwrap(),
            "--scheme",
            scheme,
            "--out",
            out.to_str().unwrap(),
            "--stats",
            stats.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        let prog: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
        let kinds: Vec<_> = prog
            .as_array()
            .unwrap()
            .iter()
            .map(|g| g["kind"].as_str().unwrap().to_string())
            .collect();
        assert!(kinds.iter().all(|k| k == "pauli"), "{kinds:?}");
        let s: serde_json::Value = serde_json::from_str(&read(&stats)).unwrap();
        assert_eq!(s["naive"]["rotation_count"], 0);
        assert_eq!(s["blocked"]["rotation_count"], 0);
    }
}

#[test]
fn compile_rejects_non_orthogonal_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    std::fs::write(&input, r#"{"n_modes": 1, "data": [1, 1, 0, 1]}"#).unwrap();
    let o = run(&[
        "compile",
        "--input",
        input.to_str().unwrap(),
        "--out",
        dir.path().join("p.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error["));
}

#[test]
fn analytic_partition_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = run(&[
        "partition",
        "--method",
        "analytic",
        "--n",
        "4",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&read(&report)).unwrap();
    assert_eq!(r["quartic_sets"], 12);
}

#[test]
fn greedy_partition_of_an_integrals_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ints.json");
    let report = dir.path().join("r.json");
    std::fs::write(
        &input,
        r#"{"n": 2, "h1": [[-1.0, 0.1], [0.1, -0.5]], "h2": [{"pqrs": [0, 1, 1, 0], "value": 0.6}, {"pqrs": [0, 0, 1, 1], "value": 0.2}]}"#,
    )
    .unwrap();
    for method in ["greedy", "analytic"] {
        let o = run(&[
            "partition",
            "--input",
            input.to_str().unwrap(),
            "--method",
            method,
            "--report",
            report.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        let r: serde_json::Value = serde_json::from_str(&read(&report)).unwrap();
        assert_eq!(r["norms"]["bounds_ok"], true);
        assert!(r["set_count"].as_u64().unwrap() <= r["term_count"].as_u64().unwrap());
    }
}

#[test]
fn missing_input_is_a_single_line_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "compile",
        "--input",
        dir.path().join("nope.json").to_str().unwrap(),
        "--out",
        dir.path().join("p.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.starts_with("error["));
    assert_eq!(err.trim_end().lines().count(), 1);
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--modes", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("majorana products vs dense"));
}
