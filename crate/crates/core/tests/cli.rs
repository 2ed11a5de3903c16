use std::fs;
use std::path::Path;
use std::process::Command;

use clap::Parser;
use curvflow::cli::{self, Cli, TraceDocument};
use curvflow::graph::{load_edge_list, DirectedPolicy};

fn run_args(args: &[&str]) -> curvflow::Result<String> {
    cli::run(Cli::try_parse_from(std::iter::once("curvflow").chain(args.iter().copied())).unwrap())
}

fn gen_barbell(dir: &Path, m: usize) -> String {
    run_args(&[
        "gen",
        "--family",
        "barbell",
        "--n",
        &m.to_string(),
        "--output",
        dir.to_str().unwrap(),
    ])
    .unwrap();
    dir.join("barbell.edgelist").to_str().unwrap().to_owned()
}

#[test]
fn binary_reports_errors_with_exit_code() {
    let bin = env!("CARGO_BIN_EXE_curvflow");
    let out = Command::new(bin)
        .args(["curvature", "--input", "/nonexistent/graph.edgelist"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("curvflow: "));

    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(bin)
        .args(["gen", "--family", "cycle", "--n", "6", "--output"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        fs::read_to_string(dir.path().join("cycle.edgelist"))
            .unwrap()
            .lines()
            .count(),
        6
    );
}

#[test]
fn curvature_writes_one_csv_per_kind() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen_barbell(dir.path(), 4);
    let out = dir.path().join("curv");
    run_args(&["curvature", "--input", &input, "--output", out.to_str().unwrap()]).unwrap();
    for kind in ["1d", "augmented", "haantjes", "bfc"] {
        let text = fs::read_to_string(out.join(format!("curvature_{kind}.csv"))).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("u,v,kind,value"));
        assert_eq!(lines.count(), 13);
    }
    let ones = fs::read_to_string(out.join("curvature_1d.csv")).unwrap();
    assert!(ones.lines().any(|l| l == "3,4,1d,-4"));

    run_args(&[
        "curvature",
        "--input",
        &input,
        "--output",
        out.to_str().unwrap(),
        "--kind",
        "haantjes",
    ])
    .unwrap();
}

#[test]
fn rewire_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen_barbell(dir.path(), 5);
    let runs: Vec<_> = ["a", "b"]
        .iter()
        .map(|sub| {
            let out = dir.path().join(sub);
            run_args(&[
                "rewire",
                "--input",
                &input,
                "--output",
                out.to_str().unwrap(),
                "--kind",
                "bfc",
                "--tau",
                "163",
                "--max-iter",
                "10",
                "--seed",
                "7",
            ])
            .unwrap();
            (
                fs::read(out.join("rewired.edgelist")).unwrap(),
                fs::read(out.join("trace.json")).unwrap(),
            )
        })
        .collect();
    assert_eq!(runs[0], runs[1]);

    let doc: TraceDocument = serde_json::from_slice(&runs[0].1).unwrap();
    assert_eq!(doc.trace.config.seed, 7);
    assert_eq!(doc.trace.rng, "rand_chacha::ChaCha8Rng/seed_from_u64");
    let original = load_edge_list(&input, DirectedPolicy::Symmetrize).unwrap();
    let rewired = load_edge_list(dir.path().join("a/rewired.edgelist"), DirectedPolicy::Symmetrize).unwrap();
    assert_eq!(
        doc.trace.replay(&original.graph).unwrap().edge_count(),
        rewired.graph.edge_count()
    );
}

#[test]
fn rewire_uses_dataset_table_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen_barbell(dir.path(), 4);
    let out = dir.path().join("o");
    let o = out.to_str().unwrap();
    run_args(&["rewire", "--input", &input, "--output", o, "--dataset", "texas"]).unwrap();
    let doc: TraceDocument = serde_json::from_slice(&fs::read(out.join("trace.json")).unwrap()).unwrap();
    assert_eq!(doc.trace.config.tau, 22.0);
    assert_eq!(doc.trace.config.max_iterations, 89);
    assert_eq!(doc.trace.config.removal_bound, Some(1.64));

    run_args(&[
        "rewire",
        "--input",
        &input,
        "--output",
        o,
        "--dataset",
        "texas",
        "--tau",
        "5",
        "--no-removal",
    ])
    .unwrap();
    let doc: TraceDocument = serde_json::from_slice(&fs::read(out.join("trace.json")).unwrap()).unwrap();
    assert_eq!(doc.trace.config.tau, 5.0);
    assert_eq!(doc.trace.config.removal_bound, None);
    assert_eq!(doc.trace.edges_removed(), 0);
}

#[test]
fn diagnose_profile_and_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen_barbell(dir.path(), 5);
    let rw = dir.path().join("rw");
    run_args(&[
        "rewire",
        "--input",
        &input,
        "--output",
        rw.to_str().unwrap(),
        "--max-iter",
        "20",
        "--no-removal",
    ])
    .unwrap();
    let out = dir.path().join("diag");
    let rewired = rw.join("rewired.edgelist");
    let summary = run_args(&[
        "diagnose",
        "--input",
        &input,
        "--output",
        out.to_str().unwrap(),
        "--max-power",
        "20",
        "--compare",
        rewired.to_str().unwrap(),
        "--powers",
        "5,10,20,40",
    ])
    .unwrap();
    assert!(summary.contains("improved = true"), "{summary}");
    let profile = fs::read_to_string(out.join("profile.csv")).unwrap();
    assert_eq!(profile.lines().next(), Some("power,min_nonzero"));
    assert_eq!(profile.lines().count(), 21);
    let report: serde_json::Value = serde_json::from_slice(&fs::read(out.join("comparison.json")).unwrap()).unwrap();
    assert_eq!(report["improved"], true);
    // d = 40 exceeds --max-power and is dropped
    assert_eq!(report["ratios"].as_array().unwrap().len(), 3);
    assert!(out.join("profile_compare.csv").exists());
}

#[test]
fn diagnose_respects_memory_budget() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen_barbell(dir.path(), 8);
    let mut cfg = cli::RunConfig::new(&input, dir.path().join("diag"));
    cfg.memory_budget = 64;
    let err = cli::cmd_diagnose(&cfg).unwrap_err();
    assert!(matches!(err, curvflow::Error::Resource { .. }), "{err}");
    assert!(!dir.path().join("diag/profile.csv").exists());
}

#[test]
fn bench_records_failed_cells() {
    let dir = tempfile::tempdir().unwrap();
    let good = gen_barbell(dir.path(), 4);
    let bad = dir.path().join("broken.edgelist");
    fs::write(&bad, "0 1\nnot an edge line with too many fields\n").unwrap();
    let out = dir.path().join("bench");
    let summary = run_args(&[
        "bench",
        "--input",
        &good,
        "--input",
        bad.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "--kind",
        "haantjes,bfc",
        "--max-iter",
        "3",
        "--note",
        "ci, shared",
    ])
    .unwrap();
    assert!(summary.contains("4 cells (2 failed)"), "{summary}");
    let csv = fs::read_to_string(out.join("bench.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv
        .lines()
        .filter(|l| l.starts_with("broken,"))
        .all(|l| l.contains("failed")));
    assert!(csv.contains("\"ci, shared\""));

    assert!(run_args(&[
        "bench",
        "--input",
        &good,
        "--kind",
        "bfc",
        "--output",
        out.to_str().unwrap()
    ])
    .is_err());
}

#[test]
fn failed_command_leaves_no_partial_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("directed.edgelist");
    fs::write(&input, "a b\nb a\nb c\n").unwrap();
    let out = dir.path().join("out");
    fs::create_dir(&out).unwrap();
    let err = run_args(&[
        "curvature",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "--reject-directed",
    ])
    .unwrap_err();
    assert!(matches!(err, curvflow::Error::DirectedInput { .. }), "{err}");
    assert_eq!(fs::read_dir(&out).unwrap().count(), 0);

    run_args(&[
        "curvature",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(fs::read_dir(&out).unwrap().count(), 4);
}

#[test]
fn isolated_components_are_dropped_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("two.edgelist");
    fs::write(&input, "# two components\n0 1\n1 2\n2 0\n7 8\n").unwrap();
    let out = dir.path().join("o");
    let summary = run_args(&[
        "curvature",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ])
    .unwrap();
    assert!(summary.starts_with("3 nodes, 3 edges"), "{summary}");
    let summary = run_args(&[
        "curvature",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "--all-components",
    ])
    .unwrap();
    assert!(summary.starts_with("5 nodes, 4 edges"), "{summary}");
}

#[test]
fn triangle_haantjes_report() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("tri.edgelist");
    fs::write(&input, "x y\ny z\nz x\n").unwrap();
    let i = input.to_str().unwrap();
    let o = dir.path().to_str().unwrap();
    run_args(&["curvature", "--input", i, "--output", o, "--kind", "haantjes"]).unwrap();
    let csv = fs::read_to_string(dir.path().join("curvature_haantjes.csv")).unwrap();
    let rows: Vec<_> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.ends_with(",haantjes,1")));
}

#[test]
fn isolated_edge_rewire_converges_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("k2.edgelist");
    fs::write(&input, "a b\n").unwrap();
    let out = dir.path().join("o");
    run_args(&[
        "rewire",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
    ])
    .unwrap();
    assert_eq!(fs::read_to_string(out.join("rewired.edgelist")).unwrap(), "a b\n");
    let doc: TraceDocument = serde_json::from_slice(&fs::read(out.join("trace.json")).unwrap()).unwrap();
    assert_eq!(doc.trace.termination, curvflow::sdrf::Termination::Converged);
    assert!(doc.trace.events.is_empty());
}

#[test]
fn k2_profile_is_constant() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("k2.edgelist");
    fs::write(&input, "0 1\n").unwrap();
    let o = dir.path().to_str().unwrap();
    run_args(&[
        "diagnose",
        "--input",
        input.to_str().unwrap(),
        "--output",
        o,
        "--max-power",
        "40",
    ])
    .unwrap();
    let csv = fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    let rows: Vec<_> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 40);
    for (d, row) in rows.iter().enumerate() {
        assert_eq!(*row, format!("{},5.000000e-01", d + 1));
    }
}

#[test]
fn path_with_supporting_edge_improves_beyond_diameter() {
    let dir = tempfile::tempdir().unwrap();
    let before = dir.path().join("p10.edgelist");
    fs::write(&before, (1..10).map(|v| format!("{} {v}\n", v - 1)).collect::<String>()).unwrap();
    let rw = dir.path().join("rw");
    run_args(&[
        "rewire",
        "--input",
        before.to_str().unwrap(),
        "--output",
        rw.to_str().unwrap(),
        "--max-iter",
        "1",
    ])
    .unwrap();
    let after = rw.join("rewired.edgelist");
    assert_eq!(fs::read_to_string(&after).unwrap().lines().count(), 10);
    let diagnose = |threshold: &str| {
        let o = dir.path().join(format!("d{threshold}"));
        run_args(&[
            "diagnose",
            "--input",
            before.to_str().unwrap(),
            "--output",
            o.to_str().unwrap(),
            "--compare",
            after.to_str().unwrap(),
            "--max-power",
            "20",
            "--threshold-power",
            threshold,
        ])
        .unwrap()
    };
    // higher degrees shrink the short-range entries, so only powers from the
    // diameter on are guaranteed to gain
    assert!(diagnose("9").contains("improved = true"));
    assert!(diagnose("1").contains("improved = false"));
}

#[test]
fn bench_barbell_all_kinds_finite() {
    let dir = tempfile::tempdir().unwrap();
    let input = gen_barbell(dir.path(), 5);
    let o = dir.path().join("b");
    run_args(&[
        "bench",
        "--input",
        &input,
        "--output",
        o.to_str().unwrap(),
        "--max-iter",
        "5",
    ])
    .unwrap();
    let csv = fs::read_to_string(o.join("bench.csv")).unwrap();
    let rows: Vec<_> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let secs: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert!(secs.is_finite() && secs >= 0.0, "{row}");
    }
}

#[test]
fn cora_scale_rewire_stays_within_budget() {
    let dir = tempfile::tempdir().unwrap();
    let o = dir.path().to_str().unwrap();
    run_args(&[
        "gen",
        "--family",
        "er",
        "--n",
        "2485",
        "--p",
        "0.0016",
        "--seed",
        "3",
        "--output",
        o,
        "--name",
        "cora.edgelist",
    ])
    .unwrap();
    let input = dir.path().join("cora.edgelist");
    let out = dir.path().join("rw");
    run_args(&[
        "rewire",
        "--input",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "--kind",
        "1d",
    ])
    .unwrap();
    let doc: TraceDocument = serde_json::from_slice(&fs::read(out.join("trace.json")).unwrap()).unwrap();
    assert_eq!(doc.trace.config.tau, 163.0);
    assert_eq!(doc.trace.config.max_iterations, 100);
    assert_eq!(doc.trace.config.removal_bound, Some(0.95));
    assert!(doc.trace.edges_added() <= 100);
}
