use std::path::{Path, PathBuf};
use std::process::Command;

use svcq::bench::{
    cmd_cluster, cmd_scaling, cmd_sweep_sigma, cmd_table1_analog, load_report, Backend, DataSource, ExperimentConfig,
    Table1Options,
};
use svcq::svc::ClusterDocument;
use svcq::KernelSpec;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn blob_config(backend: Backend, out: &Path) -> ExperimentConfig {
    let source = DataSource::Csv { path: data("two_blobs.csv"), has_labels: false };
    let mut cfg = ExperimentConfig::new(source, KernelSpec::Gaussian { sigma: 2.0 }, 1.0, backend, out);
    cfg.seed = 5;
    cfg
}

fn read_clusters(dir: &Path) -> ClusterDocument {
    serde_json::from_str(&std::fs::read_to_string(dir.join("clusters.json")).unwrap()).unwrap()
}

#[test]
fn cluster_command_backends_agree() {
    let tmp = tempfile::tempdir().unwrap();
    let (c_dir, q_dir) = (tmp.path().join("c"), tmp.path().join("q"));
    let (report, outcome) = cmd_cluster(&blob_config(Backend::Classical, &c_dir)).unwrap();
    assert_eq!(report.runs[0].cluster_count, 2);
    assert_eq!(outcome.adjacency.edge_count(), report.runs[0].segment_tests as usize - 30 * 30);
    cmd_cluster(&blob_config(Backend::QuantumExact, &q_dir)).unwrap();
    let (c, q) = (read_clusters(&c_dir), read_clusters(&q_dir));
    assert_eq!(c.cluster_count, 2);
    assert_eq!(c, q);
    for dir in [&c_dir, &q_dir] {
        assert!(dir.join("model.json").exists());
        let loaded = load_report(&dir.join("report.json")).unwrap();
        assert_eq!(loaded.version, svcq::bench::REPORT_VERSION);
    }
}

#[test]
fn reports_are_deterministic_apart_from_timings() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, _) = cmd_cluster(&blob_config(Backend::QuantumShots, &tmp.path().join("a"))).unwrap();
    let (b, _) = cmd_cluster(&blob_config(Backend::QuantumShots, &tmp.path().join("b"))).unwrap();
    let strip = |r: &svcq::bench::BenchReport| {
        let mut r = r.without_timings();
        r.runs.iter_mut().for_each(|run| run.config.out_dir = PathBuf::new());
        serde_json::to_string(&r).unwrap()
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(
        std::fs::read(tmp.path().join("a/clusters.json")).unwrap(),
        std::fs::read(tmp.path().join("b/clusters.json")).unwrap()
    );
    let loaded = load_report(&tmp.path().join("a/report.json")).unwrap();
    assert_eq!(loaded, a);
}

#[test]
fn sigma_sweep() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = blob_config(Backend::Classical, tmp.path());
    let report = cmd_sweep_sigma(&cfg, &[0.01, 2.0, 2.0]).unwrap();
    let counts: Vec<usize> = report.sweep.iter().map(|r| r.cluster_count).collect();
    assert_eq!(counts, vec![1, 2, 2]);
    assert!(cmd_sweep_sigma(&cfg, &[2.0]).unwrap_err().to_string().contains(">= 2"));
}

#[test]
fn scaling_slopes_and_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let report = cmd_scaling(&[64, 128, 256, 512, 1024], tmp.path()).unwrap();
    let s = report.scaling.unwrap();
    assert!((1.9..=2.1).contains(&s.classical_slope), "{}", s.classical_slope);
    assert!((1.3..=1.7).contains(&s.quantum_slope), "{}", s.quantum_slope);
    assert!(s.rows.iter().all(|r| r.counting_only));
    let svg = std::fs::read_to_string(tmp.path().join("scaling.svg")).unwrap();
    assert!(svg.contains("neighbor scans") && svg.contains("oracle queries") && !svg.contains("time"));
    let csv = std::fs::read_to_string(tmp.path().join("scaling.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);
    assert!(cmd_scaling(&[64, 128, 256], tmp.path()).is_err());
    assert!(cmd_scaling(&[64, 32, 256, 512], tmp.path()).is_err());
}

#[test]
fn table1_analog_accuracy() {
    let tmp = tempfile::tempdir().unwrap();
    let report = cmd_table1_analog(&Table1Options::new(data("two_class_30d.csv"), 20, 11, tmp.path())).unwrap();
    let t = report.table1.unwrap();
    assert_eq!((t.train_count, t.test_count), (20, 100));
    assert_eq!(t.classical_accuracy, 1.0);
    assert!((t.classical_accuracy - t.quantum_exact_accuracy).abs() <= 0.05);
    assert_eq!(t.reference_accuracy["classical"], 0.99);
    assert!(cmd_table1_analog(&Table1Options::new(data("two_class_30d.csv"), 115, 11, tmp.path())).is_err());
    assert!(cmd_table1_analog(&Table1Options::new(data("two_blobs.csv"), 20, 11, tmp.path())).is_err());
}

fn svcq() -> Command {
    Command::new(env!("CARGO_BIN_EXE_svcq"))
}

#[test]
fn cli_cluster_and_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = svcq()
        .args(["cluster", "--input"])
        .arg(data("two_blobs.csv"))
        .args(["--kernel", "gaussian", "--sigma", "2", "--gamma", "1", "--backend", "quantum-exact", "--seed", "3", "--out"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(read_clusters(tmp.path()).cluster_count, 2);

    let missing = svcq().args(["cluster", "--input", "/no/such/file.csv", "--gamma", "1", "--out"]).arg(tmp.path()).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/no/such/file.csv"));

    let usage = svcq().args(["cluster", "--gamma", "1"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));

    let stray_shots = svcq()
        .args(["cluster", "--input"])
        .arg(data("two_blobs.csv"))
        .args(["--gamma", "1", "--shots", "100", "--out"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(stray_shots.status.code(), Some(2));
}

#[test]
fn cli_bench_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let out = svcq().args(["bench", "scaling", "--m", "64,128,256,512", "--out"]).arg(tmp.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("quantum slope"));
    let short = svcq().args(["bench", "scaling", "--m", "64,128,256", "--out"]).arg(tmp.path()).output().unwrap();
    assert_eq!(short.status.code(), Some(2));

    let t = svcq()
        .args(["bench", "table1", "--input"])
        .arg(data("two_class_30d.csv"))
        .args(["--train-count", "20", "--seed", "1", "--out"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(t.status.code(), Some(0));
    assert!(tmp.path().join("report.json").exists());

    let sweep = svcq()
        .args(["sweep-sigma", "--input"])
        .arg(data("two_blobs.csv"))
        .args(["--sigmas", "0.01,2", "--gamma", "1", "--out"])
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(sweep.status.code(), Some(0));
}
