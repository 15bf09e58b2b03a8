//! Property suites shared by the `properties` and `acceptance` targets.

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use svcq::kernels::KernelSpec;
use svcq::lssvm::{fit_contour, TrainConfig};
use svcq::qsim::{amplitude_encode, qram_superposition, swap_test, Shots, StateVector};
use svcq::qsvc::{q_build_adjacency, q_fit_contour, quantum_cluster_finding, QTrainConfig};
use svcq::rng::rng_from_seed;
use svcq::svc::{build_adjacency, cluster_finding};
use svcq::{AdjacencyMatrix, ClusterResult, Dataset};

pub type Outcome = Result<(), String>;

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn points() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (2usize..8, 1usize..4).prop_flat_map(|(m, n)| prop::collection::vec(prop::collection::vec(-5.0f64..5.0, n), m))
}

/// Upper triangle of a random symmetric graph on `m` vertices.
fn graph(max: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
    (1usize..max).prop_flat_map(|m| {
        prop::collection::vec(prop::bool::weighted(0.15), m * m.saturating_sub(1) / 2).prop_map(move |upper| {
            let mut rows = vec![vec![false; m]; m];
            let mut it = upper.into_iter();
            for i in 0..m {
                rows[i][i] = true;
                for j in (i + 1)..m {
                    let on = it.next().unwrap();
                    rows[i][j] = on;
                    rows[j][i] = on;
                }
            }
            rows
        })
    })
}

fn check_adjacency(a: &AdjacencyMatrix) -> Result<(), TestCaseError> {
    for i in 0..a.size() {
        prop_assert!(a.get(i, i), "vertex {i} not reflexive");
        for j in 0..a.size() {
            prop_assert_eq!(a.get(i, j), a.get(j, i));
        }
    }
    Ok(())
}

fn check_partition(r: &ClusterResult, m: usize) -> Result<(), TestCaseError> {
    prop_assert_eq!(r.cluster_count, r.clusters.len());
    let mut seen = vec![false; m];
    for (ci, c) in r.clusters.iter().enumerate() {
        prop_assert!(!c.is_empty());
        for &p in c {
            prop_assert!(!seen[p], "point {p} in two clusters");
            seen[p] = true;
            prop_assert_eq!(r.membership[p], ci);
        }
    }
    prop_assert!(seen.iter().all(|&s| s));
    Ok(())
}

/// Adjacency from both backends is symmetric with a true diagonal.
pub fn adjacency_symmetric_reflexive(cases: u32) -> Outcome {
    run(cases, (points(), 0.1f64..3.0), |(pts, sigma)| {
        let d = Dataset::new(pts, None).unwrap();
        let spec = KernelSpec::Gaussian { sigma };
        let m = fit_contour(&d, &spec, &TrainConfig::default()).unwrap();
        check_adjacency(&build_adjacency(&m, &d, 6).unwrap().0)?;
        let q = q_fit_contour(&d, &spec, &QTrainConfig::default()).unwrap();
        check_adjacency(&q_build_adjacency(&q, &d, 6).unwrap().0)
    })
}

/// Classical and quantum cluster finding both return a partition of the vertices.
pub fn clusters_partition(cases: u32) -> Outcome {
    run(cases, (graph(14), any::<u64>()), |(rows, seed)| {
        let a = AdjacencyMatrix::from_rows(&rows).unwrap();
        let classical = cluster_finding(&a);
        check_partition(&classical, rows.len())?;
        let cfg = QTrainConfig { seed, ..QTrainConfig::default() };
        let (quantum, stats) = quantum_cluster_finding(&a, &cfg).unwrap();
        check_partition(&quantum, rows.len())?;
        prop_assert!(stats.oracle_queries >= stats.grover_iterations);
        Ok(())
    })
}

/// Adding an edge never increases the cluster count, and lowers it by at most one.
pub fn edge_monotone(cases: u32) -> Outcome {
    run(cases, (graph(30), any::<prop::sample::Index>(), any::<prop::sample::Index>()), |(rows, i, j)| {
        let m = rows.len();
        let mut a = AdjacencyMatrix::from_rows(&rows).unwrap();
        let before = cluster_finding(&a).cluster_count;
        a.set_edge(i.index(m), j.index(m), true);
        let after = cluster_finding(&a).cluster_count;
        prop_assert!(after <= before && before - after <= 1, "{before} -> {after}");
        Ok(())
    })
}

/// Encoded and QRAM states have unit norm.
pub fn states_normalized(cases: u32) -> Outcome {
    let cell = prop::collection::vec(-10.0f64..10.0, 1..9).prop_filter("nonzero", |v| v.iter().any(|x| x.abs() > 1e-6));
    run(cases, prop::collection::vec(cell, 1..6), |cells| {
        for c in &cells {
            let (s, norm) = amplitude_encode(c).unwrap();
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
            let direct = c.iter().map(|v| v * v).sum::<f64>().sqrt();
            prop_assert!((norm - direct).abs() <= 1e-12 * direct);
        }
        let w = Complex64::new(1.0 / (cells.len() as f64).sqrt(), 0.0);
        let q = qram_superposition(&cells, &vec![w; cells.len()]).unwrap();
        prop_assert!((q.state.norm_sqr() - 1.0).abs() < 1e-12);
        Ok(())
    })
}

fn state(dim: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| {
            let norm = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            StateVector::new(v.into_iter().map(|(a, b)| Complex64::new(a / norm, b / norm)).collect()).unwrap()
        })
}

/// The exact swap-test probability lies in [½, 1]; sampled frequencies lie in [0, 1].
pub fn swap_probability_range(cases: u32) -> Outcome {
    let pair = (1usize..5).prop_flat_map(|q| (state(1 << q), state(1 << q)));
    run(cases, (pair, 1u64..500, any::<u64>()), |((psi, phi), shots, seed)| {
        let mut rng = rng_from_seed(seed);
        let exact = swap_test(&psi, &phi, Shots::Exact, &mut rng).unwrap();
        prop_assert!((0.5 - 1e-12..=1.0 + 1e-12).contains(&exact.p0), "p0 = {}", exact.p0);
        let sampled = swap_test(&psi, &phi, Shots::Count(shots), &mut rng).unwrap();
        prop_assert!((0.0..=1.0).contains(&sampled.p0) && (0.0..=1.0).contains(&sampled.overlap_sq));
        Ok(())
    })
}

pub const SUITES: [(&str, fn(u32) -> Outcome); 5] = [
    ("adjacency symmetric and reflexive", adjacency_symmetric_reflexive),
    ("clusters form a partition", clusters_partition),
    ("edge addition never raises cluster count", edge_monotone),
    ("encoded states are normalized", states_normalized),
    ("swap-test probability range", swap_probability_range),
];
