use rand::Rng;

use super::state::sample_index;
use crate::error::{Result, SvcError};
use crate::rng::SvcRng;

/// Largest register the state-vector emulator will allocate.
pub const MAX_STATE_QUBITS: usize = 20;

/// Growth factor of the unknown-k schedule.
pub const SCHEDULE_GROWTH: f64 = 1.2;

/// Bound on the chance that one unknown-k schedule misses an existing
/// solution; repetitions are sized against it.
pub const SCHEDULE_MISS_BOUND: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkedHint {
    Known(usize),
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverOutcome {
    pub found_index: Option<usize>,
    /// Grover iterations applied over all rounds.
    pub iterations: u64,
    /// Every oracle application: one per iteration plus one per verification.
    pub oracle_queries: u64,
    pub measurements: u64,
    /// `sin²((2r+1)θ)` for the iteration count of the final round.
    pub success_probability: f64,
}

pub fn optimal_iterations(space: usize, k: usize) -> u64 {
    (std::f64::consts::FRAC_PI_4 * (space as f64 / k as f64).sqrt()).floor() as u64
}

pub fn success_probability(space: usize, k: usize, r: u64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let theta = (k as f64 / space as f64).sqrt().asin();
    ((2 * r + 1) as f64 * theta).sin().powi(2)
}

/// Repetitions that push a per-attempt miss rate `q` below `fail_prob`.
fn repetitions(q: f64, fail_prob: f64) -> u64 {
    if q <= 1e-12 {
        1
    } else {
        (fail_prob.ln() / q.ln()).ceil().max(1.0) as u64
    }
}

fn validate_fail_prob(fail_prob: f64) -> Result<()> {
    if !(fail_prob > 0.0 && fail_prob < 1.0) {
        return Err(SvcError::InvalidArgument(format!("failure probability {fail_prob} must be in (0, 1)")));
    }
    Ok(())
}

/// Oracle queries for one unknown-k schedule before declaring no solution.
pub fn schedule_budget(space: usize) -> u64 {
    (3.0 * (space as f64).sqrt()).ceil() as u64
}

/// Analytic cost of a successful search. Known k: iterations plus one
/// verification; unknown k: the schedule's expected-cost bound.
pub fn grover_query_model(space: usize, k: usize, hint: MarkedHint) -> Result<f64> {
    if k == 0 || k > space {
        return Err(SvcError::InvalidArgument(format!("marked count {k} outside 1..={space}")));
    }
    Ok(match hint {
        MarkedHint::Known(_) => optimal_iterations(space, k) as f64 + 1.0,
        MarkedHint::Unknown => 2.25 * (space as f64 / k as f64).sqrt(),
    })
}

/// Queries spent by a fully repeated unknown-k search that finds nothing.
pub fn no_solution_queries(space: usize, fail_prob: f64) -> Result<u64> {
    validate_fail_prob(fail_prob)?;
    Ok(repetitions(SCHEDULE_MISS_BOUND, fail_prob) * schedule_budget(space))
}

/// Real amplitudes of the uniform state after `r` Grover iterations.
pub fn grover_amplitudes(marked: &[bool], r: u64) -> Vec<f64> {
    let n = marked.len() as f64;
    let mut amps = vec![1.0 / n.sqrt(); marked.len()];
    for _ in 0..r {
        for (a, &m) in amps.iter_mut().zip(marked) {
            if m {
                *a = -*a;
            }
        }
        let mean = amps.iter().sum::<f64>() / n;
        for a in amps.iter_mut() {
            *a = 2.0 * mean - *a;
        }
    }
    amps
}

struct Runner<'a> {
    marked: &'a [bool],
    k: usize,
    rng: &'a mut SvcRng,
    iterations: u64,
    queries: u64,
    measurements: u64,
    last_r: u64,
}

impl Runner<'_> {
    /// One round: `r` iterations, a measurement, and a verifying query.
    fn round(&mut self, r: u64) -> Option<usize> {
        let amps = grover_amplitudes(self.marked, r);
        let outcome = sample_index(amps.iter().map(|a| a * a), self.rng);
        self.iterations += r;
        self.queries += r + 1;
        self.measurements += 1;
        self.last_r = r;
        self.marked[outcome].then_some(outcome)
    }

    fn finish(self, found_index: Option<usize>) -> GroverOutcome {
        let space = self.marked.len();
        GroverOutcome {
            found_index,
            iterations: self.iterations,
            oracle_queries: self.queries,
            measurements: self.measurements,
            success_probability: success_probability(space, self.k, self.last_r),
        }
    }
}

/// State-vector Grover search over `2^n_qubits` indices.
///
/// With a known marked count the optimal iteration count is used per round;
/// otherwise the randomized growing schedule runs until its query budget
/// `3·√N` is spent. Either way the attempt is repeated until the miss
/// probability falls below `fail_prob`.
pub fn grover_search(
    oracle: impl Fn(usize) -> bool,
    n_qubits: usize,
    hint: MarkedHint,
    fail_prob: f64,
    rng: &mut SvcRng,
) -> Result<GroverOutcome> {
    if n_qubits == 0 || n_qubits > MAX_STATE_QUBITS {
        return Err(SvcError::InvalidArgument(format!("{n_qubits} qubits outside 1..={MAX_STATE_QUBITS}")));
    }
    validate_fail_prob(fail_prob)?;
    let space = 1usize << n_qubits;
    let marked: Vec<bool> = (0..space).map(&oracle).collect();
    let k = marked.iter().filter(|&&m| m).count();
    let mut run = Runner { marked: &marked, k, rng, iterations: 0, queries: 0, measurements: 0, last_r: 0 };

    match hint {
        MarkedHint::Known(0) => Err(SvcError::InvalidArgument("known marked count must be >= 1".into())),
        MarkedHint::Known(hint_k) => {
            let r = optimal_iterations(space, hint_k.min(space));
            let reps = repetitions(1.0 - success_probability(space, hint_k.min(space), r), fail_prob);
            for _ in 0..reps {
                if let Some(found) = run.round(r) {
                    return Ok(run.finish(Some(found)));
                }
            }
            Ok(run.finish(None))
        }
        MarkedHint::Unknown => {
            let reps = repetitions(SCHEDULE_MISS_BOUND, fail_prob);
            let budget = schedule_budget(space);
            let ceiling = (space as f64).sqrt();
            for _ in 0..reps {
                let mut m = 1.0_f64;
                let mut spent = 0;
                while spent < budget {
                    let r = run.rng.random_range(0..m.ceil() as u64);
                    let before = run.queries;
                    let hit = run.round(r);
                    spent += run.queries - before;
                    if hit.is_some() {
                        return Ok(run.finish(hit));
                    }
                    m = (m * SCHEDULE_GROWTH).min(ceiling);
                }
            }
            Ok(run.finish(None))
        }
    }
}
