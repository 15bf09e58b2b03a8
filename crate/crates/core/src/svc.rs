//! Classical support vector clustering: segment connectivity, the adjacency
//! matrix and depth-first cluster extraction.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::Dataset;
use crate::error::{Result, SvcError};
use crate::lssvm::{decide, SvmModel};

pub const DEFAULT_LINE_SAMPLES: usize = 10;

/// Symmetric, reflexive M×M boolean connectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    size: usize,
    bits: Vec<bool>,
}

impl AdjacencyMatrix {
    /// No edges besides the diagonal.
    pub fn identity(size: usize) -> Self {
        let mut bits = vec![false; size * size];
        for i in 0..size {
            bits[i * size + i] = true;
        }
        Self { size, bits }
    }

    pub fn full(size: usize) -> Self {
        Self { size, bits: vec![true; size * size] }
    }

    /// Builds from an explicit row-major matrix, checking the invariants.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self> {
        let size = rows.len();
        let mut a = Self::identity(size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(SvcError::DimensionMismatch { expected: size, found: row.len() });
            }
            if !row[i] {
                return Err(SvcError::InvalidArgument(format!("diagonal entry {i} must be set")));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != rows[j][i] {
                    return Err(SvcError::InvalidArgument(format!("entry ({i},{j}) is not symmetric")));
                }
                a.bits[i * size + j] = v;
            }
        }
        Ok(a)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.size + j]
    }

    /// Sets `A_ij = A_ji`. Diagonal entries stay set.
    pub fn set_edge(&mut self, i: usize, j: usize, on: bool) {
        if i == j {
            return;
        }
        self.bits[i * self.size + j] = on;
        self.bits[j * self.size + i] = on;
    }

    pub fn row(&self, i: usize) -> &[bool] {
        &self.bits[i * self.size..(i + 1) * self.size]
    }

    pub fn edge_count(&self) -> usize {
        (0..self.size)
            .map(|i| ((i + 1)..self.size).filter(|&j| self.get(i, j)).count())
            .sum()
    }

    /// Number of differing entries.
    pub fn hamming(&self, other: &Self) -> usize {
        self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count()
    }
}

/// Connected components of an adjacency matrix, in deterministic order:
/// components sorted by their smallest index, members ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterResult {
    pub cluster_count: usize,
    pub clusters: Vec<Vec<usize>>,
    /// Cluster index of every point.
    pub membership: Vec<usize>,
}

impl ClusterResult {
    pub(crate) fn from_components(m: usize, mut clusters: Vec<Vec<usize>>) -> Self {
        for c in &mut clusters {
            c.sort_unstable();
        }
        clusters.sort_by_key(|c| c[0]);
        let mut membership = vec![0; m];
        for (ci, c) in clusters.iter().enumerate() {
            for &p in c {
                membership[p] = ci;
            }
        }
        Self { cluster_count: clusters.len(), clusters, membership }
    }

    /// JSON form keyed by point ids. `bsv` lists points outside every contour
    /// (they end up as singleton clusters).
    pub fn to_document(&self, ids: &[String], bsv: &[usize]) -> ClusterDocument {
        ClusterDocument {
            cluster_count: self.cluster_count,
            clusters: self.clusters.iter().map(|c| c.iter().map(|&p| ids[p].clone()).collect()).collect(),
            membership: self.membership.iter().enumerate().map(|(p, &c)| (ids[p].clone(), c)).collect(),
            bsv: bsv.iter().map(|&p| ids[p].clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClusterDocument {
    pub cluster_count: usize,
    pub clusters: Vec<Vec<String>>,
    pub membership: BTreeMap<String, usize>,
    #[serde(default)]
    pub bsv: Vec<String>,
}

/// Work done while building an adjacency matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentStats {
    pub segment_tests: u64,
    pub decision_evals: u64,
}

/// `n_samples` equally spaced points from `a` to `b`, both ends included.
pub fn segment_points(a: &[f64], b: &[f64], n_samples: usize) -> Vec<Vec<f64>> {
    let last = (n_samples - 1) as f64;
    (0..n_samples)
        .map(|s| {
            let t = s as f64 / last;
            a.iter().zip(b).map(|(x, y)| (1.0 - t) * x + t * y).collect()
        })
        .collect()
}

fn check_segment_args(dim: usize, a: &[f64], b: &[f64], n_samples: usize) -> Result<()> {
    if n_samples < 2 {
        return Err(SvcError::InvalidArgument(format!("need at least 2 line samples, got {n_samples}")));
    }
    for p in [a, b] {
        if p.len() != dim {
            return Err(SvcError::DimensionMismatch { expected: dim, found: p.len() });
        }
    }
    Ok(())
}

fn segment_inside(m: &SvmModel, a: &[f64], b: &[f64], n_samples: usize) -> Result<(bool, u64)> {
    let mut evals = 0;
    for x in segment_points(a, b, n_samples) {
        evals += 1;
        if decide(m, &x)?.sign < 0 {
            return Ok((false, evals));
        }
    }
    Ok((true, evals))
}

/// True iff every sampled point of the segment `x_i → x_j` is inside the contour.
pub fn segment_connected(m: &SvmModel, x_i: &[f64], x_j: &[f64], n_samples: usize) -> Result<bool> {
    check_segment_args(m.dim(), x_i, x_j, n_samples)?;
    Ok(segment_inside(m, x_i, x_j, n_samples)?.0)
}

/// Evaluates `test(i, j)` for every pair `i < j` (rows in parallel) and
/// mirrors the result.
pub(crate) fn adjacency_by<F>(m: usize, test: F) -> Result<(AdjacencyMatrix, SegmentStats)>
where
    F: Fn(usize, usize) -> Result<(bool, u64)> + Sync,
{
    let rows: Vec<Vec<(bool, u64)>> = (0..m)
        .into_par_iter()
        .map(|i| ((i + 1)..m).map(|j| test(i, j)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut a = AdjacencyMatrix::identity(m);
    let mut stats = SegmentStats::default();
    for (i, row) in rows.into_iter().enumerate() {
        for (off, (on, evals)) in row.into_iter().enumerate() {
            a.set_edge(i, i + 1 + off, on);
            stats.segment_tests += 1;
            stats.decision_evals += evals;
        }
    }
    Ok((a, stats))
}

/// Adjacency over all training points: `A_ij = 1` iff the segment between
/// them stays inside the contour. Performs exactly M(M−1)/2 segment tests.
pub fn build_adjacency(m: &SvmModel, d: &Dataset, n_samples: usize) -> Result<(AdjacencyMatrix, SegmentStats)> {
    if d.len() > 0 {
        check_segment_args(m.dim(), d.point(0), d.point(0), n_samples)?;
    }
    adjacency_by(d.len(), |i, j| segment_inside(m, d.point(i), d.point(j), n_samples))
}

/// Explicit-stack depth-first search from `start`. Each vertex's row is
/// scanned once, one inspection per other vertex; `scans` accumulates the
/// inspections. Returns the component in visit order.
pub fn depth_first_search(a: &AdjacencyMatrix, start: usize, marks: &mut [bool], scans: &mut u64) -> Result<Vec<usize>> {
    let m = a.size();
    if start >= m || marks.len() != m {
        return Err(SvcError::InvalidArgument(format!("start {start} / marks {} for size {m}", marks.len())));
    }
    if marks[start] {
        return Err(SvcError::AlreadyMarked(start));
    }
    marks[start] = true;
    let mut members = vec![start];
    // (vertex, next column to inspect)
    let mut stack = vec![(start, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (v, cursor) = *top;
        let mut next = None;
        let mut j = cursor;
        while j < m {
            if j != v {
                *scans += 1;
                if a.get(v, j) && !marks[j] {
                    next = Some(j);
                    j += 1;
                    break;
                }
            }
            j += 1;
        }
        top.1 = j;
        match next {
            Some(w) => {
                marks[w] = true;
                members.push(w);
                stack.push((w, 0));
            }
            None => {
                stack.pop();
            }
        }
    }
    Ok(members)
}

/// Connected components by repeated DFS; the cluster count grows only when
/// an unmarked vertex starts a new search.
pub fn cluster_finding(a: &AdjacencyMatrix) -> ClusterResult {
    cluster_finding_counted(a).0
}

/// [`cluster_finding`] plus the total neighbor-inspection count.
pub fn cluster_finding_counted(a: &AdjacencyMatrix) -> (ClusterResult, u64) {
    let m = a.size();
    let mut marks = vec![false; m];
    let mut scans = 0;
    let mut clusters = Vec::new();
    for v in 0..m {
        if !marks[v] {
            clusters.push(depth_first_search(a, v, &mut marks, &mut scans).expect("v is unmarked"));
        }
    }
    (ClusterResult::from_components(m, clusters), scans)
}
