//! Input data: CSV ingestion, synthetic generators, normalization and PCA.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SvcError};
use crate::rng::rng_from_seed;

/// M points of dimension N, optional ±1 labels and distinct ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    points: Vec<Vec<f64>>,
    labels: Option<Vec<i8>>,
    ids: Vec<String>,
}

impl Dataset {
    /// Builds a dataset with ids `"0"..="M-1"`.
    pub fn new(points: Vec<Vec<f64>>, labels: Option<Vec<i8>>) -> Result<Self> {
        let ids = (0..points.len()).map(|i| i.to_string()).collect();
        Self::with_ids(points, labels, ids)
    }

    pub fn with_ids(points: Vec<Vec<f64>>, labels: Option<Vec<i8>>, ids: Vec<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(SvcError::InvalidArgument("dataset needs at least one point".into()));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(SvcError::InvalidArgument("points need dimension >= 1".into()));
        }
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(SvcError::DimensionMismatch { expected: dim, found: bad.len() });
        }
        if ids.len() != points.len() {
            return Err(SvcError::InvalidArgument(format!(
                "{} ids for {} points",
                ids.len(),
                points.len()
            )));
        }
        let mut sorted: Vec<&String> = ids.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(SvcError::InvalidArgument("ids must be unique".into()));
        }
        if let Some(labels) = &labels {
            if labels.len() != points.len() {
                return Err(SvcError::InvalidArgument(format!(
                    "{} labels for {} points",
                    labels.len(),
                    points.len()
                )));
            }
            if let Some(&l) = labels.iter().find(|&&l| l != 1 && l != -1) {
                return Err(SvcError::InvalidArgument(format!("label {l} is not +1/-1")));
            }
        }
        Ok(Self { points, labels, ids })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    pub fn labels(&self) -> Option<&[i8]> {
        self.labels.as_deref()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    /// Ground-truth blob of point `i` for datasets built by [`synth_blobs`].
    pub fn blob_index(&self, i: usize) -> Option<usize> {
        let id = self.ids.get(i)?;
        let rest = id.strip_prefix('b')?;
        rest.split('_').next()?.parse().ok()
    }

    /// Subset of rows in the given order, keeping ids and labels.
    pub fn select(&self, rows: &[usize]) -> Result<Self> {
        let points = rows.iter().map(|&r| self.points[r].clone()).collect();
        let labels = self.labels.as_ref().map(|l| rows.iter().map(|&r| l[r]).collect());
        let ids = rows.iter().map(|&r| self.ids[r].clone()).collect();
        Self::with_ids(points, labels, ids)
    }

    /// Same ids and labels, new coordinates.
    fn with_points(&self, points: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_ids(points, self.labels.clone(), self.ids.clone())
    }
}

fn parse_cell(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses CSV text. A first row made only of non-numeric cells is a header.
/// Row numbers in errors are 1-based line numbers of the text.
pub fn parse_csv(text: &str, has_labels: bool) -> Result<Dataset> {
    let mut points = Vec::new();
    let mut labels = Vec::new();
    let mut width = None;

    for (line_no, line) in text.lines().enumerate() {
        let row = line_no + 1;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if line_no == 0 && cells.iter().all(|c| parse_cell(c).is_none()) {
            continue;
        }
        let values = cells
            .iter()
            .map(|c| parse_cell(c).ok_or(SvcError::NonNumeric { row }))
            .collect::<Result<Vec<f64>>>()?;
        let expected = *width.get_or_insert(values.len());
        if values.len() != expected {
            return Err(SvcError::RaggedRow { row, expected, found: values.len() });
        }
        if has_labels {
            let (label, features) = values.split_last().expect("row has at least one cell");
            let label = match *label {
                v if v == 1.0 => 1,
                v if v == -1.0 => -1,
                v => return Err(SvcError::BadLabel { row, value: v }),
            };
            labels.push(label);
            points.push(features.to_vec());
        } else {
            points.push(values);
        }
    }
    if has_labels && width == Some(1) {
        return Err(SvcError::InvalidArgument("labeled rows need at least one feature column".into()));
    }
    Dataset::new(points, has_labels.then_some(labels))
}

pub fn load_csv(path: &Path, has_labels: bool) -> Result<Dataset> {
    if !path.exists() {
        return Err(SvcError::MissingFile(path.to_path_buf()));
    }
    let text = fs::read_to_string(path).map_err(|source| SvcError::Io { path: path.to_path_buf(), source })?;
    parse_csv(&text, has_labels)
}

/// Serializes in the format [`parse_csv`] reads; labels go in the last column.
pub fn to_csv(d: &Dataset) -> String {
    let mut out = String::new();
    for (i, p) in d.points().iter().enumerate() {
        for (j, v) in p.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v}").unwrap();
        }
        if let Some(labels) = d.labels() {
            write!(out, ",{}", labels[i]).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_csv(d: &Dataset, path: &Path) -> Result<()> {
    fs::write(path, to_csv(d)).map_err(|source| SvcError::Io { path: path.to_path_buf(), source })
}

/// One Gaussian blob for [`synth_blobs`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlobSpec {
    pub center: Vec<f64>,
    pub spread: f64,
    pub count: usize,
}

impl BlobSpec {
    pub fn new(center: Vec<f64>, spread: f64, count: usize) -> Self {
        Self { center, spread, count }
    }
}

/// Isotropic Gaussian blobs. Point `k` of blob `b` gets id `b{b}_{k}`.
pub fn synth_blobs(seed: u64, blobs: &[BlobSpec]) -> Result<Dataset> {
    let Some(first) = blobs.first() else {
        return Err(SvcError::InvalidArgument("need at least one blob".into()));
    };
    let dim = first.center.len();
    let mut rng = rng_from_seed(seed);
    let mut points = Vec::new();
    let mut ids = Vec::new();
    for (b, blob) in blobs.iter().enumerate() {
        if blob.center.len() != dim {
            return Err(SvcError::DimensionMismatch { expected: dim, found: blob.center.len() });
        }
        if blob.count == 0 || !(blob.spread > 0.0) {
            return Err(SvcError::InvalidArgument(format!("blob {b} needs count >= 1 and spread > 0")));
        }
        let noise = Normal::new(0.0, blob.spread).expect("spread is positive");
        for k in 0..blob.count {
            points.push(blob.center.iter().map(|c| c + noise.sample(&mut rng)).collect());
            ids.push(format!("b{b}_{k}"));
        }
    }
    Dataset::with_ids(points, None, ids)
}

/// Two labeled classes whose separation lives in a random 2-plane of a
/// `features`-dimensional space, plus isotropic noise. Used as a
/// high-dimensional binary fixture for PCA followed by classification.
pub fn synth_two_class(seed: u64, rows: usize, features: usize, separation: f64, noise: f64) -> Result<Dataset> {
    if rows < 2 || features < 2 {
        return Err(SvcError::InvalidArgument("need rows >= 2 and features >= 2".into()));
    }
    let mut rng = rng_from_seed(seed);
    let unit = Normal::new(0.0, 1.0).unwrap();
    let mixing: Vec<[f64; 2]> = (0..features)
        .map(|_| [unit.sample(&mut rng), unit.sample(&mut rng)])
        .collect();
    let offset: Vec<f64> = (0..features).map(|_| rng.random_range(-2.0..2.0)).collect();
    let mut points = Vec::with_capacity(rows);
    let mut labels = Vec::with_capacity(rows);
    for r in 0..rows {
        let label: i8 = if r % 2 == 0 { 1 } else { -1 };
        let shift = f64::from(label) * separation / 2.0;
        let latent = [shift + unit.sample(&mut rng), unit.sample(&mut rng)];
        points.push(
            (0..features)
                .map(|f| {
                    offset[f] + mixing[f][0] * latent[0] + mixing[f][1] * latent[1] + noise * unit.sample(&mut rng)
                })
                .collect(),
        );
        labels.push(label);
    }
    Dataset::new(points, Some(labels))
}

/// Scales every point to unit Euclidean norm; returns the original norms.
pub fn unit_normalize(d: &Dataset) -> Result<(Dataset, Vec<f64>)> {
    let mut norms = Vec::with_capacity(d.len());
    let mut points = Vec::with_capacity(d.len());
    for (i, p) in d.points().iter().enumerate() {
        let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(SvcError::ZeroVector { index: i });
        }
        norms.push(norm);
        points.push(p.iter().map(|v| v / norm).collect());
    }
    Ok((d.with_points(points)?, norms))
}

/// Principal axes of a dataset, sorted by decreasing variance.
#[derive(Debug, Clone)]
pub struct Pca {
    pub mean: Vec<f64>,
    /// Row `c` is component `c`, a unit vector of length N.
    pub components: Vec<Vec<f64>>,
    /// Variance along each component (eigenvalues of the sample covariance).
    pub variances: Vec<f64>,
    pub total_variance: f64,
}

impl Pca {
    pub fn explained_ratio(&self) -> f64 {
        if self.total_variance == 0.0 {
            return 1.0;
        }
        self.variances.iter().sum::<f64>() / self.total_variance
    }

    pub fn transform(&self, x: &[f64]) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| c.iter().zip(x).zip(&self.mean).map(|((w, v), m)| w * (v - m)).sum())
            .collect()
    }
}

/// Fits the top-`k` principal components from the eigendecomposition of the
/// sample covariance (features centered to zero mean first). Each component
/// is signed so its largest-magnitude loading is positive.
pub fn pca_fit(d: &Dataset, k: usize) -> Result<Pca> {
    let n = d.dim();
    if k == 0 || k > n {
        return Err(SvcError::InvalidArgument(format!("pca dimension {k} outside 1..={n}")));
    }
    let m = d.len();
    let mean: Vec<f64> = (0..n)
        .map(|f| d.points().iter().map(|p| p[f]).sum::<f64>() / m as f64)
        .collect();
    let centered = DMatrix::from_fn(m, n, |r, c| d.point(r)[c] - mean[c]);
    let denom = if m > 1 { (m - 1) as f64 } else { 1.0 };
    let cov = (centered.transpose() * &centered) / denom;
    let total_variance = cov.trace();

    let eig = SymmetricEigen::new(cov);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut components = Vec::with_capacity(k);
    let mut variances = Vec::with_capacity(k);
    for &idx in order.iter().take(k) {
        let mut v: Vec<f64> = eig.eigenvectors.column(idx).iter().copied().collect();
        let pivot = v
            .iter()
            .copied()
            .fold(0.0_f64, |best, x| if x.abs() > best.abs() { x } else { best });
        if pivot < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        components.push(v);
        variances.push(eig.eigenvalues[idx].max(0.0));
    }
    Ok(Pca { mean, components, variances, total_variance })
}

/// Projects onto the top-`k` principal components.
pub fn pca_project(d: &Dataset, k: usize) -> Result<Dataset> {
    let pca = pca_fit(d, k)?;
    let points = d.points().iter().map(|p| pca.transform(p)).collect();
    d.with_points(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_rows() {
        let d = parse_csv("1,0\n0,1\n1,1", false).unwrap();
        assert_eq!((d.len(), d.dim()), (3, 2));
        assert!(d.labels().is_none());
    }

    #[test]
    fn parses_labels_from_last_column() {
        let d = parse_csv("1,0,1\n0,1,-1", true).unwrap();
        assert_eq!(d.labels().unwrap(), &[1, -1]);
        assert_eq!(d.dim(), 2);
    }

    #[test]
    fn reports_non_numeric_cell_row() {
        let err = parse_csv("1,a", false).unwrap_err();
        assert_eq!(err.to_string(), "non-numeric cell at row 1");
    }

    #[test]
    fn skips_header_and_reports_ragged_rows() {
        let d = parse_csv("x,y\n1,2\n3,4\n", false).unwrap();
        assert_eq!(d.len(), 2);
        let err = parse_csv("1,2\n3\n", false).unwrap_err();
        assert!(matches!(err, SvcError::RaggedRow { row: 2, expected: 2, found: 1 }));
    }

    #[test]
    fn rejects_bad_label() {
        let err = parse_csv("1,0,2\n", true).unwrap_err();
        assert!(matches!(err, SvcError::BadLabel { row: 1, .. }));
    }

    #[test]
    fn missing_file_names_path() {
        let err = load_csv(Path::new("/nonexistent/points.csv"), false).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/points.csv"));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn blobs_are_deterministic() {
        let spec = [
            BlobSpec::new(vec![0.0, 0.0], 0.5, 30),
            BlobSpec::new(vec![10.0, 10.0], 0.5, 30),
        ];
        let a = synth_blobs(7, &spec).unwrap();
        let b = synth_blobs(7, &spec).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.len(), a.dim()), (60, 2));
        assert_eq!(a.blob_index(0), Some(0));
        assert_eq!(a.blob_index(59), Some(1));
        assert_eq!(synth_blobs(1, &[BlobSpec::new(vec![1.0], 1.0, 5)]).unwrap().len(), 5);
    }

    #[test]
    fn blob_dimension_mismatch() {
        let spec = [BlobSpec::new(vec![0.0, 0.0], 0.5, 3), BlobSpec::new(vec![1.0], 0.5, 3)];
        assert!(matches!(synth_blobs(0, &spec), Err(SvcError::DimensionMismatch { .. })));
    }

    #[test]
    fn normalize_examples() {
        let d = Dataset::new(vec![vec![3.0, 4.0], vec![1.0, 0.0]], None).unwrap();
        let (u, norms) = unit_normalize(&d).unwrap();
        assert_eq!(norms, vec![5.0, 1.0]);
        assert!((u.point(0)[0] - 0.6).abs() < 1e-15 && (u.point(0)[1] - 0.8).abs() < 1e-15);
        assert_eq!(u.point(1), &[1.0, 0.0]);

        let z = Dataset::new(vec![vec![1.0, 1.0], vec![0.0, 0.0]], None).unwrap();
        assert!(matches!(unit_normalize(&z), Err(SvcError::ZeroVector { index: 1 })));
    }

    #[test]
    fn pca_on_a_line_keeps_all_variance() {
        let pts = (0..20).map(|i| vec![i as f64 * 0.3, i as f64 * 0.3]).collect();
        let d = Dataset::new(pts, None).unwrap();
        let pca = pca_fit(&d, 1).unwrap();
        assert!((pca.variances[0] - pca.total_variance).abs() < 1e-9);
        assert!(pca.components[0][0] > 0.0);
        assert!(matches!(pca_project(&d, 3), Err(SvcError::InvalidArgument(_))));
        assert!(matches!(pca_project(&d, 0), Err(SvcError::InvalidArgument(_))));
    }
}
