//! Distance covariance, distance correlation, and partial distance correlation.
//!
//! Two sample estimators are provided. The V-statistic form is the plug-in
//! estimator of Székely, Rizzo and Bakirov (2007): it is biased but always
//! nonnegative, and is computed here through the double-centered matrix
//! identity rather than the definitional triple sum. The U-centered form is
//! the bias-corrected estimator of Székely and Rizzo (2014); it requires at
//! least four samples and can be negative.
//!
//! Partial distance correlation composes three pairwise statistics
//! algebraically, so everything in this module reduces to building pairwise
//! Euclidean distance matrices, centering them, and taking inner products.
//! [`CenteredMatrix`] caches the centering and the self inner product, which
//! is what makes the screening workload (one conditioning matrix per
//! covariate) affordable.
//!
//! Inputs are used as-is: no standardization is applied to samples before
//! distances are taken. Callers that want scale-free behaviour across
//! variables should standardize beforehand.

use ndarray::ArrayView2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold below which a self inner product is treated as zero
/// (constant sample; degenerate denominator conventions apply).
pub const EPS_DEGENERATE: f64 = 1e-12;

/// Threshold for the `1 - c^2` denominator factors of `pdcor`.
pub const EPS_DENOM: f64 = 1e-12;

/// A V-statistic dcov^2 more negative than this (relative to scale) means the
/// centering disagrees with its inputs and is reported as a hard error.
const NEG_RESIDUE_FACTOR: f64 = 1e-8;

/// Symmetric matrix of pairwise Euclidean distances with zero diagonal,
/// stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    /// Number of samples (rows/columns).
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    /// Flat row-major entries.
    pub fn values(&self) -> &[f64] {
        &self.d
    }

    /// Mean of all n^2 entries. Zero exactly when the sample is constant.
    pub fn grand_mean(&self) -> f64 {
        let n = self.n as f64;
        self.d.iter().sum::<f64>() / (n * n)
    }

    fn from_raw(n: usize, d: Vec<f64>) -> Self {
        debug_assert_eq!(d.len(), n * n);
        DistanceMatrix { n, d }
    }
}

/// Pairwise Euclidean distances between the rows of an `n x d` sample.
pub fn pairwise_distances(sample: ArrayView2<'_, f64>) -> Result<DistanceMatrix> {
    let n = sample.nrows();
    let d = sample.ncols();
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameter(
            "sample must have at least one row and one column".into(),
        ));
    }
    for (row, r) in sample.rows().into_iter().enumerate() {
        if r.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput { row });
        }
    }
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        let ri = sample.row(i);
        for j in (i + 1)..n {
            let rj = sample.row(j);
            let mut s = 0.0;
            for (a, b) in ri.iter().zip(rj.iter()) {
                let diff = a - b;
                s += diff * diff;
            }
            let dist = s.sqrt();
            out[i * n + j] = dist;
            out[j * n + i] = dist;
        }
    }
    Ok(DistanceMatrix::from_raw(n, out))
}

/// Pairwise distances of a single column, `|x_i - x_j|`. Hot path for
/// screening, where every covariate is univariate.
pub fn column_distances(col: &[f64]) -> DistanceMatrix {
    let n = col.len();
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        let xi = col[i];
        for j in (i + 1)..n {
            let dist = (xi - col[j]).abs();
            out[i * n + j] = dist;
            out[j * n + i] = dist;
        }
    }
    DistanceMatrix::from_raw(n, out)
}

/// Matrix of squared Euclidean distances, additive under coordinate
/// concatenation: appending a variable adds its squared distances entrywise.
/// This is what lets conditioning vectors grow one column at a time without
/// recomputing the shared block.
#[derive(Debug, Clone, PartialEq)]
pub struct SqDistanceMatrix {
    n: usize,
    s: Vec<f64>,
}

impl SqDistanceMatrix {
    pub fn zeros(n: usize) -> Self {
        SqDistanceMatrix { n, s: vec![0.0; n * n] }
    }

    pub fn from_column(col: &[f64]) -> Self {
        let mut m = Self::zeros(col.len());
        m.accumulate_column(col).expect("length matches by construction");
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.s[i * self.n + j]
    }

    /// Adds `(col_i - col_j)^2` to every entry.
    pub fn accumulate_column(&mut self, col: &[f64]) -> Result<()> {
        if col.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: col.len() });
        }
        let n = self.n;
        for i in 0..n {
            let xi = col[i];
            for j in (i + 1)..n {
                let diff = xi - col[j];
                let sq = diff * diff;
                self.s[i * n + j] += sq;
                self.s[j * n + i] += sq;
            }
        }
        Ok(())
    }

    /// Entrywise addition of another accumulated matrix.
    pub fn add_assign(&mut self, other: &SqDistanceMatrix) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        for (a, b) in self.s.iter_mut().zip(other.s.iter()) {
            *a += *b;
        }
        Ok(())
    }

    /// Entrywise square root, yielding the distance matrix of the
    /// concatenated sample.
    pub fn to_distances(&self) -> DistanceMatrix {
        let d = self.s.iter().map(|v| v.sqrt()).collect();
        DistanceMatrix::from_raw(self.n, d)
    }
}

/// Returns `base + squared distances of column`, treating `None` as zero.
pub fn sqdist_accumulate(base: Option<&SqDistanceMatrix>, column: &[f64]) -> Result<SqDistanceMatrix> {
    let mut out = match base {
        Some(b) => {
            if b.n() != column.len() {
                return Err(Error::DimensionMismatch { expected: b.n(), got: column.len() });
            }
            b.clone()
        }
        None => SqDistanceMatrix::zeros(column.len()),
    };
    out.accumulate_column(column)?;
    Ok(out)
}

/// Which sample estimator backs a statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EstimatorKind {
    /// Biased plug-in estimator; dcov^2 is nonnegative.
    #[serde(rename = "v_statistic", alias = "v")]
    VStatistic,
    /// Bias-corrected estimator on U-centered matrices; needs n >= 4 and can
    /// be negative.
    #[serde(rename = "u_centered", alias = "u")]
    UCentered,
}

/// The three sample sums of the definitional dcov^2 decomposition
/// `S1 + S2 - 2*S3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcovTriple {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl DcovTriple {
    /// `S1 + S2 - 2*S3`, clamped at zero.
    pub fn dcov2(&self) -> f64 {
        (self.s1 + self.s2 - 2.0 * self.s3).max(0.0)
    }
}

/// Definitional sums of the V-statistic estimator:
/// `S1 = n^-2 sum |u_i-u_j||v_i-v_j|`, `S2` the product of the two mean
/// distances, `S3 = n^-3 sum_{i,j,l} |u_i-u_j||v_i-v_l|`. The triple sum
/// collapses to a product of row sums, so this runs in O(n^2).
pub fn dcov_sums(du: &DistanceMatrix, dv: &DistanceMatrix) -> Result<DcovTriple> {
    let n = check_pair(du, dv)?;
    let nf = n as f64;
    let mut s1 = 0.0;
    for (a, b) in du.d.iter().zip(dv.d.iter()) {
        s1 += a * b;
    }
    s1 /= nf * nf;
    let mean_u = du.grand_mean();
    let mean_v = dv.grand_mean();
    let s2 = mean_u * mean_v;
    let mut s3 = 0.0;
    for i in 0..n {
        let ru: f64 = du.d[i * n..(i + 1) * n].iter().sum();
        let rv: f64 = dv.d[i * n..(i + 1) * n].iter().sum();
        s3 += ru * rv;
    }
    s3 /= nf * nf * nf;
    Ok(DcovTriple { s1, s2, s3 })
}

fn check_pair(du: &DistanceMatrix, dv: &DistanceMatrix) -> Result<usize> {
    if du.n != dv.n {
        return Err(Error::DimensionMismatch { expected: du.n, got: dv.n });
    }
    Ok(du.n)
}

/// A centered distance matrix together with its cached self inner product.
///
/// For `VStatistic` the centering is `A_ij = a_ij - rowmean_i - colmean_j +
/// grandmean` and inner products are `n^-2 sum A_ij B_ij`, so
/// `inner(A, A) = dcov^2(u, u)`. For `UCentered` the centering is the
/// unbiased form with zero diagonal and inner products are
/// `(n(n-3))^-1 sum_{i != j} A_ij B_ij`.
#[derive(Debug, Clone)]
pub struct CenteredMatrix {
    n: usize,
    kind: EstimatorKind,
    vals: Vec<f64>,
    self_inner: f64,
    dist_mean: f64,
}

impl CenteredMatrix {
    pub fn new(d: &DistanceMatrix, kind: EstimatorKind) -> Result<Self> {
        match kind {
            EstimatorKind::VStatistic => Ok(Self::v_center(d)),
            EstimatorKind::UCentered => Self::u_center(d),
        }
    }

    fn v_center(d: &DistanceMatrix) -> Self {
        let n = d.n;
        let nf = n as f64;
        let mut row_means = vec![0.0; n];
        for i in 0..n {
            row_means[i] = d.d[i * n..(i + 1) * n].iter().sum::<f64>() / nf;
        }
        // Symmetric input: column means equal row means.
        let grand = row_means.iter().sum::<f64>() / nf;
        let mut vals = vec![0.0; n * n];
        let mut self_inner = 0.0;
        for i in 0..n {
            for j in 0..n {
                let v = d.d[i * n + j] - row_means[i] - row_means[j] + grand;
                vals[i * n + j] = v;
                self_inner += v * v;
            }
        }
        self_inner /= nf * nf;
        CenteredMatrix {
            n,
            kind: EstimatorKind::VStatistic,
            vals,
            self_inner,
            dist_mean: grand,
        }
    }

    fn u_center(d: &DistanceMatrix) -> Result<Self> {
        let n = d.n;
        if n < 4 {
            return Err(Error::TooFewSamples { needed: 4, got: n });
        }
        let nf = n as f64;
        let mut row_sums = vec![0.0; n];
        for i in 0..n {
            row_sums[i] = d.d[i * n..(i + 1) * n].iter().sum::<f64>();
        }
        let total: f64 = row_sums.iter().sum();
        let denom = nf - 2.0;
        let grand_term = total / ((nf - 1.0) * (nf - 2.0));
        let mut vals = vec![0.0; n * n];
        let mut sum_sq = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let v = d.d[i * n + j] - row_sums[i] / denom - row_sums[j] / denom + grand_term;
                vals[i * n + j] = v;
                sum_sq += v * v;
            }
        }
        let self_inner = sum_sq / (nf * (nf - 3.0));
        Ok(CenteredMatrix {
            n,
            kind: EstimatorKind::UCentered,
            vals,
            self_inner,
            dist_mean: total / (nf * nf),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> EstimatorKind {
        self.kind
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.vals[i * self.n + j]
    }

    /// `inner(self, self)`: dcov^2(u,u) for the V form, `<A~,A~>` for the U
    /// form.
    pub fn self_inner(&self) -> f64 {
        self.self_inner
    }

    /// True when the underlying sample is (numerically) constant, in which
    /// case every statistic built on this matrix follows the zero convention.
    pub fn is_degenerate(&self) -> bool {
        let scale = (self.dist_mean * self.dist_mean).max(f64::MIN_POSITIVE);
        self.self_inner <= EPS_DEGENERATE * scale
    }
}

/// Inner product of two centered matrices of the same kind and size.
pub fn inner(a: &CenteredMatrix, b: &CenteredMatrix) -> Result<f64> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { expected: a.n, got: b.n });
    }
    if a.kind != b.kind {
        return Err(Error::InvalidParameter(
            "cannot mix V-statistic and U-centered matrices".into(),
        ));
    }
    let mut s = 0.0;
    for (x, y) in a.vals.iter().zip(b.vals.iter()) {
        s += x * y;
    }
    let nf = a.n as f64;
    Ok(match a.kind {
        EstimatorKind::VStatistic => s / (nf * nf),
        EstimatorKind::UCentered => s / (nf * (nf - 3.0)),
    })
}

/// Normalized inner product `inner(a,b) / sqrt(inner(a,a) inner(b,b))`.
///
/// For the V form this is the squared distance correlation; for the U form it
/// is the bias-corrected statistic R*, which may be negative. Returns 0 when
/// either argument is degenerate.
fn normalized_inner(a: &CenteredMatrix, b: &CenteredMatrix) -> Result<f64> {
    if a.is_degenerate() || b.is_degenerate() {
        return Ok(0.0);
    }
    let raw = inner(a, b)? / (a.self_inner * b.self_inner).sqrt();
    Ok(match a.kind {
        EstimatorKind::VStatistic => raw.clamp(0.0, 1.0),
        EstimatorKind::UCentered => raw.clamp(-1.0, 1.0),
    })
}

/// Marginal dependence statistic between two centered matrices: the distance
/// correlation for the V form, R* for the U form. This is what `pdcor`
/// reduces to under empty conditioning.
pub fn marginal_centered(a: &CenteredMatrix, b: &CenteredMatrix) -> Result<f64> {
    let c = normalized_inner(a, b)?;
    Ok(match a.kind {
        EstimatorKind::VStatistic => c.sqrt(),
        EstimatorKind::UCentered => c,
    })
}

/// Partial distance correlation from pre-centered matrices.
///
/// With `z = None` this is the marginal statistic. Otherwise, writing `c_xy`
/// for the normalized inner products (dcor^2 for the V form, R* for the U
/// form), it evaluates
/// `(c_uv - c_uz c_vz) / (sqrt(1 - c_uz^2) sqrt(1 - c_vz^2))`,
/// returning 0 whenever a denominator factor falls below [`EPS_DENOM`].
pub fn pdcor_centered(
    u: &CenteredMatrix,
    v: &CenteredMatrix,
    z: Option<&CenteredMatrix>,
) -> Result<f64> {
    let z = match z {
        None => return marginal_centered(u, v),
        Some(z) => z,
    };
    let c_uv = normalized_inner(u, v)?;
    let c_uz = normalized_inner(u, z)?;
    let c_vz = normalized_inner(v, z)?;
    let f_u = 1.0 - c_uz * c_uz;
    let f_v = 1.0 - c_vz * c_vz;
    if f_u < EPS_DENOM || f_v < EPS_DENOM {
        return Ok(0.0);
    }
    Ok(((c_uv - c_uz * c_vz) / (f_u.sqrt() * f_v.sqrt())).clamp(-1.0, 1.0))
}

/// V-statistic squared distance covariance via the double-centered form,
/// clamped at zero. A residue far below zero is a hard error since the
/// V-statistic is nonnegative by construction.
pub fn dcov2_v(du: &DistanceMatrix, dv: &DistanceMatrix) -> Result<f64> {
    check_pair(du, dv)?;
    let a = CenteredMatrix::v_center(du);
    let b = CenteredMatrix::v_center(dv);
    let val = inner(&a, &b)?;
    let scale = (a.dist_mean * b.dist_mean).max(f64::MIN_POSITIVE);
    if val < -NEG_RESIDUE_FACTOR * scale {
        return Err(Error::BrokenCentering { value: val });
    }
    Ok(val.max(0.0))
}

/// V-statistic distance correlation in [0, 1]; 0 when either sample is
/// constant.
pub fn dcor_v(du: &DistanceMatrix, dv: &DistanceMatrix) -> Result<f64> {
    check_pair(du, dv)?;
    let a = CenteredMatrix::v_center(du);
    let b = CenteredMatrix::v_center(dv);
    marginal_centered(&a, &b)
}

/// U-centered version of a distance matrix (zero diagonal, zero row and
/// column sums). Requires n >= 4.
pub fn ucentered(d: &DistanceMatrix) -> Result<CenteredMatrix> {
    CenteredMatrix::u_center(d)
}

/// Bias-corrected squared distance correlation R* in [-1, 1]; 0 under the
/// degenerate convention.
pub fn rstar(du: &DistanceMatrix, dv: &DistanceMatrix) -> Result<f64> {
    check_pair(du, dv)?;
    let a = CenteredMatrix::u_center(du)?;
    let b = CenteredMatrix::u_center(dv)?;
    marginal_centered(&a, &b)
}

/// Partial distance correlation of `u` and `v` given `z` (or the marginal
/// statistic when `dz` is `None`), under the chosen estimator.
pub fn pdcor(
    du: &DistanceMatrix,
    dv: &DistanceMatrix,
    dz: Option<&DistanceMatrix>,
    kind: EstimatorKind,
) -> Result<f64> {
    check_pair(du, dv)?;
    if let Some(z) = dz {
        check_pair(du, z)?;
    }
    let u = CenteredMatrix::new(du, kind)?;
    let v = CenteredMatrix::new(dv, kind)?;
    let z = match dz {
        Some(z) => Some(CenteredMatrix::new(z, kind)?),
        None => None,
    };
    pdcor_centered(&u, &v, z.as_ref())
}
