//! Screening algorithms and ranking.
//!
//! Univariate-response methods score every lagged covariate column against
//! the response and rank by absolute statistic:
//!
//! * SIS — marginal Pearson correlation.
//! * DC-SIS — marginal distance correlation.
//! * PDC-SIS — partial distance correlation given a fixed conditioning
//!   vector per column: all `h` response lags plus the same series' lower
//!   lags.
//! * PDC-SIS+ — PDC-SIS whose conditioning vectors additionally absorb the
//!   strong conditional signals found at lower lag levels; the inclusion
//!   threshold comes from synthetic AR(1) decoy series.
//!
//! Grouped variants score whole blocks of a multivariate panel against
//! lagged blocks, conditioning on the target group's first own lag.
//!
//! Statistics are stored signed; rankings order by absolute value with ties
//! broken by ascending column index, so results are reproducible
//! independently of thread count.

use ndarray::{Array2, ArrayView2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bench::derive_seed;
use crate::dcor::{
    column_distances, marginal_centered, pairwise_distances, pdcor_centered, CenteredMatrix,
    EstimatorKind,
};
use crate::error::{Error, Result};
use crate::lagged::{CondCache, LaggedDataset};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Screening method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScreenMethod {
    Sis,
    Dcsis,
    Pdcsis,
    PdcsisPlus,
    GroupPdcsis,
    GroupDcsis,
}

impl ScreenMethod {
    /// Default estimator: partial-distance methods use the bias-corrected
    /// U-centered form, marginal distance correlation uses the V-statistic.
    pub fn default_estimator(self) -> EstimatorKind {
        match self {
            ScreenMethod::Pdcsis | ScreenMethod::PdcsisPlus | ScreenMethod::GroupPdcsis => {
                EstimatorKind::UCentered
            }
            _ => EstimatorKind::VStatistic,
        }
    }

    pub fn is_group(self) -> bool {
        matches!(self, ScreenMethod::GroupPdcsis | ScreenMethod::GroupDcsis)
    }

    pub fn name(self) -> &'static str {
        match self {
            ScreenMethod::Sis => "sis",
            ScreenMethod::Dcsis => "dcsis",
            ScreenMethod::Pdcsis => "pdcsis",
            ScreenMethod::PdcsisPlus => "pdcsis-plus",
            ScreenMethod::GroupPdcsis => "group-pdcsis",
            ScreenMethod::GroupDcsis => "group-dcsis",
        }
    }
}

/// How the screened sub-model is selected from the ranking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Selection {
    /// Keep the top `d` columns.
    TopD(usize),
    /// Keep every column whose absolute statistic reaches the threshold.
    Threshold(f64),
    /// Keep the top `ceil(n / ln n)` columns.
    Auto,
}

impl Selection {
    pub fn resolve(&self, n_eff: usize) -> Selection {
        match self {
            Selection::Auto => {
                let n = n_eff as f64;
                Selection::TopD(((n / n.ln()).ceil() as usize).max(1))
            }
            other => *other,
        }
    }
}

/// Full configuration of one screening run.
#[derive(Debug, Clone)]
pub struct ScreenConfig {
    pub method: ScreenMethod,
    pub estimator: EstimatorKind,
    pub selection: Selection,
    /// Total budget of strong signals a PDC-SIS+ conditioning vector may
    /// absorb across all lag levels; `None` means `ceil(sqrt(n_eff))`.
    pub plus_cap: Option<usize>,
    pub decoy_count: usize,
    pub decoy_ar: f64,
    pub decoy_quantile: f64,
}

impl ScreenConfig {
    pub fn new(method: ScreenMethod) -> Self {
        ScreenConfig {
            method,
            estimator: method.default_estimator(),
            selection: Selection::Auto,
            plus_cap: None,
            decoy_count: 1000,
            decoy_ar: 0.4,
            decoy_quantile: 0.99,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.decoy_quantile > 0.0 && self.decoy_quantile <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "decoy quantile must lie in (0, 1], got {}",
                self.decoy_quantile
            )));
        }
        if self.decoy_ar.abs() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "decoy AR coefficient must satisfy |b| < 1, got {}",
                self.decoy_ar
            )));
        }
        if let Selection::TopD(0) = self.selection {
            return Err(Error::InvalidParameter("top-d selection needs d >= 1".into()));
        }
        Ok(())
    }

    fn resolved_cap(&self, n_eff: usize) -> usize {
        self.plus_cap.unwrap_or_else(|| (n_eff as f64).sqrt().ceil() as usize)
    }
}

/// Outcome of a univariate screening run.
#[derive(Debug, Clone)]
pub struct ScreenResult {
    /// Signed statistic per covariate column.
    pub stats: Vec<f64>,
    /// Columns ordered by descending absolute statistic (ties: ascending
    /// column index).
    pub ranking: Vec<usize>,
    /// Selected sub-model.
    pub selected: Vec<usize>,
    /// Strong conditional signal sets per lag level 1..h-1 (PDC-SIS+ only),
    /// each sorted by column index.
    pub strong_sets: Vec<Vec<usize>>,
    /// Decoy threshold actually used (PDC-SIS+ only).
    pub threshold_used: Option<f64>,
}

impl ScreenResult {
    fn from_stats(stats: Vec<f64>, selection: Selection, n_eff: usize) -> Self {
        let (ranking, selected) = rank_and_select(&stats, selection.resolve(n_eff));
        ScreenResult { stats, ranking, selected, strong_sets: Vec::new(), threshold_used: None }
    }
}

fn centered_column(col: &[f64], kind: EstimatorKind) -> Result<CenteredMatrix> {
    CenteredMatrix::new(&column_distances(col), kind)
}

fn z_column(ds: &LaggedDataset, j: usize) -> Vec<f64> {
    ds.z().column(j).to_vec()
}

/// Marginal Pearson screening: `|cor(y, Z_j)|` per column, 0 for constant
/// columns.
pub fn sis_stats(ds: &LaggedDataset) -> Result<Vec<f64>> {
    let n = ds.n_eff();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: n });
    }
    let y = ds.y_resp();
    let nf = n as f64;
    let y_mean = y.iter().sum::<f64>() / nf;
    let y_var: f64 = y.iter().map(|v| (v - y_mean).powi(2)).sum();
    let y_scale: f64 = y.iter().map(|v| v * v).sum::<f64>().max(f64::MIN_POSITIVE);
    // A centered sum of squares this far below the raw scale is rounding
    // noise from a constant column, not variance.
    let degenerate = |ss: f64, scale: f64| ss <= 1e-24 * scale;
    let y_degenerate = degenerate(y_var, y_scale);
    let stats = (0..ds.p())
        .into_par_iter()
        .map(|j| {
            let col = ds.z().column(j);
            let x_mean = col.iter().sum::<f64>() / nf;
            let mut sxy = 0.0;
            let mut sxx = 0.0;
            let mut x_scale = 0.0;
            for (x, yv) in col.iter().zip(y.iter()) {
                let dx = x - x_mean;
                sxy += dx * (yv - y_mean);
                sxx += dx * dx;
                x_scale += x * x;
            }
            if y_degenerate || degenerate(sxx, x_scale.max(f64::MIN_POSITIVE)) {
                return 0.0;
            }
            (sxy / (sxx * y_var).sqrt()).abs().min(1.0)
        })
        .collect();
    Ok(stats)
}

/// Marginal distance-correlation screening: dcor for the V form, R* for the
/// U form, per column.
pub fn dcsis_stats(ds: &LaggedDataset, kind: EstimatorKind) -> Result<Vec<f64>> {
    let y_cm = centered_column(ds.y_resp(), kind)?;
    (0..ds.p())
        .into_par_iter()
        .map(|j| {
            let v_cm = centered_column(&z_column(ds, j), kind)?;
            marginal_centered(&y_cm, &v_cm)
        })
        .collect()
}

/// PDC-SIS statistics under empty conditioning for every column: the
/// marginal branch of `pdcor`, exercised through the same per-column loop as
/// the conditioned screener. Exists to validate the reduction to DC-SIS.
pub fn pdcsis_stats_empty_conditioning(
    ds: &LaggedDataset,
    kind: EstimatorKind,
) -> Result<Vec<f64>> {
    let y_cm = centered_column(ds.y_resp(), kind)?;
    (0..ds.p())
        .into_par_iter()
        .map(|j| {
            let v_cm = centered_column(&z_column(ds, j), kind)?;
            pdcor_centered(&y_cm, &v_cm, None)
        })
        .collect()
}

/// PDC-SIS: for covariate `(k, l)` the statistic is
/// `pdcor(y, Z_{k,l}; S_{k,l})` with `S_{k,l}` the response lags plus the
/// series' own lags `1..l-1`. Response lags themselves are never screened.
pub fn pdcsis_stats(ds: &LaggedDataset, cfg: &ScreenConfig) -> Result<ScreenResult> {
    cfg.validate()?;
    let kind = cfg.estimator;
    let y_cm = centered_column(ds.y_resp(), kind)?;
    let cache = CondCache::new(ds);
    let base_cm = CenteredMatrix::new(&cache.base().to_distances(), kind)?;
    let (m, h) = (ds.m(), ds.h());
    let per_series: Vec<Result<Vec<f64>>> = (0..m)
        .into_par_iter()
        .map(|k| {
            let mut out = Vec::with_capacity(h);
            let mut sq = cache.base().clone();
            for l in 1..=h {
                let z_owned;
                let z_cm = if l == 1 {
                    &base_cm
                } else {
                    sq.accumulate_column(&z_column(ds, (l - 2) * m + k))?;
                    z_owned = CenteredMatrix::new(&sq.to_distances(), kind)?;
                    &z_owned
                };
                let v_cm = centered_column(&z_column(ds, (l - 1) * m + k), kind)?;
                out.push(pdcor_centered(&y_cm, &v_cm, Some(z_cm))?);
            }
            Ok(out)
        })
        .collect();
    let mut stats = vec![0.0; ds.p()];
    for (k, res) in per_series.into_iter().enumerate() {
        for (l_idx, v) in res?.into_iter().enumerate() {
            stats[l_idx * m + k] = v;
        }
    }
    Ok(ScreenResult::from_stats(stats, cfg.selection, ds.n_eff()))
}

/// Generates one stationary AR(1) decoy: coefficient `ar`, standard normal
/// innovations, 200 burn-in steps discarded.
fn ar1_decoy(n: usize, ar: f64, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut value = 0.0;
    let mut out = Vec::with_capacity(n);
    for t in 0..(n + 200) {
        let innovation: f64 = StandardNormal.sample(&mut rng);
        value = ar * value + innovation;
        if t >= 200 {
            out.push(value);
        }
    }
    out
}

/// Empirical quantile by the inverse-CDF rule: the `ceil(q * N)`-th order
/// statistic, so `q = 1.0` returns the maximum.
fn empirical_quantile(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let n = sorted.len();
    let idx = ((q * n as f64).ceil() as usize).clamp(1, n) - 1;
    sorted[idx]
}

/// Random-decoupling threshold: the `decoy_quantile` of
/// `|pdcor(y, decoy; first min(h,3) response lags)|` over `decoy_count`
/// independent AR(1) decoys. Deterministic in `seed`; decoy `i` draws from
/// the stream `derive_seed(seed, i)`.
pub fn decoy_threshold(ds: &LaggedDataset, cfg: &ScreenConfig, seed: u64) -> Result<f64> {
    cfg.validate()?;
    let kind = cfg.estimator;
    let y_cm = centered_column(ds.y_resp(), kind)?;
    let cache = CondCache::new(ds);
    let lags = ds.h().min(3);
    let cond_cm = CenteredMatrix::new(&cache.resp_prefix(ds, lags).to_distances(), kind)?;
    let mut stats: Vec<f64> = (0..cfg.decoy_count as u64)
        .into_par_iter()
        .map(|i| {
            let decoy = ar1_decoy(ds.n_eff(), cfg.decoy_ar, derive_seed(seed, i));
            let v_cm = centered_column(&decoy, kind)?;
            Ok(pdcor_centered(&y_cm, &v_cm, Some(&cond_cm))?.abs())
        })
        .collect::<Result<_>>()?;
    stats.sort_unstable_by(f64::total_cmp);
    Ok(empirical_quantile(&stats, cfg.decoy_quantile))
}

/// Threshold-exceeding columns of one lag level, keeping at most `cap` by
/// largest absolute statistic, returned sorted by column index.
fn strong_select(stats: &[f64], offset: usize, threshold: f64, cap: usize) -> Vec<usize> {
    let mut hits: Vec<usize> = (0..stats.len())
        .filter(|&i| stats[i].abs() >= threshold)
        .collect();
    hits.sort_unstable_by(|&a, &b| stats[b].abs().total_cmp(&stats[a].abs()).then(a.cmp(&b)));
    hits.truncate(cap);
    let mut cols: Vec<usize> = hits.into_iter().map(|i| i + offset).collect();
    cols.sort_unstable();
    cols
}

/// PDC-SIS+: level 1 equals PDC-SIS; each later level conditions on the
/// response lags, the series' own lower lags, and every strong signal found
/// at the levels below, deduplicated. Level-1 statistics are reused, not
/// recomputed.
///
/// The strong signals added to a conditioning vector are capped at
/// `plus_cap` in total: each level's selection spends what remains of the
/// budget after the levels below it, keeping the largest exceedances.
/// Conditioning vectors therefore never grow past
/// `h + (l - 1) + plus_cap` entries.
pub fn pdcsis_plus_stats(ds: &LaggedDataset, cfg: &ScreenConfig, seed: u64) -> Result<ScreenResult> {
    cfg.validate()?;
    let kind = cfg.estimator;
    let threshold = decoy_threshold(ds, cfg, seed)?;
    let cap = cfg.resolved_cap(ds.n_eff());
    let (m, h, p) = (ds.m(), ds.h(), ds.p());
    let y_cm = centered_column(ds.y_resp(), kind)?;
    let cache = CondCache::new(ds);
    let base_cm = CenteredMatrix::new(&cache.base().to_distances(), kind)?;

    let mut stats = vec![0.0; p];
    let level1: Vec<f64> = (0..m)
        .into_par_iter()
        .map(|k| {
            let v_cm = centered_column(&z_column(ds, k), kind)?;
            pdcor_centered(&y_cm, &v_cm, Some(&base_cm))
        })
        .collect::<Result<_>>()?;
    stats[..m].copy_from_slice(&level1);

    let mut strong_sets: Vec<Vec<usize>> = Vec::new();
    let mut strong_union: Vec<usize> = Vec::new();
    if h >= 2 {
        strong_sets.push(strong_select(&stats[..m], 0, threshold, cap));
        strong_union.extend(&strong_sets[0]);
    }
    for l in 2..=h {
        let mut level_sq = cache.base().clone();
        for &c in &strong_union {
            level_sq.accumulate_column(&z_column(ds, c))?;
        }
        let level: Vec<f64> = (0..m)
            .into_par_iter()
            .map(|k| {
                let mut sq = level_sq.clone();
                for lambda in 1..l {
                    let own = (lambda - 1) * m + k;
                    if !strong_union.contains(&own) {
                        sq.accumulate_column(&z_column(ds, own))?;
                    }
                }
                let z_cm = CenteredMatrix::new(&sq.to_distances(), kind)?;
                let v_cm = centered_column(&z_column(ds, (l - 1) * m + k), kind)?;
                pdcor_centered(&y_cm, &v_cm, Some(&z_cm))
            })
            .collect::<Result<_>>()?;
        stats[(l - 1) * m..l * m].copy_from_slice(&level);
        if l < h {
            let budget = cap.saturating_sub(strong_union.len());
            let set = strong_select(&level, (l - 1) * m, threshold, budget);
            strong_union.extend(&set);
            strong_union.sort_unstable();
            strong_sets.push(set);
        }
    }
    let mut result = ScreenResult::from_stats(stats, cfg.selection, ds.n_eff());
    result.strong_sets = strong_sets;
    result.threshold_used = Some(threshold);
    Ok(result)
}

/// Runs the configured univariate method. PDC-SIS+ consumes `seed` for its
/// decoy threshold; the other methods are deterministic functions of the
/// dataset alone.
pub fn run_univariate(ds: &LaggedDataset, cfg: &ScreenConfig, seed: u64) -> Result<ScreenResult> {
    match cfg.method {
        ScreenMethod::Sis => {
            let stats = sis_stats(ds)?;
            Ok(ScreenResult::from_stats(stats, cfg.selection, ds.n_eff()))
        }
        ScreenMethod::Dcsis => {
            let stats = dcsis_stats(ds, cfg.estimator)?;
            Ok(ScreenResult::from_stats(stats, cfg.selection, ds.n_eff()))
        }
        ScreenMethod::Pdcsis => pdcsis_stats(ds, cfg),
        ScreenMethod::PdcsisPlus => pdcsis_plus_stats(ds, cfg, seed),
        other => Err(Error::InvalidParameter(format!(
            "{} is a group method; use run_group",
            other.name()
        ))),
    }
}

/// Partition of `m` series into `e` nonempty groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPartition {
    e: usize,
    assignment: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl GroupPartition {
    /// Builds a partition from per-series group labels `0..e`.
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        if assignment.is_empty() {
            return Err(Error::InvalidParameter("partition of zero series".into()));
        }
        let e = assignment.iter().max().unwrap() + 1;
        let mut members = vec![Vec::new(); e];
        for (series, &g) in assignment.iter().enumerate() {
            members[g].push(series);
        }
        if members.iter().any(|g| g.is_empty()) {
            return Err(Error::InvalidParameter("every group must be nonempty".into()));
        }
        Ok(GroupPartition { e, assignment, members })
    }

    /// Contiguous blocks of equal size; `m` must divide evenly.
    pub fn contiguous(m: usize, group_size: usize) -> Result<Self> {
        if group_size == 0 || m % group_size != 0 {
            return Err(Error::InvalidParameter(format!(
                "group size {group_size} does not divide {m} series evenly"
            )));
        }
        Self::new((0..m).map(|s| s / group_size).collect())
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn num_series(&self) -> usize {
        self.assignment.len()
    }

    pub fn members(&self, g: usize) -> &[usize] {
        &self.members[g]
    }
}

/// One candidate group connection: target group regressed on `source` at
/// `lag`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupTriple {
    pub target: usize,
    pub lag: usize,
    pub source: usize,
}

impl std::fmt::Display for GroupTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "G{}<-G{}[t-{}]", self.target + 1, self.source + 1, self.lag)
    }
}

/// Outcome of a group screening run over all candidate triples.
#[derive(Debug, Clone)]
pub struct GroupScreenResult {
    /// Canonical triple order: target, then lag, then source, with the
    /// conditioned-on `(i, 1, i)` entry removed.
    pub triples: Vec<GroupTriple>,
    pub stats: Vec<f64>,
    pub ranking: Vec<usize>,
    pub selected: Vec<usize>,
}

impl GroupScreenResult {
    pub fn position_of(&self, triple: &GroupTriple) -> Option<usize> {
        let idx = self.triples.iter().position(|t| t == triple)?;
        self.ranking.iter().position(|&r| r == idx).map(|pos| pos + 1)
    }
}

fn block_matrix(x: &ArrayView2<'_, f64>, rows: std::ops::Range<usize>, cols: &[usize]) -> Array2<f64> {
    let mut out = Array2::zeros((rows.len(), cols.len()));
    for (r_out, r_in) in rows.enumerate() {
        let src = x.row(r_in);
        for (c_out, &c_in) in cols.iter().enumerate() {
            out[[r_out, c_out]] = src[c_in];
        }
    }
    out
}

fn group_screen(
    x: &ArrayView2<'_, f64>,
    partition: &GroupPartition,
    h: usize,
    kind: EstimatorKind,
    selection: Selection,
    partial: bool,
) -> Result<GroupScreenResult> {
    if partition.num_series() != x.ncols() {
        return Err(Error::DimensionMismatch {
            expected: partition.num_series(),
            got: x.ncols(),
        });
    }
    if h < 1 {
        return Err(Error::InvalidParameter("lag depth h must be at least 1".into()));
    }
    let t_raw = x.nrows();
    let needed = h + 8;
    if t_raw < needed {
        return Err(Error::TooFewSamples { needed, got: t_raw });
    }
    let n_eff = t_raw - h;
    let e = partition.e();

    // One centered matrix per contemporaneous block and per (lag, block).
    let targets: Vec<CenteredMatrix> = (0..e)
        .into_par_iter()
        .map(|i| {
            let block = block_matrix(x, h..t_raw, partition.members(i));
            CenteredMatrix::new(&pairwise_distances(block.view())?, kind)
        })
        .collect::<Result<_>>()?;
    let lagged: Vec<CenteredMatrix> = (0..h * e)
        .into_par_iter()
        .map(|idx| {
            let (kappa, j) = (idx / e + 1, idx % e);
            let block = block_matrix(x, h - kappa..t_raw - kappa, partition.members(j));
            CenteredMatrix::new(&pairwise_distances(block.view())?, kind)
        })
        .collect::<Result<_>>()?;
    let lag_block = |kappa: usize, j: usize| &lagged[(kappa - 1) * e + j];

    let mut triples = Vec::with_capacity(e * (h * e - 1));
    for i in 0..e {
        for kappa in 1..=h {
            for j in 0..e {
                if kappa == 1 && j == i {
                    continue;
                }
                triples.push(GroupTriple { target: i, lag: kappa, source: j });
            }
        }
    }
    let stats: Vec<f64> = triples
        .par_iter()
        .map(|t| {
            if partial {
                pdcor_centered(&targets[t.target], lag_block(t.lag, t.source), Some(lag_block(1, t.target)))
            } else {
                marginal_centered(&targets[t.target], lag_block(t.lag, t.source))
            }
        })
        .collect::<Result<_>>()?;
    let (ranking, selected) = rank_and_select(&stats, selection.resolve(n_eff));
    Ok(GroupScreenResult { triples, stats, ranking, selected })
}

/// Group PDC-SIS: `pdcor(G_{t,i}, G_{t-k,j}; G_{t-1,i})` for every candidate
/// triple, ranked globally. The `(i, 1, i)` pair is the conditioning variable
/// and is never screened.
pub fn group_pdcsis_stats(
    x: &ArrayView2<'_, f64>,
    partition: &GroupPartition,
    h: usize,
    kind: EstimatorKind,
    selection: Selection,
) -> Result<GroupScreenResult> {
    group_screen(x, partition, h, kind, selection, true)
}

/// Group DC-SIS baseline: marginal distance correlation between blocks, with
/// the same `(i, 1, i)` exclusion.
pub fn group_dcsis_stats(
    x: &ArrayView2<'_, f64>,
    partition: &GroupPartition,
    h: usize,
    kind: EstimatorKind,
    selection: Selection,
) -> Result<GroupScreenResult> {
    group_screen(x, partition, h, kind, selection, false)
}

/// Ranks columns by descending absolute statistic with ties broken by
/// ascending index, then selects a prefix (top-d) or the
/// threshold-exceeding set.
pub fn rank_and_select(stats: &[f64], selection: Selection) -> (Vec<usize>, Vec<usize>) {
    let mut ranking: Vec<usize> = (0..stats.len()).collect();
    ranking.sort_unstable_by(|&a, &b| stats[b].abs().total_cmp(&stats[a].abs()).then(a.cmp(&b)));
    let selected = match selection {
        Selection::TopD(d) => ranking[..d.min(ranking.len())].to_vec(),
        Selection::Threshold(gamma) => ranking
            .iter()
            .copied()
            .take_while(|&j| stats[j].abs() >= gamma)
            .collect(),
        Selection::Auto => unreachable!("Auto is resolved before ranking"),
    };
    (ranking, selected)
}

/// Minimum model size: the largest (one-based) rank attained by any member
/// of the true set.
pub fn mms(ranking: &[usize], true_set: &[usize]) -> Result<usize> {
    if true_set.is_empty() {
        return Err(Error::EmptyTrueSet);
    }
    let ranks = ranks_of(ranking, true_set)?;
    Ok(ranks.into_iter().max().unwrap())
}

/// One-based rank of each requested column within the ranking.
pub fn ranks_of(ranking: &[usize], cols: &[usize]) -> Result<Vec<usize>> {
    let p = ranking.len();
    let mut position = vec![usize::MAX; p];
    for (pos, &j) in ranking.iter().enumerate() {
        position[j] = pos + 1;
    }
    cols.iter()
        .map(|&c| {
            if c >= p || position[c] == usize::MAX {
                Err(Error::ColumnOutOfRange { index: c, p })
            } else {
                Ok(position[c])
            }
        })
        .collect()
}
