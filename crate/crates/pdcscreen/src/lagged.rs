//! Aligned lagged designs and conditioning vectors.
//!
//! A raw panel holds a response series and `m` predictor series observed over
//! `T_raw` time points. [`build_lagged`] turns it into the screening design:
//! a response vector, the `h` response lags, and a `n_eff x p` covariate
//! matrix with `p = m * h`, where column `j = (l - 1) * m + k` is predictor
//! series `k` at lag `l` (indices zero-based for `k` and `j`, lags counted
//! from 1).
//!
//! Conditioning vectors are described by [`CondSpec`] and materialized as
//! distance matrices. Because squared Euclidean distances add under
//! coordinate concatenation, the response-lag block is accumulated once per
//! dataset ([`CondCache`]) and each covariate's conditioning matrix is
//! obtained by adding a handful of columns on top of it.

use std::path::Path;

use ndarray::{Array2, ArrayView1};

use crate::dcor::{pairwise_distances, DistanceMatrix, SqDistanceMatrix};
use crate::error::{Error, Result};

/// Raw panel: response series plus `m` predictor series over `T_raw` rows.
#[derive(Debug, Clone)]
pub struct Panel {
    y: Vec<f64>,
    x: Array2<f64>,
    y_name: String,
    x_names: Vec<String>,
}

impl Panel {
    pub fn new(y: Vec<f64>, x: Array2<f64>) -> Result<Self> {
        let names = (1..=x.ncols()).map(|k| format!("x{k}")).collect();
        Self::with_names(y, x, "y".to_string(), names)
    }

    pub fn with_names(
        y: Vec<f64>,
        x: Array2<f64>,
        y_name: String,
        x_names: Vec<String>,
    ) -> Result<Self> {
        if y.len() != x.nrows() {
            return Err(Error::DimensionMismatch { expected: x.nrows(), got: y.len() });
        }
        if x_names.len() != x.ncols() {
            return Err(Error::DimensionMismatch { expected: x.ncols(), got: x_names.len() });
        }
        for (row, v) in y.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteInput { row });
            }
        }
        for (row, r) in x.rows().into_iter().enumerate() {
            if r.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFiniteInput { row });
            }
        }
        Ok(Panel { y, x, y_name, x_names })
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn num_series(&self) -> usize {
        self.x.ncols()
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn x(&self) -> &Array2<f64> {
        &self.x
    }

    pub fn y_name(&self) -> &str {
        &self.y_name
    }

    pub fn x_names(&self) -> &[String] {
        &self.x_names
    }
}

/// Lagged design aligned for screening.
#[derive(Debug, Clone)]
pub struct LaggedDataset {
    m: usize,
    h: usize,
    horizon: usize,
    n_eff: usize,
    y_resp: Vec<f64>,
    /// `n_eff x h`; column `l - 1` holds the lag-`l` response values.
    y_lags: Array2<f64>,
    /// `n_eff x p` covariate matrix.
    z: Array2<f64>,
    x_names: Vec<String>,
}

impl LaggedDataset {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn n_eff(&self) -> usize {
        self.n_eff
    }

    /// Total number of covariate columns, `m * h`.
    pub fn p(&self) -> usize {
        self.m * self.h
    }

    pub fn y_resp(&self) -> &[f64] {
        &self.y_resp
    }

    pub fn y_lags(&self) -> &Array2<f64> {
        &self.y_lags
    }

    pub fn z(&self) -> &Array2<f64> {
        &self.z
    }

    /// Column index of predictor series `k` (zero-based) at lag `l`.
    pub fn col_index(&self, k: usize, l: usize) -> Result<usize> {
        if k >= self.m || l < 1 || l > self.h {
            return Err(Error::InvalidParameter(format!(
                "series {k} / lag {l} out of range (m = {}, h = {})",
                self.m, self.h
            )));
        }
        Ok((l - 1) * self.m + k)
    }

    /// Inverse of [`col_index`](Self::col_index): `(series, lag)` of column `j`.
    pub fn series_lag(&self, j: usize) -> Result<(usize, usize)> {
        if j >= self.p() {
            return Err(Error::ColumnOutOfRange { index: j, p: self.p() });
        }
        Ok((j % self.m, j / self.m + 1))
    }

    /// Human-readable label of a covariate column, e.g. `x3[t-2]`.
    pub fn col_label(&self, j: usize) -> Result<String> {
        let (k, l) = self.series_lag(j)?;
        Ok(format!("{}[t-{l}]", self.x_names[k]))
    }

    pub fn z_col(&self, j: usize) -> ArrayView1<'_, f64> {
        self.z.column(j)
    }

    pub fn x_names(&self) -> &[String] {
        &self.x_names
    }
}

/// Builds the lagged design. Effective rows satisfy
/// `n_eff = T_raw - h - horizon`; effective row `t` carries the response at
/// raw time `t + h + horizon`, response lag `l` at raw time `t + h - l`, and
/// covariate `(k, l)` at raw time `t + h - l` (all zero-based raw indices).
pub fn build_lagged(panel: &Panel, h: usize, horizon: usize) -> Result<LaggedDataset> {
    if h < 1 {
        return Err(Error::InvalidParameter("lag depth h must be at least 1".into()));
    }
    let t_raw = panel.len();
    let needed = h + horizon + 8;
    if t_raw < needed {
        return Err(Error::TooFewSamples { needed, got: t_raw });
    }
    let m = panel.num_series();
    let n_eff = t_raw - h - horizon;
    let mut y_resp = Vec::with_capacity(n_eff);
    let mut y_lags = Array2::zeros((n_eff, h));
    let mut z = Array2::zeros((n_eff, m * h));
    for t in 0..n_eff {
        y_resp.push(panel.y[t + h + horizon]);
        for l in 1..=h {
            y_lags[[t, l - 1]] = panel.y[t + h - l];
            let src = panel.x.row(t + h - l);
            for k in 0..m {
                z[[t, (l - 1) * m + k]] = src[k];
            }
        }
    }
    Ok(LaggedDataset {
        m,
        h,
        horizon,
        n_eff,
        y_resp,
        y_lags,
        z,
        x_names: panel.x_names.clone(),
    })
}

/// Description of a conditioning vector: response-lag indices plus covariate
/// column indices, duplicate-free with first occurrence kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CondSpec {
    resp_lags: Vec<usize>,
    cov_cols: Vec<usize>,
}

impl CondSpec {
    /// Empty conditioning vector: routed to the marginal branch of `pdcor`.
    pub fn empty() -> Self {
        CondSpec { resp_lags: Vec::new(), cov_cols: Vec::new() }
    }

    pub fn new(resp_lags: Vec<usize>, cov_cols: Vec<usize>) -> Self {
        let mut spec = CondSpec { resp_lags: Vec::new(), cov_cols: Vec::new() };
        for l in resp_lags {
            if !spec.resp_lags.contains(&l) {
                spec.resp_lags.push(l);
            }
        }
        for c in cov_cols {
            spec.push_col(c);
        }
        spec
    }

    /// Appends a covariate column unless already present.
    pub fn push_col(&mut self, col: usize) {
        if !self.cov_cols.contains(&col) {
            self.cov_cols.push(col);
        }
    }

    pub fn resp_lags(&self) -> &[usize] {
        &self.resp_lags
    }

    pub fn cov_cols(&self) -> &[usize] {
        &self.cov_cols
    }

    /// Dimension of the conditioning vector.
    pub fn dim(&self) -> usize {
        self.resp_lags.len() + self.cov_cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }
}

/// Conditioning vector of covariate `(k, l)` under the fixed scheme: all `h`
/// response lags plus the same series' lags `1..l-1`.
pub fn cond_pdcsis(k: usize, l: usize, h: usize, m: usize) -> Result<CondSpec> {
    if k >= m {
        return Err(Error::InvalidParameter(format!("series {k} out of range (m = {m})")));
    }
    if l < 1 || l > h {
        return Err(Error::InvalidParameter(format!("lag {l} out of range (h = {h})")));
    }
    let resp_lags = (1..=h).collect();
    let cov_cols = (1..l).map(|lambda| (lambda - 1) * m + k).collect();
    Ok(CondSpec { resp_lags, cov_cols })
}

/// Per-dataset cache of accumulated squared distances for the response-lag
/// block. Materializing a conditioning vector then only adds that vector's
/// own covariate columns.
#[derive(Debug, Clone)]
pub struct CondCache {
    full_base: SqDistanceMatrix,
    h: usize,
}

impl CondCache {
    pub fn new(ds: &LaggedDataset) -> Self {
        let base = Self::resp_block(ds, ds.h);
        CondCache { full_base: base, h: ds.h }
    }

    fn resp_block(ds: &LaggedDataset, lags: usize) -> SqDistanceMatrix {
        let mut base = SqDistanceMatrix::zeros(ds.n_eff);
        for l in 1..=lags {
            let col: Vec<f64> = ds.y_lags.column(l - 1).to_vec();
            base.accumulate_column(&col).expect("cache columns share n_eff");
        }
        base
    }

    /// Accumulated squared distances of the full response-lag block
    /// `(Y_{t-1}, ..., Y_{t-h})`.
    pub fn base(&self) -> &SqDistanceMatrix {
        &self.full_base
    }

    /// Squared distances of the first `lags` response lags; reuses the full
    /// block when possible.
    pub fn resp_prefix(&self, ds: &LaggedDataset, lags: usize) -> SqDistanceMatrix {
        if lags == self.h {
            self.full_base.clone()
        } else {
            Self::resp_block(ds, lags)
        }
    }
}

/// Materializes a conditioning vector as a distance matrix, reusing the
/// cached response-lag block when the spec asks for all `h` lags.
///
/// Empty specs are an error here; callers encode "no conditioning" by passing
/// `None` to `pdcor` instead.
pub fn cond_materialize(
    ds: &LaggedDataset,
    spec: &CondSpec,
    cache: &CondCache,
) -> Result<DistanceMatrix> {
    if spec.is_empty() {
        return Err(Error::InvalidParameter(
            "empty conditioning vector has no distance matrix; use the marginal branch".into(),
        ));
    }
    let full: Vec<usize> = (1..=ds.h).collect();
    let mut sq = if spec.resp_lags == full {
        cache.full_base.clone()
    } else {
        let mut sq = SqDistanceMatrix::zeros(ds.n_eff);
        for &l in &spec.resp_lags {
            if l < 1 || l > ds.h {
                return Err(Error::InvalidParameter(format!(
                    "response lag {l} out of range (h = {})",
                    ds.h
                )));
            }
            let col: Vec<f64> = ds.y_lags.column(l - 1).to_vec();
            sq.accumulate_column(&col)?;
        }
        sq
    };
    for &c in &spec.cov_cols {
        if c >= ds.p() {
            return Err(Error::ColumnOutOfRange { index: c, p: ds.p() });
        }
        let col: Vec<f64> = ds.z.column(c).to_vec();
        sq.accumulate_column(&col)?;
    }
    Ok(sq.to_distances())
}

/// Reference path: concatenates the conditioning columns into one sample and
/// calls [`pairwise_distances`] directly. Used to validate the incremental
/// cache.
pub fn cond_materialize_naive(ds: &LaggedDataset, spec: &CondSpec) -> Result<DistanceMatrix> {
    if spec.is_empty() {
        return Err(Error::InvalidParameter(
            "empty conditioning vector has no distance matrix; use the marginal branch".into(),
        ));
    }
    let n = ds.n_eff;
    let t = spec.dim();
    let mut sample = Array2::zeros((n, t));
    let mut c = 0;
    for &l in &spec.resp_lags {
        if l < 1 || l > ds.h {
            return Err(Error::InvalidParameter(format!(
                "response lag {l} out of range (h = {})",
                ds.h
            )));
        }
        sample.column_mut(c).assign(&ds.y_lags.column(l - 1));
        c += 1;
    }
    for &col in &spec.cov_cols {
        if col >= ds.p() {
            return Err(Error::ColumnOutOfRange { index: col, p: ds.p() });
        }
        sample.column_mut(c).assign(&ds.z.column(col));
        c += 1;
    }
    pairwise_distances(sample.view())
}

/// Which column of a CSV panel is the response.
#[derive(Debug, Clone)]
pub enum ResponseSelector {
    Name(String),
    Index(usize),
}

/// Reads a panel from CSV: header row of series names, one optional leading
/// time-index column (detected by non-numeric values and ignored), numeric
/// data everywhere else. Missing or unparseable data values are a hard error
/// naming the row and column.
pub fn read_panel_csv(path: &Path, response: &ResponseSelector) -> Result<Panel> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let headers: Vec<String> = reader.headers()?.iter().map(|s| s.to_string()).collect();
    if headers.len() < 2 {
        return Err(Error::InvalidParameter(
            "panel CSV needs a response column and at least one predictor column".into(),
        ));
    }
    let mut raw: Vec<Vec<Option<f64>>> = vec![Vec::new(); headers.len()];
    for record in reader.records() {
        let record = record?;
        for (c, field) in record.iter().enumerate() {
            let parsed = field.parse::<f64>().ok().filter(|v| v.is_finite());
            raw[c].push(if field.is_empty() { None } else { parsed });
        }
    }
    let rows = raw.first().map_or(0, |c| c.len());
    if rows == 0 {
        return Err(Error::TooFewSamples { needed: 9, got: 0 });
    }
    // A leading column that fails to parse anywhere is a time index.
    let skip_first = raw[0].iter().any(|v| v.is_none());
    let start = usize::from(skip_first);
    let names: Vec<String> = headers[start..].to_vec();
    let resp_pos = match response {
        ResponseSelector::Name(name) => names.iter().position(|n| n == name).ok_or_else(|| {
            Error::UnknownResponse { name: name.clone(), available: names.join(", ") }
        })?,
        ResponseSelector::Index(i) => {
            if *i >= names.len() {
                return Err(Error::UnknownResponse {
                    name: format!("#{i}"),
                    available: names.join(", "),
                });
            }
            *i
        }
    };
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(names.len());
    for (c, col) in raw[start..].iter().enumerate() {
        let mut vals = Vec::with_capacity(rows);
        for (r, v) in col.iter().enumerate() {
            match v {
                Some(v) => vals.push(*v),
                None => {
                    return Err(Error::MissingValue { row: r + 1, column: names[c].clone() })
                }
            }
        }
        columns.push(vals);
    }
    let y = columns[resp_pos].clone();
    let x_names: Vec<String> = names
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != resp_pos)
        .map(|(_, n)| n.clone())
        .collect();
    let m = x_names.len();
    let mut x = Array2::zeros((rows, m));
    let mut k = 0;
    for (i, col) in columns.iter().enumerate() {
        if i == resp_pos {
            continue;
        }
        for (r, v) in col.iter().enumerate() {
            x[[r, k]] = *v;
        }
        k += 1;
    }
    Panel::with_names(y, x, names[resp_pos].clone(), x_names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_panel(t_raw: usize, m: usize, seed: u64) -> Panel {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y: Vec<f64> = (0..t_raw).map(|_| rng.random_range(-1.0..1.0)).collect();
        let x = Array2::from_shape_fn((t_raw, m), |_| rng.random_range(-1.0..1.0));
        Panel::new(y, x).unwrap()
    }

    #[test]
    fn index_map_matches_the_k_plus_l_minus_one_m_rule() {
        let panel = random_panel(40, 500, 7);
        let ds = build_lagged(&panel, 3, 0).unwrap();
        // Series #3 at lag 2 is column 503 in one-based terms.
        assert_eq!(ds.col_index(2, 2).unwrap(), 502);
        assert_eq!(ds.series_lag(502).unwrap(), (2, 2));
    }

    #[test]
    fn index_map_round_trips() {
        let panel = random_panel(30, 7, 1);
        let ds = build_lagged(&panel, 3, 0).unwrap();
        for j in 0..ds.p() {
            let (k, l) = ds.series_lag(j).unwrap();
            assert_eq!(ds.col_index(k, l).unwrap(), j);
        }
    }

    #[test]
    fn h1_alignment_shifts_by_one() {
        let panel = random_panel(10, 3, 2);
        let ds = build_lagged(&panel, 1, 0).unwrap();
        assert_eq!(ds.n_eff(), 9);
        assert_eq!(ds.p(), 3);
        for t in 0..9 {
            assert_eq!(ds.y_resp()[t], panel.y()[t + 1]);
            for k in 0..3 {
                assert_eq!(ds.z()[[t, k]], panel.x()[[t, k]]);
            }
        }
    }

    #[test]
    fn lag_and_horizon_alignment_matches_direct_lookup() {
        let panel = random_panel(60, 4, 3);
        let h = 3;
        let horizon = 6;
        let ds = build_lagged(&panel, h, horizon).unwrap();
        assert_eq!(ds.n_eff(), 60 - h - horizon);
        for t in 0..ds.n_eff() {
            assert_eq!(ds.y_resp()[t], panel.y()[t + h + horizon]);
            for l in 1..=h {
                assert_eq!(ds.y_lags()[[t, l - 1]], panel.y()[t + h - l]);
                for k in 0..4 {
                    let j = ds.col_index(k, l).unwrap();
                    assert_eq!(ds.z()[[t, j]], panel.x()[[t + h - l, k]]);
                }
            }
        }
    }

    #[test]
    fn too_short_panel_reports_the_minimum() {
        let panel = random_panel(10, 2, 4);
        match build_lagged(&panel, 3, 6) {
            Err(Error::TooFewSamples { needed, got }) => {
                assert_eq!(needed, 17);
                assert_eq!(got, 10);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cond_spec_for_lag_one_has_no_covariate_columns() {
        let spec = cond_pdcsis(0, 1, 3, 10).unwrap();
        assert_eq!(spec.resp_lags(), &[1, 2, 3]);
        assert!(spec.cov_cols().is_empty());
    }

    #[test]
    fn cond_spec_lists_own_lower_lags() {
        // Series #2 (index 1) at lag 3 with m = 10: own lags 1 and 2 are
        // columns 1 and 11.
        let spec = cond_pdcsis(1, 3, 3, 10).unwrap();
        assert_eq!(spec.cov_cols(), &[1, 11]);
        assert_eq!(spec.dim(), 3 + 2);
    }

    #[test]
    fn cond_spec_dimension_at_max_lag() {
        let h = 4;
        let spec = cond_pdcsis(5, h, h, 20).unwrap();
        assert_eq!(spec.dim(), h + (h - 1));
    }

    #[test]
    fn cond_spec_out_of_range_is_an_error() {
        assert!(cond_pdcsis(10, 1, 3, 10).is_err());
        assert!(cond_pdcsis(0, 4, 3, 10).is_err());
        assert!(cond_pdcsis(0, 0, 3, 10).is_err());
    }

    #[test]
    fn materialized_resp_block_is_sqrt_of_cached_base() {
        let panel = random_panel(30, 5, 5);
        let ds = build_lagged(&panel, 3, 0).unwrap();
        let cache = CondCache::new(&ds);
        let spec = cond_pdcsis(0, 1, 3, 5).unwrap();
        let d = cond_materialize(&ds, &spec, &cache).unwrap();
        for i in 0..ds.n_eff() {
            for j in 0..ds.n_eff() {
                assert_eq!(d.get(i, j), cache.base().get(i, j).sqrt());
            }
        }
    }

    #[test]
    fn cached_materialization_matches_naive_concatenation() {
        let panel = random_panel(40, 6, 6);
        let ds = build_lagged(&panel, 3, 0).unwrap();
        let cache = CondCache::new(&ds);
        let spec = CondSpec::new(vec![1, 2, 3], vec![0, 7, 4]);
        let fast = cond_materialize(&ds, &spec, &cache).unwrap();
        let naive = cond_materialize_naive(&ds, &spec).unwrap();
        for i in 0..ds.n_eff() {
            for j in 0..ds.n_eff() {
                assert!((fast.get(i, j) - naive.get(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn empty_spec_has_no_matrix() {
        let panel = random_panel(20, 3, 8);
        let ds = build_lagged(&panel, 2, 0).unwrap();
        let cache = CondCache::new(&ds);
        assert!(cond_materialize(&ds, &CondSpec::empty(), &cache).is_err());
    }

    #[test]
    fn duplicate_columns_are_deduplicated_on_push() {
        let mut spec = CondSpec::new(vec![1, 2], vec![3, 4]);
        spec.push_col(3);
        assert_eq!(spec.cov_cols(), &[3, 4]);

        // Bypassing deduplication must change the materialized distances:
        // the duplicate doubles that column's squared contribution.
        let panel = random_panel(25, 5, 9);
        let ds = build_lagged(&panel, 2, 0).unwrap();
        let deduped = cond_materialize_naive(&ds, &CondSpec::new(vec![1], vec![3])).unwrap();
        let duplicated = CondSpec { resp_lags: vec![1], cov_cols: vec![3, 3] };
        let doubled = cond_materialize_naive(&ds, &duplicated).unwrap();
        let mut differs = false;
        for i in 0..ds.n_eff() {
            for j in 0..ds.n_eff() {
                if (deduped.get(i, j) - doubled.get(i, j)).abs() > 1e-12 {
                    differs = true;
                }
            }
        }
        assert!(differs, "a genuinely duplicated column must change the distances");
    }

    #[test]
    fn csv_round_trip_with_time_index_and_response_by_name() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("panel.csv");
        let mut w = csv::Writer::from_path(&path).unwrap();
        w.write_record(["date", "gdp", "rate", "emp"]).unwrap();
        for t in 0..12 {
            w.write_record([
                format!("2001-{:02}", t + 1),
                format!("{}", t as f64 * 0.5),
                format!("{}", 1.0 - t as f64 * 0.1),
                format!("{}", (t as f64).sin()),
            ])
            .unwrap();
        }
        w.flush().unwrap();
        let panel = read_panel_csv(&path, &ResponseSelector::Name("rate".into())).unwrap();
        assert_eq!(panel.len(), 12);
        assert_eq!(panel.num_series(), 2);
        assert_eq!(panel.y_name(), "rate");
        assert_eq!(panel.x_names(), &["gdp".to_string(), "emp".to_string()]);
        assert!((panel.y()[3] - 0.7).abs() < 1e-12);
    }

    #[test]
    fn csv_missing_value_names_row_and_column() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("panel.csv");
        std::fs::write(&path, "a,b\n1.0,2.0\n3.0,\n").unwrap();
        match read_panel_csv(&path, &ResponseSelector::Name("a".into())) {
            Err(Error::MissingValue { row, column }) => {
                assert_eq!(row, 2);
                assert_eq!(column, "b");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn csv_unknown_response_lists_available_names() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("panel.csv");
        std::fs::write(&path, "a,b\n1.0,2.0\n").unwrap();
        match read_panel_csv(&path, &ResponseSelector::Name("zz".into())) {
            Err(Error::UnknownResponse { available, .. }) => {
                assert!(available.contains('a') && available.contains('b'));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
