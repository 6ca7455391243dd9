//! Deterministic replication harness: seeded experiments, paired method
//! comparisons, and median summaries.
//!
//! Every replication derives its own seed from the master seed and the
//! replication index, so results are independent of execution order and
//! worker count. All methods within a replication see the same generated
//! panel, which makes method comparisons paired. Summaries use the midpoint
//! median (average of the two central order statistics for even counts).
//!
//! Output files never contain wall-clock timings or worker counts: rerunning
//! the same configuration at any parallelism level writes byte-identical
//! files.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dcor::EstimatorKind;
use crate::error::{Error, Result};
use crate::lagged::{build_lagged, read_panel_csv, LaggedDataset, Panel, ResponseSelector};
use crate::screen::{
    group_dcsis_stats, group_pdcsis_stats, mms, ranks_of, run_univariate, GroupScreenResult,
    GroupTriple, ScreenConfig, ScreenMethod, ScreenResult, Selection,
};
use crate::tsgen::{DistChoice, GeneratedData, ModelSpec, PreparedModel};

/// Mixes a master seed and an index into an independent 64-bit stream seed
/// (splitmix64 finalizer over a golden-ratio offset). Distinct indices give
/// distinct, order-independent streams.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Where a replication's data comes from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DataSource {
    /// One of the six synthetic designs.
    Model {
        model: u8,
        #[serde(default = "default_m")]
        m: usize,
        #[serde(default = "default_n")]
        n: usize,
        #[serde(default = "default_dist")]
        dist: DistChoice,
        /// Model 6 only.
        #[serde(default = "default_scenario")]
        scenario: u8,
        /// Model 6 only: alternate-sign innovation covariance.
        #[serde(default)]
        sigma_negative: bool,
        /// Model 1 only: linear coefficients (defaults to six ones).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        beta: Option<Vec<f64>>,
    },
    /// A fixed CSV panel; requires the ground-truth column set for MMS.
    Csv {
        path: PathBuf,
        response: String,
        #[serde(default)]
        horizon: usize,
        true_columns: Vec<usize>,
    },
}

fn default_m() -> usize {
    500
}
fn default_n() -> usize {
    200
}
fn default_dist() -> DistChoice {
    DistChoice::Gaussian
}
fn default_scenario() -> u8 {
    1
}

/// One screening method inside an experiment; unset fields fall back to the
/// method defaults.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MethodConfig {
    pub method: ScreenMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimator: Option<EstimatorKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top_d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoy_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoy_ar: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decoy_quantile: Option<f64>,
}

impl MethodConfig {
    pub fn of(method: ScreenMethod) -> Self {
        MethodConfig {
            method,
            estimator: None,
            top_d: None,
            threshold: None,
            plus_cap: None,
            decoy_count: None,
            decoy_ar: None,
            decoy_quantile: None,
        }
    }

    pub fn resolve(&self) -> Result<ScreenConfig> {
        let mut cfg = ScreenConfig::new(self.method);
        if let Some(e) = self.estimator {
            cfg.estimator = e;
        }
        match (self.top_d, self.threshold) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidParameter(
                    "give either top_d or threshold, not both".into(),
                ))
            }
            (Some(d), None) => cfg.selection = Selection::TopD(d),
            (None, Some(t)) => cfg.selection = Selection::Threshold(t),
            (None, None) => {}
        }
        cfg.plus_cap = self.plus_cap;
        if let Some(c) = self.decoy_count {
            cfg.decoy_count = c;
        }
        if let Some(a) = self.decoy_ar {
            cfg.decoy_ar = a;
        }
        if let Some(q) = self.decoy_quantile {
            cfg.decoy_quantile = q;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Display label; annotates the estimator when it overrides the default.
    pub fn label(&self) -> String {
        match self.estimator {
            Some(e) if e != self.method.default_estimator() => {
                let tag = match e {
                    EstimatorKind::VStatistic => "v",
                    EstimatorKind::UCentered => "u",
                };
                format!("{}[{tag}]", self.method.name())
            }
            _ => self.method.name().to_string(),
        }
    }
}

/// Full experiment description. `parallelism` steers execution only and is
/// excluded from config echoes so output files stay byte-identical across
/// worker counts.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub data: DataSource,
    /// Lag depth; defaults to 3 for models 1-5, 2 for model 6, and is
    /// required for CSV sources.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    pub reps: usize,
    pub master_seed: u64,
    pub methods: Vec<MethodConfig>,
    #[serde(default, skip_serializing)]
    pub parallelism: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Per-method aggregate over completed replications.
#[derive(Debug, Clone, Serialize)]
pub struct MethodSummary {
    pub label: String,
    pub median_mms: f64,
    /// Median rank per ground-truth item, keyed by item label.
    pub true_ranks: Vec<(String, f64)>,
}

/// Aggregated experiment outcome.
#[derive(Debug, Clone)]
pub struct SummaryTable {
    pub methods: Vec<MethodSummary>,
    pub reps_requested: usize,
    pub reps_completed: usize,
    pub reps_failed: usize,
    /// Wall-clock duration; reported to the console, never written to files.
    pub runtime: Duration,
}

/// Midpoint median: mean of the two central order statistics for even
/// counts.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of empty sample");
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

enum SourceRuntime {
    Model(Box<PreparedModel>),
    Csv { panel: Panel, horizon: usize, true_cols: Vec<usize>, h: usize },
}

struct MethodRepStats {
    mms: usize,
    true_ranks: Vec<usize>,
}

fn group_rep_stats(result: &GroupScreenResult, truth: &[GroupTriple]) -> Result<MethodRepStats> {
    if truth.is_empty() {
        return Err(Error::EmptyTrueSet);
    }
    let indices: Vec<usize> = truth
        .iter()
        .map(|t| {
            result
                .triples
                .iter()
                .position(|c| c == t)
                .ok_or(Error::InvalidParameter(format!("triple {t} is not a candidate")))
        })
        .collect::<Result<_>>()?;
    let ranks = ranks_of(&result.ranking, &indices)?;
    Ok(MethodRepStats { mms: *ranks.iter().max().unwrap(), true_ranks: ranks })
}

fn univariate_rep_stats(result: &ScreenResult, true_cols: &[usize]) -> Result<MethodRepStats> {
    let ranks = ranks_of(&result.ranking, true_cols)?;
    Ok(MethodRepStats { mms: mms(&result.ranking, true_cols)?, true_ranks: ranks })
}

/// Runs every replication, scores every method on the shared panel, and
/// aggregates midpoint medians. Replication failures abort that replication
/// only; more than 5% of them fail the whole run.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<SummaryTable> {
    let start = Instant::now();
    if cfg.reps < 1 {
        return Err(Error::InvalidParameter("reps must be at least 1".into()));
    }
    if cfg.methods.is_empty() {
        return Err(Error::InvalidParameter("at least one method is required".into()));
    }
    let screen_cfgs: Vec<ScreenConfig> =
        cfg.methods.iter().map(|mc| mc.resolve()).collect::<Result<_>>()?;

    let source = build_source(cfg)?;
    let is_group = match &source {
        SourceRuntime::Model(p) => p.spec().is_group(),
        SourceRuntime::Csv { .. } => false,
    };
    for sc in &screen_cfgs {
        if sc.method.is_group() != is_group {
            return Err(Error::InvalidParameter(format!(
                "method {} does not match the data source ({} response)",
                sc.method.name(),
                if is_group { "grouped" } else { "univariate" }
            )));
        }
    }

    let item_labels = truth_labels(&source)?;
    let outcomes: Vec<Result<Vec<MethodRepStats>>> = (0..cfg.reps as u64)
        .into_par_iter()
        .map(|rep| run_replication(&source, &screen_cfgs, derive_seed(cfg.master_seed, rep)))
        .collect();

    let mut completed: Vec<Vec<MethodRepStats>> = Vec::with_capacity(cfg.reps);
    let mut failed = 0usize;
    for outcome in outcomes {
        match outcome {
            Ok(stats) => completed.push(stats),
            Err(err) => {
                failed += 1;
                log::warn!("replication failed: {err}");
            }
        }
    }
    if failed * 20 > cfg.reps {
        return Err(Error::ReplicationBudget { failed, total: cfg.reps });
    }
    if completed.is_empty() {
        return Err(Error::ReplicationBudget { failed, total: cfg.reps });
    }

    let mut methods = Vec::with_capacity(cfg.methods.len());
    for (mi, mc) in cfg.methods.iter().enumerate() {
        let mms_values: Vec<f64> = completed.iter().map(|r| r[mi].mms as f64).collect();
        let mut true_ranks = Vec::with_capacity(item_labels.len());
        for (ti, label) in item_labels.iter().enumerate() {
            let ranks: Vec<f64> =
                completed.iter().map(|r| r[mi].true_ranks[ti] as f64).collect();
            true_ranks.push((label.clone(), median(&ranks)));
        }
        methods.push(MethodSummary { label: mc.label(), median_mms: median(&mms_values), true_ranks });
    }
    Ok(SummaryTable {
        methods,
        reps_requested: cfg.reps,
        reps_completed: completed.len(),
        reps_failed: failed,
        runtime: start.elapsed(),
    })
}

fn build_source(cfg: &ExperimentConfig) -> Result<SourceRuntime> {
    match &cfg.data {
        DataSource::Model { model, m, n, dist, scenario, sigma_negative, beta } => {
            let mut spec = ModelSpec::new(*model, *m, *n, *dist)?;
            spec.scenario = *scenario;
            spec.sigma_negative = *sigma_negative;
            if let Some(beta) = beta {
                if beta.len() != 6 {
                    return Err(Error::InvalidParameter(
                        "model 1 takes exactly six beta coefficients".into(),
                    ));
                }
                spec.beta = beta.clone();
            }
            if let Some(h) = cfg.h {
                spec.h = h;
            }
            Ok(SourceRuntime::Model(Box::new(PreparedModel::new(spec)?)))
        }
        DataSource::Csv { path, response, horizon, true_columns } => {
            if true_columns.is_empty() {
                return Err(Error::InvalidParameter(
                    "CSV experiments need true_columns for the MMS metric".into(),
                ));
            }
            let selector = match response.parse::<usize>() {
                Ok(idx) => ResponseSelector::Index(idx),
                Err(_) => ResponseSelector::Name(response.clone()),
            };
            let panel = read_panel_csv(path, &selector)?;
            let h = cfg.h.ok_or_else(|| {
                Error::InvalidParameter("CSV experiments must set the lag depth h".into())
            })?;
            Ok(SourceRuntime::Csv { panel, horizon: *horizon, true_cols: true_columns.clone(), h })
        }
    }
}

fn truth_labels(source: &SourceRuntime) -> Result<Vec<String>> {
    match source {
        SourceRuntime::Model(prepared) => {
            let spec = prepared.spec();
            if spec.is_group() {
                Ok(spec.true_triples().iter().map(|t| t.to_string()).collect())
            } else {
                let m = spec.m;
                spec.true_columns()
                    .iter()
                    .map(|&j| {
                        let (k, l) = (j % m, j / m + 1);
                        Ok(format!("x{}[t-{l}]", k + 1))
                    })
                    .collect()
            }
        }
        SourceRuntime::Csv { panel, true_cols, h, .. } => {
            let m = panel.num_series();
            true_cols
                .iter()
                .map(|&j| {
                    if j >= m * h {
                        return Err(Error::ColumnOutOfRange { index: j, p: m * h });
                    }
                    let (k, l) = (j % m, j / m + 1);
                    Ok(format!("{}[t-{l}]", panel.x_names()[k]))
                })
                .collect()
        }
    }
}

fn run_replication(
    source: &SourceRuntime,
    screen_cfgs: &[ScreenConfig],
    rep_seed: u64,
) -> Result<Vec<MethodRepStats>> {
    let panel_seed = derive_seed(rep_seed, 0);
    let method_seed = derive_seed(rep_seed, 1);
    match source {
        SourceRuntime::Model(prepared) => match prepared.generate(panel_seed)? {
            GeneratedData::Univariate { panel, true_cols } => {
                let ds = build_lagged(&panel, prepared.spec().h, 0)?;
                screen_all_univariate(&ds, screen_cfgs, method_seed, &true_cols)
            }
            GeneratedData::Multivariate { x, partition, true_triples } => screen_cfgs
                .iter()
                .map(|sc| {
                    let result = match sc.method {
                        ScreenMethod::GroupPdcsis => group_pdcsis_stats(
                            &x.view(),
                            &partition,
                            prepared.spec().h,
                            sc.estimator,
                            sc.selection,
                        )?,
                        ScreenMethod::GroupDcsis => group_dcsis_stats(
                            &x.view(),
                            &partition,
                            prepared.spec().h,
                            sc.estimator,
                            sc.selection,
                        )?,
                        other => {
                            return Err(Error::InvalidParameter(format!(
                                "{} cannot run on grouped data",
                                other.name()
                            )))
                        }
                    };
                    group_rep_stats(&result, &true_triples)
                })
                .collect(),
        },
        SourceRuntime::Csv { panel, horizon, true_cols, h } => {
            let ds = build_lagged(panel, *h, *horizon)?;
            screen_all_univariate(&ds, screen_cfgs, method_seed, true_cols)
        }
    }
}

fn screen_all_univariate(
    ds: &LaggedDataset,
    screen_cfgs: &[ScreenConfig],
    method_seed: u64,
    true_cols: &[usize],
) -> Result<Vec<MethodRepStats>> {
    screen_cfgs
        .iter()
        .map(|sc| {
            let result = run_univariate(ds, sc, method_seed)?;
            univariate_rep_stats(&result, true_cols)
        })
        .collect()
}

/// SHA-256 provenance hash over the echoed configuration and, for CSV
/// sources, the raw input bytes.
pub fn content_hash(cfg: &ExperimentConfig) -> Result<String> {
    let mut hasher = Sha256::new();
    hasher.update(serde_json::to_vec(cfg)?);
    if let DataSource::Csv { path, .. } = &cfg.data {
        hasher.update(std::fs::read(path)?);
    }
    let digest = hasher.finalize();
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok(format!("sha256:{hex}"))
}

/// Writes `summary.txt`, `summary.csv`, and `summary.json` under `out_dir`.
/// File contents depend only on the configuration, master seed, and input
/// data.
pub fn write_outputs(table: &SummaryTable, cfg: &ExperimentConfig, out_dir: &Path) -> Result<()> {
    std::fs::create_dir_all(out_dir)?;

    let mut txt = String::new();
    txt.push_str(&format!(
        "replications: {} requested, {} completed, {} failed\n",
        table.reps_requested, table.reps_completed, table.reps_failed
    ));
    txt.push_str("ranking ties break by ascending column index\n\n");
    txt.push_str("median minimum model size\n");
    let width = table.methods.iter().map(|m| m.label.len()).max().unwrap_or(6).max(6);
    for m in &table.methods {
        txt.push_str(&format!("  {:<width$}  {:>8.1}\n", m.label, m.median_mms));
    }
    if table.methods.iter().any(|m| !m.true_ranks.is_empty()) {
        txt.push_str("\nmedian rank of ground-truth items\n");
        let item_width = table.methods[0]
            .true_ranks
            .iter()
            .map(|(l, _)| l.len())
            .max()
            .unwrap_or(4)
            .max(4);
        txt.push_str(&format!("  {:<item_width$}", "item"));
        for m in &table.methods {
            txt.push_str(&format!("  {:>width$}", m.label));
        }
        txt.push('\n');
        for ti in 0..table.methods[0].true_ranks.len() {
            txt.push_str(&format!("  {:<item_width$}", table.methods[0].true_ranks[ti].0));
            for m in &table.methods {
                txt.push_str(&format!("  {:>width$.1}", m.true_ranks[ti].1));
            }
            txt.push('\n');
        }
    }
    std::fs::write(out_dir.join("summary.txt"), txt)?;

    let mut csv_out = csv::Writer::from_path(out_dir.join("summary.csv"))?;
    csv_out.write_record(["method", "quantity", "item", "value"])?;
    for m in &table.methods {
        csv_out.write_record([&m.label, "median_mms", "", &format!("{}", m.median_mms)])?;
        for (item, rank) in &m.true_ranks {
            csv_out.write_record([&m.label, "median_rank", item, &format!("{rank}")])?;
        }
    }
    csv_out.flush()?;

    let json = serde_json::json!({
        "config": cfg,
        "input_hash": content_hash(cfg)?,
        "reps_requested": table.reps_requested,
        "reps_completed": table.reps_completed,
        "reps_failed": table.reps_failed,
        "tie_break": "descending |stat|, ties by ascending column index",
        "methods": table.methods.iter().map(|m| {
            serde_json::json!({
                "label": m.label,
                "median_mms": m.median_mms,
                "true_ranks": m.true_ranks.iter().cloned().collect::<BTreeMap<String, f64>>(),
            })
        }).collect::<Vec<_>>(),
    });
    let mut file = std::fs::File::create(out_dir.join("summary.json"))?;
    serde_json::to_writer_pretty(&mut file, &json)?;
    file.write_all(b"\n")?;
    Ok(())
}

/// Ranked covariates of one screening run on a CSV panel.
#[derive(Debug, Clone)]
pub struct ScreenReport {
    pub result: ScreenResult,
    /// `(series name, lag)` per covariate column.
    pub labels: Vec<(String, usize)>,
    pub n_eff: usize,
}

/// Screens a CSV panel and writes the ranked covariates plus the selected
/// set as `<out_base>.csv` and `<out_base>.json`.
pub fn screen_csv(
    input: &Path,
    response: &ResponseSelector,
    h: usize,
    horizon: usize,
    cfg: &ScreenConfig,
    seed: u64,
    out_base: &Path,
) -> Result<ScreenReport> {
    let panel = read_panel_csv(input, response)?;
    let ds = build_lagged(&panel, h, horizon)?;
    let result = run_univariate(&ds, cfg, seed)?;
    let labels: Vec<(String, usize)> = (0..ds.p())
        .map(|j| {
            let (k, l) = ds.series_lag(j).expect("j < p");
            (ds.x_names()[k].clone(), l)
        })
        .collect();

    let csv_path = out_base.with_extension("csv");
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["rank", "series", "lag", "column", "statistic", "selected"])?;
    let selected: std::collections::HashSet<usize> = result.selected.iter().copied().collect();
    for (pos, &j) in result.ranking.iter().enumerate() {
        let (name, lag) = &labels[j];
        w.write_record([
            &format!("{}", pos + 1),
            name,
            &format!("{lag}"),
            &format!("{j}"),
            &format!("{}", result.stats[j]),
            &format!("{}", selected.contains(&j)),
        ])?;
    }
    w.flush()?;

    let json = serde_json::json!({
        "input": input.display().to_string(),
        "response": panel.y_name(),
        "method": cfg.method.name(),
        "estimator": cfg.estimator,
        "h": h,
        "horizon": horizon,
        "n_eff": ds.n_eff(),
        "tie_break": "descending |stat|, ties by ascending column index",
        "threshold_used": result.threshold_used,
        "selected": result.selected.iter().map(|&j| {
            let (name, lag) = &labels[j];
            serde_json::json!({ "column": j, "series": name, "lag": lag, "statistic": result.stats[j] })
        }).collect::<Vec<_>>(),
        "ranking": result.ranking.iter().enumerate().map(|(pos, &j)| {
            let (name, lag) = &labels[j];
            serde_json::json!({
                "rank": pos + 1, "column": j, "series": name, "lag": lag,
                "statistic": result.stats[j],
            })
        }).collect::<Vec<_>>(),
    });
    let json_path = out_base.with_extension("json");
    let mut file = std::fs::File::create(&json_path)?;
    serde_json::to_writer_pretty(&mut file, &json)?;
    file.write_all(b"\n")?;

    Ok(ScreenReport { result, labels, n_eff: ds.n_eff() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_seeds_are_reproducible_and_distinct() {
        assert_eq!(derive_seed(42, 7), derive_seed(42, 7));
        let mut rng_seed = 0x1234_5678_u64;
        for _ in 0..1000 {
            rng_seed = derive_seed(rng_seed, 3);
            assert_ne!(derive_seed(rng_seed, 0), derive_seed(rng_seed, 1));
        }
    }

    #[test]
    fn median_uses_the_midpoint_rule() {
        assert_eq!(median(&[3.0]), 3.0);
        assert_eq!(median(&[1.0, 2.0]), 1.5);
        assert_eq!(median(&[5.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 100.0]), 3.0);
    }

    #[test]
    fn single_replication_medians_equal_that_replication() {
        let cfg = ExperimentConfig {
            data: DataSource::Model {
                model: 5,
                m: 8,
                n: 60,
                dist: DistChoice::Gaussian,
                scenario: 1,
                sigma_negative: false,
                beta: None,
            },
            h: None,
            reps: 1,
            master_seed: 9,
            methods: vec![MethodConfig::of(ScreenMethod::Sis)],
            parallelism: None,
        };
        let table = run_experiment(&cfg).unwrap();
        assert_eq!(table.reps_completed, 1);
        assert_eq!(table.methods.len(), 1);
        assert!(table.methods[0].median_mms >= 4.0);
        assert_eq!(table.methods[0].median_mms.fract(), 0.0);
    }

    #[test]
    fn identical_methods_get_identical_medians() {
        let cfg = ExperimentConfig {
            data: DataSource::Model {
                model: 5,
                m: 8,
                n: 60,
                dist: DistChoice::Gaussian,
                scenario: 1,
                sigma_negative: false,
                beta: None,
            },
            h: None,
            reps: 3,
            master_seed: 4,
            methods: vec![MethodConfig::of(ScreenMethod::Dcsis), MethodConfig::of(ScreenMethod::Dcsis)],
            parallelism: None,
        };
        let table = run_experiment(&cfg).unwrap();
        assert_eq!(table.methods[0].median_mms, table.methods[1].median_mms);
        assert_eq!(table.methods[0].true_ranks, table.methods[1].true_ranks);
    }

    #[test]
    fn adding_a_method_leaves_other_summaries_unchanged() {
        let base = ExperimentConfig {
            data: DataSource::Model {
                model: 2,
                m: 10,
                n: 60,
                dist: DistChoice::Gaussian,
                scenario: 1,
                sigma_negative: false,
                beta: None,
            },
            h: None,
            reps: 4,
            master_seed: 11,
            methods: vec![MethodConfig::of(ScreenMethod::Sis)],
            parallelism: None,
        };
        let solo = run_experiment(&base).unwrap();
        let mut extended = base.clone();
        extended.methods.push(MethodConfig::of(ScreenMethod::Dcsis));
        let both = run_experiment(&extended).unwrap();
        assert_eq!(solo.methods[0].median_mms, both.methods[0].median_mms);
        assert_eq!(solo.methods[0].true_ranks, both.methods[0].true_ranks);
    }

    #[test]
    fn group_methods_reject_univariate_sources() {
        let cfg = ExperimentConfig {
            data: DataSource::Model {
                model: 2,
                m: 10,
                n: 60,
                dist: DistChoice::Gaussian,
                scenario: 1,
                sigma_negative: false,
                beta: None,
            },
            h: None,
            reps: 1,
            master_seed: 1,
            methods: vec![MethodConfig::of(ScreenMethod::GroupPdcsis)],
            parallelism: None,
        };
        assert!(run_experiment(&cfg).is_err());
    }
}
