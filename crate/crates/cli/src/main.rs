//! Command-line driver: `simulate` emits synthetic panels, `screen` ranks
//! the covariates of a CSV panel, `bench` replays a replication experiment
//! from a JSON config.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 replication-failure
//! budget exceeded.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pdcscreen::bench::{run_experiment, screen_csv, ExperimentConfig, SummaryTable};
use pdcscreen::dcor::EstimatorKind;
use pdcscreen::error::Error;
use pdcscreen::lagged::ResponseSelector;
use pdcscreen::screen::{ScreenConfig, ScreenMethod, Selection};
use pdcscreen::tsgen::{gen_model, gen_model6, DistChoice, ModelSpec, MODEL6_SERIES};

#[derive(Parser)]
#[command(
    name = "pdcscreen",
    about = "Partial-distance-correlation screening for high-dimensional time series",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic panel (models 1-6) as CSV plus a JSON sidecar
    /// with the seed and the ground-truth active set.
    Simulate {
        /// Benchmark design, 1-6.
        #[arg(long)]
        model: u8,
        /// Number of predictor series (model 6 is fixed at 500).
        #[arg(long, default_value_t = 500)]
        m: usize,
        /// Effective sample count after lagging.
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DistArg::Gaussian)]
        dist: DistArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Model 6 scenario (1 or 2).
        #[arg(long, default_value_t = 1)]
        scenario: u8,
        /// Model 6: use the alternating-sign innovation covariance.
        #[arg(long, default_value_t = false)]
        sigma_negative: bool,
        /// Output CSV path; the sidecar lands next to it as `<stem>.meta.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Screen a CSV panel and write the ranked covariates.
    Screen {
        #[arg(long)]
        input: PathBuf,
        /// Response column, by name or by zero-based index.
        #[arg(long)]
        response: String,
        /// Lag depth.
        #[arg(long)]
        h: usize,
        /// Forecast horizon: the response is shifted this many extra steps.
        #[arg(long, default_value_t = 0)]
        horizon: usize,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Estimator override (defaults to the method's own choice).
        #[arg(long, value_enum)]
        estimator: Option<EstimatorArg>,
        /// Selected sub-model size; default is ceil(n / ln n).
        #[arg(long)]
        top_d: Option<usize>,
        /// Seed for the PDC-SIS+ decoy threshold.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output base path; writes `<out>.csv` and `<out>.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a replication experiment from a JSON config.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// Worker threads (overrides the config; default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Gaussian,
    T5,
    T3,
}

impl From<DistArg> for DistChoice {
    fn from(d: DistArg) -> Self {
        match d {
            DistArg::Gaussian => DistChoice::Gaussian,
            DistArg::T5 => DistChoice::T5,
            DistArg::T3 => DistChoice::T3,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Sis,
    Dcsis,
    Pdcsis,
    #[value(name = "pdcsis-plus")]
    PdcsisPlus,
}

impl From<MethodArg> for ScreenMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Sis => ScreenMethod::Sis,
            MethodArg::Dcsis => ScreenMethod::Dcsis,
            MethodArg::Pdcsis => ScreenMethod::Pdcsis,
            MethodArg::PdcsisPlus => ScreenMethod::PdcsisPlus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EstimatorArg {
    V,
    U,
}

impl From<EstimatorArg> for EstimatorKind {
    fn from(e: EstimatorArg) -> Self {
        match e {
            EstimatorArg::V => EstimatorKind::VStatistic,
            EstimatorArg::U => EstimatorKind::UCentered,
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_REPLICATION_BUDGET: u8 = 3;

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successful exits.
            use clap::error::ErrorKind;
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ReplicationBudget { .. } => EXIT_REPLICATION_BUDGET,
        Error::InvalidParameter(_) => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Simulate { model, m, n, dist, seed, scenario, sigma_negative, out } => {
            simulate(model, m, n, dist.into(), seed, scenario, sigma_negative, &out)
        }
        Command::Screen { input, response, h, horizon, method, estimator, top_d, seed, out } => {
            let mut cfg = ScreenConfig::new(method.into());
            if let Some(e) = estimator {
                cfg.estimator = e.into();
            }
            if let Some(d) = top_d {
                cfg.selection = Selection::TopD(d);
            }
            let selector = match response.parse::<usize>() {
                Ok(idx) => ResponseSelector::Index(idx),
                Err(_) => ResponseSelector::Name(response),
            };
            let out_base = strip_known_extension(&out);
            let report = screen_csv(&input, &selector, h, horizon, &cfg, seed, &out_base)?;
            eprintln!(
                "screened {} covariates over {} samples; wrote {}.csv and {}.json",
                report.labels.len(),
                report.n_eff,
                out_base.display(),
                out_base.display()
            );
            Ok(())
        }
        Command::Bench { config, out_dir, threads } => bench(&config, &out_dir, threads),
    }
}

/// `--out results.csv` and `--out results` address the same pair of files.
fn strip_known_extension(path: &Path) -> PathBuf {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") | Some("json") => path.with_extension(""),
        _ => path.to_path_buf(),
    }
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    model: u8,
    m: usize,
    n: usize,
    dist: DistChoice,
    seed: u64,
    scenario: u8,
    sigma_negative: bool,
    out: &Path,
) -> Result<(), Error> {
    let csv_path =
        if out.extension().is_some() { out.to_path_buf() } else { out.with_extension("csv") };
    let meta_path = csv_path.with_extension("meta.json");
    if let Some(parent) = csv_path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let meta;
    if model == 6 {
        if m != MODEL6_SERIES {
            return Err(Error::InvalidParameter(format!(
                "model 6 is defined for m = {MODEL6_SERIES}; drop --m or set it to {MODEL6_SERIES}"
            )));
        }
        let (x, partition, truth) = gen_model6(scenario, sigma_negative, dist, n, seed)?;
        let mut w = csv::Writer::from_path(&csv_path)?;
        let names: Vec<String> = (1..=x.ncols()).map(|k| format!("x{k}")).collect();
        w.write_record(&names)?;
        for row in x.rows() {
            w.write_record(row.iter().map(|v| format!("{v}")))?;
        }
        w.flush()?;
        meta = serde_json::json!({
            "model": 6,
            "m": MODEL6_SERIES,
            "n": n,
            "h": 2,
            "dist": dist.name(),
            "seed": seed,
            "scenario": scenario,
            "sigma_negative": sigma_negative,
            "groups": (0..partition.e()).map(|g| partition.members(g).to_vec()).collect::<Vec<_>>(),
            "true_triples": truth,
        });
    } else {
        if scenario != 1 || sigma_negative {
            return Err(Error::InvalidParameter(
                "--scenario and --sigma-negative apply to model 6 only".into(),
            ));
        }
        let spec = ModelSpec::new(model, m, n, dist)?;
        let (panel, truth) = gen_model(&spec, seed)?;
        let mut w = csv::Writer::from_path(&csv_path)?;
        let mut header = vec!["y".to_string()];
        header.extend(panel.x_names().iter().cloned());
        w.write_record(&header)?;
        for (t, y) in panel.y().iter().enumerate() {
            let mut record = vec![format!("{y}")];
            record.extend(panel.x().row(t).iter().map(|v| format!("{v}")));
            w.write_record(&record)?;
        }
        w.flush()?;
        meta = serde_json::json!({
            "model": model,
            "m": m,
            "n": n,
            "h": spec.h,
            "dist": dist.name(),
            "seed": seed,
            "true_columns": truth,
            "column_rule": "column (l-1)*m + k is series k (zero-based) at lag l",
        });
    }
    let mut f = std::fs::File::create(&meta_path)?;
    serde_json::to_writer_pretty(&mut f, &meta)?;
    f.write_all(b"\n")?;
    eprintln!("wrote {} and {}", csv_path.display(), meta_path.display());
    Ok(())
}

fn bench(config: &Path, out_dir: &Path, threads: Option<usize>) -> Result<(), Error> {
    let mut cfg = ExperimentConfig::from_json_file(config)?;
    if threads.is_some() {
        cfg.parallelism = threads;
    }
    let table = match cfg.parallelism {
        Some(workers) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            pool.install(|| run_experiment(&cfg))?
        }
        None => run_experiment(&cfg)?,
    };
    pdcscreen::bench::write_outputs(&table, &cfg, out_dir)?;
    print_summary(&table);
    eprintln!(
        "completed {}/{} replications in {:.1?}; results in {}",
        table.reps_completed,
        table.reps_requested,
        table.runtime,
        out_dir.display()
    );
    Ok(())
}

fn print_summary(table: &SummaryTable) {
    println!("median minimum model size over {} replications:", table.reps_completed);
    for m in &table.methods {
        println!("  {:<14} {:>8.1}", m.label, m.median_mms);
    }
}
