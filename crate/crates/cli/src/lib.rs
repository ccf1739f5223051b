//! Command-line harness: argument parsing, configuration, and the
//! subcommands that drive the `altmodel` library.

pub mod config;
pub mod output;
pub mod verify;

use std::path::PathBuf;

use altmodel::calibration::{period_bound_scan, CalibrationError};
use altmodel::counting::{count_alternating_by_rank, fit_counting_exponent, CountingError, Norm, Statistic, DEFAULT_ENUMERATION_CAP};
use altmodel::groups::{cl_measure, delaunay_measure, groups_up_to, symplectic_groups_up_to, AbelianPGroup, SymplecticPGroup, DEFAULT_BRUTE_FORCE_CAP};
use altmodel::model::{empirical_cl_distribution, empirical_sha_distribution, predicted_table, rank_survey, EmpiricalDistribution, ModelError};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

pub use config::{load_config, RunConfig};
pub use output::{Outputs, RunManifest};
pub use verify::{run_suite, Suite, SuiteReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error(transparent)]
    Calibration(#[from] CalibrationError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Parser)]
#[command(name = "altmodel", version, about = "Random alternating-matrix model: simulations and exact checks")]
pub struct Cli {
    /// TOML config, or a JSON run manifest to replay.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, env = "ALTMODEL_OUT", default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatisticArg {
    Exactly,
    AtMost,
    CorankFraction,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Proxy-rank survey over the configured height grid.
    Simulate,
    /// Distribution of p-parts of alternating cokernels of fixed corank.
    ShaDist {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        x: u64,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Distribution of p-parts of cokernels of uniform p-adic matrices.
    ClDist {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 8)]
        k: u32,
    },
    /// Exact rank histograms and a log-log fit.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "box")]
        norm: String,
        #[arg(long, value_delimiter = ',', required = true)]
        bounds: Vec<u64>,
        #[arg(long, value_enum, default_value = "exactly")]
        statistic: StatisticArg,
        #[arg(long, default_value_t = 20)]
        min_count: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Exact identity and reproduction checks.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Normalized real periods over sampled curves.
    PeriodScan {
        #[arg(long, default_value_t = 10_000)]
        h_lo: u128,
        #[arg(long, default_value_t = 10_000_000_000)]
        h_hi: u128,
    },
    /// Closed-form rank percentages.
    PredictedTable {
        #[arg(long, value_delimiter = ',', default_value = "1e10,1e11,1e12,1e13,1e14,1e15")]
        heights: Vec<f64>,
    },
    /// Prints the effective configuration as TOML.
    PrintConfig,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::ShaDist { .. } => "sha-dist",
            Command::ClDist { .. } => "cl-dist",
            Command::Count { .. } => "count",
            Command::Verify { .. } => "verify",
            Command::PeriodScan { .. } => "period-scan",
            Command::PredictedTable { .. } => "predicted-table",
            Command::PrintConfig => "print-config",
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            Command::Simulate => "rank-exponent",
            Command::ShaDist { .. } => "conditioned-sha",
            Command::ClDist { .. } => "cohen-lenstra",
            Command::Count { .. } => "counting-exponent",
            Command::Verify { .. } => "exact-identities",
            Command::PeriodScan { .. } => "period-bounds",
            Command::PredictedTable { .. } => "predicted-table",
            Command::PrintConfig => "config",
        }
    }
}

/// Result of a command that ran to completion.
pub struct Outcome {
    pub stdout: String,
    pub outputs: Outputs,
    /// False when a verification check failed.
    pub passed: bool,
}

#[derive(Serialize)]
struct DistRow {
    label: String,
    count: u64,
    frequency: f64,
    predicted: f64,
}

#[derive(Serialize)]
struct DistReport {
    total: u64,
    counts: std::collections::BTreeMap<String, u64>,
    rows: Vec<DistRow>,
    predicted_mass: f64,
    /// Half the l1 distance over the listed labels.
    total_variation: f64,
}

fn compare(dist: &EmpiricalDistribution<String>, support: Vec<String>, predict: impl Fn(&str) -> f64) -> DistReport {
    let mut labels: Vec<String> = support;
    labels.extend(dist.counts.keys().cloned());
    labels.sort_by_cached_key(|l| {
        let g = l.parse::<AbelianPGroup>().ok();
        (g.as_ref().map(AbelianPGroup::log_order), g.map(|g| g.lambda().to_vec()), l.clone())
    });
    labels.dedup();
    let rows: Vec<DistRow> = labels
        .into_iter()
        .map(|label| DistRow {
            count: dist.count(&label),
            frequency: dist.frequency(&label),
            predicted: predict(&label),
            label,
        })
        .collect();
    let predicted_mass = rows.iter().map(|r| r.predicted).sum();
    let tv = 0.5 * rows.iter().map(|r| (r.frequency - r.predicted).abs()).sum::<f64>();
    DistReport {
        total: dist.total,
        counts: dist.counts.clone(),
        predicted_mass,
        total_variation: tv.min(1.0),
        rows,
    }
}

fn render_dist(title: &str, r: &DistReport) -> String {
    let mut s = format!("{title}: {} samples\n{:<24} {:>10} {:>10} {:>10}\n", r.total, "group", "count", "freq", "predicted");
    for row in &r.rows {
        s += &format!("{:<24} {:>10} {:>10.5} {:>10.5}\n", row.label, row.count, row.frequency, row.predicted);
    }
    s += &format!("predicted mass on listed groups {:.5}; total variation {:.5}\n", r.predicted_mass, r.total_variation);
    s
}

/// Runs `cli` to completion without touching the filesystem.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(n) = cli.samples {
        cfg.samples_per_point = n;
    }
    let model = cfg.model()?;
    let seed = cfg.seed;
    let samples = cli.samples;
    let mut out = Outputs::default();
    let mut stdout = String::new();
    let mut passed = true;

    match &cli.command {
        Command::Simulate => {
            let grid = cfg.h_grid()?;
            let survey = rank_survey(&grid, model.samples_per_point, &model)?;
            out.csv("survey.csv", &survey.records)?;
            out.json("fits.json", &survey.fits)?;
            stdout += "h_lo,h_hi,r,samples,hits,p_hat,stderr\n";
            for r in &survey.records {
                stdout += &format!("{},{},{},{},{},{:.6},{:.6}\n", r.h_lo, r.h_hi, r.r, r.samples, r.hits, r.p_hat, r.stderr);
            }
            for f in &survey.fits {
                stdout += &format!("slope r>={}: {:.5} (target {:.5})\n", f.r, f.fit.slope, f.target);
            }
        }
        Command::ShaDist { n, x, r, p } => {
            let samples = samples.unwrap_or(10_000);
            let dist = empirical_sha_distribution(*n, *x, *r, *p, samples, seed)?;
            let support = symplectic_groups_up_to(*p, 3)
                .map_err(|e| CliError::Config(e.to_string()))?
                .iter()
                .map(SymplecticPGroup::label)
                .collect();
            let report = compare(&dist, support, |label| {
                label
                    .parse::<AbelianPGroup>()
                    .ok()
                    .and_then(|g| SymplecticPGroup::from_underlying(&g).ok())
                    .map_or(0.0, |s| delaunay_measure(&s, *r as u32, 1e-12, DEFAULT_BRUTE_FORCE_CAP).value)
            });
            stdout += &render_dist(&format!("sha-dist n={n} x={x} r={r} p={p}"), &report);
            out.json("sha_dist.json", &report)?;
        }
        Command::ClDist { n, p, k } => {
            let samples = samples.unwrap_or(10_000);
            let dist = empirical_cl_distribution(*n, *p, *k, samples, seed)?;
            let support = groups_up_to(*p, 3)
                .map_err(|e| CliError::Config(e.to_string()))?
                .iter()
                .map(AbelianPGroup::label)
                .collect();
            let report = compare(&dist, support, |label| {
                label.parse::<AbelianPGroup>().map_or(0.0, |g| cl_measure(&g, 1e-12).value)
            });
            stdout += &render_dist(&format!("cl-dist n={n} p={p} k={k}"), &report);
            out.json("cl_dist.json", &report)?;
        }
        Command::Count {
            n,
            r,
            norm,
            bounds,
            statistic,
            min_count,
            cap,
        } => {
            let norm: Norm = norm.parse()?;
            #[derive(Serialize)]
            struct Row {
                n: usize,
                norm: &'static str,
                bound: u64,
                rank: usize,
                count: u64,
            }
            let mut rows = Vec::new();
            for &b in bounds {
                let h = count_alternating_by_rank(*n, b, norm, *cap)?;
                for (&rank, &count) in &h.counts {
                    rows.push(Row {
                        n: *n,
                        norm: norm.name(),
                        bound: b,
                        rank,
                        count,
                    });
                }
            }
            let stat = match statistic {
                StatisticArg::Exactly => Statistic::RankExactly(*r),
                StatisticArg::AtMost => Statistic::RankAtMost(*r),
                StatisticArg::CorankFraction => Statistic::CorankFractionAtLeast(*r),
            };
            let fit = fit_counting_exponent(*n, stat, bounds, norm, *min_count, *cap)?;
            out.csv("counts.csv", &rows)?;
            out.json("count_fit.json", &fit)?;
            stdout += &format!(
                "n={n} norm={} {statistic:?} r={r}: slope {:.4} (r^2 {:.4}) over {} bounds, skipped {:?}\n",
                norm.name(),
                fit.fit.slope,
                fit.fit.r_squared,
                fit.rows.len(),
                fit.skipped
            );
        }
        Command::Verify { suite } => {
            let samples = samples.unwrap_or(1_000);
            let reports: Vec<SuiteReport> = suite.expand().into_iter().map(|s| run_suite(s, samples, seed)).collect();
            for r in &reports {
                stdout += &r.summary();
                passed &= r.passed;
            }
            out.json("verify.json", &reports)?;
        }
        Command::PeriodScan { h_lo, h_hi } => {
            let samples = samples.unwrap_or(1_000);
            let scan = period_bound_scan(*h_lo, *h_hi, samples, seed)?;
            out.csv("period_scan.csv", &scan.rows)?;
            let summary = json!({
                "samples": scan.rows.len(),
                "min": scan.min,
                "q10": scan.q10,
                "median": scan.median,
                "q90": scan.q90,
                "max": scan.max,
                "max_over_log_h": scan.max_over_log,
            });
            out.json("period_summary.json", &summary)?;
            stdout += &format!(
                "normalized period over {} curves: min {:.5} q10 {:.5} median {:.5} q90 {:.5} max {:.5}; max / ln H {:.5}\n",
                scan.rows.len(),
                scan.min,
                scan.q10,
                scan.median,
                scan.q90,
                scan.max,
                scan.max_over_log
            );
        }
        Command::PredictedTable { heights } => {
            let rows = predicted_table(heights);
            out.csv("predicted_table.csv", &rows)?;
            stdout += &format!("{:<8} {:>6} {:>6} {:>6} {:>6}\n", "H", "0", "1", ">=2", ">=3");
            for r in &rows {
                let [a, b, c, d] = r.percentages();
                stdout += &format!("{:<8.0e} {a:>6.1} {b:>6.1} {c:>6.1} {d:>6.1}\n", r.h);
            }
        }
        Command::PrintConfig => {
            stdout += &cfg.to_toml();
            return Ok(Outcome {
                stdout,
                outputs: out,
                passed,
            });
        }
    }

    let manifest = RunManifest {
        command: cli.command.name().to_string(),
        tag: cli.command.tag().to_string(),
        version: altmodel::VERSION.to_string(),
        csv_schema: output::CSV_SCHEMA_VERSION,
        seed: Some(seed),
        schedule: Some(model.eta_schedule.name().to_string()),
        timestamp: output::timestamp(),
        config: serde_json::to_value(&cfg)?,
        args: serde_json::to_value(&cli.command)?,
        files: out.names(),
    };
    out.json("manifest.json", &manifest)?;
    Ok(Outcome {
        stdout,
        outputs: out,
        passed,
    })
}

/// Runs `cli` on a worker pool of the requested size and writes outputs.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let outcome = match cli.threads {
        Some(0) => return Err(CliError::Config("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?
            .install(|| execute(cli))?,
        None => execute(cli)?,
    };
    if !matches!(cli.command, Command::PrintConfig) {
        outcome.outputs.write_all(&cli.out)?;
    }
    Ok(outcome)
}
