//! Command-line front end for the `splitci` binary: argument parsing,
//! dispatch and CSV output.

use std::cmp::Ordering;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::experiments::{
    coverage_experiment, manski_coverage_experiment, quantile_width_experiment, region_raster, volume_experiment,
    CoverageRow, ExperimentConfig, ManskiRow, Noise, QuantileWidthRow, RasterRow, VolumeRow,
};

#[derive(Debug, Parser)]
#[command(name = "splitci", version, about = "Monte Carlo harness for sample-splitting confidence sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coverage of the truth by the Wald, SS and SS+U regions.
    Coverage(SweepArgs),
    /// Containment radius over the Wald geometric-mean semi-axis.
    Volume(SweepArgs),
    /// Two-dimensional membership rasters.
    Raster(RasterArgs),
    /// Width of the CLT quantile region for several sample sizes.
    QuantileWidth(QuantileArgs),
    /// Empirical Bernstein coverage in the Manski model.
    ManskiCoverage(ManskiArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Master seed for all random streams.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Miscoverage levels, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub alpha: Option<Vec<f64>>,
    /// Fraction of the sample used for the initial estimator.
    #[arg(long, default_value_t = 0.5)]
    pub ratio: f64,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    /// Total sample size before splitting.
    #[arg(long, default_value_t = 500)]
    pub n_total: usize,
    /// Dimensions, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,5,10,20,50,100")]
    pub dims: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct RasterArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 100)]
    pub n_total: usize,
    /// Points per axis.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct QuantileArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 300)]
    pub reps: usize,
    /// Inference-fold sizes, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "500,2000")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// Scan points over the data range.
    #[arg(long, default_value_t = 4001)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct ManskiArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 500)]
    pub reps: usize,
    #[arg(long, default_value_t = 400)]
    pub n_total: usize,
    /// Noise law: logistic or normal.
    #[arg(long, default_value = "logistic")]
    pub noise: Noise,
}

fn base_config(common: &CommonArgs, default_alphas: &[f64]) -> ExperimentConfig {
    ExperimentConfig {
        master_seed: common.seed,
        alphas: common.alpha.clone().unwrap_or_else(|| default_alphas.to_vec()),
        split_ratio: common.ratio,
        workers: common.workers,
        ..Default::default()
    }
}

/// One fixed-schema CSV record.
pub trait CsvRecord {
    const HEADER: &'static str;

    fn cells(&self) -> Vec<String>;

    /// Order by method first, then by the setting columns.
    fn order(&self, other: &Self) -> Ordering;
}

fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.total_cmp(&b)
}

impl CsvRecord for CoverageRow {
    const HEADER: &'static str = "method,d,N,n,alpha,replications,failures,coverage,mc_se";

    fn cells(&self) -> Vec<String> {
        vec![
            self.method.label().to_string(),
            self.d.to_string(),
            self.n_total.to_string(),
            self.n.to_string(),
            format_real(self.alpha),
            self.replications.to_string(),
            self.failures.to_string(),
            format_real(self.coverage),
            format_real(self.mc_se),
        ]
    }

    fn order(&self, other: &Self) -> Ordering {
        self.method
            .label()
            .cmp(other.method.label())
            .then(self.d.cmp(&other.d))
            .then(self.n_total.cmp(&other.n_total))
            .then(cmp_f64(self.alpha, other.alpha))
    }
}

impl CsvRecord for VolumeRow {
    const HEADER: &'static str = "d,N,alpha,replications,ratio_mean,ratio_se";

    fn cells(&self) -> Vec<String> {
        vec![
            self.d.to_string(),
            self.n_total.to_string(),
            format_real(self.alpha),
            self.replications.to_string(),
            format_real(self.ratio_mean),
            format_real(self.ratio_se),
        ]
    }

    fn order(&self, other: &Self) -> Ordering {
        self.d.cmp(&other.d).then(self.n_total.cmp(&other.n_total)).then(cmp_f64(self.alpha, other.alpha))
    }
}

impl CsvRecord for RasterRow {
    const HEADER: &'static str = "method,level,theta1,theta2,member";

    fn cells(&self) -> Vec<String> {
        vec![
            self.method.label().to_string(),
            format_real(self.level),
            format_real(self.theta1),
            format_real(self.theta2),
            u8::from(self.member).to_string(),
        ]
    }

    fn order(&self, other: &Self) -> Ordering {
        self.method
            .label()
            .cmp(other.method.label())
            .then(cmp_f64(self.level, other.level))
            .then(cmp_f64(self.theta1, other.theta1))
            .then(cmp_f64(self.theta2, other.theta2))
    }
}

impl CsvRecord for QuantileWidthRow {
    const HEADER: &'static str = "n,gamma,alpha,replications,width_mean,width_se";

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            format_real(self.gamma),
            format_real(self.alpha),
            self.replications.to_string(),
            format_real(self.width_mean),
            format_real(self.width_se),
        ]
    }

    fn order(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then(cmp_f64(self.gamma, other.gamma)).then(cmp_f64(self.alpha, other.alpha))
    }
}

impl CsvRecord for ManskiRow {
    const HEADER: &'static str = "n,d,alpha,replications,coverage,mc_se";

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.d.to_string(),
            format_real(self.alpha),
            self.replications.to_string(),
            format_real(self.coverage),
            format_real(self.mc_se),
        ]
    }

    fn order(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then(self.d.cmp(&other.d)).then(cmp_f64(self.alpha, other.alpha))
    }
}

/// Ten significant digits in positional notation: `0.5` becomes `0.5000000000`.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.000000000".into();
    }
    // The exponent after rounding to ten digits fixes the decimal count.
    let sci = format!("{x:.9e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).expect("float exponent");
    let decimals = (9 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Writes `rows` sorted by method and setting under the record's header.
pub fn write_csv<R: CsvRecord>(rows: &[R], path: &Path) -> Result<()> {
    let mut order: Vec<&R> = rows.iter().collect();
    order.sort_by(|a, b| a.order(b));
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let mut out = BufWriter::new(File::create(path).map_err(io)?);
    writeln!(out, "{}", R::HEADER).map_err(io)?;
    for row in order {
        writeln!(out, "{}", row.cells().join(",")).map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Runs a parsed invocation and returns the one-line summary.
pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Coverage(args) => {
            let cfg = sweep_config(&args);
            let rows = coverage_experiment(&cfg)?;
            write_csv(&rows, &args.common.out)?;
            let worst = rows.iter().filter(|r| !r.coverage.is_nan()).map(|r| r.coverage).fold(f64::INFINITY, f64::min);
            let failures: usize = rows.iter().map(|r| r.failures).sum();
            Ok(format!(
                "coverage: {} rows, R={}, lowest coverage {}, {} failures -> {}",
                rows.len(),
                cfg.replications,
                format_real(worst),
                failures,
                args.common.out.display()
            ))
        }
        Command::Volume(args) => {
            let cfg = sweep_config(&args);
            let rows = volume_experiment(&cfg)?;
            write_csv(&rows, &args.common.out)?;
            let top = rows.iter().map(|r| r.ratio_mean).fold(f64::NEG_INFINITY, f64::max);
            Ok(format!(
                "volume: {} rows, R={}, largest mean ratio {} -> {}",
                rows.len(),
                cfg.replications,
                format_real(top),
                args.common.out.display()
            ))
        }
        Command::Raster(args) => {
            let cfg = ExperimentConfig {
                n_total: args.n_total,
                grid: args.grid,
                dims: vec![2],
                ..base_config(&args.common, &[0.05, 0.15, 0.25])
            };
            let raster = region_raster(&cfg)?;
            write_csv(&raster.rows, &args.common.out)?;
            let members = raster.rows.iter().filter(|r| r.member).count();
            Ok(format!(
                "raster: {} rows, {} members, half-width {} -> {}",
                raster.rows.len(),
                members,
                format_real(raster.half_width),
                args.common.out.display()
            ))
        }
        Command::QuantileWidth(args) => {
            let cfg = ExperimentConfig {
                replications: args.reps,
                sizes: args.sizes.clone(),
                gamma: args.gamma,
                grid: args.grid,
                ..base_config(&args.common, &[0.05])
            };
            let rows = quantile_width_experiment(&cfg)?;
            write_csv(&rows, &args.common.out)?;
            let empty: usize = rows.iter().map(|r| r.empty).sum();
            let gapped: usize = rows.iter().map(|r| r.gapped).sum();
            Ok(format!(
                "quantile-width: {} rows, R={}, {} empty scans, {} gapped scans -> {}",
                rows.len(),
                cfg.replications,
                empty,
                gapped,
                args.common.out.display()
            ))
        }
        Command::ManskiCoverage(args) => {
            let cfg = ExperimentConfig {
                replications: args.reps,
                n_total: args.n_total,
                noise: args.noise,
                dims: vec![2],
                ..base_config(&args.common, &[0.05])
            };
            let rows = manski_coverage_experiment(&cfg)?;
            write_csv(&rows, &args.common.out)?;
            let nesting = rows.first().map_or(0, |r| r.nesting_violations);
            Ok(format!(
                "manski-coverage: {} rows, R={}, {} nesting violations -> {}",
                rows.len(),
                cfg.replications,
                nesting,
                args.common.out.display()
            ))
        }
    }
}

fn sweep_config(args: &SweepArgs) -> ExperimentConfig {
    ExperimentConfig {
        replications: args.reps,
        n_total: args.n_total,
        dims: args.dims.clone(),
        ..base_config(&args.common, &[0.05])
    }
}
