//! Command-line front end.
//!
//! [`run_command`] parses an argument vector, dispatches to the owning
//! module and renders the result. Output is byte-stable: JSON objects have
//! sorted keys, big integers are decimal strings, and reals are rounded
//! half-to-even at 12 significant digits. Exit status is 0 on success and 2
//! on any usage or domain error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::case_two::{case2_optimal, dichotomy_map, Case2Report};
use crate::error::{QfiError, Result};
use crate::fit::{fit_scaling, loglog_fit, FitResult, ScalingMode};
use crate::highdim::{optimal_probe_highdim_with, LocalExtremes};
use crate::oracle::{brute_case2_spectrum, brute_spectrum, MAX_BRUTE_PARTIES};
use crate::probes::{optimal_probe, Classification, TieRule};
use crate::qfi_optimal::{optimal_qfi, QfiReport};
use crate::qfi_product::{
    sp_qfi_at, sp_qfi_hypergeom, sp_qfi_max, sp_qfi_max_closed_k2, sp_qfi_max_closed_k3,
};

/// Significant digits kept for every real in the output.
pub const SIGNIFICANT_DIGITS: usize = 12;

const EXIT_OK: i32 = 0;
const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "qfi",
    about = "Maximum quantum Fisher information for k-body interacting generators",
    disable_version_flag = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pure k-body generator: optimum over all probes or product probes.
    Qfi {
        #[command(subcommand)]
        which: QfiCommand,
    },
    /// Generator with all orders up to k; single point or (k, N) grid.
    #[command(after_help = "CSV columns: n,k,x,lambda_max,lambda_min,argmax_sectors,argmin_sectors,qfi")]
    Case2 {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimizing sectors of the up-to-k generator over a (k, N) grid.
    #[command(after_help = "CSV columns: k,n,x,argmin_sectors,lambda_min,minimum_at_zero")]
    Dichotomy {
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Optimal two-branch probe and its classification.
    #[command(after_help = "CSV columns: n,k,tie,s_top,s_bottom,classification,symmetric,qfi")]
    Probe {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "prefer-product")]
        tie: TieRule,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Arbitrary local dimension from the extremal local eigenvalues.
    #[command(
        after_help = "CSV columns: parties,k,delta_max,delta_min,scenario,lambda_max,lambda_min,argmax_m,argmin_m,qfi,s_top,s_bottom,classification,symmetric,branch_condition"
    )]
    Highdim {
        #[arg(long)]
        parties: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true)]
        delta_max: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta_min: f64,
        #[arg(long, default_value = "prefer-product")]
        tie: TieRule,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Brute-force spectrum over all 2^N basis strings (N <= 12).
    #[command(after_help = "CSV columns: n,k,x,eigenvalue,multiplicity")]
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Use the up-to-k generator with this coupling instead of h_k.
        #[arg(long)]
        x: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Log-log least-squares fit of the maximum QFI against N.
    #[command(
        after_help = "CSV columns: k,mode,source,n_min,n_max,step,n_points,n_params,alpha_hat,beta_hat,prefactor,s_alpha,s_beta,r_min,chi2,ci_alpha,ci_beta,confidence,t_value\nInput CSV (--input): header row, then rows of N,F."
    )]
    Fit {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "optimal")]
        mode: ScalingMode,
        #[arg(long, default_value_t = 200)]
        n_min: usize,
        #[arg(long, default_value_t = 2000)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        step: usize,
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
        /// Fit externally supplied (N, F) pairs instead of computing them.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum QfiCommand {
    /// Exact optimum over all pure probes.
    #[command(
        after_help = "CSV columns: n,k,qfi,lambda_max,lambda_min,argmax_sectors,argmin_sectors,s_top,s_bottom,classification,symmetric"
    )]
    Optimal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Symmetric product probes: maximum, closed forms, or value at one z.
    #[command(
        after_help = "CSV columns: n,k,z_star,qfi_max,closed_form,z,qfi_at_z,qfi_hypergeom_at_z"
    )]
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Also evaluate both forms at z = cos^2(theta).
        #[arg(long)]
        z: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Which family of records a request produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Optimal,
    Product,
    Case2,
    Highdim,
    Oracle,
    Fit,
    Probe,
    Dichotomy,
}

/// A validated command: mode, output routing, and the parsed parameters.
#[derive(Debug)]
pub struct ScanRequest {
    pub mode: ScanMode,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    command: Command,
}

impl ScanRequest {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let (mode, output) = match &cli.command {
            Command::Qfi { which } => match which {
                QfiCommand::Optimal { output, .. } => (ScanMode::Optimal, output),
                QfiCommand::Product { output, .. } => (ScanMode::Product, output),
            },
            Command::Case2 { output, .. } => (ScanMode::Case2, output),
            Command::Dichotomy { output, .. } => (ScanMode::Dichotomy, output),
            Command::Probe { output, .. } => (ScanMode::Probe, output),
            Command::Highdim { output, .. } => (ScanMode::Highdim, output),
            Command::Oracle { output, .. } => (ScanMode::Oracle, output),
            Command::Fit { output, .. } => (ScanMode::Fit, output),
        };
        let request = Self {
            mode,
            format: output.format,
            out: output.out.clone(),
            command: cli.command,
        };
        request.validate()?;
        Ok(request)
    }

    fn validate(&self) -> Result<()> {
        let order = |n: usize, k: usize| {
            if k == 0 || k > n {
                Err(QfiError::InvalidOrder { n, k })
            } else {
                Ok(())
            }
        };
        match &self.command {
            Command::Qfi { which } => match which {
                QfiCommand::Optimal { n, k, .. } | QfiCommand::Product { n, k, .. } => order(*n, *k),
            },
            Command::Case2 {
                n, k, k_max, n_max, ..
            } => match (n, k, k_max, n_max) {
                (Some(n), Some(k), None, None) => order(*n, *k),
                (None, None, Some(k_max), Some(n_max)) => grid(*k_max, *n_max),
                _ => Err(QfiError::InvalidGrid(
                    "case2 takes either --n and --k, or --k-max and --n-max".into(),
                )),
            },
            Command::Dichotomy { k_max, n_max, .. } => grid(*k_max, *n_max),
            Command::Probe { n, k, .. } => order(*n, *k),
            Command::Highdim { parties, k, .. } => order(*parties, *k),
            Command::Oracle { n, k, .. } => {
                if *n > MAX_BRUTE_PARTIES {
                    return Err(QfiError::TooLarge {
                        n: *n,
                        max: MAX_BRUTE_PARTIES,
                    });
                }
                order(*n, *k)
            }
            Command::Fit {
                k,
                n_min,
                n_max,
                step,
                input,
                ..
            } => match (k, input) {
                (_, Some(_)) => Ok(()),
                (Some(k), None) => {
                    if *step == 0 || n_min > n_max {
                        return Err(QfiError::InvalidGrid(format!(
                            "need n_min <= n_max and step >= 1, got {n_min}..{n_max} step {step}"
                        )));
                    }
                    order(*n_min, *k)
                }
                (None, None) => Err(QfiError::InvalidGrid("fit needs --k or --input".into())),
            },
        }
    }

    /// Runs the request and returns the rendered document.
    pub fn execute(&self) -> Result<String> {
        let rendered = match &self.command {
            Command::Qfi { which } => match which {
                QfiCommand::Optimal { n, k, .. } => {
                    let report = optimal_qfi(*n, *k)?;
                    self.render_one(&report, optimal_csv_row(&report))
                }
                QfiCommand::Product { n, k, z, .. } => {
                    let record = product_record(*n, *k, *z)?;
                    let row = product_csv_row(&record);
                    self.render_one(&record, row)
                }
            },
            Command::Case2 {
                n,
                k,
                x,
                k_max,
                n_max,
                ..
            } => {
                let reports = match (n, k) {
                    (Some(n), Some(k)) => vec![case2_optimal(*n, *k, *x)?],
                    _ => case2_grid(k_max.unwrap_or(0), n_max.unwrap_or(0), *x)?,
                };
                let rows = reports.iter().map(case2_csv_row).collect();
                if reports.len() == 1 {
                    self.render_one(&reports[0], rows_first(rows))
                } else {
                    self.render_many(&reports, CASE2_HEADER, rows)
                }
            }
            Command::Dichotomy { k_max, n_max, x, .. } => {
                let cells = dichotomy_map(*k_max, *n_max, *x)?;
                let records: Vec<DichotomyRecord> = cells
                    .into_iter()
                    .map(|c| DichotomyRecord {
                        minimum_at_zero: c.minimum_at_zero(),
                        k: c.k,
                        n: c.n,
                        x: *x,
                        argmin_sectors: c.argmin_sectors,
                        lambda_min: c.lambda_min,
                    })
                    .collect();
                let rows = records
                    .iter()
                    .map(|r| {
                        vec![
                            r.k.to_string(),
                            r.n.to_string(),
                            real(r.x),
                            join(&r.argmin_sectors),
                            real(r.lambda_min),
                            r.minimum_at_zero.to_string(),
                        ]
                    })
                    .collect();
                self.render_many(&records, DICHOTOMY_HEADER, rows)
            }
            Command::Probe { n, k, tie, .. } => {
                let probe = optimal_probe(*n, *k, *tie)?;
                let report = optimal_qfi(*n, *k)?;
                let record = ProbeRecord {
                    n: *n,
                    k: *k,
                    tie: *tie,
                    s_top: probe.s_top,
                    s_bottom: probe.s_bottom,
                    classification: probe.classification,
                    symmetric: probe.symmetric,
                    qfi: report.qfi,
                };
                let row = vec![
                    record.n.to_string(),
                    record.k.to_string(),
                    record.tie.to_string(),
                    record.s_top.clone(),
                    record.s_bottom.clone(),
                    record.classification.to_string(),
                    record.symmetric.to_string(),
                    record.qfi.to_string(),
                ];
                self.render_one(&record, (PROBE_HEADER, row))
            }
            Command::Highdim {
                parties,
                k,
                delta_max,
                delta_min,
                tie,
                ..
            } => {
                let e = LocalExtremes::new(*delta_max, *delta_min)?;
                let r = optimal_probe_highdim_with(*parties, *k, e, *tie)?;
                let row = vec![
                    r.parties.to_string(),
                    r.k.to_string(),
                    real(r.extremes.delta_max),
                    real(r.extremes.delta_min),
                    r.scenario.to_string(),
                    real(r.lambda_max),
                    real(r.lambda_min),
                    join(&r.argmax_m),
                    join(&r.argmin_m),
                    real(r.qfi),
                    r.probe.s_top.clone(),
                    r.probe.s_bottom.clone(),
                    r.probe.classification.to_string(),
                    r.probe.symmetric.to_string(),
                    r.branch_condition.clone().unwrap_or_default(),
                ];
                self.render_one(&r, (HIGHDIM_HEADER, row))
            }
            Command::Oracle { n, k, x, .. } => {
                let record = oracle_record(*n, *k, *x)?;
                let rows = record
                    .entries
                    .iter()
                    .map(|e| {
                        vec![
                            n.to_string(),
                            k.to_string(),
                            x.map(real).unwrap_or_default(),
                            real(e.eigenvalue),
                            e.multiplicity.to_string(),
                        ]
                    })
                    .collect();
                match self.format {
                    OutputFormat::Json => to_json(&record),
                    OutputFormat::Csv => to_csv(ORACLE_HEADER, rows),
                }
            }
            Command::Fit {
                k,
                mode,
                n_min,
                n_max,
                step,
                confidence,
                input,
                ..
            } => {
                let record = match input {
                    Some(path) => {
                        let points = read_points(path)?;
                        let fit = loglog_fit(&points, *confidence)?;
                        FitRecord::new(*k, None, path.display().to_string(), None, fit)
                    }
                    None => {
                        let k = k.expect("validated");
                        let fit = fit_scaling(k, *mode, *n_min, *n_max, *step, *confidence)?;
                        FitRecord::new(
                            Some(k),
                            Some(*mode),
                            "computed".into(),
                            Some((*n_min, *n_max, *step)),
                            fit,
                        )
                    }
                };
                let row = fit_csv_row(&record);
                self.render_one(&record, (FIT_HEADER, row))
            }
        };
        rendered
    }

    fn render_one<T: Serialize>(
        &self,
        record: &T,
        csv_row: (&'static [&'static str], Vec<String>),
    ) -> Result<String> {
        match self.format {
            OutputFormat::Json => to_json(record),
            OutputFormat::Csv => to_csv(csv_row.0, vec![csv_row.1]),
        }
    }

    fn render_many<T: Serialize>(
        &self,
        records: &[T],
        header: &'static [&'static str],
        rows: Vec<Vec<String>>,
    ) -> Result<String> {
        match self.format {
            OutputFormat::Json => to_json(&records),
            OutputFormat::Csv => to_csv(header, rows),
        }
    }
}

fn grid(k_max: usize, n_max: usize) -> Result<()> {
    if k_max == 0 || k_max > n_max {
        return Err(QfiError::InvalidGrid(format!(
            "need 1 <= k_max <= n_max, got k_max = {k_max}, n_max = {n_max}"
        )));
    }
    Ok(())
}

fn rows_first(
    mut rows: Vec<Vec<String>>,
) -> (&'static [&'static str], Vec<String>) {
    (CASE2_HEADER, rows.swap_remove(0))
}

fn case2_grid(k_max: usize, n_max: usize, x: f64) -> Result<Vec<Case2Report>> {
    let cells: Vec<(usize, usize)> = (1..=k_max)
        .flat_map(|k| (k..=n_max).map(move |n| (k, n)))
        .collect();
    cells
        .par_iter()
        .map(|&(k, n)| case2_optimal(n, k, x))
        .collect()
}

const OPTIMAL_HEADER: &[&str] = &[
    "n",
    "k",
    "qfi",
    "lambda_max",
    "lambda_min",
    "argmax_sectors",
    "argmin_sectors",
    "s_top",
    "s_bottom",
    "classification",
    "symmetric",
];
const PRODUCT_HEADER: &[&str] = &[
    "n",
    "k",
    "z_star",
    "qfi_max",
    "closed_form",
    "z",
    "qfi_at_z",
    "qfi_hypergeom_at_z",
];
const CASE2_HEADER: &[&str] = &[
    "n",
    "k",
    "x",
    "lambda_max",
    "lambda_min",
    "argmax_sectors",
    "argmin_sectors",
    "qfi",
];
const DICHOTOMY_HEADER: &[&str] = &["k", "n", "x", "argmin_sectors", "lambda_min", "minimum_at_zero"];
const PROBE_HEADER: &[&str] = &[
    "n",
    "k",
    "tie",
    "s_top",
    "s_bottom",
    "classification",
    "symmetric",
    "qfi",
];
const HIGHDIM_HEADER: &[&str] = &[
    "parties",
    "k",
    "delta_max",
    "delta_min",
    "scenario",
    "lambda_max",
    "lambda_min",
    "argmax_m",
    "argmin_m",
    "qfi",
    "s_top",
    "s_bottom",
    "classification",
    "symmetric",
    "branch_condition",
];
const ORACLE_HEADER: &[&str] = &["n", "k", "x", "eigenvalue", "multiplicity"];
const FIT_HEADER: &[&str] = &[
    "k",
    "mode",
    "source",
    "n_min",
    "n_max",
    "step",
    "n_points",
    "n_params",
    "alpha_hat",
    "beta_hat",
    "prefactor",
    "s_alpha",
    "s_beta",
    "r_min",
    "chi2",
    "ci_alpha",
    "ci_beta",
    "confidence",
    "t_value",
];

fn optimal_csv_row(r: &QfiReport) -> (&'static [&'static str], Vec<String>) {
    (
        OPTIMAL_HEADER,
        vec![
            r.n.to_string(),
            r.k.to_string(),
            r.qfi.to_string(),
            r.lambda_max.to_string(),
            r.lambda_min.to_string(),
            join(&r.argmax_sectors),
            join(&r.argmin_sectors),
            r.probe.s_top.clone(),
            r.probe.s_bottom.clone(),
            r.probe.classification.to_string(),
            r.probe.symmetric.to_string(),
        ],
    )
}

fn case2_csv_row(r: &Case2Report) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.k.to_string(),
        real(r.x),
        real(r.lambda_max),
        real(r.lambda_min),
        join(&r.argmax_sectors),
        join(&r.argmin_sectors),
        real(r.qfi),
    ]
}

/// Symmetric-product summary for one `(N, k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductRecord {
    pub n: usize,
    pub k: usize,
    pub z_star: f64,
    pub qfi_max: f64,
    /// Closed-form maximum where one exists (`k = 2, N > 2`; `k = 3, N > 3`).
    pub closed_form: Option<f64>,
    pub at_z: Option<ProductPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductPoint {
    pub z: f64,
    pub qfi: f64,
    pub qfi_hypergeom: f64,
}

fn product_record(n: usize, k: usize, z: Option<f64>) -> Result<ProductRecord> {
    let max = sp_qfi_max(n, k)?;
    let closed_form = match k {
        2 if n > 2 => Some(sp_qfi_max_closed_k2(n)?),
        3 if n > 3 => Some(sp_qfi_max_closed_k3(n)?.qfi),
        _ => None,
    };
    let at_z = z
        .map(|z| -> Result<ProductPoint> {
            Ok(ProductPoint {
                z,
                qfi: sp_qfi_at(n, k, z)?,
                qfi_hypergeom: sp_qfi_hypergeom(n, k, z)?,
            })
        })
        .transpose()?;
    Ok(ProductRecord {
        n,
        k,
        z_star: max.z_star,
        qfi_max: max.qfi,
        closed_form,
        at_z,
    })
}

fn product_csv_row(r: &ProductRecord) -> (&'static [&'static str], Vec<String>) {
    let opt = |v: Option<f64>| v.map(real).unwrap_or_default();
    (
        PRODUCT_HEADER,
        vec![
            r.n.to_string(),
            r.k.to_string(),
            real(r.z_star),
            real(r.qfi_max),
            opt(r.closed_form),
            opt(r.at_z.as_ref().map(|p| p.z)),
            opt(r.at_z.as_ref().map(|p| p.qfi)),
            opt(r.at_z.as_ref().map(|p| p.qfi_hypergeom)),
        ],
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DichotomyRecord {
    pub k: usize,
    pub n: usize,
    pub x: f64,
    pub argmin_sectors: Vec<usize>,
    pub lambda_min: f64,
    pub minimum_at_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub n: usize,
    pub k: usize,
    pub tie: TieRule,
    pub s_top: String,
    pub s_bottom: String,
    pub classification: Classification,
    pub symmetric: bool,
    #[serde(with = "crate::bigint_serde")]
    pub qfi: num_bigint::BigInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub eigenvalue: f64,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub n: usize,
    pub k: usize,
    pub x: Option<f64>,
    pub description: String,
    pub entries: Vec<OracleEntry>,
    pub qfi: f64,
}

fn oracle_record(n: usize, k: usize, x: Option<f64>) -> Result<OracleRecord> {
    let (description, entries) = match x {
        None => {
            let s = brute_spectrum(n, k)?;
            let entries = s
                .entries
                .iter()
                .map(|&(v, c)| OracleEntry {
                    eigenvalue: v as f64,
                    multiplicity: c,
                })
                .collect::<Vec<_>>();
            (s.description, entries)
        }
        Some(x) => {
            let s = brute_case2_spectrum(n, k, x)?;
            let entries = s
                .entries
                .iter()
                .map(|&(v, c)| OracleEntry {
                    eigenvalue: v,
                    multiplicity: c,
                })
                .collect::<Vec<_>>();
            (s.description, entries)
        }
    };
    let lo = entries[0].eigenvalue;
    let hi = entries[entries.len() - 1].eigenvalue;
    Ok(OracleRecord {
        n,
        k,
        x,
        description,
        entries,
        qfi: (hi - lo) * (hi - lo),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    pub k: Option<usize>,
    pub mode: Option<ScalingMode>,
    pub source: String,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub step: Option<usize>,
    pub prefactor: f64,
    #[serde(flatten)]
    pub fit: FitResult,
}

impl FitRecord {
    fn new(
        k: Option<usize>,
        mode: Option<ScalingMode>,
        source: String,
        range: Option<(usize, usize, usize)>,
        fit: FitResult,
    ) -> Self {
        Self {
            k,
            mode,
            source,
            n_min: range.map(|r| r.0),
            n_max: range.map(|r| r.1),
            step: range.map(|r| r.2),
            prefactor: fit.prefactor(),
            fit,
        }
    }
}

fn fit_csv_row(r: &FitRecord) -> Vec<String> {
    let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
    let f = &r.fit;
    vec![
        opt(r.k),
        r.mode.map(|m| m.to_string()).unwrap_or_default(),
        r.source.clone(),
        opt(r.n_min),
        opt(r.n_max),
        opt(r.step),
        f.n_points.to_string(),
        f.n_params.to_string(),
        real(f.alpha_hat),
        real(f.beta_hat),
        real(r.prefactor),
        real(f.s_alpha),
        real(f.s_beta),
        real(f.r_min),
        real(f.chi2),
        real(f.ci_alpha),
        real(f.ci_beta),
        real(f.confidence),
        real(f.t_value),
    ]
}

fn read_points(path: &std::path::Path) -> Result<Vec<(f64, f64)>> {
    let bad = |msg: String| QfiError::InvalidGrid(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| bad(e.to_string()))?;
    let mut points = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| bad(e.to_string()))?;
        if row.len() < 2 {
            return Err(bad(format!("expected two columns, got {}", row.len())));
        }
        let parse = |s: &str| s.parse::<f64>().map_err(|e| bad(format!("'{s}': {e}")));
        points.push((parse(&row[0])?, parse(&row[1])?));
    }
    Ok(points)
}

/// Rounds half-to-even at [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// Canonical text for a real: rounded, then the shortest representation.
pub fn real(x: f64) -> String {
    let r = round_sig(x);
    if r == r.trunc() && r.abs() < 1e15 {
        format!("{r:.1}")
    } else {
        format!("{r}")
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().expect("f64 number");
            if let Some(rounded) = serde_json::Number::from_f64(round_sig(x)) {
                *num = rounded;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Serializes with sorted keys and rounded reals, plus a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(record: &T) -> Result<String> {
    let mut value = serde_json::to_value(record)
        .map_err(|e| QfiError::InvalidGrid(format!("serialization failed: {e}")))?;
    round_value(&mut value);
    let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
    text.push('\n');
    Ok(text)
}

fn to_csv(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| QfiError::InvalidGrid(format!("csv output failed: {e}"));
    writer.write_record(header).map_err(fail)?;
    for row in rows {
        writer.write_record(&row).map_err(fail)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| QfiError::InvalidGrid(format!("csv output failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name), runs the command and returns
/// what the binary should print. With `--out` the document goes to the file
/// and stdout stays empty.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput {
                    exit_code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutput {
                    exit_code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let failure = |e: QfiError| CommandOutput {
        exit_code: EXIT_INVALID,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    };
    let request = match ScanRequest::from_cli(cli) {
        Ok(r) => r,
        Err(e) => return failure(e),
    };
    let document = match request.execute() {
        Ok(d) => d,
        Err(e) => return failure(e),
    };
    match &request.out {
        Some(path) => match std::fs::write(path, &document) {
            Ok(()) => CommandOutput {
                exit_code: EXIT_OK,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => CommandOutput {
                exit_code: EXIT_INVALID,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => CommandOutput {
            exit_code: EXIT_OK,
            stdout: document,
            stderr: String::new(),
        },
    }
}

/// Approximate value of a big integer for display in summaries.
pub fn approx(x: &num_bigint::BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
