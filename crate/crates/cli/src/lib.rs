//! File formats and command implementations behind the `gbwalk` binary.

pub mod output;
pub mod parse;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use gbwalk_core::{
    enumerate_fan, reduced_gb, FanOptions, GroebnerBasis, MonomialOrder, Polynomial, VariableContext, WalkMode,
    WeightVector,
};

use crate::parse::{parse_order, parse_problem, parse_weight_literal, ParseError, ProblemFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] gbwalk_core::Error),
}

impl CliError {
    /// 0 success, 1 I/O failure, 2 parse error, 3 precondition violation,
    /// 4 dimension guard.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Core(gbwalk_core::Error::DimensionGuard { .. }) => 4,
            CliError::Core(_) => 3,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "gbwalk", version, about = "Gröbner walks and fans for elimination ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Improved,
    Tran,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis under an order.
    Gb {
        file: PathBuf,
        /// e.g. `rows=[[2,1]];tiebreak=x>u`
        #[arg(long)]
        order: String,
        #[arg(long)]
        json: bool,
    },
    /// Elimination ideal by a Gröbner walk from sigma to tau.
    Eliminate {
        file: PathBuf,
        /// Weight name from the file, or a literal such as `(4,1)`.
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        tau: String,
        #[arg(long, value_enum, default_value = "improved")]
        mode: ModeArg,
        /// Order refining tau (defaults to lex).
        #[arg(long)]
        tiebreak: Option<String>,
        #[arg(long)]
        trace_json: Option<PathBuf>,
    },
    /// Gröbner fan: cells, EV region, boundary classes.
    Fan {
        file: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        section_csv: Option<PathBuf>,
        #[arg(long, default_value_t = gbwalk_core::fan::DEFAULT_MAX_DIM)]
        max_dim: usize,
    },
    /// Is the order an ideal-specific elimination order?
    CheckIeo {
        file: PathBuf,
        #[arg(long)]
        order: String,
    },
    /// Samples segments from EV cells towards Omega_u.
    StarCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = gbwalk_core::fan::DEFAULT_MAX_DIM)]
        max_dim: usize,
    },
}

pub fn load_problem(path: &Path) -> CliResult<ProblemFile> {
    let text = read(path)?;
    parse_problem(&text).map_err(|source| CliError::Parse { context: path.display().to_string(), source })
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn order_arg(spec: &str, ctx: &VariableContext) -> CliResult<MonomialOrder> {
    parse_order(spec, ctx).map_err(|source| CliError::Parse { context: "--order".into(), source })
}

fn weight_arg(pf: &ProblemFile, arg: &str, flag: &str) -> CliResult<WeightVector> {
    if arg.trim_start().starts_with('(') {
        return parse_weight_literal(arg, pf.context.dim())
            .map_err(|source| CliError::Parse { context: flag.into(), source });
    }
    pf.weight(arg).cloned().ok_or_else(|| CliError::Usage(format!("{flag}: no weight named `{arg}`")))
}

fn braces(ps: &[Polynomial], ctx: &VariableContext, order: &MonomialOrder) -> String {
    let texts: Vec<String> = ps.iter().map(|p| p.to_text(ctx, order)).collect();
    format!("{{{}}}", texts.join(", "))
}

fn basis_braces(b: &GroebnerBasis, ctx: &VariableContext) -> String {
    format!("{{{}}}", b.to_text(ctx).join(", "))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Runs one command and returns what it prints on stdout.
pub fn run(cli: Cli) -> CliResult<String> {
    let mut out = String::new();
    match cli.command {
        Command::Gb { file, order, json } => {
            let pf = load_problem(&file)?;
            let ctx = &pf.context;
            let order = order_arg(&order, ctx)?;
            let gb = reduced_gb(&pf.polynomials(), &order)?;
            if json {
                out = pretty(&output::gb_json(&gb, ctx));
            } else {
                let _ = writeln!(out, "order: {}", order.to_text(ctx));
                for line in gb.to_text(ctx) {
                    let _ = writeln!(out, "{line}");
                }
            }
        }
        Command::Eliminate { file, sigma, tau, mode, tiebreak, trace_json } => {
            let pf = load_problem(&file)?;
            let ctx = &pf.context;
            let sigma = weight_arg(&pf, &sigma, "--sigma")?;
            let tau = weight_arg(&pf, &tau, "--tau")?;
            let refine = tiebreak.map(|t| order_arg(&t, ctx)).transpose()?;
            let mode = match mode {
                ModeArg::Improved => WalkMode::Improved,
                ModeArg::Tran => WalkMode::TranBoundary,
            };
            let outcome = gbwalk_core::eliminate_walk(&pf.polynomials(), ctx, &sigma, &tau, refine.as_ref(), mode)?;
            let last = outcome.trace.last();
            let _ = writeln!(out, "{}", braces(&outcome.elimination_basis, ctx, &last.order));
            let _ = writeln!(out, "stop: {}", outcome.trace.stop_reason.as_str());
            let _ = writeln!(out, "conversions: {}", outcome.trace.conversions);
            if outcome.trace.any_non_generic() {
                let _ = writeln!(out, "warning: the walk crossed a face of codimension > 1");
            }
            if let Some(path) = trace_json {
                write(&path, &pretty(&output::walk_json(&outcome, ctx)))?;
            }
        }
        Command::Fan { file, json, section_csv, max_dim } => {
            let pf = load_problem(&file)?;
            let fan = enumerate_fan(&pf.polynomials(), &pf.context, FanOptions { max_dim })?;
            let ctx = &pf.context;
            let _ = writeln!(out, "cells: {}", fan.len());
            let _ = writeln!(out, "ev_region: {}", fan.ev_region().len());
            for (i, cell) in fan.cells().iter().enumerate() {
                let _ = writeln!(
                    out,
                    "cell {i}: ieo={} boundary={} gb={}",
                    cell.is_ieo,
                    cell.boundary.as_str(),
                    basis_braces(&cell.basis, ctx)
                );
            }
            if let Some(path) = json {
                write(&path, &pretty(&output::fan_json(&fan)))?;
            }
            if let Some(path) = section_csv {
                write(&path, &output::section_csv(&fan))?;
            }
        }
        Command::CheckIeo { file, order } => {
            let pf = load_problem(&file)?;
            let ctx = &pf.context;
            let order = order_arg(&order, ctx)?;
            let gb = reduced_gb(&pf.polynomials(), &order)?;
            let _ = writeln!(out, "ieo: {}", gb.is_ideal_specific_eo(ctx)?);
            for p in gb.lead_x(ctx) {
                let _ = writeln!(out, "lead_x: {}", p.to_text(ctx, &order));
            }
        }
        Command::StarCheck { file, samples, seed, json, max_dim } => {
            let pf = load_problem(&file)?;
            let fan = enumerate_fan(&pf.polynomials(), &pf.context, FanOptions { max_dim })?;
            let report = fan.check_star_shaped(samples, seed);
            if json {
                out = pretty(&output::star_json(&report));
            } else {
                let _ = writeln!(out, "seed: {}", report.seed);
                let _ = writeln!(out, "samples: {}", report.samples_tested);
                let _ = writeln!(out, "violations: {}", report.violations.len());
                for v in &report.violations {
                    let _ = writeln!(
                        out,
                        "violation: sigma={} tau={} omega={} cell={{{}}}",
                        v.sigma, v.tau, v.omega, v.witness
                    );
                }
            }
        }
    }
    Ok(out)
}
