//! `sdesign`: build, search for, and check spherical t-designs.
//!
//! Results go to stdout as `key: value` lines. Residual tables and search
//! progress go to stderr. Exit status is 0 on success, 1 when a check or search
//! fails, and 2 for bad usage or unreadable input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sphere_designs::construct::{self, CATALOG};
use sphere_designs::invariants::{e_t_series, predicted_n, prediction_caveat};
use sphere_designs::io::{format_design, read_design, write_design};
use sphere_designs::optimize::{self, pattern_search_with_progress, SearchSpec};
use sphere_designs::quadrature::{bajnok_product, interval_design, lower_bound, union};
use sphere_designs::{verified_strength, Design, Error, MomentReport};

const DEFAULT_TOL: f64 = 1e-24;

#[derive(Parser)]
#[command(name = "sdesign", version, about = "Spherical t-designs on S²")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a design file is a t-design.
    Verify {
        file: PathBuf,
        /// Strength to require; defaults to the file's `t` header.
        #[arg(long)]
        t: Option<usize>,
        /// Per-degree residual sum-of-squares threshold.
        #[arg(long, env = "SDESIGN_TOL", default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = 25)]
        max_t: usize,
    },
    /// Largest strength a design file verifies at.
    Strength {
        file: PathBuf,
        #[arg(long, default_value_t = 25)]
        max_t: usize,
        #[arg(long, env = "SDESIGN_TOL", default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Write a named design.
    Construct {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Polish low-precision seeds before writing.
        #[arg(long)]
        polish: bool,
    },
    /// List the named designs.
    List,
    /// Search for a symmetric design.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "[1]+")]
        group: String,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20_000)]
        max_iters: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Refine a nearly exact symmetric design.
    Polish {
        file: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Predicted size of a tetrahedral orbit-union t-design.
    Predict {
        #[arg(long)]
        t: usize,
    },
    /// Lower bound on the size of a t-design.
    Bound {
        #[arg(long)]
        t: usize,
    },
    /// Regular m-gons at the nodes of an n-point interval t-design.
    Product {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union of two designs.
    Combine {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure that maps to exit status 2.
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<bool, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Verify {
            file,
            t,
            tol,
            max_t,
        } => verify(&file, t, tol, max_t),
        Command::Strength { file, max_t, tol } => strength(&file, max_t, tol),
        Command::Construct { name, out, polish } => construct_named(&name, out.as_deref(), polish),
        Command::List => {
            for e in CATALOG {
                println!(
                    "{}: n={} t={} tol={:e} {}",
                    e.name, e.n, e.strength, e.verify_tol, e.summary
                );
            }
            Ok(true)
        }
        Command::Search {
            n,
            t,
            group,
            restarts,
            seed,
            max_iters,
            out,
        } => {
            let spec = SearchSpec {
                restarts,
                seed,
                max_iters,
                ..SearchSpec::new(n, t, group)
            };
            search(&spec, out.as_deref())
        }
        Command::Polish { file, t, out } => polish(&file, t, out.as_deref()),
        Command::Predict { t } => {
            let n = predicted_n(t)
                .ok_or_else(|| UsageError(format!("predictions start at t = 3, got {t}")))?;
            println!("t: {t}");
            println!("e_t: {}", e_t_series(t));
            println!("predicted_n: {n}");
            if let Some(note) = prediction_caveat(t) {
                println!("caveat: {note}");
            }
            Ok(true)
        }
        Command::Bound { t } => {
            println!("t: {t}");
            println!("lower_bound: {}", lower_bound(t));
            Ok(true)
        }
        Command::Product { n, t, m, out } => {
            let iv = match interval_design(n, t) {
                Ok(iv) => iv,
                Err(Error::IntervalNoConvergence { best_residual }) => {
                    println!("converged: false");
                    println!("best_residual: {best_residual:e}");
                    return Ok(false);
                }
                Err(e) => return Err(e.into()),
            };
            let design = bajnok_product(&iv, m)?;
            println!("interval_nodes: {}", join(iv.points()));
            emit(&design, out.as_deref())?;
            Ok(true)
        }
        Command::Combine { a, b, out } => {
            let design = union(&load(&a)?, &load(&b)?)?;
            emit(&design, out.as_deref())?;
            Ok(true)
        }
    }
}

fn load(path: &Path) -> Result<Design, UsageError> {
    read_design(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

/// Writes the design to `out`, or to stdout when no path is given.
fn emit(design: &Design, out: Option<&Path>) -> Result<(), UsageError> {
    match out {
        Some(path) => {
            write_design(path, design)
                .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            println!("n: {}", design.n());
            println!("out: {}", path.display());
        }
        None => print!("{}", format_design(design)),
    }
    Ok(())
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:.17e}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_table(report: &MomentReport) {
    eprintln!("{:>6}  {:>12}  {:>12}", "degree", "sum_sq", "max_abs");
    for row in &report.table {
        let max = row
            .residuals
            .iter()
            .map(|(_, r)| r.abs())
            .fold(0.0, f64::max);
        eprintln!("{:>6}  {:>12.3e}  {:>12.3e}", row.degree, row.sum_sq, max);
    }
}

fn print_report(report: &MomentReport) {
    println!("verified_t: {}", report.verified_t);
    println!("tolerance: {:e}", report.tolerance);
    println!("discrepancy: {:e}", report.discrepancy);
    println!("criterion: {:e}", report.criterion);
    print_table(report);
}

fn verify(file: &Path, t: Option<usize>, tol: f64, max_t: usize) -> CmdResult {
    let design = load(file)?;
    let t = t
        .or(design.meta.target_t)
        .ok_or_else(|| UsageError("no --t given and the file has no t header".into()))?;
    let report = verified_strength(&design, max_t.max(t).max(1), tol);
    let pass = report.verified_t >= t;
    println!("n: {}", design.n());
    println!("requested_t: {t}");
    print_report(&report);
    println!("result: {}", if pass { "pass" } else { "fail" });
    Ok(pass)
}

fn strength(file: &Path, max_t: usize, tol: f64) -> CmdResult {
    let design = load(file)?;
    let report = verified_strength(&design, max_t.max(1), tol);
    println!("n: {}", design.n());
    println!("strength: {}", report.verified_t);
    print_report(&report);
    Ok(true)
}

fn construct_named(name: &str, out: Option<&Path>, polish: bool) -> CmdResult {
    let mut design = construct::named(name)?;
    if polish && design.meta.requires_polish {
        let t = design.meta.target_t.unwrap_or(1);
        let result = optimize::polish(&design, t)?;
        eprintln!("polished: criterion {:e}", result.criterion);
        design = result.design;
    }
    if out.is_some() {
        println!("name: {name}");
        if let Some(t) = design.meta.target_t {
            println!("t: {t}");
        }
        if let Some(g) = &design.meta.group_label {
            println!("group: {g}");
        }
    }
    emit(&design, out)?;
    Ok(true)
}

fn search(spec: &SearchSpec, out: Option<&Path>) -> CmdResult {
    let result = pattern_search_with_progress(spec, None, |p| {
        eprintln!(
            "restart {} iteration {}: criterion {:e}",
            p.restart, p.iteration, p.criterion
        );
    });
    let result = match result {
        Ok(r) => r,
        Err(e @ Error::UnreachablePointCount { .. }) => {
            println!("converged: false");
            println!("reason: {e}");
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    println!("converged: {}", result.converged);
    println!("search_criterion: {:e}", result.criterion);
    println!("restarts_used: {}", result.restarts_used);
    println!("iterations: {}", result.iterations);
    print_report(&result.report);
    if result.converged {
        if let Some(path) = out {
            emit(&result.design, Some(path))?;
        }
    }
    Ok(result.converged)
}

fn polish(file: &Path, t: Option<usize>, out: Option<&Path>) -> CmdResult {
    let design = load(file)?;
    let t = t
        .or(design.meta.target_t)
        .ok_or_else(|| UsageError("no --t given and the file has no t header".into()))?;
    let result = optimize::polish(&design, t)?;
    let pass = result.report.verified_t >= t;
    println!("search_criterion: {:e}", result.criterion);
    print_report(&result.report);
    if let Some(path) = out {
        emit(&result.design, Some(path))?;
    }
    Ok(pass)
}
