//! Command-line front end: parse algebra definitions, run the verification
//! pipelines, and emit human-readable and machine-readable reports.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use gdconf::cli::{run, Command, Options};

#[derive(Parser)]
#[command(
    name = "gdconf",
    about = "Exact checks and constructions for Gelfand-Dorfman superalgebras, \
             quadratic Lie conformal superalgebras, differential Poisson envelopes, \
             and finite faithful conformal representations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Clone)]
struct AlgebraArgs {
    /// Built-in fixture name or path to an algebra file
    #[arg(long)]
    algebra: String,
    /// Fill the bracket with the super commutator of the Novikov product
    #[arg(long)]
    commutator: bool,
}

#[derive(Args, Clone)]
struct WindowArgs {
    /// Highest derivative order D kept in the window
    #[arg(long = "diff-order", default_value_t = 2)]
    diff_order: u32,
    /// Highest monomial degree R kept in the window
    #[arg(long, default_value_t = 4)]
    degree: u32,
    /// Highest bracket nesting depth B (free-Poisson mode)
    #[arg(long, default_value_t = 2)]
    depth: u32,
    /// Re-run at degree R+1 and report both windows
    #[arg(long)]
    stabilize: bool,
}

#[derive(Args, Clone)]
struct ReportArgs {
    /// Write the machine-readable report to this file
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Sub {
    /// Check the super Novikov axioms of the ∘-product
    CheckNovikov {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        rep: ReportArgs,
    },
    /// Check Novikov, Lie and the GD compatibility identity
    CheckGd {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        rep: ReportArgs,
    },
    /// Print the quadratic λ-bracket table of a GD-superalgebra
    BuildConformal {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        rep: ReportArgs,
    },
    /// Verify skew-symmetry and the conformal Jacobi identity of the
    /// quadratic table
    CheckConformal {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        rep: ReportArgs,
    },
    /// Brute-force loop-algebra check of the same axioms
    LoopOracle {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Degree cap on the loop variable
        #[arg(long, default_value_t = 3)]
        cap: i64,
        #[command(flatten)]
        rep: ReportArgs,
    },
    /// Symbolic verification of the bracket identities behind the envelope
    CheckLemmas {
        /// Derivative-order cap for the symbolic sweep
        #[arg(long = "order-cap", default_value_t = 4)]
        order_cap: u32,
        #[command(flatten)]
        rep: ReportArgs,
    },
    /// Build the truncated enveloping differential algebra of a Novikov
    /// superalgebra and verify the generator reductions
    BuildEnvelope {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        win: WindowArgs,
        #[command(flatten)]
        rep: ReportArgs,
    },
    /// Exceptionality certificate: generators inside the defining ideal of
    /// the free differential Poisson envelope
    Speciality {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        win: WindowArgs,
        #[command(flatten)]
        rep: ReportArgs,
    },
    /// Build the finite faithful conformal module of a special
    /// GD-superalgebra
    BuildFfr {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        win: WindowArgs,
        #[command(flatten)]
        rep: ReportArgs,
    },
    /// Module and faithfulness checks for the regular representation, plus
    /// the twisted-representation and cocycle suite
    CheckRepr {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[command(flatten)]
        rep: ReportArgs,
    },
    /// Verify the conformal matrix algebra gc_{n|m} on monomial units
    CheckGc {
        /// Even block size n
        #[arg(long, default_value_t = 1)]
        even: usize,
        /// Odd block size m
        #[arg(long, default_value_t = 0)]
        odd: usize,
        /// Degree cap in the matrix variable
        #[arg(long, default_value_t = 2)]
        cap: u32,
        #[command(flatten)]
        rep: ReportArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = Options::default();
    let (cmd, report_path) = match &cli.command {
        Sub::CheckNovikov { alg, rep } => {
            apply_alg(&mut opts, alg);
            (Command::CheckNovikov, rep.report.clone())
        }
        Sub::CheckGd { alg, rep } => {
            apply_alg(&mut opts, alg);
            (Command::CheckGd, rep.report.clone())
        }
        Sub::BuildConformal { alg, rep } => {
            apply_alg(&mut opts, alg);
            (Command::BuildConformal, rep.report.clone())
        }
        Sub::CheckConformal { alg, rep } => {
            apply_alg(&mut opts, alg);
            (Command::CheckConformal, rep.report.clone())
        }
        Sub::LoopOracle { alg, cap, rep } => {
            apply_alg(&mut opts, alg);
            opts.cap = *cap;
            (Command::LoopOracle, rep.report.clone())
        }
        Sub::CheckLemmas { order_cap, rep } => {
            opts.order_cap = *order_cap;
            (Command::CheckLemmas, rep.report.clone())
        }
        Sub::BuildEnvelope { alg, win, rep } => {
            apply_alg(&mut opts, alg);
            apply_win(&mut opts, win);
            (Command::BuildEnvelope, rep.report.clone())
        }
        Sub::Speciality { alg, win, rep } => {
            apply_alg(&mut opts, alg);
            apply_win(&mut opts, win);
            (Command::Speciality, rep.report.clone())
        }
        Sub::BuildFfr { alg, win, rep } => {
            apply_alg(&mut opts, alg);
            apply_win(&mut opts, win);
            (Command::BuildFfr, rep.report.clone())
        }
        Sub::CheckRepr { alg, rep } => {
            apply_alg(&mut opts, alg);
            (Command::CheckRepr, rep.report.clone())
        }
        Sub::CheckGc { even, odd, cap, rep } => {
            opts.gc_even = *even;
            opts.gc_odd = *odd;
            opts.gc_cap = *cap;
            (Command::CheckGc, rep.report.clone())
        }
    };
    let start = Instant::now();
    let report = run(cmd, &opts);
    let elapsed = start.elapsed();
    // human summary to stdout; timing is never part of the report file
    print!("{}", report.to_text());
    eprintln!("wall-clock: {:.3}s", elapsed.as_secs_f64());
    if let Some(path) = report_path {
        if let Err(e) = std::fs::write(&path, report.to_text()) {
            eprintln!("could not write report to {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit as u8)
}

fn apply_alg(opts: &mut Options, alg: &AlgebraArgs) {
    opts.algebra = Some(alg.algebra.clone());
    opts.commutator = alg.commutator;
}

fn apply_win(opts: &mut Options, win: &WindowArgs) {
    opts.diff_order = win.diff_order;
    opts.degree = win.degree;
    opts.depth = win.depth;
    opts.stabilize = win.stabilize;
}
