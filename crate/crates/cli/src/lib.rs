//! Batch driver for `qpol-core`: every capability as a subcommand with a
//! JSON, CSV or text report.

pub mod args;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::str::FromStr;
use std::time::Instant;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::{AnalyzeRequest, Ctx, OrbitRequest, RepRequest};
use qpol_core::{Algebra, Error};
use report::{RunReport, SCHEMA};


#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// Bad input is a flag error; anything else is a failed run.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                Error::InvalidArgument(_)
                | Error::UnknownGenerator { .. }
                | Error::Syntax { .. }
                | Error::AlgebraMismatch { .. }
                | Error::PhaseArity { .. },
            ) => 2,
            CliError::Core(_) => 1,
        }
    }
}

/// What a run produced: exit code, the rendered report for stdout (empty
/// when written to `--out`), and diagnostics for stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    let mut report = RunReport {
        schema: SCHEMA,
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        seed: commands::SEED,
        ..RunReport::default()
    };
    let result = context(&cli).and_then(|ctx| {
        report.algebra = ctx.algebra.to_string();
        report.q = ctx.q;
        report.q_exact = ctx.q_exact.as_ref().map(|q| q.to_string());
        report.truncation = ctx.trunc;
        dispatch(&ctx, &cli.command, &mut report)
    });
    if let Err(e) = result {
        let code = e.exit_code();
        return Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") };
    }
    if cli.global.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    report.finish();
    let rendered = match cli.global.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    let code = if report.passed { 0 } else { 1 };
    // Text reports already list their failures.
    let stderr: String = if cli.global.format == Format::Text && cli.global.out.is_none() {
        String::new()
    } else {
        report.failures.iter().map(|f| format!("failed: {f}\n")).collect()
    };
    match &cli.global.out {
        Some(path) => match std::fs::write(path, rendered) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr },
            Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) },
        },
        None => Outcome { code, stdout: rendered, stderr },
    }
}

fn context(cli: &Cli) -> Result<Ctx, CliError> {
    let g = &cli.global;
    let algebra = Algebra::from_str(&g.algebra).map_err(|e| CliError::Usage(e.to_string()))?;
    let (q_exact, q) = match (&g.q_exact, g.q) {
        (Some(s), q) => {
            let (r, f) = commands::parse_rational(s)?;
            if let Some(q) = q {
                if (q - f).abs() > 1e-15 {
                    return Err(CliError::Usage(format!("--q {q} disagrees with --q-exact {s}")));
                }
            }
            (Some(r), f)
        }
        (None, q) => (None, q.unwrap_or(0.5)),
    };
    if !(q > 0.0 && q < 1.0) {
        return Err(CliError::Usage(format!("q must lie in (0, 1), got {q}")));
    }
    if let Some(t) = g.tol {
        if !(t > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    if g.trunc < 2 {
        return Err(CliError::Usage("--trunc must be at least 2".into()));
    }
    Ok(Ctx { algebra, q, q_exact, trunc: g.trunc, tol: g.tol })
}

fn dispatch(ctx: &Ctx, cmd: &Command, report: &mut RunReport) -> Result<(), CliError> {
    match cmd {
        Command::Verify(a) => commands::verify(ctx, report, &RepRequest::from_args(a)),
        Command::NormalForm { expr } => commands::normal_form(ctx, report, expr),
        Command::Identity { lhs, rhs, transport } => {
            if *transport {
                commands::transport(report);
            }
            match (lhs, rhs) {
                (Some(l), Some(r)) => commands::identity(ctx, report, l, r),
                _ => Ok(()),
            }
        }
        Command::Fock { degree } => commands::fock(ctx, report, *degree),
        Command::Compose { rep, angles, fingerprint } => {
            commands::compose(ctx, report, rep.as_deref(), angles, *fingerprint)
        }
        Command::Orbit { x1, x2, classify, steps, sweep, seed, window, expect } => {
            let o = OrbitRequest {
                x1: *x1,
                x2: *x2,
                classify: *classify,
                steps,
                sweep: *sweep,
                seed: *seed,
                window: *window,
                expect: expect.as_deref(),
            };
            commands::orbit(ctx, report, &o)
        }
        Command::Spectrum(a) => commands::spectrum(ctx, report, &RepRequest::from_args(a)),
        Command::Analyze { target, against, against_phases, claims, checks, full } => {
            let req = AnalyzeRequest {
                rep: target
                    .rep
                    .as_deref()
                    .map(|r| RepRequest::plain(r, &target.phases, &target.angles, target.degree)),
                against: against.as_deref().map(|r| RepRequest::plain(r, against_phases, &[], target.degree)),
                claims: *claims,
                checks: *checks,
                full: *full,
            };
            commands::analyze(ctx, report, &req)
        }
        Command::Export { rep, generator, encoding, to } => {
            commands::export(ctx, report, &RepRequest::from_args(rep), generator, *encoding, to.as_deref())
        }
    }
}
