//! Command-line front end for `modloc-core`.
//!
//! Arguments are parsed into a [`Request`], [`run`] turns it into a
//! [`Report`], and [`emit`] serializes the report as JSON. Errors go to
//! standard error as one JSON line; the exit code is 0 on success, 1 when
//! a check fails, 2 for an unknown command, 3 for a missing or invalid
//! parameter and 4 for an internal inconsistency.

mod commands;
pub mod json;
mod report;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{run, VERSION};
pub use report::{Check, CliError, Command, Report, Request, Status};

#[derive(Debug, Parser)]
#[command(name = "modloc", version, about = "Exact local invariants of moduli of vector bundles on curves")]
struct Cli {
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MultCase {
    Split,
    TrivialRank2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ConeCase {
    Split,
    TrivialRank2,
    Su3Torus,
    Su3TwoSummand,
    CobleTrivial,
    CobleSplit,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Multiplicity at a split point or at the trivial rank-2 bundle.
    Mult {
        #[arg(long, value_enum, default_value = "split")]
        case: MultCase,
        #[arg(long)]
        g: u64,
        #[arg(long)]
        r1: Option<u64>,
        #[arg(long)]
        r2: Option<u64>,
    },
    /// Tangent cone presentation of a local model.
    TangentCone {
        #[arg(long, value_enum, default_value = "split")]
        case: ConeCase,
        #[arg(long)]
        g: Option<u64>,
        #[arg(long)]
        r1: Option<u64>,
        #[arg(long)]
        r2: Option<u64>,
    },
    /// Torus invariants of the Ext quiver at a split point.
    Invariants {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        r1: u64,
        #[arg(long)]
        r2: u64,
        #[arg(long)]
        r3: Option<u64>,
        #[arg(long, default_value_t = 3)]
        degree_bound: u64,
    },
    /// Closed-form corank next to the explicit contraction matrix.
    Corank {
        #[arg(long)]
        g: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        samples: u64,
    },
    /// Hilbert polynomial of the theta map and its degree.
    Hilbert,
    /// Multiplicity of the theta divisor at a split point.
    Theta {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        h: u64,
    },
    /// Run the full verification suite.
    Verify {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

impl Sub {
    fn into_request(self) -> Request {
        fn opt(r: Request, key: &str, v: Option<u64>) -> Request {
            match v {
                Some(v) => r.with(key, v),
                None => r,
            }
        }
        match self {
            Sub::Mult { case, g, r1, r2 } => {
                let r = Request::new(Command::Mult).with("case", value_name(case)).with("g", g);
                opt(opt(r, "r1", r1), "r2", r2)
            }
            Sub::TangentCone { case, g, r1, r2 } => {
                let r = Request::new(Command::TangentCone).with("case", value_name(case));
                opt(opt(opt(r, "g", g), "r1", r1), "r2", r2)
            }
            Sub::Invariants { g, r1, r2, r3, degree_bound } => {
                let r = Request::new(Command::Invariants).with("g", g).with("r1", r1).with("r2", r2);
                opt(r, "r3", r3).with("degree-bound", degree_bound)
            }
            Sub::Corank { g, seed, samples } => {
                Request::new(Command::Corank).with("g", g).with("seed", seed).with("samples", samples)
            }
            Sub::Hilbert => Request::new(Command::Hilbert),
            Sub::Theta { g, h } => Request::new(Command::Theta).with("g", g).with("h", h),
            Sub::Verify { seed, trials } => Request::new(Command::Verify).with("seed", seed).with("trials", trials),
        }
    }
}

/// UTF-8 JSON followed by a newline.
pub fn emit(report: &Report, pretty: bool) -> Vec<u8> {
    let mut out = if pretty {
        serde_json::to_vec_pretty(report).expect("report serializes")
    } else {
        serde_json::to_vec(report).expect("report serializes")
    };
    out.push(b'\n');
    out
}

fn clap_error(e: &clap::Error) -> CliError {
    let message = e
        .render()
        .to_string()
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .collect::<Vec<_>>()
        .join(" ");
    let message = message.trim_start_matches("error: ").to_string();
    let context = |kind: ContextKind| match e.get(kind) {
        Some(ContextValue::String(v)) => Some(v.clone()),
        Some(ContextValue::Strings(v)) => Some(v.join(", ")),
        _ => None,
    };
    match e.kind() {
        ErrorKind::InvalidSubcommand => {
            CliError::UnknownCommand(context(ContextKind::InvalidSubcommand).unwrap_or(message))
        }
        ErrorKind::MissingSubcommand | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            CliError::UnknownCommand(String::new())
        }
        ErrorKind::MissingRequiredArgument => CliError::MissingParameter(
            context(ContextKind::InvalidArg)
                .map(|a| a.split_whitespace().next().unwrap_or_default().trim_start_matches("--").to_string())
                .unwrap_or(message),
        ),
        _ => CliError::InvalidParameter(message),
    }
}

/// Parses `args`, runs the request, writes the report or error, and
/// returns the process exit code.
pub fn execute<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{}", e.render());
            return 0;
        }
        Err(e) => {
            let ce = clap_error(&e);
            let _ = writeln!(err, "{}", ce.to_json());
            return ce.exit_code();
        }
    };
    let request = cli.command.into_request();
    match run(&request) {
        Ok(report) => {
            let _ = out.write_all(&emit(&report, cli.pretty));
            let code = report.exit_code();
            if code == 4 {
                let failed: Vec<&str> =
                    report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
                let ce = CliError::Internal(format!("closed form disagrees with oracle: {}", failed.join(", ")));
                let _ = writeln!(err, "{}", ce.to_json());
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.exit_code()
        }
    }
}
