//! Command-line front end. Every subcommand reads one JSON request (or a few
//! scalar flags) and writes one JSON document:
//!
//! ```json
//! {"status": "ok", "result": ..., "assumptions": [...], "warnings": [...]}
//! ```
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage error.

mod commands;
mod schema;

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use ruled_moduli::{Error, Warning};

pub use schema::schema_for;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ruled-moduli",
    version,
    about = "Exact invariants, walls and dimension counts for rank-two bundles on blown-up ruled surfaces"
)]
struct Cli {
    /// Print the request and result schemas of a subcommand and exit.
    #[arg(long, value_name = "SUBCOMMAND")]
    schema: Option<Topic>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Args)]
struct Io {
    /// Request file; standard input when absent or `-`.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: Out,
}

#[derive(Debug, Args)]
struct Out {
    /// Write the JSON document here instead of standard output.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler characteristic of a divisor.
    Rr(Io),
    /// Intersection number of two divisors.
    Intersect(Io),
    /// Canonical class and its square.
    Canonical(Io),
    /// Twist Chern data by a divisor (default: into normal form).
    Twist(Io),
    /// zeta, length of Z, r0 and the lower bounds on r for an extension.
    Invariants(Io),
    /// Walls separating the fibre class from a polarization.
    Walls(Io),
    /// Suitability of a polarization.
    Suitable(Io),
    /// Certificate that d_V = 0 for every stable bundle.
    #[command(name = "certify-dv0")]
    CertifyDv0(Io),
    /// Dimension counts of extension families.
    FamilyDim {
        #[command(subcommand)]
        variant: FamilyDim,
    },
    /// Expected dimension of the moduli space.
    ModuliDim(Io),
    /// Birational structure of the moduli space.
    Classify(Io),
    /// Box-bounded search for destabilizing line bundles.
    Stability(Io),
}

#[derive(Debug, Subcommand)]
enum FamilyDim {
    /// Even fibre degree family at a given (r1, l, h0).
    C1f0 {
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long, allow_hyphen_values = true)]
        eta: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        eps: i64,
        #[arg(long, allow_hyphen_values = true)]
        r1: i64,
        /// Exceptional multiplicities, comma separated; zeros when absent.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        ell: Vec<i64>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        h0: i64,
        #[command(flatten)]
        out: Out,
    },
    /// Odd fibre degree family.
    C1f1 {
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        beta: i64,
        #[arg(long)]
        rho: usize,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
        #[command(flatten)]
        out: Out,
    },
    /// The worked example on a Hirzebruch surface.
    Example {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        e: i64,
        #[command(flatten)]
        out: Out,
    },
    /// Maximize the even fibre degree family dimension.
    Maximize {
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long, allow_hyphen_values = true)]
        eta: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        eps: i64,
        #[command(flatten)]
        out: Out,
    },
}

/// Subcommands that have schemas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Topic {
    Rr,
    Intersect,
    Canonical,
    Twist,
    Invariants,
    Walls,
    Suitable,
    #[value(name = "certify-dv0")]
    CertifyDv0,
    FamilyDim,
    ModuliDim,
    Classify,
    Stability,
}

/// A successful computation before it is wrapped in the envelope.
pub(crate) struct Report {
    pub result: Value,
    pub assumptions: Vec<Value>,
    pub warnings: Vec<Warning>,
}

impl Report {
    pub fn new(result: impl Serialize) -> Self {
        Report { result: to_value(result), assumptions: Vec::new(), warnings: Vec::new() }
    }

    pub fn with_warnings(mut self, warnings: impl IntoIterator<Item = Warning>) -> Self {
        self.warnings.extend(warnings);
        self
    }

    pub fn with_assumptions<T: Serialize>(mut self, items: impl IntoIterator<Item = T>) -> Self {
        self.assumptions.extend(items.into_iter().map(to_value));
        self
    }
}

pub(crate) fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("result types serialize to JSON")
}

#[derive(Serialize)]
struct Envelope<'a> {
    status: &'static str,
    result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
    assumptions: &'a [Value],
    warnings: &'a [Warning],
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

/// A request that could not be parsed.
pub(crate) struct UsageError {
    pub message: String,
    pub topic: Option<Topic>,
}

impl UsageError {
    pub fn new(message: impl Into<String>, topic: Option<Topic>) -> Self {
        UsageError { message: message.into(), topic }
    }
}

pub(crate) enum Failure {
    Usage(UsageError),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e)
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let to_stdout = matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = err.render().to_string();
            if to_stdout {
                let _ = stdout.write_all(text.as_bytes());
                return EXIT_OK;
            }
            let _ = stderr.write_all(text.as_bytes());
            let _ = writeln!(stderr, "run with --schema <SUBCOMMAND> for the request formats");
            return EXIT_USAGE;
        }
    };

    if let Some(topic) = cli.schema {
        let _ = writeln!(stdout, "{}", pretty(&schema_for(topic)));
        return EXIT_OK;
    }
    let Some(command) = cli.command else {
        let _ = writeln!(stderr, "error: a subcommand is required; see --help");
        return EXIT_USAGE;
    };

    let (outcome, output) = dispatch(command, stdin);
    let (code, document) = match outcome {
        Ok(report) => (
            EXIT_OK,
            pretty(&Envelope {
                status: "ok",
                result: &report.result,
                error: None,
                assumptions: &report.assumptions,
                warnings: &report.warnings,
            }),
        ),
        Err(Failure::Domain(err)) => (
            EXIT_DOMAIN,
            pretty(&Envelope {
                status: "error",
                result: &Value::Null,
                error: Some(ErrorBody { kind: err.kind(), message: err.to_string() }),
                assumptions: &[],
                warnings: &[],
            }),
        ),
        Err(Failure::Usage(err)) => {
            let _ = writeln!(stderr, "error: {}", err.message);
            if let Some(topic) = err.topic {
                let _ = writeln!(stderr, "expected request format:\n{}", pretty(&schema_for(topic)));
            }
            return EXIT_USAGE;
        }
    };
    match emit(&document, output.as_deref(), stdout) {
        Ok(()) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("envelope serializes")
}

fn emit(document: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, format!("{document}\n")).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => writeln!(stdout, "{document}").map_err(|e| format!("cannot write output: {e}")),
    }
}

fn read_request(io: &Io, stdin: &mut dyn Read, topic: Topic) -> Result<String, UsageError> {
    let mut text = String::new();
    match io.input.as_deref() {
        Some(p) if p != Path::new("-") => {
            text = fs::read_to_string(p)
                .map_err(|e| UsageError::new(format!("cannot read {}: {e}", p.display()), None))?;
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| UsageError::new(format!("cannot read standard input: {e}"), None))?;
        }
    }
    if text.trim().is_empty() {
        return Err(UsageError::new("empty request", Some(topic)));
    }
    Ok(text)
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> (Result<Report, Failure>, Option<PathBuf>) {
    use commands as c;
    let json = |io: Io, topic: Topic, f: fn(&str, Topic) -> Result<Report, Failure>, stdin: &mut dyn Read| {
        let out = io.out.output.clone();
        let res = read_request(&io, stdin, topic).map_err(Failure::from).and_then(|t| f(&t, topic));
        (res, out)
    };
    match command {
        Command::Rr(io) => json(io, Topic::Rr, c::rr, stdin),
        Command::Intersect(io) => json(io, Topic::Intersect, c::intersect, stdin),
        Command::Canonical(io) => json(io, Topic::Canonical, c::canonical, stdin),
        Command::Twist(io) => json(io, Topic::Twist, c::twist, stdin),
        Command::Invariants(io) => json(io, Topic::Invariants, c::invariants, stdin),
        Command::Walls(io) => json(io, Topic::Walls, c::walls, stdin),
        Command::Suitable(io) => json(io, Topic::Suitable, c::suitable, stdin),
        Command::CertifyDv0(io) => json(io, Topic::CertifyDv0, c::certify_dv0, stdin),
        Command::ModuliDim(io) => json(io, Topic::ModuliDim, c::moduli_dim, stdin),
        Command::Classify(io) => json(io, Topic::Classify, c::classify, stdin),
        Command::Stability(io) => json(io, Topic::Stability, c::stability, stdin),
        Command::FamilyDim { variant } => match variant {
            FamilyDim::C1f0 { g, eta, m, n, eps, r1, ell, h0, out } => {
                (c::family_c1f0(g, eta, m, n, eps, r1, ell, h0), out.output)
            }
            FamilyDim::C1f1 { g, e, beta, rho, c2, out } => (c::family_c1f1(g, e, beta, rho, c2), out.output),
            FamilyDim::Example { n, e, out } => (c::family_example(n, e), out.output),
            FamilyDim::Maximize { g, eta, m, n, eps, out } => (c::family_maximize(g, eta, m, n, eps), out.output),
        },
    }
}
