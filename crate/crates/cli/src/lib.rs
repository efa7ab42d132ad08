//! Command-line front-end: parses arguments, runs one subcommand and renders
//! its [`Report`](report::Report).
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (the first
//! witness goes to stderr), 2 on usage errors.

pub mod commands;
pub mod input;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use homotope_core::{Check, CheckReport, Coverage, Error, Side};

use crate::input::InputError;
use crate::report::Report;

#[derive(Debug)]
pub enum CmdError {
    Usage(String),
    Core(Error),
}

impl From<InputError> for CmdError {
    fn from(e: InputError) -> Self {
        CmdError::Usage(e.0)
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        CmdError::Core(e)
    }
}

/// Core errors that report a failed verification rather than bad input.
fn failed_check(e: &Error) -> Option<Check> {
    let (tuple, id) = match e {
        Error::NotMember { triple } => (triple.to_vec(), "membership"),
        Error::NotStructural { triple } => (triple.to_vec(), "structural"),
        Error::Axiom { tuple, .. } => (tuple.clone(), "axioms"),
        Error::Degenerate(_) | Error::Positivity(_) | Error::NotInner | Error::NotIsotropic(..) | Error::SingularForm => (vec![], "precondition"),
        _ => return None,
    };
    Some(Check::fail(id, 1, Coverage::Exhaustive, tuple, e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LieKind {
    O3,
    Orth,
    Gl,
}

#[derive(Parser, Debug)]
#[command(name = "homotope", version, about = "Exact checks for Jordan pairs, structure varieties and homotopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add wall time to the report (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Debug)]
struct AlphaArgs {
    /// Pair spec, e.g. `rect:R:2x3`, `sym:C:2`, `hermH:2`, `spin:2,1`, `spin:G:<file>`.
    #[arg(long)]
    pair: String,
    /// `family:<row>`, `zero`, `id`, an inline JSON matrix or `file:<path>`.
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    alpha: Option<String>,
    /// JSON file holding the matrix of the map; same as `--alpha file:<path>`.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    params: Option<String>,
}

impl AlphaArgs {
    fn alpha(&self) -> String {
        match (&self.alpha, &self.file) {
            (Some(a), _) => a.clone(),
            (None, Some(f)) => format!("file:{}", f.display()),
            (None, None) => unreachable!("clap requires one of --alpha and --file"),
        }
    }
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    /// Seeded draws per table row.
    #[arg(long, default_value_t = 5)]
    draws: usize,
    /// Random samples on top of exhaustive grids.
    #[arg(long, default_value_t = 100)]
    samples: usize,
}

#[derive(Subcommand, Debug)]
enum Suite {
    Classification(SuiteArgs),
    Positivity(SuiteArgs),
    Isomorphisms,
    Polarized(SuiteArgs),
    Associative(SuiteArgs),
}

#[derive(Subcommand, Debug)]
enum Command {
    /// (J1) exhaustively, (J2) exhaustively or sampled.
    Axioms {
        #[arg(long)]
        pair: String,
    },
    /// Structure-variety membership of one map.
    SvarCheck(AlphaArgs),
    /// A table row with given parameters, or seeded draws of every row for the pair.
    SvarFamily {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 5)]
        draws: usize,
    },
    /// Homotope JTS and LTS with their axioms.
    Homotope(AlphaArgs),
    /// Inner ideal from a descriptor (`--params`) or the image of `--alpha`.
    Ideal {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, value_enum, default_value_t = SideArg::Minus)]
        side: SideArg,
    },
    /// Pseudo-inverse and the split fibration of a homotopy.
    Fibration(AlphaArgs),
    /// Trace form, positivity and Backes inequality; self-adjointness of `--alpha`.
    Traceform {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        params: Option<String>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Seeded suites over many pairs at once.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Standard imbedding of the homotope LTS.
    Imbed(AlphaArgs),
    /// `o3` with `[a,b,c]`, `orth` with symmetric `A` (or `dia(...)`), `gl` with `A` of shape q x p.
    Liealg {
        #[arg(long, value_enum)]
        kind: LieKind,
        #[arg(long)]
        params: String,
    },
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn pair_of(spec: &str) -> Result<homotope_core::JordanPair, CmdError> {
    Ok(input::parse_pair(spec)?)
}

fn dispatch(cmd: &Command, seed: u64) -> (Option<String>, Result<commands::Output, CmdError>) {
    use commands as c;
    let with_pair = |spec: &str, f: &dyn Fn(&homotope_core::JordanPair) -> commands::CmdResult| (Some(spec.to_string()), pair_of(spec).and_then(|p| f(&p)));
    match cmd {
        Command::Axioms { pair } => with_pair(pair, &|p| c::axioms(p, seed)),
        Command::SvarCheck(a) => with_pair(&a.pair, &|p| c::svar_check(p, &a.pair, &a.alpha(), a.params.as_deref())),
        Command::SvarFamily { pair, alpha, params, draws } => {
            with_pair(pair, &|p| c::svar_family(p, pair, alpha.as_deref(), params.as_deref(), *draws, seed))
        }
        Command::Homotope(a) => with_pair(&a.pair, &|p| c::homotope(p, &a.pair, &a.alpha(), a.params.as_deref(), seed)),
        Command::Ideal { pair, params, alpha, side } => {
            let side = if *side == SideArg::Plus { Side::Plus } else { Side::Minus };
            with_pair(pair, &|p| c::ideal(p, pair, params.as_deref(), side, alpha.as_deref()))
        }
        Command::Fibration(a) => with_pair(&a.pair, &|p| c::fibration(p, &a.pair, &a.alpha(), a.params.as_deref())),
        Command::Traceform { pair, alpha, params, samples } => {
            with_pair(pair, &|p| c::traceform(p, pair, alpha.as_deref(), params.as_deref(), *samples, seed))
        }
        Command::Imbed(a) => with_pair(&a.pair, &|p| c::imbed(p, &a.pair, &a.alpha(), a.params.as_deref())),
        Command::Liealg { kind, params } => {
            let k = match kind {
                LieKind::O3 => "o3",
                LieKind::Orth => "orth",
                LieKind::Gl => "gl",
            };
            (None, c::liealg(k, params))
        }
        Command::Verify { suite } => (
            None,
            match suite {
                Suite::Classification(s) => suites::classification(s.max_size, s.draws, s.samples, seed),
                Suite::Positivity(s) => suites::positivity(s.max_size, s.samples, seed),
                Suite::Isomorphisms => suites::isomorphisms(),
                Suite::Polarized(s) => suites::polarized(s.max_size, s.draws, seed),
                Suite::Associative(s) => suites::associative(s.max_size, s.draws, seed),
            },
        ),
    }
}

fn usage(msg: impl std::fmt::Display) -> Outcome {
    Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

/// Runs one invocation; `argv[0]` is the program name.
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
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let (pair, result) = dispatch(&cli.command, cli.seed);
    let (checks, data) = match result {
        Ok(x) => x,
        Err(CmdError::Usage(m)) => return usage(m),
        Err(CmdError::Core(e)) => match failed_check(&e) {
            Some(c) => {
                let mut r = CheckReport::new();
                r.push(c);
                (r, serde_json::Value::Null)
            }
            None => return usage(e),
        },
    };
    let mut report = Report::new(echo, pair, cli.seed, checks, data);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    let mut stderr = String::new();
    if let Some(c) = report.first_failure() {
        let w = c.witness.as_ref();
        stderr = format!(
            "check {} failed at {:?}: {}\n",
            c.id,
            w.map(|w| w.tuple.clone()).unwrap_or_default(),
            w.map(|w| w.detail.as_str()).unwrap_or("")
        );
    }
    let code = if report.passed { 0 } else { 1 };
    let stdout = match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => String::new(),
            Err(e) => return usage(format!("cannot write {}: {e}", path.display())),
        },
        None => text,
    };
    Outcome { code, stdout, stderr }
}
