//! Command-line front end: `verify`, `gen`, `analyze` and `bench`.
//!
//! Every command writes one JSON document to stdout. Failures write
//! `{"error": {"kind": ..., "message": ...}}` to stderr and exit with 2.
//! `verify` exits 1 on rejection.

pub mod bench;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use freivalds::analysis::{max_dimension, DEFAULT_BUDGET};
use freivalds::format::{parse_matrix, write_matrix, write_vector};
use freivalds::{
    analyze, difference_profile, generate_instance, verify, AnalyzeOptions, DistSpec, Error,
    InstanceSpec, Matrix, Mode, RingSpec, Verdict, VerifyConfig,
};
use serde::Serialize;

use crate::bench::{run_bench, BenchConfig, BenchTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "freivalds", version, about = "Randomized matrix product verification")]
pub struct Cli {
    /// Emit JSON (the only output mode; accepted for explicitness).
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether C = AB with k randomized iterations.
    Verify(VerifyArgs),
    /// Generate an instance (A, B, C) with a chosen difference structure.
    Gen(GenArgs),
    /// Exact and/or empirical false-accept probability of an instance.
    Analyze(AnalyzeArgs),
    /// Time the cubic check against the randomized one.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InstanceFiles {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub c: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub files: InstanceFiles,
    #[arg(short = 'k', long = "iterations", default_value_t = 20)]
    pub k: u32,
    #[arg(long, default_value = "u01")]
    pub dist: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Where to write the witness on rejection (default: next to C).
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "int64")]
    pub ring: String,
    #[arg(long, default_value = "equal")]
    pub mode: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of nonzero entries of v in rank-one mode.
    #[arg(long)]
    pub columns: Option<usize>,
    /// Output directory for A.freimat, B.freimat, C.freimat and profile.json.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub files: InstanceFiles,
    #[arg(long, default_value = "u01")]
    pub dist: String,
    /// Enumerate the whole sample space.
    #[arg(long)]
    pub exact: bool,
    /// Monte Carlo trials.
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of vectors to enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "128,256,512,1024")]
    pub sizes: Vec<usize>,
    #[arg(short = 'k', long = "iterations", default_value_t = 10)]
    pub k: u32,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the table as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io { path: PathBuf, source: std::io::Error },
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    suggested_max_n: Option<usize>,
}

#[derive(Serialize)]
struct ErrorEnvelope {
    error: ErrorBody,
}

impl CliError {
    pub fn kind(&self) -> &str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Io { .. } => "Io",
            CliError::Usage(_) => "Usage",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Io { path, source } => format!("{}: {source}", path.display()),
            CliError::Usage(m) => m.clone(),
        }
    }

    fn to_json(&self, suggested_max_n: Option<usize>) -> String {
        let env = ErrorEnvelope {
            error: ErrorBody {
                kind: self.kind().to_string(),
                message: self.message(),
                suggested_max_n,
            },
        };
        serde_json::to_string(&env).expect("serializable")
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_matrix(path: &Path) -> CliResult<Matrix> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    Ok(parse_matrix(&text)?)
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// What a command produced: stdout text and exit code.
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

#[derive(Serialize)]
struct VerifyJson {
    outcome: &'static str,
    n: usize,
    ring: String,
    dist: String,
    iterations: u32,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_iteration: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mismatch_row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_file: Option<String>,
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<Output> {
    let a = read_matrix(&args.files.a)?;
    let b = read_matrix(&args.files.b)?;
    let c = read_matrix(&args.files.c)?;
    let dist: DistSpec = args.dist.parse()?;
    let cfg = VerifyConfig::new(args.k, args.seed, dist.build(c.ring())?);
    let verdict = verify(&a, &b, &c, &cfg)?;
    let mut out = VerifyJson {
        outcome: "accept",
        n: c.rows(),
        ring: c.ring().to_string(),
        dist: dist.to_string(),
        iterations: args.k,
        seed: args.seed,
        error_bound: None,
        witness_iteration: None,
        mismatch_row: None,
        witness_file: None,
    };
    let code = match verdict {
        Verdict::Accept { error_bound } => {
            out.error_bound = Some(error_bound.to_string());
            EXIT_OK
        }
        Verdict::Reject {
            witness,
            witness_iteration,
            mismatch_row,
        } => {
            let path = args.witness.clone().unwrap_or_else(|| {
                let mut p = args.files.c.clone().into_os_string();
                p.push(".witness");
                PathBuf::from(p)
            });
            write_file(&path, &write_vector(&witness))?;
            out.outcome = "reject";
            out.witness_iteration = Some(witness_iteration);
            out.mismatch_row = Some(mismatch_row);
            out.witness_file = Some(path.display().to_string());
            EXIT_REJECT
        }
    };
    Ok(Output {
        stdout: to_json(&out),
        code,
    })
}

#[derive(Serialize)]
struct ProfileJson {
    y_size: usize,
    entries: usize,
    mode: String,
}

#[derive(Serialize)]
struct GenProfileJson {
    mode: String,
    n: usize,
    ring: String,
    seed: u64,
    y_size: usize,
    entries: usize,
    differing_columns: Vec<usize>,
    difference_rank: Option<usize>,
}

#[derive(Serialize)]
struct GenJson {
    a: String,
    b: String,
    c: String,
    profile_file: String,
    profile: GenProfileJson,
}

fn cmd_gen(args: &GenArgs) -> CliResult<Output> {
    let ring: RingSpec = args.ring.parse()?;
    let mode: Mode = args.mode.parse()?;
    let mut spec = InstanceSpec::new(args.n, ring, mode, args.seed);
    if let Some(k) = args.columns {
        spec = spec.with_rank_one_columns(k);
    }
    let (a, b, c) = generate_instance(&spec)?;
    let profile = difference_profile(&a, &b, &c)?;

    fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        path: args.out.clone(),
        source,
    })?;
    let mut paths = Vec::new();
    for (name, m) in [("A.freimat", &a), ("B.freimat", &b), ("C.freimat", &c)] {
        let p = args.out.join(name);
        write_file(&p, &write_matrix(m))?;
        paths.push(p.display().to_string());
    }
    let sidecar = GenProfileJson {
        mode: mode.name().to_string(),
        n: args.n,
        ring: ring.to_string(),
        seed: args.seed,
        y_size: profile.y_size(),
        entries: profile.differing_entries,
        differing_columns: profile.differing_columns.clone(),
        difference_rank: profile.difference_rank,
    };
    let profile_path = args.out.join("profile.json");
    write_file(&profile_path, &to_json(&sidecar))?;
    let out = GenJson {
        c: paths.pop().unwrap(),
        b: paths.pop().unwrap(),
        a: paths.pop().unwrap(),
        profile_file: profile_path.display().to_string(),
        profile: sidecar,
    };
    Ok(Output {
        stdout: to_json(&out),
        code: EXIT_OK,
    })
}

#[derive(Serialize)]
struct EmpiricalJson {
    rate: f64,
    trials: u64,
    ci99: [f64; 2],
}

#[derive(Serialize)]
struct ReportJson {
    exact_fap: Option<String>,
    empirical: Option<EmpiricalJson>,
    bound: String,
    profile: ProfileJson,
}

fn cmd_analyze(args: &AnalyzeArgs) -> CliResult<Output> {
    if !args.exact && args.trials.is_none() {
        return Err(CliError::Usage("analyze needs --exact and/or --trials".into()));
    }
    let a = read_matrix(&args.files.a)?;
    let b = read_matrix(&args.files.b)?;
    let c = read_matrix(&args.files.c)?;
    let dist = args.dist.parse::<DistSpec>()?.build(c.ring())?;
    let opts = AnalyzeOptions {
        exact_budget: args.exact.then_some(args.budget),
        empirical: args.trials.map(|t| (t, args.seed)),
    };
    let report = analyze(&a, &b, &c, &dist, opts)?;
    let out = ReportJson {
        exact_fap: report.exact_fap.as_ref().map(ToString::to_string),
        empirical: report.empirical.as_ref().map(|e| EmpiricalJson {
            rate: e.rate,
            trials: e.trials,
            ci99: [e.ci99.0, e.ci99.1],
        }),
        bound: report.per_iteration_bound.to_string(),
        profile: ProfileJson {
            y_size: report.instance_profile.y_size(),
            entries: report.instance_profile.differing_entries,
            mode: report.instance_profile.kind().to_string(),
        },
    };
    Ok(Output {
        stdout: to_json(&out),
        code: EXIT_OK,
    })
}

fn bench_table(args: &BenchArgs) -> CliResult<BenchTable> {
    let cfg = BenchConfig {
        sizes: args.sizes.clone(),
        k: args.k,
        repeats: args.repeats,
        seed: args.seed,
    };
    Ok(run_bench(&cfg)?)
}

fn cmd_bench(args: &BenchArgs) -> CliResult<Output> {
    let table = bench_table(args)?;
    if let Some(path) = &args.csv {
        write_file(path, &table.to_csv())?;
    }
    Ok(Output {
        stdout: to_json(&table),
        code: EXIT_OK,
    })
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> std::result::Result<Output, (CliError, Option<usize>)> {
    let res = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Bench(a) => cmd_bench(a),
    };
    res.map_err(|e| {
        let hint = match (&e, &cli.command) {
            (CliError::Lib(Error::BudgetExceeded { budget, .. }), Command::Analyze(args)) => {
                args.dist
                    .parse::<DistSpec>()
                    .ok()
                    .and_then(|d| {
                        let ring = read_matrix(&args.files.c).ok()?.ring();
                        d.build(ring).ok()
                    })
                    .map(|d| max_dimension(d.len(), *budget))
            }
            _ => None,
        };
        (e, hint)
    })
}

/// Parses `argv`, runs the command and returns `(stdout, stderr, exit code)`.
pub fn run<I, T>(argv: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (e.to_string(), String::new(), EXIT_OK),
                _ => {
                    let err = CliError::Usage(e.to_string().trim_end().to_string());
                    (String::new(), err.to_json(None) + "\n", EXIT_ERROR)
                }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => (out.stdout, String::new(), out.code),
        Err((e, hint)) => (String::new(), e.to_json(hint) + "\n", EXIT_ERROR),
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/benchmarks.md")]
mod book_benchmarks {}
