//! Argument parsing for the `ffdist` binary.
//!
//! Both `ffdist verify <suite> [flags]` and `ffdist <suite> [flags]` are accepted.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{CommandFactory, Parser, ValueEnum};
use ffdist_core::field::is_prime;
use ffdist_core::{Error, OutputFormat, Suite, SuiteConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Identities,
    SphereDecay,
    Incidence,
    Coverage,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::SphereDecay => Suite::SphereDecay,
            SuiteArg::Incidence => Suite::Incidence,
            SuiteArg::Coverage => Suite::Coverage,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> OutputFormat {
        match f {
            FormatArg::Jsonl => OutputFormat::Jsonl,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

fn prime(s: &str) -> Result<u64, String> {
    let q: u64 = s.trim().parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if !is_prime(q) {
        return Err(format!("{q} not prime"));
    }
    Ok(q)
}

/// Numerical verification suites for distance sets over prime fields.
#[derive(Debug, Parser)]
#[command(name = "ffdist", version)]
struct Args {
    /// Suite to run.
    #[arg(value_enum)]
    suite: SuiteArg,

    /// Prime field sizes.
    #[arg(long = "q", value_delimiter = ',', value_parser = prime, default_values = ["7", "13", "19", "31"])]
    q_list: Vec<u64>,

    /// Dimensions.
    #[arg(long = "d", value_delimiter = ',', default_values = ["2", "3"])]
    d_list: Vec<usize>,

    /// Norm exponents.
    #[arg(long = "n", value_delimiter = ',', default_values = ["2", "3"])]
    n_list: Vec<u32>,

    /// Set-size multiplier for the coverage experiments.
    #[arg(long = "C", default_value_t = 3.0)]
    c: f64,

    /// Random trials per parameter point.
    #[arg(long, default_value_t = 50)]
    trials: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Envelope constant for the bound checks.
    #[arg(long = "c-env", default_value_t = 10.0)]
    c_env: f64,

    /// Directory for report files; nothing is written when unset.
    #[arg(long, env = "FFDIST_OUT_DIR")]
    out: Option<PathBuf>,

    /// Report formats to write.
    #[arg(long = "format", value_enum, value_delimiter = ',', default_values = ["jsonl", "csv", "text"])]
    formats: Vec<FormatArg>,

    /// Worker threads.
    #[arg(long, env = "FFDIST_JOBS")]
    jobs: Option<usize>,

    /// Point set file used instead of random sets by the incidence and coverage suites.
    #[arg(long)]
    points: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, with the usage line appended. Also used for `--help`.
    Usage(clap::Error, String),
    Config(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e, _) if !e.use_stderr() => 0,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(e, usage) => write!(f, "{e}{usage}"),
            CliError::Config(e) => write!(f, "error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Maps a full argv (program name first) to a validated config.
pub fn parse_cli<I, T>(argv: I) -> Result<SuiteConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    if argv.get(1).is_some_and(|a| a == "verify") {
        argv.remove(1);
    }
    let args = Args::try_parse_from(argv).map_err(|e| {
        let usage = if e.use_stderr() { format!("\n{}\n", Args::command().render_usage()) } else { String::new() };
        CliError::Usage(e, usage)
    })?;
    let mut formats: Vec<OutputFormat> = args.formats.into_iter().map(Into::into).collect();
    formats.sort_unstable();
    formats.dedup();
    let config = SuiteConfig {
        suite: args.suite.into(),
        q_list: args.q_list,
        d_list: args.d_list,
        n_list: args.n_list,
        c: args.c,
        trials: args.trials,
        seed: args.seed,
        c_env: args.c_env,
        out_dir: args.out,
        formats,
        jobs: args.jobs,
        points: args.points,
    };
    config.validate().map_err(CliError::Config)?;
    Ok(config)
}
