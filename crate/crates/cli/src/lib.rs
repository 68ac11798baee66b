//! Command-line front end for the `jetfrob` library.
//!
//! [`execute`] parses arguments, runs a subcommand on a dedicated thread
//! pool and returns the bytes to print together with the exit status, so
//! the binary and the integration tests share one code path.

mod commands;
mod error;
mod input;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use error::{code, CliError, CliResult};
pub use report::{Report, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "jetfrob", version, about = "F-singularities of jet schemes over finite fields")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true, env = "JETFROB_THREADS")]
    pub threads: Option<usize>,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Exit with status 1 unless the named check holds; repeatable.
    #[arg(long = "assert", global = true, value_name = "CHECK")]
    pub assert: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the jet equations F^(j) of a system.
    Jets(commands::JetsArgs),
    /// Fedder's criterion: is F^{q-1} outside m^[q]?
    Fedder(commands::FedderArgs),
    /// Probe strong F-regularity with test elements g.
    Fregular(commands::FregularArgs),
    /// Produce and revalidate a good-monomial certificate.
    GoodMonomial(commands::GoodMonomialArgs),
    /// The sequence r_q / q approximating the F-pure threshold.
    Fpt(commands::FptArgs),
    /// Compare r_q at two jet levels against the order correction.
    CompareFpt(commands::CompareFptArgs),
    /// Build the monomial M of a general-type form and check it.
    Certify(commands::CertifyArgs),
    /// Exponent matrices: extracted A, reference C, or the exact LP.
    Matrix(commands::MatrixArgs),
    /// Fibre dimensions and irreducibility verdicts.
    Dims(commands::DimsArgs),
    /// Seeded general-type forms.
    Gen(commands::GenArgs),
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(cmd: &Command) -> CliResult<Report> {
    match cmd {
        Command::Jets(a) => commands::jets(a),
        Command::Fedder(a) => commands::fedder(a),
        Command::Fregular(a) => commands::fregular(a),
        Command::GoodMonomial(a) => commands::good_monomial_cmd(a),
        Command::Fpt(a) => commands::fpt(a),
        Command::CompareFpt(a) => commands::compare_fpt(a),
        Command::Certify(a) => commands::certify(a),
        Command::Matrix(a) => commands::matrix(a),
        Command::Dims(a) => commands::dims(a),
        Command::Gen(a) => commands::gen(a),
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool.build().map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let report = pool.install(|| dispatch(&cli.command))?;
    for name in &cli.assert {
        if !report.checks.iter().any(|(n, _)| n == name) {
            let known: Vec<&str> = report.checks.iter().map(|(n, _)| *n).collect();
            return Err(CliError::Usage(format!(
                "unknown check `{name}` for {}; available: {}",
                report.command,
                known.join(", ")
            )));
        }
    }
    let body = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.text.clone(),
    };
    let body = match &cli.output {
        Some(path) => {
            std::fs::write(path, &body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            String::new()
        }
        None => body,
    };
    match cli.assert.iter().find(|n| report.checks.iter().any(|(k, v)| k == *n && !v)) {
        Some(failed) => Err(CliError::AssertionFailed(failed.clone()).with_output(body)),
        None => Ok(body),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { code::USAGE } else { code::OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    match run(&cli) {
        Ok(stdout) => Outcome { code: code::OK, stdout, stderr: String::new() },
        Err(CliError::WithOutput(inner, stdout)) => {
            Outcome { code: inner.exit_code(), stdout, stderr: format!("error: {inner}\n") }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
