use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qcfrac::harness::{self, exit_code, CliError, RawArgs};

/// Verification harness for Ramanujan's Entry II.16.12 and its J-fraction
/// generalization.
#[derive(Parser)]
#[command(name = "qcfrac", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite over a parameter grid and report residuals.
    Verify(CommonArgs),
    /// Write a CSV trace of convergents against the suite's reference value.
    Trace(CommonArgs),
    /// Print the defining quantities (both sides of each identity).
    Eval(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Suite: entry12, theorem1, recursion, star, h1, kc, xclosed, darboux,
    /// genfun or all.
    #[arg(long)]
    suite: Option<String>,
    /// Parameter point or grid, e.g. `a=0.3,b=-0.2,q=0.5` or
    /// `a=0.1:0.5:0.2,b=-0.2,q=0.5`; repeatable.
    #[arg(long)]
    params: Vec<String>,
    /// Comma-separated x points (complex literals like `1.5i`, `0.4+1.2i`).
    #[arg(long)]
    x: Option<String>,
    /// Working accuracy for series and limits.
    #[arg(long)]
    eps: Option<f64>,
    /// Depth cap for convergent iterations (also the trace length).
    #[arg(long)]
    max_depth: Option<usize>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Require exactly representable rational parameters.
    #[arg(long)]
    exact: bool,
    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl From<CommonArgs> for RawArgs {
    fn from(a: CommonArgs) -> Self {
        RawArgs {
            suite: a.suite,
            params: a.params,
            x: a.x,
            eps: a.eps,
            max_depth: a.max_depth,
            out: a.out,
            exact: a.exact,
            config_file: a.config,
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify(args) => {
            let cfg = harness::parse_config(&args.into())?;
            let results = harness::run_suite(&cfg);
            harness::emit_report(&cfg, &results)?;
            let failed = results.iter().filter(|r| !r.passed).count();
            Ok(if failed == 0 {
                exit_code::SUCCESS
            } else {
                exit_code::VERIFICATION_FAILURE
            })
        }
        Command::Trace(args) => {
            let cfg = harness::parse_config(&args.into())?;
            let rows = harness::trace_rows(&cfg)?;
            harness::emit_trace(&cfg, &rows)?;
            Ok(exit_code::SUCCESS)
        }
        Command::Eval(args) => {
            let cfg = harness::parse_config(&args.into())?;
            let results = harness::eval_values(&cfg)?;
            let ts = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let text = harness::render_eval(&cfg, &results, ts);
            match &cfg.out {
                Some(p) => std::fs::write(p, text)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?,
                None => print!("{text}"),
            }
            Ok(exit_code::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
