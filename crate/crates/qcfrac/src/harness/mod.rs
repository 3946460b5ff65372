//! Batch verification harness: suite configuration, dispatch over parameter
//! grids, JSON reports and CSV convergent traces.

mod config;
mod report;
mod run;

pub use config::{parse_config, CliError, ParamTriple, ParamValue, RawArgs, Suite, SuiteConfig};
pub use report::{emit_report, emit_trace, render_eval, render_report, render_trace};
pub use run::{eval_values, run_suite, trace_rows, CheckResult, EvalResult};

/// Process exit codes of the command-line harness.
pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    pub const VERIFICATION_FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
}
