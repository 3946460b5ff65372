//! Report rendering: a fixed-schema JSON report (hand-written so that
//! numbers carry 17 significant digits and field order is deterministic)
//! and a CSV convergent trace.

use std::fmt::Write as _;
use std::path::Path;

use crate::scalar::C64;

use super::config::SuiteConfig;
use super::run::{CheckResult, EvalResult};
use super::CliError;

/// Format with 17 significant digits; exact zero renders as `0`.
fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v:.16e}")
    }
}

fn fmt_complex(v: C64) -> String {
    format!(r#"{{"re": {}, "im": {}}}"#, fmt_f64(v.re), fmt_f64(v.im))
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

fn string_array(items: &[String]) -> String {
    let inner: Vec<String> = items.iter().map(|s| format!("\"{}\"", escape(s))).collect();
    format!("[{}]", inner.join(", "))
}

/// Render the verification report. `timestamp` is echoed verbatim so that
/// deterministic comparisons can exclude it; pass seconds since the epoch.
pub fn render_report(cfg: &SuiteConfig, results: &[CheckResult], timestamp: u64) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"version\": 1,");
    let _ = writeln!(out, "  \"timestamp\": {timestamp},");
    let _ = writeln!(out, "  \"config_echo\": {{");
    let _ = writeln!(out, "    \"suite\": \"{}\",", cfg.suite.token());
    let _ = writeln!(out, "    \"params\": {},", string_array(&cfg.params_raw));
    let _ = writeln!(
        out,
        "    \"x\": {},",
        cfg.x_raw
            .as_ref()
            .map(|x| format!("\"{}\"", escape(x)))
            .unwrap_or_else(|| "null".into())
    );
    let _ = writeln!(out, "    \"eps\": {},", fmt_f64(cfg.eps));
    let _ = writeln!(out, "    \"max_depth\": {},", cfg.max_depth);
    let _ = writeln!(out, "    \"exact\": {}", cfg.exact);
    let _ = writeln!(out, "  }},");
    let _ = writeln!(out, "  \"results\": [");
    for (i, r) in results.iter().enumerate() {
        let comma = if i + 1 < results.len() { "," } else { "" };
        let residual = match (r.exact_zero, r.residual) {
            (true, _) => "0".to_string(),
            (false, Some(v)) if v.is_finite() => fmt_f64(v),
            _ => "null".to_string(),
        };
        let x = r.x.map(fmt_complex).unwrap_or_else(|| "null".into());
        let _ = writeln!(out, "    {{");
        let _ = writeln!(out, "      \"suite\": \"{}\",", r.suite);
        let _ = writeln!(
            out,
            "      \"params\": {{\"a\": {}, \"b\": {}, \"q\": {}}},",
            fmt_complex(r.a),
            fmt_complex(r.b),
            fmt_complex(r.q)
        );
        let _ = writeln!(out, "      \"x\": {x},");
        let _ = writeln!(out, "      \"residual\": {residual},");
        let _ = writeln!(out, "      \"tolerance\": {},", fmt_f64(r.tolerance));
        let _ = writeln!(out, "      \"passed\": {},", r.passed);
        let _ = writeln!(out, "      \"depth\": {},", r.depth);
        let _ = writeln!(out, "      \"diagnostics\": {}", string_array(&r.diagnostics));
        let _ = writeln!(out, "    }}{comma}");
    }
    let _ = writeln!(out, "  ],");
    let total = results.len();
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "  \"summary\": {{");
    let _ = writeln!(out, "    \"total\": {total},");
    let _ = writeln!(out, "    \"passed\": {passed},");
    let _ = writeln!(out, "    \"failed\": {}", total - passed);
    let _ = writeln!(out, "  }}");
    out.push_str("}\n");
    out
}

/// Render evaluation output for the `eval` subcommand.
pub fn render_eval(cfg: &SuiteConfig, results: &[EvalResult], timestamp: u64) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"version\": 1,");
    let _ = writeln!(out, "  \"timestamp\": {timestamp},");
    let _ = writeln!(out, "  \"suite\": \"{}\",", cfg.suite.token());
    let _ = writeln!(out, "  \"results\": [");
    for (i, r) in results.iter().enumerate() {
        let comma = if i + 1 < results.len() { "," } else { "" };
        let x = r.x.map(fmt_complex).unwrap_or_else(|| "null".into());
        let _ = writeln!(out, "    {{");
        let _ = writeln!(
            out,
            "      \"params\": {{\"a\": {}, \"b\": {}, \"q\": {}}},",
            fmt_complex(r.a),
            fmt_complex(r.b),
            fmt_complex(r.q)
        );
        let _ = writeln!(out, "      \"x\": {x},");
        match &r.error {
            Some(e) => {
                let _ = writeln!(out, "      \"error\": \"{}\"", escape(e));
            }
            None => {
                let values: Vec<String> = r
                    .values
                    .iter()
                    .map(|(name, v)| format!("\"{name}\": {}", fmt_complex(*v)))
                    .collect();
                let _ = writeln!(out, "      \"values\": {{{}}}", values.join(", "));
            }
        }
        let _ = writeln!(out, "    }}{comma}");
    }
    let _ = writeln!(out, "  ]");
    out.push_str("}\n");
    out
}

/// Render a convergent trace as CSV with header `k,value_re,value_im,abs_err`.
pub fn render_trace(rows: &[(usize, C64, f64)]) -> String {
    let mut out = String::from("k,value_re,value_im,abs_err\n");
    for (k, v, err) in rows {
        let _ = writeln!(out, "{},{},{},{}", k, fmt_f64(v.re), fmt_f64(v.im), fmt_f64(*err));
    }
    out
}

fn write_out(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Write the report to `cfg.out` (or stdout when unset).
pub fn emit_report(cfg: &SuiteConfig, results: &[CheckResult]) -> Result<(), CliError> {
    let ts = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    write_out(cfg.out.as_deref(), &render_report(cfg, results, ts))
}

/// Write a convergent trace to `cfg.out` (or stdout when unset).
pub fn emit_trace(cfg: &SuiteConfig, rows: &[(usize, C64, f64)]) -> Result<(), CliError> {
    write_out(cfg.out.as_deref(), &render_trace(rows))
}
