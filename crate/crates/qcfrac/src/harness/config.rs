//! Suite configuration: literals, grids, defaults, and the merge of
//! command-line tokens over an optional JSON config file.

use std::path::{Path, PathBuf};

use num::BigInt;

use crate::scalar::{c64, Rat, C64};

/// Errors of the command-line layer, mapped to process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => super::exit_code::USAGE,
            CliError::Io(_) => super::exit_code::IO,
        }
    }
}

/// The verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Entry12,
    Theorem1,
    Recursion,
    Star,
    H1,
    Kc,
    XClosed,
    Darboux,
    Genfun,
    All,
}

impl Suite {
    pub fn from_token(s: &str) -> Result<Suite, CliError> {
        Ok(match s {
            "entry12" => Suite::Entry12,
            "theorem1" => Suite::Theorem1,
            "recursion" => Suite::Recursion,
            "star" => Suite::Star,
            "h1" => Suite::H1,
            "kc" => Suite::Kc,
            "xclosed" => Suite::XClosed,
            "darboux" => Suite::Darboux,
            "genfun" => Suite::Genfun,
            "all" => Suite::All,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown suite `{other}` (expected entry12, theorem1, recursion, star, h1, kc, xclosed, darboux, genfun or all)"
                )))
            }
        })
    }

    pub fn token(self) -> &'static str {
        match self {
            Suite::Entry12 => "entry12",
            Suite::Theorem1 => "theorem1",
            Suite::Recursion => "recursion",
            Suite::Star => "star",
            Suite::H1 => "h1",
            Suite::Kc => "kc",
            Suite::XClosed => "xclosed",
            Suite::Darboux => "darboux",
            Suite::Genfun => "genfun",
            Suite::All => "all",
        }
    }

    /// Pass/fail threshold applied to the suite's residuals: limit suites
    /// at 1e-8, finite identities at 1e-9/1e-10, coefficient checks at
    /// 1e-10, exact suites at literal zero. Darboux and the `x = +-1`
    /// paths carry their own looser thresholds (set where the result is
    /// produced).
    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::Entry12 | Suite::H1 | Suite::Kc => 1e-8,
            Suite::Theorem1 => 1e-9,
            Suite::Recursion => 1e-10,
            Suite::Star => 0.0,
            Suite::XClosed => 1e-6,
            Suite::Darboux => 1e-4,
            Suite::Genfun => 1e-10,
            Suite::All => 1e-8,
        }
    }

    /// Default working accuracy for the sub-evaluations of the suite.
    pub fn default_eps(self) -> f64 {
        match self {
            Suite::Theorem1 | Suite::Recursion => 1e-11,
            Suite::Genfun | Suite::XClosed | Suite::Darboux => 1e-12,
            _ => 1e-10,
        }
    }

    pub fn default_max_depth(self) -> usize {
        match self {
            Suite::Darboux => 200,
            _ => 300,
        }
    }
}

/// One parsed scalar literal: complex value plus, when the text denotes a
/// real rational (integer, fraction `p/q`, or plain decimal), the exact
/// representation.
#[derive(Debug, Clone)]
pub struct ParamValue {
    pub text: String,
    pub value: C64,
    pub exact: Option<Rat>,
}

impl ParamValue {
    fn from_real(text: &str, value: f64, exact: Option<Rat>) -> Self {
        ParamValue {
            text: text.to_string(),
            value: c64(value, 0.0),
            exact,
        }
    }
}

/// A fully expanded `(a, b, q)` triple.
#[derive(Debug, Clone)]
pub struct ParamTriple {
    pub a: ParamValue,
    pub b: ParamValue,
    pub q: ParamValue,
}

/// Resolved configuration for one run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub params: Vec<ParamTriple>,
    pub x_points: Vec<ParamValue>,
    pub eps: f64,
    pub max_depth: usize,
    pub out: Option<PathBuf>,
    pub exact: bool,
    /// The raw `--params` occurrences, echoed into reports.
    pub params_raw: Vec<String>,
    pub x_raw: Option<String>,
}

/// Raw command-line values prior to resolution; `parse_config` merges them
/// over the optional config file (command line wins) and expands grids.
#[derive(Debug, Clone, Default)]
pub struct RawArgs {
    pub suite: Option<String>,
    pub params: Vec<String>,
    pub x: Option<String>,
    pub eps: Option<f64>,
    pub max_depth: Option<usize>,
    pub out: Option<PathBuf>,
    pub exact: bool,
    pub config_file: Option<PathBuf>,
}

/// Parse a real decimal into an exact rational (`-12`, `0.3`, `1.25`).
/// Scientific notation is accepted for the float value but yields no exact
/// form.
fn decimal_to_rat(s: &str) -> Option<Rat> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1i64, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    if body.is_empty() || body.contains(['e', 'E']) {
        return None;
    }
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rat::new(numer * BigInt::from(sign), denom))
}

/// Parse `p/q` fractions.
fn fraction_to_rat(s: &str) -> Option<Rat> {
    let (n, d) = s.split_once('/')?;
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rat::new(n, d))
}

fn parse_real(s: &str) -> Result<(f64, Option<Rat>), CliError> {
    if let Some(r) = fraction_to_rat(s) {
        let v = num::traits::ToPrimitive::to_f64(&r)
            .ok_or_else(|| CliError::Usage(format!("fraction `{s}` out of range")))?;
        return Ok((v, Some(r)));
    }
    let v: f64 = s
        .parse()
        .map_err(|_| CliError::Usage(format!("malformed numeric literal `{s}`")))?;
    Ok((v, decimal_to_rat(s)))
}

/// Parse a real or complex literal: `0.3`, `-1/4`, `1.5i`, `-i`,
/// `0.3+0.4i`, `0.4-1.2i`.
pub fn parse_scalar_literal(s: &str) -> Result<ParamValue, CliError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(CliError::Usage("empty numeric literal".into()));
    }
    if !t.ends_with('i') {
        let (v, exact) = parse_real(t)?;
        return Ok(ParamValue::from_real(t, v, exact));
    }
    let body = &t[..t.len() - 1];
    // Split off a real part at the last top-level +/- (not leading, not an
    // exponent sign).
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    let (re_text, im_text) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re_text.is_empty() {
        0.0
    } else {
        parse_real(re_text)?.0
    };
    let im = match im_text {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other)?.0,
    };
    Ok(ParamValue {
        text: t.to_string(),
        value: c64(re, im),
        exact: None,
    })
}

/// Expand `start:end:step` (reals only, exact stepping when the endpoints
/// and step are plain decimals or fractions) or parse a single literal.
fn expand_axis(s: &str) -> Result<Vec<ParamValue>, CliError> {
    if !s.contains(':') {
        return Ok(vec![parse_scalar_literal(s)?]);
    }
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "range `{s}` must be start:end:step"
        )));
    }
    let (start, start_rat) = parse_real(parts[0])?;
    let (end, _) = parse_real(parts[1])?;
    let (step, step_rat) = parse_real(parts[2])?;
    if step == 0.0 {
        return Err(CliError::Usage(format!("range `{s}` has zero step")));
    }
    let n = ((end - start) / step + 1e-9).floor();
    if n < 0.0 {
        return Err(CliError::Usage(format!(
            "range `{s}` is empty (step points away from end)"
        )));
    }
    let n = n as usize;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        match (&start_rat, &step_rat) {
            (Some(sr), Some(tr)) => {
                let exact = sr.clone() + tr.clone() * Rat::from(BigInt::from(i as i64));
                let v = num::traits::ToPrimitive::to_f64(&exact).unwrap_or(f64::NAN);
                out.push(ParamValue {
                    text: format!("{exact}"),
                    value: c64(v, 0.0),
                    exact: Some(exact),
                });
            }
            _ => {
                let v = start + step * i as f64;
                out.push(ParamValue::from_real(&format!("{v}"), v, decimal_to_rat(&format!("{v}"))));
            }
        }
    }
    Ok(out)
}

/// Expand one `--params a=...,b=...,q=...` occurrence into the cartesian
/// product of its axes.
fn expand_params(s: &str) -> Result<Vec<ParamTriple>, CliError> {
    let mut a_axis = None;
    let mut b_axis = None;
    let mut q_axis = None;
    for piece in s.split(',') {
        let piece = piece.trim();
        let (key, value) = piece.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("expected key=value in `--params`, got `{piece}`"))
        })?;
        let axis = expand_axis(value)?;
        match key.trim() {
            "a" => a_axis = Some(axis),
            "b" => b_axis = Some(axis),
            "q" => q_axis = Some(axis),
            other => {
                return Err(CliError::Usage(format!(
                    "unknown parameter `{other}` (expected a, b, q)"
                )))
            }
        }
    }
    let (a_axis, b_axis, q_axis) = match (a_axis, b_axis, q_axis) {
        (Some(a), Some(b), Some(q)) => (a, b, q),
        _ => {
            return Err(CliError::Usage(
                "`--params` must provide a=, b= and q=".into(),
            ))
        }
    };
    let mut out = Vec::new();
    for a in &a_axis {
        for b in &b_axis {
            for q in &q_axis {
                out.push(ParamTriple {
                    a: a.clone(),
                    b: b.clone(),
                    q: q.clone(),
                });
            }
        }
    }
    Ok(out)
}

fn read_config_file(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("malformed config {}: {e}", path.display())))
}

/// Resolve a configuration from command-line tokens plus an optional JSON
/// config file; explicit tokens override file values.
pub fn parse_config(args: &RawArgs) -> Result<SuiteConfig, CliError> {
    let file = match &args.config_file {
        Some(p) => Some(read_config_file(p)?),
        None => None,
    };
    let file_str = |key: &str| -> Option<String> {
        file.as_ref()
            .and_then(|f| f.get(key))
            .and_then(|v| v.as_str().map(str::to_string))
    };

    let suite_token = args
        .suite
        .clone()
        .or_else(|| file_str("suite"))
        .ok_or_else(|| CliError::Usage("missing --suite".into()))?;
    let suite = Suite::from_token(&suite_token)?;

    let params_raw: Vec<String> = if !args.params.is_empty() {
        args.params.clone()
    } else {
        file.as_ref()
            .and_then(|f| f.get("params"))
            .and_then(|v| v.as_array())
            .map(|arr| {
                arr.iter()
                    .filter_map(|e| e.as_str().map(str::to_string))
                    .collect()
            })
            .unwrap_or_default()
    };
    if params_raw.is_empty() {
        return Err(CliError::Usage(
            "missing --params (a=...,b=...,q=...)".into(),
        ));
    }
    let mut params = Vec::new();
    for occurrence in &params_raw {
        params.extend(expand_params(occurrence)?);
    }

    let x_raw = args.x.clone().or_else(|| file_str("x"));
    let x_points = match &x_raw {
        Some(list) => list
            .split(',')
            .map(parse_scalar_literal)
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };

    let eps = args
        .eps
        .or_else(|| {
            file.as_ref()
                .and_then(|f| f.get("eps"))
                .and_then(|v| v.as_f64())
        })
        .unwrap_or_else(|| suite.default_eps());
    if eps <= 0.0 {
        return Err(CliError::Usage(format!("eps must be positive, got {eps}")));
    }
    let max_depth = args
        .max_depth
        .or_else(|| {
            file.as_ref()
                .and_then(|f| f.get("max_depth"))
                .and_then(|v| v.as_u64().map(|u| u as usize))
        })
        .unwrap_or_else(|| suite.default_max_depth());
    if max_depth < 10 {
        return Err(CliError::Usage(format!(
            "max depth must be at least 10, got {max_depth}"
        )));
    }
    let exact = args.exact
        || file
            .as_ref()
            .and_then(|f| f.get("exact"))
            .and_then(|v| v.as_bool())
            .unwrap_or(false);
    let out = args.out.clone().or_else(|| file_str("out").map(PathBuf::from));

    if exact {
        for t in &params {
            for (name, v) in [("a", &t.a), ("b", &t.b), ("q", &t.q)] {
                if v.exact.is_none() {
                    return Err(CliError::Usage(format!(
                        "--exact requires rational-representable parameters, but {name}={} is not",
                        v.text
                    )));
                }
            }
        }
    }

    Ok(SuiteConfig {
        suite,
        params,
        x_points,
        eps,
        max_depth,
        out,
        exact,
        params_raw,
        x_raw,
    })
}
