//! Suite dispatch: one `CheckResult` per (suite, parameter point[, x]),
//! with operation errors recorded as failed results rather than crashes.

use crate::entry12::{
    cf_c_spec, cf_k_spec, entry12_residual, finite_depth_residual, h1_closed, jfrac_h_spec,
    kc_relation_residual, recursion_residual, star_residual, twostar_residual, Entry12Params,
};
use crate::cfrac::limit_detect;
use crate::error::Result as NumResult;
use crate::orthopoly::{darboux_ratio_check, genfun_q_check, hat_nd_genfun_check, x_closed, x_limit};
use num::Zero;

use crate::scalar::{c64, Rat, Scalar, C64};

use super::config::{ParamTriple, Suite, SuiteConfig};

/// Outcome of one check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub a: C64,
    pub b: C64,
    pub q: C64,
    pub x: Option<C64>,
    /// Absolute residual; `None` when the check could not be evaluated.
    pub residual: Option<f64>,
    /// Set when the residual is known to be exactly zero (rational mode).
    pub exact_zero: bool,
    pub tolerance: f64,
    pub passed: bool,
    pub depth: usize,
    pub diagnostics: Vec<String>,
}

impl CheckResult {
    fn failed(suite: &'static str, t: &ParamTriple, x: Option<C64>, tol: f64, diag: String) -> Self {
        CheckResult {
            suite,
            a: t.a.value,
            b: t.b.value,
            q: t.q.value,
            x,
            residual: None,
            exact_zero: false,
            tolerance: tol,
            passed: false,
            depth: 0,
            diagnostics: vec![diag],
        }
    }

    fn from_residual(
        suite: &'static str,
        t: &ParamTriple,
        x: Option<C64>,
        residual: f64,
        tol: f64,
        depth: usize,
        diagnostics: Vec<String>,
    ) -> Self {
        CheckResult {
            suite,
            a: t.a.value,
            b: t.b.value,
            q: t.q.value,
            x,
            residual: Some(residual),
            exact_zero: false,
            tolerance: tol,
            passed: residual.is_finite() && residual <= tol,
            depth,
            diagnostics,
        }
    }
}

fn cparams(t: &ParamTriple) -> Entry12Params<C64> {
    Entry12Params::new(t.a.value, t.b.value, t.q.value)
}

fn rparams(t: &ParamTriple) -> Option<Entry12Params<Rat>> {
    Some(Entry12Params::new(
        t.a.exact.clone()?,
        t.b.exact.clone()?,
        t.q.exact.clone()?,
    ))
}

fn fold_max(
    suite: &'static str,
    t: &ParamTriple,
    tol: f64,
    depth: usize,
    items: impl Iterator<Item = (String, NumResult<f64>)>,
) -> CheckResult {
    let mut worst: f64 = 0.0;
    let mut diagnostics = Vec::new();
    let mut failure = None;
    for (label, r) in items {
        match r {
            Ok(v) => {
                worst = worst.max(v);
                diagnostics.push(format!("{label}: residual {v:.3e}"));
            }
            Err(e) => {
                failure = Some(format!("{label}: {e}"));
                break;
            }
        }
    }
    match failure {
        Some(diag) => CheckResult::failed(suite, t, None, tol, diag),
        None => CheckResult::from_residual(suite, t, None, worst, tol, depth, diagnostics),
    }
}

fn run_entry12(t: &ParamTriple, cfg: &SuiteConfig, tol: f64) -> CheckResult {
    let p = cparams(t);
    match entry12_residual(&p, cfg.eps, cfg.max_depth) {
        Ok(check) => {
            let mut diagnostics = vec![
                format!("cf depth {} (last delta {:.3e})", check.limit.depth, check.limit.last_delta),
                format!("product side {}", check.product),
            ];
            if !check.limit.converged {
                diagnostics.push("fraction did not meet the convergence test".into());
            }
            let mut r = CheckResult::from_residual(
                "entry12",
                t,
                None,
                check.residual,
                tol,
                check.limit.depth,
                diagnostics,
            );
            r.passed = r.passed && check.limit.converged;
            r
        }
        Err(e) => CheckResult::failed("entry12", t, None, tol, e.to_string()),
    }
}

fn run_star(t: &ParamTriple, tol: f64) -> CheckResult {
    let Some(p) = rparams(t) else {
        return CheckResult::failed(
            "star",
            t,
            None,
            tol,
            "exact identities need rational-representable a, b, q".into(),
        );
    };
    let mut all_zero = true;
    let mut worst: f64 = 0.0;
    for k in 0..=10u32 {
        match star_residual(k, &p) {
            Ok(r) => {
                if !r.is_zero() {
                    all_zero = false;
                    worst = worst.max(r.abs_f64());
                }
            }
            Err(e) => return CheckResult::failed("star", t, None, tol, e.to_string()),
        }
        for s in 0..=10u32 {
            match twostar_residual(k, s, &p) {
                Ok(r) => {
                    if !r.is_zero() {
                        all_zero = false;
                        worst = worst.max(r.abs_f64());
                    }
                }
                Err(e) => return CheckResult::failed("star", t, None, tol, e.to_string()),
            }
        }
    }
    CheckResult {
        suite: "star",
        a: t.a.value,
        b: t.b.value,
        q: t.q.value,
        x: None,
        residual: Some(worst),
        exact_zero: all_zero,
        tolerance: tol,
        passed: all_zero,
        depth: 10,
        diagnostics: vec![format!(
            "splitting identities for k, s in 0..=10: {}",
            if all_zero { "all exactly zero" } else { "nonzero residual found" }
        )],
    }
}

fn run_h1(t: &ParamTriple, cfg: &SuiteConfig, tol: f64) -> CheckResult {
    let p = cparams(t);
    let go = || -> NumResult<(f64, usize, bool, Vec<String>)> {
        let closed = h1_closed(&p, cfg.eps)?;
        let lim = limit_detect(&jfrac_h_spec(&p, &C64::from(1.0)), cfg.eps, cfg.max_depth)?;
        let residual = (closed - lim.value).norm();
        let mut diag = vec![
            format!("H(1) closed form {closed}"),
            format!("J-fraction limit {} at depth {}", lim.value, lim.depth),
        ];
        if !lim.converged {
            diag.push("fraction did not meet the convergence test".into());
        }
        Ok((residual, lim.depth, lim.converged, diag))
    };
    match go() {
        Ok((residual, depth, converged, diag)) => {
            let mut r = CheckResult::from_residual("h1", t, None, residual, tol, depth, diag);
            r.passed = r.passed && converged;
            r
        }
        Err(e) => CheckResult::failed("h1", t, None, tol, e.to_string()),
    }
}

fn run_xclosed(t: &ParamTriple, x: C64, cfg: &SuiteConfig, base_tol: f64) -> CheckResult {
    let p = cparams(t);
    let endpoint = x.im == 0.0 && (x.re.abs() - 1.0).abs() < 1e-14;
    let (tol, depth) = if endpoint {
        (1e-3, cfg.max_depth.max(10_000))
    } else {
        (base_tol, cfg.max_depth)
    };
    let go = || -> NumResult<(f64, Vec<String>)> {
        let closed = x_closed(&p, x, cfg.eps)?;
        let lim = x_limit(&p, &x, depth)?;
        let residual = (closed - lim.value).norm();
        Ok((
            residual,
            vec![
                format!("closed form {closed}"),
                format!("convergent limit {} at depth {}", lim.value, lim.depth),
                format!("checkpoint delta {:.3e}", lim.delta_vs_checkpoint),
            ],
        ))
    };
    match go() {
        Ok((residual, diag)) => {
            CheckResult::from_residual("xclosed", t, Some(x), residual, tol, depth, diag)
        }
        Err(e) => CheckResult::failed("xclosed", t, Some(x), tol, e.to_string()),
    }
}

fn run_darboux(t: &ParamTriple, x: C64, cfg: &SuiteConfig, base_tol: f64) -> CheckResult {
    let p = cparams(t);
    let endpoint = x.im == 0.0 && (x.re.abs() - 1.0).abs() < 1e-14;
    let (tol, k) = if endpoint {
        (1e-2, cfg.max_depth.max(5000))
    } else {
        (base_tol, cfg.max_depth)
    };
    match darboux_ratio_check(&p, x, k) {
        Ok(report) => {
            let residual = report.rel_dev_q.max(report.rel_dev_qstar);
            let diag = vec![
                format!("rho* = {}", report.rho_star),
                format!("scaled ratio deviation (denominator side) {:.3e}", report.rel_dev_q),
                format!("scaled ratio deviation (numerator side) {:.3e}", report.rel_dev_qstar),
                format!("ratio-of-ratios vs closed form {:.3e}", report.rel_dev_x),
            ];
            CheckResult::from_residual("darboux", t, Some(x), residual, tol, k, diag)
        }
        Err(e) => CheckResult::failed("darboux", t, Some(x), tol, e.to_string()),
    }
}

fn run_genfun(t: &ParamTriple, x: C64, tol: f64) -> CheckResult {
    let p = cparams(t);
    const ORDER: usize = 12;
    let go = || -> NumResult<(f64, Vec<String>)> {
        let q_dev = genfun_q_check(&p, x, ORDER)?;
        let hat_dev = hat_nd_genfun_check(&p, x, ORDER)?;
        Ok((
            q_dev.max(hat_dev),
            vec![
                format!("scaled-sequence generating functions: max coefficient deviation {q_dev:.3e}"),
                format!("hat-normalized generating functions: max coefficient deviation {hat_dev:.3e}"),
            ],
        ))
    };
    match go() {
        Ok((residual, diag)) => {
            CheckResult::from_residual("genfun", t, Some(x), residual, tol, ORDER, diag)
        }
        Err(e) => CheckResult::failed("genfun", t, Some(x), tol, e.to_string()),
    }
}

fn x_defaults(suite: Suite) -> Vec<C64> {
    match suite {
        Suite::XClosed => vec![
            c64(2.0, 0.0),
            c64(-2.0, 0.0),
            c64(0.0, 1.5),
            c64(0.0, -1.5),
            c64(0.4, 1.2),
            c64(0.4, -1.2),
        ],
        Suite::Darboux => vec![c64(2.0, 0.0)],
        Suite::Genfun => vec![c64(2.0, 0.0), c64(1.0, 0.0), c64(1.7, 0.0)],
        _ => Vec::new(),
    }
}

fn concrete_suites(suite: Suite) -> Vec<Suite> {
    match suite {
        Suite::All => vec![
            Suite::Entry12,
            Suite::Theorem1,
            Suite::Recursion,
            Suite::Star,
            Suite::H1,
            Suite::Kc,
            Suite::XClosed,
            Suite::Darboux,
            Suite::Genfun,
        ],
        s => vec![s],
    }
}

/// Run every check of the configured suite over the parameter points.
/// Deterministic given the configuration; results are in configuration
/// order.
pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let mut results = Vec::new();
    for suite in concrete_suites(cfg.suite) {
        let tol = suite.default_tolerance();
        let xs: Vec<C64> = if cfg.x_points.is_empty() {
            x_defaults(suite)
        } else {
            cfg.x_points.iter().map(|p| p.value).collect()
        };
        for t in &cfg.params {
            match suite {
                Suite::Entry12 => results.push(run_entry12(t, cfg, tol)),
                Suite::Theorem1 => {
                    let p = cparams(t);
                    results.push(fold_max(
                        "theorem1",
                        t,
                        tol,
                        10,
                        (0..=8u32).map(|s| {
                            (format!("depth s = {s}"), finite_depth_residual(s, &p, cfg.eps))
                        }),
                    ));
                }
                Suite::Recursion => {
                    let p = cparams(t);
                    results.push(fold_max(
                        "recursion",
                        t,
                        tol,
                        12,
                        (0..=10u32)
                            .map(|s| (format!("s = {s}"), recursion_residual(s, &p, cfg.eps))),
                    ));
                }
                Suite::Star => results.push(run_star(t, tol)),
                Suite::H1 => results.push(run_h1(t, cfg, tol)),
                Suite::Kc => {
                    let p = cparams(t);
                    match kc_relation_residual(&p, cfg.eps, cfg.max_depth) {
                        Ok(r) => results.push(CheckResult::from_residual(
                            "kc",
                            t,
                            None,
                            r,
                            tol,
                            cfg.max_depth,
                            vec!["1/K - (1-ab) - 1/C".into()],
                        )),
                        Err(e) => {
                            results.push(CheckResult::failed("kc", t, None, tol, e.to_string()))
                        }
                    }
                }
                Suite::XClosed => {
                    for &x in &xs {
                        results.push(run_xclosed(t, x, cfg, tol));
                    }
                }
                Suite::Darboux => {
                    for &x in &xs {
                        results.push(run_darboux(t, x, cfg, tol));
                    }
                }
                Suite::Genfun => {
                    for &x in &xs {
                        results.push(run_genfun(t, x, tol));
                    }
                }
                Suite::All => unreachable!("expanded above"),
            }
        }
    }
    results
}

/// Values (rather than residuals) for the `eval` subcommand.
#[derive(Debug, Clone)]
pub struct EvalResult {
    pub suite: &'static str,
    pub a: C64,
    pub b: C64,
    pub q: C64,
    pub x: Option<C64>,
    pub values: Vec<(&'static str, C64)>,
    pub error: Option<String>,
}

/// Evaluate the defining quantities of a suite at each point.
pub fn eval_values(cfg: &SuiteConfig) -> Result<Vec<EvalResult>, super::CliError> {
    let mut out = Vec::new();
    for t in &cfg.params {
        let p = cparams(t);
        match cfg.suite {
            Suite::Entry12 => {
                let r = entry12_residual(&p, cfg.eps, cfg.max_depth);
                out.push(match r {
                    Ok(check) => EvalResult {
                        suite: "entry12",
                        a: t.a.value,
                        b: t.b.value,
                        q: t.q.value,
                        x: None,
                        values: vec![
                            ("cf_limit", check.limit.value),
                            ("product_side", check.product),
                        ],
                        error: None,
                    },
                    Err(e) => EvalResult {
                        suite: "entry12",
                        a: t.a.value,
                        b: t.b.value,
                        q: t.q.value,
                        x: None,
                        values: Vec::new(),
                        error: Some(e.to_string()),
                    },
                });
            }
            Suite::H1 => {
                let go = || -> NumResult<Vec<(&'static str, C64)>> {
                    let closed = h1_closed(&p, cfg.eps)?;
                    let lim =
                        limit_detect(&jfrac_h_spec(&p, &C64::from(1.0)), cfg.eps, cfg.max_depth)?;
                    Ok(vec![("h1_closed", closed), ("jfrac_limit", lim.value)])
                };
                let (values, error) = match go() {
                    Ok(v) => (v, None),
                    Err(e) => (Vec::new(), Some(e.to_string())),
                };
                out.push(EvalResult {
                    suite: "h1",
                    a: t.a.value,
                    b: t.b.value,
                    q: t.q.value,
                    x: None,
                    values,
                    error,
                });
            }
            Suite::XClosed => {
                let xs = if cfg.x_points.is_empty() {
                    x_defaults(Suite::XClosed)
                } else {
                    cfg.x_points.iter().map(|p| p.value).collect()
                };
                for x in xs {
                    let go = || -> NumResult<Vec<(&'static str, C64)>> {
                        let closed = x_closed(&p, x, cfg.eps)?;
                        let lim = x_limit(&p, &x, cfg.max_depth)?;
                        Ok(vec![("x_closed", closed), ("x_limit", lim.value)])
                    };
                    let (values, error) = match go() {
                        Ok(v) => (v, None),
                        Err(e) => (Vec::new(), Some(e.to_string())),
                    };
                    out.push(EvalResult {
                        suite: "xclosed",
                        a: t.a.value,
                        b: t.b.value,
                        q: t.q.value,
                        x: Some(x),
                        values,
                        error,
                    });
                }
            }
            other => {
                return Err(super::CliError::Usage(format!(
                    "eval supports suites entry12, h1 and xclosed, not `{}`",
                    other.token()
                )))
            }
        }
    }
    Ok(out)
}

/// Reference value and convergent stream for the `trace` subcommand.
pub fn trace_rows(cfg: &SuiteConfig) -> Result<Vec<(usize, C64, f64)>, super::CliError> {
    let t = cfg
        .params
        .first()
        .ok_or_else(|| super::CliError::Usage("trace needs one parameter point".into()))?;
    let p = cparams(t);
    let make = |spec: crate::cfrac::CfSpec<C64>, reference: C64| {
        let mut rows = Vec::new();
        for item in crate::cfrac::convergents_forward(&spec).take(cfg.max_depth) {
            match item {
                Ok(c) => {
                    let v = c.value.unwrap_or(C64::from(f64::NAN));
                    rows.push((c.k, v, (v - reference).norm()));
                    if c.terminated {
                        break;
                    }
                }
                Err(_) => break,
            }
        }
        rows
    };
    let err = |e: crate::error::Error| super::CliError::Usage(format!("trace failed: {e}"));
    match cfg.suite {
        Suite::Entry12 => {
            let reference = crate::entry12::product_side(&p, cfg.eps).map_err(err)?;
            Ok(make(cf_c_spec(&p), reference))
        }
        Suite::H1 => {
            let reference = h1_closed(&p, cfg.eps).map_err(err)?;
            Ok(make(jfrac_h_spec(&p, &C64::from(1.0)), reference))
        }
        Suite::Kc => {
            let lim = limit_detect(&cf_k_spec(&p), cfg.eps, 2000).map_err(err)?;
            Ok(make(cf_k_spec(&p), lim.value))
        }
        other => Err(super::CliError::Usage(format!(
            "trace supports suites entry12, h1 and kc, not `{}`",
            other.token()
        ))),
    }
}
