//! The closed form `X(x) = 2 rho F(rho)/G(rho)`, its convergent-limit
//! oracle, and Darboux-type scaled-ratio diagnostics.

use crate::entry12::Entry12Params;
use crate::error::{Error, Result};
use crate::qseries::{phi_eval, PhiSeriesSpec};
use crate::scalar::{Scalar, C64};

use super::{branch, gammas, scaling_constants, RecurrenceCoeffs, RhoSelection};

fn fg_spec<S: Scalar>(p: &Entry12Params<S>, rho: &S, arg: S) -> Result<PhiSeriesSpec<S>> {
    let g = gammas(p)?;
    let q2 = p.q.clone() * p.q.clone();
    let two_rho = S::from_int(2) * rho.clone();
    Ok(PhiSeriesSpec::new(
        vec![two_rho.clone() * g.gamma1, two_rho * g.gamma2],
        vec![q2.clone() * rho.clone() * rho.clone()],
        q2,
        arg,
    ))
}

/// `F(rho) = 2phi1(2 gamma_1 rho, 2 gamma_2 rho; q^2 rho^2; q^2, bq/a)`.
/// Needs `|bq/a| < 1` and `|rho| <= 1`.
pub fn f_series<S: Scalar>(rho: &S, p: &Entry12Params<S>, eps: f64) -> Result<S> {
    p.require_a_nonzero()?;
    let arg = (p.b.clone() * p.q.clone()).checked_div(&p.a)?;
    if arg.abs_f64() >= 1.0 {
        return Err(Error::Divergence(format!(
            "F needs |bq/a| < 1, got {}",
            arg.abs_f64()
        )));
    }
    if rho.abs_f64() > 1.0 + 1e-12 {
        return Err(Error::Domain("F is used with |rho| <= 1".into()));
    }
    let (v, _) = phi_eval(&fg_spec(p, rho, arg)?, eps)?;
    Ok(v)
}

/// `G(rho) = (1 - b/(aq)) 2phi1(2 gamma_1 rho, 2 gamma_2 rho; q^2 rho^2; q^2, b/(aq))`.
/// Needs `|b/(aq)| < 1` and `|rho| <= 1`.
pub fn g_series<S: Scalar>(rho: &S, p: &Entry12Params<S>, eps: f64) -> Result<S> {
    p.require_a_nonzero()?;
    if p.q.is_zero() {
        return Err(Error::Domain("G needs q != 0".into()));
    }
    let arg = p.b.checked_div(&(p.a.clone() * p.q.clone()))?;
    if arg.abs_f64() >= 1.0 {
        return Err(Error::Divergence(format!(
            "G needs |b/(aq)| < 1, got {}",
            arg.abs_f64()
        )));
    }
    if rho.abs_f64() > 1.0 + 1e-12 {
        return Err(Error::Domain("G is used with |rho| <= 1".into()));
    }
    let (v, _) = phi_eval(&fg_spec(p, rho, arg.clone())?, eps)?;
    Ok((S::one() - arg) * v)
}

/// Closed form `X(x) = 2 rho* F(rho*) / G(rho*)`. A value of `G` within
/// `1e-12` of zero is flagged as a possible mass point.
pub fn x_closed(p: &Entry12Params<C64>, x: C64, eps: f64) -> Result<C64> {
    let bd = branch(x)?;
    let f = f_series(&bd.rho_star, p, eps)?;
    let g = g_series(&bd.rho_star, p, eps)?;
    if g.norm() < 1e-12 {
        return Err(Error::MassPoint(g.norm()));
    }
    Ok(C64::from(2.0) * bd.rho_star * f / g)
}

/// Convergent-limit value of the scaled J-fraction.
#[derive(Debug, Clone)]
pub struct XLimit<S> {
    pub value: S,
    pub depth: usize,
    /// `|ratio at depth - ratio at depth/2|`, a crude convergence gauge.
    pub delta_vs_checkpoint: f64,
}

/// `X(x) = lim P*_k(x)/P_k(x)`, evaluated at depth `kmax` with joint
/// power-of-two rescaling of the four recurrence values. Independent of
/// [`x_closed`]: no branch selection or series evaluation is involved.
pub fn x_limit<S: Scalar>(p: &Entry12Params<S>, x: &S, kmax: usize) -> Result<XLimit<S>> {
    assert!(kmax >= 2);
    let rc = RecurrenceCoeffs::new(p)?;
    let sc = scaling_constants(p)?;
    let mut ps_prev = S::zero(); // P*_0
    let mut ps_curr = S::one(); // P*_1
    let mut p_prev = S::one(); // P_0
    let mut p_curr = x.clone() - sc.c; // P_1
    let mut checkpoint: Option<S> = None;
    let mut k = 1usize;
    loop {
        if k == kmax / 2 && !p_curr.is_zero() {
            checkpoint = Some(ps_curr.clone().checked_div(&p_curr)?);
        }
        if k >= kmax {
            if p_curr.abs_f64() > 1e-280 * ps_curr.abs_f64().max(1.0) {
                break;
            }
            // P_k accidentally near a zero: step once more.
            if k > kmax + 4 {
                return Err(Error::Conditioning(
                    "P_k stayed near zero past the requested depth".into(),
                ));
            }
        }
        let alpha = rc.alpha(k as u32);
        let beta = rc.beta(k as u32);
        let next_ps =
            (x.clone() - alpha.clone()) * ps_curr.clone() - beta.clone() * ps_prev.clone();
        let next_p = (x.clone() - alpha) * p_curr.clone() - beta * p_prev.clone();
        if !next_p.is_finite() || !next_ps.is_finite() {
            return Err(Error::NonFinite(format!("scaled recurrence at k = {k}")));
        }
        ps_prev = std::mem::replace(&mut ps_curr, next_ps);
        p_prev = std::mem::replace(&mut p_curr, next_p);
        k += 1;

        // Joint rescale so ratios are untouched and magnitudes stay in range.
        let m = [&ps_curr, &ps_prev, &p_curr, &p_prev]
            .iter()
            .map(|v| v.abs_f64())
            .fold(0.0f64, f64::max);
        if m > 0.0 && !(2f64.powi(-512)..=2f64.powi(512)).contains(&m) {
            let e = m.log2().floor() as i64;
            ps_curr = ps_curr.mul_pow2(-e);
            ps_prev = ps_prev.mul_pow2(-e);
            p_curr = p_curr.mul_pow2(-e);
            p_prev = p_prev.mul_pow2(-e);
        }
    }
    let value = ps_curr.checked_div(&p_curr)?;
    let delta = checkpoint
        .map(|c| (value.clone() - c).abs_f64())
        .unwrap_or(f64::INFINITY);
    Ok(XLimit {
        value,
        depth: k,
        delta_vs_checkpoint: delta,
    })
}

/// Scaled-ratio diagnostics after `kmax` steps of the normalized
/// recurrence.
#[derive(Debug, Clone)]
pub struct DarbouxReport {
    pub x: C64,
    pub rho_star: C64,
    pub k: usize,
    /// `x = +-1` path: ratios carry the `(k+1)` normalization and the
    /// limits are `G(+-1)` and `2(+-1) F(+-1)`.
    pub endpoint: bool,
    /// `Q_k (2 rho*)^k`, divided by `k+1` on the endpoint path.
    pub ratio_q: C64,
    /// `Q*_k (2 rho*)^k`, divided by `k+1` on the endpoint path.
    pub ratio_qstar: C64,
    pub limit_q: C64,
    pub limit_qstar: C64,
    pub rel_dev_q: f64,
    pub rel_dev_qstar: f64,
    /// `ratio_qstar / ratio_q`, which tends to `X(x)` on both paths.
    pub x_from_ratios: C64,
    pub x_closed: C64,
    pub rel_dev_x: f64,
}

/// Run the recurrence for `R_k = Q_k (2 rho*)^k` (and the starred variant)
/// and compare against the predicted limits `G(rho*)/(1 - rho*^2)` and
/// `2 rho* F(rho*)/(1 - rho*^2)`; at `x = +-1` the `(k+1)`-normalized
/// ratios tend to `G(+-1)` and `2(+-1)F(+-1)` instead, with an `O(1/k)`
/// correction.
pub fn darboux_ratio_check(
    p: &Entry12Params<C64>,
    x: C64,
    kmax: usize,
) -> Result<DarbouxReport> {
    assert!(kmax >= 4);
    let bd = branch(x)?;
    let rho = bd.rho_star;
    let endpoint = bd.selection == RhoSelection::Endpoint;
    let rc = RecurrenceCoeffs::new(p)?;
    let bq_a = p.b / p.a * p.q;
    let two_rho = C64::from(2.0) * rho;

    // R_{k+1} = [(x - c q^{2k})(2 rho) R_k
    //            - (2 rho)^2 (1/4)(1 - a q^{2k-1}/b) R_{k-1}] / (1 - b q^{2k+1}/a).
    let first = C64::from(1.0) - bq_a;
    if first.norm() < 1e-13 {
        return Err(Error::Pole {
            index: 0,
            what: "leading factor 1 - bq/a vanished".into(),
        });
    }
    let sc = scaling_constants(p)?;
    let mut r_prev = C64::from(1.0); // R_0
    let mut r_curr = two_rho * (x - sc.c) / first; // R_1
    let mut rs_prev = C64::from(0.0); // R*_0
    let mut rs_curr = two_rho / first; // R*_1
    for k in 1..kmax {
        let ku = k as u64;
        let lead = C64::from(1.0) - bq_a * Scalar::pow_u(&p.q, 2 * ku);
        if lead.norm() < 1e-13 {
            return Err(Error::Pole {
                index: k,
                what: format!("leading factor 1 - b q^{}/a vanished", 2 * k + 1),
            });
        }
        let lin = (x - rc.alpha(k as u32)) * two_rho;
        let quad = two_rho * two_rho * C64::from(0.25)
            * (C64::from(1.0) - p.a * Scalar::pow_u(&p.q, 2 * ku - 1) / p.b);
        let next_r = (lin * r_curr - quad * r_prev) / lead;
        let next_rs = (lin * rs_curr - quad * rs_prev) / lead;
        r_prev = std::mem::replace(&mut r_curr, next_r);
        rs_prev = std::mem::replace(&mut rs_curr, next_rs);
    }

    let eps = 1e-13;
    let f = f_series(&rho, p, eps)?;
    let g = g_series(&rho, p, eps)?;
    let (ratio_q, ratio_qstar, limit_q, limit_qstar) = if endpoint {
        let norm = C64::from((kmax + 1) as f64);
        (
            r_curr / norm,
            rs_curr / norm,
            g,
            C64::from(2.0) * rho * f,
        )
    } else {
        let denom = C64::from(1.0) - rho * rho;
        (
            r_curr,
            rs_curr,
            g / denom,
            C64::from(2.0) * rho * f / denom,
        )
    };
    let rel_dev_q = (ratio_q - limit_q).norm() / limit_q.norm();
    let rel_dev_qstar = (ratio_qstar - limit_qstar).norm() / limit_qstar.norm();
    let x_from_ratios = ratio_qstar / ratio_q;
    let xc = x_closed(p, x, eps)?;
    let rel_dev_x = (x_from_ratios - xc).norm() / xc.norm();
    Ok(DarbouxReport {
        x,
        rho_star: rho,
        k: kmax,
        endpoint,
        ratio_q,
        ratio_qstar,
        limit_q,
        limit_qstar,
        rel_dev_q,
        rel_dev_qstar,
        x_from_ratios,
        x_closed: xc,
        rel_dev_x,
    })
}
