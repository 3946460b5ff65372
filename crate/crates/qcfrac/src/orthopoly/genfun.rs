//! Generating-function cross-checks: the closed forms of the generating
//! functions of `Q_k`, `Q*_k` and of the hat-normalized convergents are
//! expanded as truncated power series in `t` and compared coefficient by
//! coefficient against the recurrences.

use crate::entry12::Entry12Params;
use crate::error::{Error, Result};
use crate::qseries::TruncatedSeries;
use crate::scalar::C64;

use num::Zero;

use crate::entry12::h1_closed;

use super::recurrences::{hat_nd_values, q_polys, qstar_polys};
use super::{branch, gammas};

type Ts = TruncatedSeries<C64>;

/// Accumulate `sum_k prod-ratio_k(t) * arg^k` where the `k`-th summand
/// multiplies in two numerator factors `(1 - n_i q^{2(k-1)} t)` and divides
/// by two denominator factors `(1 - d_i q^{2k_off + 2(k-1)} t)` each step.
/// Stops once three consecutive increments are negligible at the working
/// precision.
fn q_difference_sum(
    order: usize,
    num_roots: (C64, C64),
    den_roots: (C64, C64),
    q2: C64,
    arg: C64,
) -> Result<Ts> {
    let mut sum = Ts::one("t", order);
    let mut term = Ts::one("t", order);
    let mut pw = C64::from(1.0); // q^{2(k-1)} for the step below
    let mut quiet_runs = 0usize;
    const MAX_TERMS: usize = 600;
    for _ in 1..=MAX_TERMS {
        term = term.mul_scalar(&arg);
        term.mul_one_minus_ct(&(num_roots.0 * pw));
        term.mul_one_minus_ct(&(num_roots.1 * pw));
        term.div_one_minus_ct(&(den_roots.0 * pw * q2));
        term.div_one_minus_ct(&(den_roots.1 * pw * q2));
        sum = sum.add(&term);
        pw *= q2;

        let scale = sum.max_abs_coeff().max(1.0);
        if term.max_abs_coeff() <= 1e-17 * scale {
            quiet_runs += 1;
            if quiet_runs >= 3 {
                return Ok(sum);
            }
        } else {
            quiet_runs = 0;
        }
    }
    Err(Error::Divergence(
        "generating-function sum did not settle within 600 terms".into(),
    ))
}

/// Expand the closed forms of the generating functions of `Q_k(x)` and
/// `Q*_k(x)` to the given order and return the largest coefficient
/// deviation from the recurrence values.
///
/// The closed forms are
/// `Q(t)  = (1 - b/(aq)) / ((1 - rho1 t/2)(1 - rho2 t/2))
///          * sum_k (gamma1 t, gamma2 t; q^2)_k
///            / (rho1 q^2 t/2, rho2 q^2 t/2; q^2)_k (b/(aq))^k` and
/// `Q*(t) = t / ((1 - rho1 t/2)(1 - rho2 t/2)) * [same sum with (bq/a)^k]`.
pub fn genfun_q_check(p: &Entry12Params<C64>, x: C64, order: usize) -> Result<f64> {
    p.require_a_nonzero()?;
    if p.q.is_zero() {
        return Err(Error::Domain("generating functions need q != 0".into()));
    }
    let bd = branch(x)?;
    let g = gammas(p)?;
    let q2 = p.q * p.q;
    let b_aq = p.b / (p.a * p.q);
    let bq_a = p.b * p.q / p.a;
    for (name, arg) in [("b/(aq)", b_aq), ("bq/a", bq_a)] {
        if arg.norm() >= 1.0 {
            return Err(Error::Divergence(format!(
                "generating-function sum needs |{name}| < 1, got {}",
                arg.norm()
            )));
        }
    }
    let half = C64::from(0.5);
    let den_roots = (bd.rho1 * half, bd.rho2 * half);
    let num_roots = (g.gamma1, g.gamma2);

    // Q(t).
    let sum = q_difference_sum(order, num_roots, den_roots, q2, b_aq)?;
    let mut q_series = sum.mul_scalar(&(C64::from(1.0) - b_aq));
    q_series.div_one_minus_ct(&den_roots.0);
    q_series.div_one_minus_ct(&den_roots.1);

    // Q*(t).
    let sum_star = q_difference_sum(order, num_roots, den_roots, q2, bq_a)?;
    let mut qstar_series = sum_star;
    qstar_series.div_one_minus_ct(&den_roots.0);
    qstar_series.div_one_minus_ct(&den_roots.1);
    qstar_series.mul_t();

    let qk = q_polys(p, &x, order)?;
    let qsk = qstar_polys(p, &x, order)?;
    let mut worst: f64 = 0.0;
    for k in 0..=order {
        worst = worst.max((*q_series.coeff(k) - qk[k]).norm());
        worst = worst.max((*qstar_series.coeff(k) - qsk[k]).norm());
    }
    Ok(worst)
}

/// The roots of `1 - (1-ab) x t - a b t^2 = (1 - delta1 t)(1 - delta2 t)`.
/// At `x = 1` these are `1` and `-ab`.
pub fn delta_roots(p: &Entry12Params<C64>, x: C64) -> Result<(C64, C64)> {
    let ab = p.ab();
    let one_ab = C64::from(1.0) - ab;
    let disc = one_ab * one_ab * x * x + C64::from(4.0) * ab;
    if disc.norm() < 1e-13 {
        return Err(Error::Degenerate(
            "delta roots coincide (discriminant ~ 0)".into(),
        ));
    }
    let root = disc.sqrt();
    let d1 = (one_ab * x + root) * C64::from(0.5);
    let d2 = (one_ab * x - root) * C64::from(0.5);
    Ok((d1, d2))
}

/// Expand the closed-form generating functions of the hat-normalized
/// convergents,
/// `Nhat(t) = (1-ab) t / ((1-d1 t)(1-d2 t))
///            * sum_m (-aqt/b, a^2 q t; q^2)_m / (d1 q^2 t, d2 q^2 t; q^2)_m (bq/a)^m`,
/// `Dhat(t) = (1-b/(aq)) / ((1-d1 t)(1-d2 t)) * [same sum with (b/(aq))^m]`,
/// to the given order; returns the largest coefficient deviation from the
/// hat recurrence.
pub fn hat_nd_genfun_check(p: &Entry12Params<C64>, x: C64, order: usize) -> Result<f64> {
    p.require_a_nonzero()?;
    if p.b.is_zero() {
        return Err(Error::Domain(
            "hat generating functions need b != 0 (aq t/b appears)".into(),
        ));
    }
    if p.q.is_zero() {
        return Err(Error::Domain("generating functions need q != 0".into()));
    }
    let (d1, d2) = delta_roots(p, x)?;
    let q2 = p.q * p.q;
    let b_aq = p.b / (p.a * p.q);
    let bq_a = p.b * p.q / p.a;
    for (name, arg) in [("b/(aq)", b_aq), ("bq/a", bq_a)] {
        if arg.norm() >= 1.0 {
            return Err(Error::Divergence(format!(
                "generating-function sum needs |{name}| < 1, got {}",
                arg.norm()
            )));
        }
    }
    let num_roots = (-p.a * p.q / p.b, p.a * p.a * p.q);
    let den_roots = (d1, d2);

    let sum_n = q_difference_sum(order, num_roots, den_roots, q2, bq_a)?;
    let mut n_series = sum_n.mul_scalar(&(C64::from(1.0) - p.ab()));
    n_series.div_one_minus_ct(&d1);
    n_series.div_one_minus_ct(&d2);
    n_series.mul_t();

    let sum_d = q_difference_sum(order, num_roots, den_roots, q2, b_aq)?;
    let mut d_series = sum_d.mul_scalar(&(C64::from(1.0) - b_aq));
    d_series.div_one_minus_ct(&d1);
    d_series.div_one_minus_ct(&d2);

    let (nh, dh) = hat_nd_values(p, &x, order)?;
    let mut worst: f64 = 0.0;
    for k in 0..=order {
        worst = worst.max((*n_series.coeff(k) - nh[k]).norm());
        worst = worst.max((*d_series.coeff(k) - dh[k]).norm());
    }
    Ok(worst)
}

/// `|Nhat_kmax(1)/Dhat_kmax(1) - H(1) closed form|`: the hat recurrence
/// ratio at depth `kmax` against the transformed closed form, validating
/// the asymptotic step and the series transformation jointly.
pub fn h1_asymptotic_check(p: &Entry12Params<C64>, kmax: usize, eps: f64) -> Result<f64> {
    let one = C64::from(1.0);
    let (nh, dh) = hat_nd_values(p, &one, kmax)?;
    let ratio = nh[kmax] / dh[kmax];
    let closed = h1_closed(p, eps)?;
    Ok((ratio - closed).norm())
}
