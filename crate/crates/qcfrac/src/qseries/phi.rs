//! Basic hypergeometric series evaluation.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::pochhammer::TailBound;

/// An `r_phi_s` series: upper and lower parameters, base and argument.
///
/// The implicit `(q;q)_k` in the denominator is not listed in `lower`. The
/// term carries the usual balancing factor `((-1)^k q^{C(k,2)})^{1+s-r}`,
/// which is identically 1 in the `r = s+1` case used throughout this crate.
#[derive(Debug, Clone)]
pub struct PhiSeriesSpec<S> {
    pub upper: Vec<S>,
    pub lower: Vec<S>,
    pub base: S,
    pub arg: S,
}

impl<S: Scalar> PhiSeriesSpec<S> {
    pub fn new(upper: Vec<S>, lower: Vec<S>, base: S, arg: S) -> Self {
        PhiSeriesSpec {
            upper,
            lower,
            base,
            arg,
        }
    }
}

/// Sum the series until a rigorous geometric majorant certifies that the
/// omitted tail is at most `eps` in absolute value.
///
/// For indices `j >= k` every later term ratio is bounded by
/// `|z| * prod_i (1+|u_i| r^k) / ((1-r^{k+1}) prod_j (1-|l_j| r^k))` with
/// `r = |q|`; the bound is monotone in `k`, so once it drops below 1 the
/// tail is dominated by a geometric series. A term that becomes exactly
/// zero terminates the series (an upper parameter of the form `q^{-n}`).
pub fn phi_eval<S: Scalar>(spec: &PhiSeriesSpec<S>, eps: f64) -> Result<(S, TailBound)> {
    assert!(eps > 0.0, "eps must be positive");
    let r = spec.base.abs_f64();
    if r >= 1.0 {
        return Err(Error::Domain(format!(
            "series base needs |q| < 1, got |q| = {r}"
        )));
    }
    let excess = 1 + spec.lower.len() as i64 - spec.upper.len() as i64;
    if excess < 0 {
        return Err(Error::Divergence(
            "more upper than lower-plus-one parameters".into(),
        ));
    }
    let abs_z = spec.arg.abs_f64();
    if excess == 0 && abs_z >= 1.0 {
        return Err(Error::Domain(format!(
            "balanced series needs |z| < 1, got |z| = {abs_z}"
        )));
    }
    if spec.arg.is_zero() {
        return Ok((S::one(), TailBound::exact(0)));
    }

    let upper_abs: Vec<f64> = spec.upper.iter().map(|u| u.abs_f64()).collect();
    let lower_abs: Vec<f64> = spec.lower.iter().map(|l| l.abs_f64()).collect();

    let mut sum = S::one();
    let mut term = S::one();
    let mut pw = S::one(); // q^k
    const MAX_TERMS: usize = 100_000;
    for k in 0..MAX_TERMS {
        // Update term from index k to k+1.
        let mut next = term.clone();
        for u in &spec.upper {
            next = next * (S::one() - u.clone() * pw.clone());
        }
        let qk1 = pw.clone() * spec.base.clone();
        let mut den = S::one() - qk1.clone();
        for l in &spec.lower {
            let f = S::one() - l.clone() * pw.clone();
            if f.is_negligible() {
                return Err(Error::Pole {
                    index: k,
                    what: "lower parameter degeneracy 1 - b q^k ~ 0".into(),
                });
            }
            den = den * f;
        }
        next = next.checked_div(&den)?;
        if excess > 0 {
            let balance = (-(pw.clone())).pow_u(excess as u64);
            next = next * balance;
        }
        next = next * spec.arg.clone();
        if !next.is_finite() {
            return Err(Error::NonFinite(format!("series term {}", k + 1)));
        }

        if next.is_zero() {
            // Terminating series: all later terms vanish identically.
            return Ok((sum, TailBound::exact(k)));
        }

        // Majorant on all ratios from index k+1 on.
        let rk = r.powi(k as i32 + 1);
        let mut ratio = abs_z * r.powi(((k as i64 + 1) * excess).min(1_000) as i32);
        let mut valid = rk * r < 1.0;
        for ua in &upper_abs {
            ratio *= 1.0 + ua * rk;
        }
        ratio /= 1.0 - rk * r;
        for la in &lower_abs {
            let d = 1.0 - la * rk;
            if d <= 0.0 {
                valid = false;
                break;
            }
            ratio /= d;
        }
        if valid && ratio < 1.0 {
            let tail = next.abs_f64() / (1.0 - ratio);
            if tail <= eps {
                return Ok((
                    sum,
                    TailBound {
                        truncation_index: k,
                        bound: tail,
                    },
                ));
            }
        }

        sum = sum + next.clone();
        term = next;
        pw = qk1;
    }
    Err(Error::Divergence(
        "series did not meet its tail bound within 1e5 terms".into(),
    ))
}
