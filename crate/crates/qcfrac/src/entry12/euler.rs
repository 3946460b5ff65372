//! The division-algorithm route to the identity: the sums `D(s)`, the two
//! exact splitting identities behind the index shifts, the `D`-ratio
//! recursion, the two series division steps, and the finite-depth closed
//! form that composes them.

use crate::error::{Error, Result};
use crate::qseries::{phi_eval, PhiSeriesSpec, TailBound};
use crate::scalar::Scalar;

use super::{partial_numerator, product_side, Entry12Params};

/// One evaluated sum
/// `D(s) = sum_k (b q^{2s-1}/a, -bq/a; q^2)_k / (q^2, -q^{2s}; q^2)_k (a^2 q)^k`.
#[derive(Debug, Clone)]
pub struct DsValue<S> {
    pub s: u32,
    pub value: S,
    pub tail: TailBound,
}

/// Evaluate `D(s)`; needs `a != 0` and `|a^2 q| < 1`. The tail bound is
/// tightened until it is at most `eps` relative to the value.
pub fn d_sum<S: Scalar>(s: u32, p: &Entry12Params<S>, eps: f64) -> Result<DsValue<S>> {
    p.require_a_nonzero()?;
    let a2q = p.a.clone() * p.a.clone() * p.q.clone();
    if a2q.abs_f64() >= 1.0 {
        return Err(Error::Divergence(format!(
            "D({s}) needs |a^2 q| < 1, got {}",
            a2q.abs_f64()
        )));
    }
    if a2q.is_zero() {
        return Ok(DsValue {
            s,
            value: S::one(),
            tail: TailBound::exact(0),
        });
    }
    let q2 = p.q.clone() * p.q.clone();
    let upper1 = if s == 0 {
        p.b.checked_div(&(p.a.clone() * p.q.clone()))?
    } else {
        (p.b.clone() * p.q.pow_u(2 * s as u64 - 1)).checked_div(&p.a)?
    };
    let upper2 = -(p.b.clone() * p.q.clone()).checked_div(&p.a)?;
    let lower = -p.q.pow_u(2 * s as u64);
    let spec = PhiSeriesSpec::new(vec![upper1, upper2], vec![lower], q2, a2q);

    let (mut value, mut tail) = phi_eval(&spec, eps)?;
    if tail.bound > eps * value.abs_f64() {
        let tighter = (eps * value.abs_f64() * 0.5).max(f64::MIN_POSITIVE);
        let (v2, t2) = phi_eval(&spec, tighter)?;
        value = v2;
        tail = t2;
        if tail.bound > eps * value.abs_f64() {
            return Err(Error::Conditioning(format!(
                "D({s}) tail bound {:e} exceeds eps * |value| = {:e}",
                tail.bound,
                eps * value.abs_f64()
            )));
        }
    }
    Ok(DsValue { s, value, tail })
}

/// Exact splitting identity used after the first index shift:
/// `a^2 q (1 + b^2 q^{2k}/a^2) / (1 + q^{2k+2})
///  - ab - a(aq - b)(1 - b q^{2k+1}/a) / (1 + q^{2k+2})`.
/// Identically zero; returned so rational mode can assert exactness.
pub fn star_residual<S: Scalar>(k: u32, p: &Entry12Params<S>) -> Result<S> {
    p.require_a_nonzero()?;
    let (a, b, q) = (p.a.clone(), p.b.clone(), p.q.clone());
    let q2k = q.pow_u(2 * k as u64);
    let den = S::one() + q2k.clone() * q.clone() * q.clone();
    let b2q2k = b.clone() * b.clone() * q2k.clone();
    let lhs = (a.clone() * a.clone() * q.clone()
        * (S::one() + b2q2k.checked_div(&(a.clone() * a.clone()))?))
    .checked_div(&den)?;
    let split = (a.clone()
        * (a.clone() * q.clone() - b.clone())
        * (S::one() - (b.clone() * q2k * q.clone()).checked_div(&a)?))
    .checked_div(&den)?;
    Ok(lhs - a * b - split)
}

/// Exact splitting identity for general shift `s`:
/// `(1 + b q^{2k+1}/a)(a^2 q^{2s+1} + a b q^{2s})
///  / ((1 + q^{2s})(1 + q^{2k+2s+2}))
///  - ab - a(a q^{2s+1} - b)(1 - b q^{2k+2s+1}/a)
///  / ((1 + q^{2s})(1 + q^{2k+2s+2}))`.
pub fn twostar_residual<S: Scalar>(k: u32, s: u32, p: &Entry12Params<S>) -> Result<S> {
    p.require_a_nonzero()?;
    let (a, b, q) = (p.a.clone(), p.b.clone(), p.q.clone());
    let (k, s) = (k as u64, s as u64);
    let q2s = q.pow_u(2 * s);
    let den = (S::one() + q2s.clone()) * (S::one() + q.pow_u(2 * k + 2 * s + 2));
    let lhs_num = (S::one() + (b.clone() * q.pow_u(2 * k + 1)).checked_div(&a)?)
        * (a.clone() * a.clone() * q.pow_u(2 * s + 1) + a.clone() * b.clone() * q2s);
    let lhs = lhs_num.checked_div(&den)?;
    let split_num = a.clone()
        * (a.clone() * q.pow_u(2 * s + 1) - b.clone())
        * (S::one() - (b.clone() * q.pow_u(2 * k + 2 * s + 1)).checked_div(&a)?);
    let split = split_num.checked_div(&den)?;
    Ok(lhs - a * b - split)
}

/// Residual of the ratio recursion
/// `(1+q^{2s}) D(s)/D(s+1) = (1-ab)(1+q^{2s})
///  + (a - b q^{2s+1})(b - a q^{2s+1}) / ((1+q^{2s+2}) D(s+1)/D(s+2))`,
/// with all three sums evaluated at `eps/10`.
pub fn recursion_residual<S: Scalar>(s: u32, p: &Entry12Params<S>, eps: f64) -> Result<f64> {
    let budget = eps / 10.0;
    let ds = d_sum(s, p, budget)?;
    let ds1 = d_sum(s + 1, p, budget)?;
    let ds2 = d_sum(s + 2, p, budget)?;
    for d in [&ds1, &ds2] {
        if d.value.is_negligible() {
            return Err(Error::Conditioning(format!(
                "D({}) = {} is too close to zero to divide by",
                d.s, d.value
            )));
        }
    }
    let q2s = p.q.pow_u(2 * s as u64);
    let one_ab = S::one() - p.ab();
    let lhs = (S::one() + q2s.clone()) * ds.value.checked_div(&ds1.value)?;
    let closing = (S::one() + p.q.pow_u(2 * s as u64 + 2)) * ds1.value.checked_div(&ds2.value)?;
    let rhs = one_ab * (S::one() + q2s) + partial_numerator(p, s as u64 + 1).checked_div(&closing)?;
    Ok((lhs - rhs).abs_f64())
}

fn numerator_series_spec<S: Scalar>(p: &Entry12Params<S>) -> Result<PhiSeriesSpec<S>> {
    // sum_k (bq/a, -bq/a; q^2)_k / (q^2, -q^2; q^2)_k (a^2 q)^k
    let q2 = p.q.clone() * p.q.clone();
    let bq_a = (p.b.clone() * p.q.clone()).checked_div(&p.a)?;
    Ok(PhiSeriesSpec::new(
        vec![bq_a.clone(), -bq_a],
        vec![-q2.clone()],
        q2,
        p.a.clone() * p.a.clone() * p.q.clone(),
    ))
}

fn denominator_series_spec<S: Scalar>(p: &Entry12Params<S>) -> Result<PhiSeriesSpec<S>> {
    // sum_k (b/(aq), -b/(aq); q^2)_k / (q^2, -q^2; q^2)_k (a^2 q^3)^k
    let q2 = p.q.clone() * p.q.clone();
    let b_aq = p.b.checked_div(&(p.a.clone() * p.q.clone()))?;
    Ok(PhiSeriesSpec::new(
        vec![b_aq.clone(), -b_aq],
        vec![-q2.clone()],
        q2,
        p.a.clone() * p.a.clone() * p.q.pow_u(3),
    ))
}

/// First division step: the product side equals the ratio of the two
/// series above. Returns `|products - numerator/denominator|`.
pub fn product_series_residual<S: Scalar>(p: &Entry12Params<S>, eps: f64) -> Result<f64> {
    p.require_q_in_disk()?;
    p.require_a_nonzero()?;
    p.require_a2q_in_disk()?;
    if p.q.is_zero() {
        return Err(Error::Domain("series arguments need q != 0".into()));
    }
    let (num, _) = phi_eval(&numerator_series_spec(p)?, eps)?;
    let (den, _) = phi_eval(&denominator_series_spec(p)?, eps)?;
    let ratio = num.checked_div(&den)?;
    let prod = product_side(p, eps)?;
    Ok((prod - ratio).abs_f64())
}

/// Second division step: one application of `U/V = 1 + (U-V)/V` with the
/// splitting identity applied, giving
/// `U/V = (1-ab) + (a-bq)(b-aq) / ((1+q^2) D(1)/D(2))`.
pub fn division_step_residual<S: Scalar>(p: &Entry12Params<S>, eps: f64) -> Result<f64> {
    p.require_q_in_disk()?;
    p.require_a_nonzero()?;
    p.require_a2q_in_disk()?;
    if p.q.is_zero() {
        return Err(Error::Domain("series arguments need q != 0".into()));
    }
    let (u, _) = phi_eval(&denominator_series_spec(p)?, eps)?;
    let (v, _) = phi_eval(&numerator_series_spec(p)?, eps)?;
    let budget = eps / 10.0;
    let d1 = d_sum(1, p, budget)?;
    let d2 = d_sum(2, p, budget)?;
    if d2.value.is_negligible() || d1.value.is_negligible() {
        return Err(Error::Conditioning("D(1) or D(2) vanished".into()));
    }
    let q2 = p.q.clone() * p.q.clone();
    let closing = (S::one() + q2) * d1.value.checked_div(&d2.value)?;
    let rhs = (S::one() - p.ab()) + partial_numerator(p, 1).checked_div(&closing)?;
    let lhs = u.checked_div(&v)?;
    Ok((lhs - rhs).abs_f64())
}

/// Finite-depth form of the identity: the fraction truncated after level
/// `s + 2`, closed with the tail denominator `(1+q^{2s+2}) D(s+1)/D(s+2)`,
/// equals the product side exactly, for every `s`. Returns the residual.
pub fn finite_depth_residual<S: Scalar>(s: u32, p: &Entry12Params<S>, eps: f64) -> Result<f64> {
    p.require_q_in_disk()?;
    p.require_a_nonzero()?;
    if p.a.abs_f64() >= 1.0 {
        return Err(Error::Domain(format!(
            "precondition |a| < 1 violated: |a| = {}",
            p.a.abs_f64()
        )));
    }
    let budget = eps / 10.0;
    let d1 = d_sum(s + 1, p, budget)?;
    let d2 = d_sum(s + 2, p, budget)?;
    if d2.value.is_negligible() || d1.value.is_negligible() {
        return Err(Error::Conditioning(format!(
            "D({}) or D({}) too close to zero",
            s + 1,
            s + 2
        )));
    }
    let one_ab = S::one() - p.ab();
    let closing = (S::one() + p.q.pow_u(2 * s as u64 + 2)) * d1.value.checked_div(&d2.value)?;
    let mut v = partial_numerator(p, s as u64 + 1).checked_div(&closing)?;
    for j in (1..=s as u64).rev() {
        let den = one_ab.clone() * (S::one() + p.q.pow_u(2 * j)) + v;
        if den.is_zero() {
            return Err(Error::ZeroDenominator(j as usize + 1));
        }
        v = partial_numerator(p, j).checked_div(&den)?;
    }
    let den = one_ab + v;
    if den.is_zero() {
        return Err(Error::ZeroDenominator(1));
    }
    let value = S::one().checked_div(&den)?;
    let prod = product_side(p, budget)?;
    Ok((value - prod).abs_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c64, rat, Rat, C64};

    fn params(a: f64, b: f64, q: f64) -> Entry12Params<C64> {
        Entry12Params::new(c64(a, 0.0), c64(b, 0.0), c64(q, 0.0))
    }

    fn rparams(a: (i64, i64), b: (i64, i64), q: (i64, i64)) -> Entry12Params<Rat> {
        Entry12Params::new(rat(a.0, a.1), rat(b.0, b.1), rat(q.0, q.1))
    }

    #[test]
    fn d_sum_small_argument_is_one() {
        // b = 0 keeps the upper parameters bounded as a -> 0, so the k = 0
        // term dominates and D(s) -> 1.
        let p = params(1e-6, 0.0, 0.5);
        let d = d_sum(1, &p, 1e-13).unwrap();
        assert!((d.value - C64::from(1.0)).norm() < 1e-11);
    }

    #[test]
    fn d_sum_b_zero_against_direct_summation() {
        let (a, q, s) = (0.5f64, 0.5f64, 1u32);
        let p = params(a, 0.0, q);
        let d = d_sum(s, &p, 1e-14).unwrap();
        // Direct oracle with b = 0: sum (a^2 q)^k / ((q^2;q^2)_k (-q^{2s};q^2)_k).
        let q2 = q * q;
        let z = a * a * q;
        let mut oracle = 0.0f64;
        for k in 0..60u32 {
            let mut t = z.powi(k as i32);
            for j in 0..k {
                t /= 1.0 - q2.powi(j as i32 + 1);
                t /= 1.0 + q2.powi(s as i32) * q2.powi(j as i32);
            }
            oracle += t;
        }
        assert!((d.value.re - oracle).abs() < 1e-13, "{} vs {}", d.value.re, oracle);
    }

    #[test]
    fn d_sum_rejects_zero_a() {
        let p = params(0.0, -0.3, 0.5);
        assert!(matches!(d_sum(0, &p, 1e-10), Err(Error::Domain(_))));
    }

    #[test]
    fn d_sum_rejects_large_argument() {
        let p = params(1.2, -0.3, 0.9);
        assert!(matches!(d_sum(0, &p, 1e-10), Err(Error::Divergence(_))));
    }

    #[test]
    fn star_is_exactly_zero() {
        let p = rparams((1, 3), (-1, 4), (1, 5));
        assert_eq!(star_residual(0, &p).unwrap(), rat(0, 1));
        let p = rparams((2, 5), (-1, 7), (1, 3));
        assert_eq!(star_residual(7, &p).unwrap(), rat(0, 1));
        let p = rparams((2, 5), (0, 1), (1, 3));
        assert_eq!(star_residual(3, &p).unwrap(), rat(0, 1));
    }

    #[test]
    fn twostar_is_exactly_zero() {
        let p = rparams((1, 3), (-1, 4), (1, 5));
        assert_eq!(twostar_residual(0, 0, &p).unwrap(), rat(0, 1));
        let p = rparams((1, 2), (-1, 3), (1, 4));
        assert_eq!(twostar_residual(3, 2, &p).unwrap(), rat(0, 1));
        let p = rparams((1, 2), (0, 1), (1, 4));
        assert_eq!(twostar_residual(2, 5, &p).unwrap(), rat(0, 1));
    }

    #[test]
    fn twostar_at_s_zero_matches_star() {
        let p = rparams((2, 7), (-3, 11), (2, 9));
        for k in 0..6 {
            assert_eq!(star_residual(k, &p).unwrap(), rat(0, 1));
            assert_eq!(twostar_residual(k, 0, &p).unwrap(), rat(0, 1));
        }
    }

    #[test]
    fn recursion_residual_small() {
        let p = params(0.3, -0.2, 0.5);
        assert!(recursion_residual(0, &p, 1e-10).unwrap() < 1e-11);
        assert!(recursion_residual(10, &p, 1e-10).unwrap() < 1e-11);
        let p = params(0.3, 0.0, 0.5);
        assert!(recursion_residual(2, &p, 1e-11).unwrap() < 1e-12);
    }

    #[test]
    fn product_series_residual_small() {
        assert!(product_series_residual(&params(0.3, -0.2, 0.5), 1e-12).unwrap() < 1e-10);
        assert!(product_series_residual(&params(0.3, 0.0, 0.5), 1e-12).unwrap() < 1e-11);
        assert!(product_series_residual(&params(0.5, -0.5, 0.7), 1e-11).unwrap() < 1e-9);
    }

    #[test]
    fn division_step_residual_small() {
        assert!(division_step_residual(&params(0.4, -0.1, 0.5), 1e-12).unwrap() < 1e-10);
        assert!(division_step_residual(&params(0.3, -0.2, 0.3), 1e-12).unwrap() < 1e-11);
    }

    #[test]
    fn division_step_degenerate_b_aq() {
        // b = aq kills the partial numerator: both sides equal 1 - ab.
        let (a, q) = (0.4, 0.5);
        let p = params(a, a * q, q);
        assert!(division_step_residual(&p, 1e-12).unwrap() < 1e-11);
        let (u, _) = phi_eval(&denominator_series_spec(&p).unwrap(), 1e-13).unwrap();
        let (v, _) = phi_eval(&numerator_series_spec(&p).unwrap(), 1e-13).unwrap();
        let one_ab = C64::from(1.0) - p.ab();
        assert!((u / v - one_ab).norm() < 1e-11);
    }

    mod splitting_grid {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(20))]

            #[test]
            fn exactly_zero_on_random_rational_grid(
                an in 1i64..9, ad in 1i64..9,
                bn in -8i64..0, bd in 1i64..9,
                qn in 1i64..9, qd in 10i64..19,
                k in 0u32..=10, s in 0u32..=10,
            ) {
                let p = rparams((an, ad), (bn, bd), (qn, qd));
                prop_assert_eq!(star_residual(k, &p).unwrap(), rat(0, 1));
                prop_assert_eq!(twostar_residual(k, s, &p).unwrap(), rat(0, 1));
            }
        }
    }

    #[test]
    fn finite_depth_residual_small_and_depth_independent() {
        let p = params(0.3, -0.2, 0.5);
        let mut residuals = Vec::new();
        for s in 0..=10 {
            residuals.push(finite_depth_residual(s, &p, 1e-11).unwrap());
        }
        for (s, r) in residuals.iter().enumerate() {
            assert!(*r < 1e-10, "s = {s}: residual {r:e}");
        }
    }
}
