//! Ramanujan's Entry II.16.12 and its companions.
//!
//! The identity under test equates an infinite product ratio with a
//! continued fraction:
//!
//! ```text
//! (a^2 q^3, b^2 q^3; q^4)_inf     1     (a-bq)(b-aq)   (a-bq^3)(b-aq^3)
//! ---------------------------- = ---- + ------------ + ---------------- + ...
//! (a^2 q,   b^2 q;   q^4)_inf    1-ab   (1-ab)(1+q^2)  (1-ab)(1+q^4)
//! ```
//!
//! for `|q| < 1` and `|ab| < 1`. This module carries the product side, the
//! fraction `C` above, the variant `K` whose first denominator is
//! `2(1-ab)`, the J-fraction `H(x)` that embeds both, the closed form of
//! `H(1)`, the relation `1/K - (1-ab) = 1/C`, and the parameter inversions
//! that reduce `|ab| > 1` and `|q| > 1` to the base case. The sums `D(s)`
//! and the exact splitting identities behind the finite-depth form live in
//! [`euler`](self).

mod euler;

pub use euler::{
    d_sum, division_step_residual, finite_depth_residual, product_series_residual,
    recursion_residual, star_residual, twostar_residual, DsValue,
};

use crate::cfrac::{limit_detect, CfLimit, CfSpec};
use crate::error::{Error, Result};
use crate::qseries::{phi_eval, qpoch_infinite_full, PhiSeriesSpec};
use crate::scalar::Scalar;

/// The parameter triple `(a, b, q)`. Operations check the modulus
/// conditions they need (`|q| < 1`, `|ab| < 1`, `|a^2 q| < 1`, `a != 0`)
/// and fail with a domain error when violated.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry12Params<S> {
    pub a: S,
    pub b: S,
    pub q: S,
}

impl<S: Scalar> Entry12Params<S> {
    pub fn new(a: S, b: S, q: S) -> Self {
        Entry12Params { a, b, q }
    }

    pub fn ab(&self) -> S {
        self.a.clone() * self.b.clone()
    }

    pub fn require_q_in_disk(&self) -> Result<()> {
        if self.q.abs_f64() >= 1.0 {
            return Err(Error::Domain(format!(
                "precondition |q| < 1 violated: |q| = {}",
                self.q.abs_f64()
            )));
        }
        Ok(())
    }

    pub fn require_ab_in_disk(&self) -> Result<()> {
        if self.ab().abs_f64() >= 1.0 {
            return Err(Error::Domain(format!(
                "precondition |ab| < 1 violated: |ab| = {}",
                self.ab().abs_f64()
            )));
        }
        Ok(())
    }

    pub fn require_a_nonzero(&self) -> Result<()> {
        if self.a.is_zero() {
            return Err(Error::Domain(
                "precondition a != 0 violated (b/a appears in series arguments)".into(),
            ));
        }
        Ok(())
    }

    pub fn require_a2q_in_disk(&self) -> Result<()> {
        let a2q = self.a.clone() * self.a.clone() * self.q.clone();
        if a2q.abs_f64() >= 1.0 {
            return Err(Error::Domain(format!(
                "precondition |a^2 q| < 1 violated: |a^2 q| = {}",
                a2q.abs_f64()
            )));
        }
        Ok(())
    }
}

/// Partial numerator `(a - b q^{2j-1})(b - a q^{2j-1})` shared by every
/// fraction in this module at level `j + 1`.
pub(crate) fn partial_numerator<S: Scalar>(p: &Entry12Params<S>, j: u64) -> S {
    let qp = p.q.pow_u(2 * j - 1);
    (p.a.clone() - p.b.clone() * qp.clone()) * (p.b.clone() - p.a.clone() * qp)
}

/// Ramanujan's fraction `C`: first level `1 / (1-ab)`, then partial
/// numerators `(a - bq^{2k-1})(b - aq^{2k-1})` over `(1-ab)(1+q^{2k})`.
pub fn cf_c_spec<S: Scalar>(p: &Entry12Params<S>) -> CfSpec<S> {
    let p = p.clone();
    let one_ab = S::one() - p.ab();
    CfSpec::new(S::zero(), move |k| {
        if k == 1 {
            Ok((S::one(), one_ab.clone()))
        } else {
            let j = (k - 1) as u64;
            let b = one_ab.clone() * (S::one() + p.q.pow_u(2 * j));
            Ok((partial_numerator(&p, j), b))
        }
    })
}

/// The variant `K` with first denominator `2(1-ab)`; `K = H(1)/(1-ab)`.
pub fn cf_k_spec<S: Scalar>(p: &Entry12Params<S>) -> CfSpec<S> {
    let p = p.clone();
    let one_ab = S::one() - p.ab();
    CfSpec::new(S::zero(), move |k| {
        if k == 1 {
            Ok((S::one(), S::from_int(2) * one_ab.clone()))
        } else {
            let j = (k - 1) as u64;
            let b = one_ab.clone() * (S::one() + p.q.pow_u(2 * j));
            Ok((partial_numerator(&p, j), b))
        }
    })
}

/// The J-fraction `H(x)` whose convergent denominators are orthogonal
/// polynomials: level `k+1` has numerator `(a-bq^{2k-1})(b-aq^{2k-1})` and
/// denominator `x(1-ab) + (1-ab) q^{2k}`.
pub fn jfrac_h_spec<S: Scalar>(p: &Entry12Params<S>, x: &S) -> CfSpec<S> {
    let p = p.clone();
    let x = x.clone();
    let one_ab = S::one() - p.ab();
    CfSpec::new(S::zero(), move |k| {
        if k == 1 {
            Ok((
                one_ab.clone(),
                x.clone() * one_ab.clone() + one_ab.clone(),
            ))
        } else {
            let j = (k - 1) as u64;
            let b = x.clone() * one_ab.clone() + one_ab.clone() * p.q.pow_u(2 * j);
            Ok((partial_numerator(&p, j), b))
        }
    })
}

/// The product side `(a^2 q^3, b^2 q^3; q^4)_inf / (a^2 q, b^2 q; q^4)_inf`,
/// each factor truncated with an `eps/4` budget.
pub fn product_side<S: Scalar>(p: &Entry12Params<S>, eps: f64) -> Result<S> {
    p.require_q_in_disk()?;
    let q4 = p.q.pow_u(4);
    let a2 = p.a.clone() * p.a.clone();
    let b2 = p.b.clone() * p.b.clone();
    let q3 = p.q.pow_u(3);
    let budget = eps / 4.0;

    let n1 = qpoch_infinite_full(&(a2.clone() * q3.clone()), &q4, budget)?;
    let n2 = qpoch_infinite_full(&(b2.clone() * q3), &q4, budget)?;
    let d1 = qpoch_infinite_full(&(a2 * p.q.clone()), &q4, budget)?;
    let d2 = qpoch_infinite_full(&(b2 * p.q.clone()), &q4, budget)?;
    for (i, d) in [&d1, &d2].iter().enumerate() {
        if d.min_factor < 1e-13 {
            return Err(Error::Pole {
                index: i,
                what: "denominator product has a vanishing factor".into(),
            });
        }
    }
    (n1.value * n2.value).checked_div(&(d1.value * d2.value))
}

/// The closed form of `H(1)`:
/// `(1-ab)/2 * 2phi1(-bq/a, bq/a; -q^2; q^2, a^2 q)
///           / 2phi1(-bq/a, b/(aq); -1; q^2, a^2 q)`.
pub fn h1_closed<S: Scalar>(p: &Entry12Params<S>, eps: f64) -> Result<S> {
    p.require_q_in_disk()?;
    p.require_ab_in_disk()?;
    p.require_a2q_in_disk()?;
    p.require_a_nonzero()?;
    if p.q.is_zero() {
        // Both series collapse to 1 and H(1) = (1-ab)/2.
        return Ok((S::one() - p.ab()).checked_div(&S::from_int(2))?);
    }
    let q2 = p.q.clone() * p.q.clone();
    let a2q = p.a.clone() * p.a.clone() * p.q.clone();
    let bq_a = (p.b.clone() * p.q.clone()).checked_div(&p.a)?;
    let b_aq = p.b.checked_div(&(p.a.clone() * p.q.clone()))?;

    let num_spec = PhiSeriesSpec::new(
        vec![-bq_a.clone(), bq_a.clone()],
        vec![-q2.clone()],
        q2.clone(),
        a2q.clone(),
    );
    let den_spec = PhiSeriesSpec::new(vec![-bq_a, b_aq], vec![-S::one()], q2, a2q);
    let (num, _) = phi_eval(&num_spec, eps)?;
    let (den, _) = phi_eval(&den_spec, eps)?;
    if den.is_negligible() {
        return Err(Error::Pole {
            index: 0,
            what: "denominator series of H(1) vanished".into(),
        });
    }
    let half = (S::one() - p.ab()).checked_div(&S::from_int(2))?;
    half.checked_div(&den).map(|h| h * num)
}

/// Verdict of one full identity check: the convergent limit, the product
/// side and their absolute difference.
#[derive(Debug, Clone)]
pub struct Entry12Check<S> {
    pub limit: CfLimit<S>,
    pub product: S,
    pub residual: f64,
}

/// `|lim C - product side|` with the fraction iterated to `max_depth`.
pub fn entry12_residual<S: Scalar>(
    p: &Entry12Params<S>,
    eps: f64,
    max_depth: usize,
) -> Result<Entry12Check<S>> {
    p.require_q_in_disk()?;
    p.require_ab_in_disk()?;
    let limit = limit_detect(&cf_c_spec(p), eps, max_depth)?;
    let product = product_side(p, eps)?;
    let residual = (limit.value.clone() - product.clone()).abs_f64();
    Ok(Entry12Check {
        limit,
        product,
        residual,
    })
}

/// `|1/K - (1-ab) - 1/C|` with both limits run to `max_depth`.
pub fn kc_relation_residual<S: Scalar>(
    p: &Entry12Params<S>,
    eps: f64,
    max_depth: usize,
) -> Result<f64> {
    p.require_q_in_disk()?;
    p.require_ab_in_disk()?;
    let k = limit_detect(&cf_k_spec(p), eps, max_depth)?;
    let c = limit_detect(&cf_c_spec(p), eps, max_depth)?;
    if !k.converged || !c.converged {
        return Err(Error::Conditioning(format!(
            "K or C did not converge within depth {max_depth}"
        )));
    }
    let one_ab = S::one() - p.ab();
    let lhs = S::one().checked_div(&k.value)? - one_ab;
    let rhs = S::one().checked_div(&c.value)?;
    Ok((lhs - rhs).abs_f64())
}

/// Parameter inversion for `|ab| > 1`: the value of `C(a, b, q)` is the
/// product side at `(1/a, 1/b, q)` divided by `-ab`, and level by level
/// the fraction rescaled by constant multipliers `c_k = -1/(ab)` has the
/// terms of the `(1/a, 1/b)` fraction with first numerator `-1/(ab)`.
pub fn invert_params<S: Scalar>(p: &Entry12Params<S>) -> Result<Entry12Params<S>> {
    if p.a.is_zero() || p.b.is_zero() {
        return Err(Error::Domain("parameter inversion needs a, b != 0".into()));
    }
    Ok(Entry12Params {
        a: S::one().checked_div(&p.a)?,
        b: S::one().checked_div(&p.b)?,
        q: p.q.clone(),
    })
}

/// Base inversion for `|q| > 1`: the fraction at `q` is equivalent (same
/// approximants, multipliers `c_k = q^{-2(k-1)}`) to the fraction at
/// `p = 1/q`.
pub fn invert_q<S: Scalar>(p: &Entry12Params<S>) -> Result<Entry12Params<S>> {
    if p.q.is_zero() {
        return Err(Error::Domain("base inversion needs q != 0".into()));
    }
    Ok(Entry12Params {
        a: p.a.clone(),
        b: p.b.clone(),
        q: S::one().checked_div(&p.q)?,
    })
}

/// Approximants `S_1(0) ... S_n(0)` of `cf` (entries are `None` where the
/// denominator vanishes).
pub fn approximants<S: Scalar>(cf: &CfSpec<S>, n: usize) -> Result<Vec<Option<S>>> {
    let mut out = Vec::with_capacity(n);
    for item in crate::cfrac::convergents_forward(cf).take(n) {
        let c = item?;
        if c.terminated {
            // Constant from here on.
            while out.len() < n {
                out.push(c.value.clone());
            }
            break;
        }
        out.push(c.value);
    }
    Ok(out)
}

/// Per-depth deviation between the `|ab| > 1` fraction and its inverted,
/// rescaled counterpart: `max_k |S_k(C(a,b,q)) + S_k(C(1/a,1/b,q))/(ab)|`.
pub fn inversion_ab_depth_residual<S: Scalar>(
    p: &Entry12Params<S>,
    depth: usize,
) -> Result<f64> {
    let inv = invert_params(p)?;
    let scale = (-S::one()).checked_div(&p.ab())?;
    let orig = approximants(&cf_c_spec(p), depth)?;
    let transformed = approximants(
        &cf_c_spec(p).equivalence_transform({
            let s = scale.clone();
            move |_| s.clone()
        }),
        depth,
    )?;
    let inverted = approximants(&cf_c_spec(&inv), depth)?;
    let mut worst: f64 = 0.0;
    for k in 0..depth {
        if let (Some(o), Some(t), Some(i)) = (&orig[k], &transformed[k], &inverted[k]) {
            // Equivalence leaves approximants unchanged...
            worst = worst.max((o.clone() - t.clone()).abs_f64());
            // ...and they match the inverted fraction scaled by -1/(ab).
            worst = worst.max((o.clone() - scale.clone() * i.clone()).abs_f64());
        }
    }
    Ok(worst)
}

/// Per-depth deviation between the `|q| > 1` fraction and the same fraction
/// at `p = 1/q`: `max_k |S_k(C(a,b,q)) - S_k(C(a,b,1/q))|`.
pub fn inversion_q_depth_residual<S: Scalar>(
    p: &Entry12Params<S>,
    depth: usize,
) -> Result<f64> {
    let inv = invert_q(p)?;
    let q = p.q.clone();
    let orig = approximants(&cf_c_spec(p), depth)?;
    let transformed = approximants(
        &cf_c_spec(p).equivalence_transform(move |k| {
            S::one().checked_div(&q.pow_u(2 * (k as u64 - 1))).unwrap_or_else(|_| S::zero())
        }),
        depth,
    )?;
    let inverted = approximants(&cf_c_spec(&inv), depth)?;
    let mut worst: f64 = 0.0;
    for k in 0..depth {
        if let (Some(o), Some(t), Some(i)) = (&orig[k], &transformed[k], &inverted[k]) {
            worst = worst.max((o.clone() - t.clone()).abs_f64());
            worst = worst.max((o.clone() - i.clone()).abs_f64());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::convergents_forward;
    use crate::scalar::{c64, rat, Rat, C64};

    fn params(a: f64, b: f64, q: f64) -> Entry12Params<C64> {
        Entry12Params::new(c64(a, 0.0), c64(b, 0.0), c64(q, 0.0))
    }

    #[test]
    fn product_side_trivial_cases() {
        let p = params(0.0, 0.0, 0.5);
        assert_eq!(product_side(&p, 1e-12).unwrap(), C64::from(1.0));

        // a = 0: ratio of the two b-products, against a direct truncation.
        let p = params(0.0, 0.5, 0.5);
        let v = product_side(&p, 1e-12).unwrap();
        let (b2, q) = (0.25f64, 0.5f64);
        let q4 = q.powi(4);
        let mut num = 1.0;
        let mut den = 1.0;
        for k in 0..80 {
            num *= 1.0 - b2 * q.powi(3) * q4.powi(k);
            den *= 1.0 - b2 * q * q4.powi(k);
        }
        assert!((v.re - num / den).abs() < 1e-12, "{} vs {}", v.re, num / den);
    }

    #[test]
    fn cf_c_terminates_at_zero_parameters() {
        let p = params(0.0, 0.0, 0.5);
        let lim = limit_detect(&cf_c_spec(&p), 1e-12, 50).unwrap();
        assert!(lim.converged);
        assert_eq!(lim.depth, 1);
        assert_eq!(lim.value, C64::from(1.0));
    }

    #[test]
    fn cf_c_second_numerator_matches_hand_value() {
        let p = params(0.3, -0.2, 0.5);
        let (a2, _) = cf_c_spec(&p).term(2).unwrap();
        assert!((a2 - c64(-0.14, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cf_k_at_zero_parameters() {
        let p = params(0.0, 0.0, 0.5);
        let lim = limit_detect(&cf_k_spec(&p), 1e-12, 50).unwrap();
        assert_eq!(lim.value, C64::from(0.5));
    }

    #[test]
    fn jfrac_initial_convergent_values() {
        // N_1 = 1 - ab, D_1 = (1-ab)(x+1).
        let p = params(0.3, -0.2, 0.5);
        let x = c64(1.7, 0.0);
        let cf = jfrac_h_spec(&p, &x);
        let first = convergents_forward(&cf).next().unwrap().unwrap();
        let one_ab = C64::from(1.0) - c64(0.3, 0.0) * c64(-0.2, 0.0);
        assert!((first.state.numerator() - one_ab).norm() < 1e-15);
        assert!((first.state.denominator() - one_ab * (x + C64::from(1.0))).norm() < 1e-15);
    }

    #[test]
    fn jfrac_at_zero_parameters() {
        let p = params(0.0, 0.0, 0.5);
        let lim = limit_detect(&jfrac_h_spec(&p, &C64::from(1.0)), 1e-12, 50).unwrap();
        assert_eq!(lim.value, C64::from(0.5));
    }

    #[test]
    fn fraction_limit_matches_product_side() {
        let p = params(0.3, -0.2, 0.5);
        let check = entry12_residual(&p, 1e-12, 300).unwrap();
        assert!(check.limit.converged);
        assert!(check.residual < 1e-10, "residual {:e}", check.residual);
    }

    #[test]
    fn degenerate_b_equals_aq_short_circuits() {
        // b = aq zeroes the second partial numerator; the value collapses
        // to 1/(1-ab), which equals the product side exactly.
        let (a, q) = (0.4, 0.5);
        let p = params(a, a * q, q);
        let check = entry12_residual(&p, 1e-12, 100).unwrap();
        assert_eq!(check.limit.depth, 1);
        assert!(check.residual < 1e-12);
    }

    #[test]
    fn h1_closed_matches_jfraction_limit() {
        let p = params(0.3, -0.2, 0.5);
        let h1 = h1_closed(&p, 1e-12).unwrap();
        let lim = limit_detect(&jfrac_h_spec(&p, &C64::from(1.0)), 1e-11, 300).unwrap();
        assert!(lim.converged);
        assert!((h1 - lim.value).norm() < 1e-9, "{h1} vs {}", lim.value);
    }

    #[test]
    fn h1_closed_equals_dsum_ratio() {
        let p = params(0.3, -0.2, 0.5);
        let h1 = h1_closed(&p, 1e-13).unwrap();
        let d0 = d_sum(0, &p, 1e-13).unwrap();
        let d1 = d_sum(1, &p, 1e-13).unwrap();
        let one_ab = C64::from(1.0) - p.ab();
        let via_d = one_ab * d1.value / (C64::from(2.0) * d0.value);
        assert!((h1 - via_d).norm() < 1e-12);
    }

    #[test]
    fn h1_small_parameter_limit() {
        let p = params(1e-5, -1e-5, 0.5);
        let h1 = h1_closed(&p, 1e-12).unwrap();
        assert!((h1 - C64::from(0.5)).norm() < 1e-9);
    }

    #[test]
    fn kc_relation_holds() {
        let p = params(0.3, -0.2, 0.5);
        let r = kc_relation_residual(&p, 1e-12, 300).unwrap();
        assert!(r < 1e-9, "residual {r:e}");
    }

    #[test]
    fn k_equals_h1_over_one_minus_ab() {
        let p = params(0.3, -0.2, 0.5);
        let k = limit_detect(&cf_k_spec(&p), 1e-12, 300).unwrap();
        let h = limit_detect(&jfrac_h_spec(&p, &C64::from(1.0)), 1e-12, 300).unwrap();
        let one_ab = C64::from(1.0) - p.ab();
        assert!((k.value - h.value / one_ab).norm() < 1e-10);
    }

    #[test]
    fn inversions_are_involutions() {
        let p = Entry12Params::new(rat(2, 1), rat(-3, 2), rat(1, 2));
        let twice = invert_params(&invert_params(&p).unwrap()).unwrap();
        assert_eq!(twice, p);
        let twice = invert_q(&invert_q(&p).unwrap()).unwrap();
        assert_eq!(twice, p);

        let inv = invert_params(&p).unwrap();
        assert!(inv.ab().abs_f64() < 1.0);
    }

    #[test]
    fn inversion_rejects_zero() {
        let p = params(0.0, 0.5, 0.5);
        assert!(invert_params(&p).is_err());
        let p = params(0.3, 0.5, 0.0);
        assert!(invert_q(&p).is_err());
    }

    #[test]
    fn ab_inversion_depth_comparison() {
        let p = params(2.0, -1.5, 0.5);
        let r = inversion_ab_depth_residual(&p, 60).unwrap();
        assert!(r < 1e-9, "residual {r:e}");
    }

    #[test]
    fn q_inversion_depth_comparison() {
        let p = params(0.3, -0.2, 2.0);
        let r = inversion_q_depth_residual(&p, 40).unwrap();
        assert!(r < 1e-10, "residual {r:e}");
    }

    #[test]
    fn q_inversion_recipe_evaluates_entry12() {
        // |q| > 1: evaluate at p = 1/q instead and compare the fractions.
        let p = params(0.3, -0.2, 2.0);
        let inv = invert_q(&p).unwrap();
        let check = entry12_residual(&inv, 1e-12, 300).unwrap();
        assert!(check.residual < 1e-9);
        let orig_lim = limit_detect(&cf_c_spec(&p), 1e-12, 300).unwrap();
        assert!((orig_lim.value - check.limit.value).norm() < 1e-9);
    }

    #[test]
    fn precondition_violations_are_domain_errors() {
        let p = params(2.0, -1.5, 0.5);
        assert!(matches!(
            entry12_residual(&p, 1e-10, 100),
            Err(Error::Domain(_))
        ));
        let p = params(0.3, -0.2, 1.5);
        assert!(matches!(
            entry12_residual(&p, 1e-10, 100),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn complex_disk_point_converges() {
        let p = Entry12Params::new(c64(0.25, 0.0), c64(-0.2, 0.0), c64(0.3, 0.3));
        let check = entry12_residual(&p, 1e-11, 300).unwrap();
        assert!(check.limit.converged);
        assert!(check.residual < 1e-8, "residual {:e}", check.residual);
    }

    #[test]
    fn error_decay_is_eventually_geometric() {
        // |S_k - limit| should decrease by a factor <= 0.9 once settled.
        let p = params(0.6, -0.5, 0.8);
        let lim = limit_detect(&cf_c_spec(&p), 1e-13, 400).unwrap();
        let vals = approximants(&cf_c_spec(&p), 60).unwrap();
        let errs: Vec<f64> = vals
            .iter()
            .flatten()
            .map(|v| (v.clone() - lim.value).norm())
            .collect();
        for w in errs[10..].windows(2) {
            if w[0] > 1e-13 && w[1] > 1e-13 {
                assert!(w[1] <= 0.9 * w[0], "ratio {} at error {}", w[1] / w[0], w[0]);
            }
        }
    }
}
