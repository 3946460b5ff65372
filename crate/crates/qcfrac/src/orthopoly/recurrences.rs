//! The polynomial sequences: convergent numerators and denominators of the
//! J-fraction, their hat-normalized variants, and the scaled sequences
//! `P_k`, `P*_k`, `Q_k`, `Q*_k`.

use crate::entry12::{partial_numerator, Entry12Params};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{scaling_constants, RecurrenceCoeffs};

/// Dense univariate polynomial, coefficients ascending, trailing exact
/// zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<S>(Vec<S>);

impl<S: Scalar> Poly<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        let mut p = Poly(coeffs);
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    fn trim(&mut self) {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> S {
        self.0.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.0
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.0.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let coeffs = (0..n)
            .map(|k| self.coeff(k) + other.coeff(k))
            .collect();
        Poly::new(coeffs)
    }

    pub fn scale(&self, s: &S) -> Self {
        Poly::new(self.0.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Multiply by the variable.
    pub fn mul_x(&self) -> Self {
        if self.0.is_empty() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.0.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.0.iter().cloned());
        Poly::new(coeffs)
    }
}

/// One step of the convergent recurrence
/// `y_{k+1} = ((1-ab) x + (1-ab) q^{2k}) y_k + pn(k) y_{k-1}`
/// with `pn(k) = (a - b q^{2k-1})(b - a q^{2k-1})` (the product `ab`
/// against the displayed `1/a`, `1/b` factors multiplied through, so that
/// `a = 0` or `b = 0` stay exact).
fn nd_step<S: Scalar>(p: &Entry12Params<S>, one_ab: &S, k: u64, x: &S, yk: &S, ykm1: &S) -> S {
    let lin = one_ab.clone() * x.clone() + one_ab.clone() * p.q.pow_u(2 * k);
    lin * yk.clone() + partial_numerator(p, k) * ykm1.clone()
}

/// Values `N_0..N_kmax` and `D_0..D_kmax` of the J-fraction convergents at
/// the point `x`.
pub fn nd_values<S: Scalar>(
    p: &Entry12Params<S>,
    x: &S,
    kmax: usize,
) -> (Vec<S>, Vec<S>) {
    let one_ab = S::one() - p.ab();
    let mut n = vec![S::zero(), one_ab.clone()];
    let mut d = vec![S::one(), one_ab.clone() * (x.clone() + S::one())];
    for k in 1..kmax.max(1) {
        let nk = nd_step(p, &one_ab, k as u64, x, &n[k], &n[k - 1]);
        let dk = nd_step(p, &one_ab, k as u64, x, &d[k], &d[k - 1]);
        n.push(nk);
        d.push(dk);
    }
    n.truncate(kmax + 1);
    d.truncate(kmax + 1);
    (n, d)
}

/// Coefficient-mode convergents: `N_k`, `D_k` as polynomials in `x`;
/// `deg N_k = k - 1` and `deg D_k = k`.
pub fn nd_coeff_polys<S: Scalar>(
    p: &Entry12Params<S>,
    kmax: usize,
) -> (Vec<Poly<S>>, Vec<Poly<S>>) {
    let one_ab = S::one() - p.ab();
    let mut n = vec![Poly::zero(), Poly::constant(one_ab.clone())];
    let mut d = vec![
        Poly::constant(S::one()),
        Poly::new(vec![one_ab.clone(), one_ab.clone()]),
    ];
    let step = |k: u64, yk: &Poly<S>, ykm1: &Poly<S>| -> Poly<S> {
        let shifted = yk.mul_x().scale(&one_ab);
        let diag = yk.scale(&(one_ab.clone() * p.q.pow_u(2 * k)));
        let prev = ykm1.scale(&partial_numerator(p, k));
        shifted.add(&diag).add(&prev)
    };
    for k in 1..kmax.max(1) {
        let nk = step(k as u64, &n[k], &n[k - 1]);
        let dk = step(k as u64, &d[k], &d[k - 1]);
        n.push(nk);
        d.push(dk);
    }
    n.truncate(kmax + 1);
    d.truncate(kmax + 1);
    (n, d)
}

/// Hat-normalized convergent values `Nhat_k = N_k / (bq/a; q^2)_k` (same
/// for `D`), computed from their own recurrence
/// `(1 - b q^{2k+1}/a) y_{k+1} = ((1-ab)x + (1-ab)q^{2k}) y_k
///  + ab (1 - a q^{2k-1}/b) y_{k-1}`.
/// Errors when a leading factor `1 - b q^{2k+1}/a` vanishes.
pub fn hat_nd_values<S: Scalar>(
    p: &Entry12Params<S>,
    x: &S,
    kmax: usize,
) -> Result<(Vec<S>, Vec<S>)> {
    if p.b.is_zero() {
        // The normalization is trivial: hat sequences equal the plain ones.
        return Ok(nd_values(p, x, kmax));
    }
    p.require_a_nonzero()?;
    let one_ab = S::one() - p.ab();
    let bq_a = (p.b.clone() * p.q.clone()).checked_div(&p.a)?;
    let first = S::one() - bq_a.clone();
    if first.is_negligible() {
        return Err(Error::Pole {
            index: 0,
            what: "leading factor 1 - bq/a vanished".into(),
        });
    }
    let mut n = vec![S::zero(), one_ab.checked_div(&first)?];
    let mut d = vec![
        S::one(),
        (one_ab.clone() * (x.clone() + S::one())).checked_div(&first)?,
    ];
    for k in 1..kmax.max(1) {
        let ku = k as u64;
        let lead = S::one() - bq_a.clone() * p.q.pow_u(2 * ku);
        if lead.is_negligible() {
            return Err(Error::Pole {
                index: k,
                what: format!("leading factor 1 - b q^{}/a vanished", 2 * k + 1),
            });
        }
        let lin = one_ab.clone() * x.clone() + one_ab.clone() * p.q.pow_u(2 * ku);
        let tail = p.ab()
            * (S::one() - (p.a.clone() * p.q.pow_u(2 * ku - 1)).checked_div(&p.b)?);
        let nk = (lin.clone() * n[k].clone() + tail.clone() * n[k - 1].clone())
            .checked_div(&lead)?;
        let dk = (lin * d[k].clone() + tail * d[k - 1].clone()).checked_div(&lead)?;
        n.push(nk);
        d.push(dk);
    }
    n.truncate(kmax + 1);
    d.truncate(kmax + 1);
    Ok((n, d))
}

fn p_sequence<S: Scalar>(
    p: &Entry12Params<S>,
    x: &S,
    kmax: usize,
    y0: S,
    y1: S,
) -> Result<Vec<S>> {
    let rc = RecurrenceCoeffs::new(p)?;
    let mut y = vec![y0, y1];
    for k in 1..kmax.max(1) {
        let next = (x.clone() - rc.alpha(k as u32)) * y[k].clone()
            - rc.beta(k as u32) * y[k - 1].clone();
        y.push(next);
    }
    y.truncate(kmax + 1);
    Ok(y)
}

/// The scaled denominator polynomials: `P_0 = 1`, `P_1 = x - c`, and
/// `x P_k = P_{k+1} + c q^{2k} P_k + beta_k P_{k-1}`. Satisfies
/// `P_k(x) = D_k(eta x) / (eta^k (1-ab)^k)`.
pub fn p_polys<S: Scalar>(p: &Entry12Params<S>, x: &S, kmax: usize) -> Result<Vec<S>> {
    let sc = scaling_constants(p)?;
    p_sequence(p, x, kmax, S::one(), x.clone() - sc.c)
}

/// The associated sequence with `P*_0 = 0`, `P*_1 = 1`; numerators of the
/// scaled J-fraction.
pub fn pstar_polys<S: Scalar>(p: &Entry12Params<S>, x: &S, kmax: usize) -> Result<Vec<S>> {
    p_sequence(p, x, kmax, S::zero(), S::one())
}

fn q_sequence<S: Scalar>(
    p: &Entry12Params<S>,
    x: &S,
    kmax: usize,
    y0: S,
    y1_num: S,
) -> Result<Vec<S>> {
    let rc = RecurrenceCoeffs::new(p)?;
    let bq_a = (p.b.clone() * p.q.clone()).checked_div(&p.a)?;
    let first = S::one() - bq_a.clone();
    if first.is_negligible() {
        return Err(Error::Pole {
            index: 0,
            what: "leading factor 1 - bq/a vanished".into(),
        });
    }
    let y1 = y1_num.checked_div(&first)?;
    let mut y = vec![y0, y1];
    for k in 1..kmax.max(1) {
        let ku = k as u64;
        let lead = S::one() - bq_a.clone() * p.q.pow_u(2 * ku);
        if lead.is_negligible() {
            return Err(Error::Pole {
                index: k,
                what: format!("leading factor 1 - b q^{}/a vanished", 2 * k + 1),
            });
        }
        let quarter = S::from_ratio(1, 4)
            * (S::one() - (p.a.clone() * p.q.pow_u(2 * ku - 1)).checked_div(&p.b)?);
        let next = ((x.clone() - rc.alpha(k as u32)) * y[k].clone()
            - quarter * y[k - 1].clone())
        .checked_div(&lead)?;
        y.push(next);
    }
    y.truncate(kmax + 1);
    Ok(y)
}

/// `Q_k = P_k / (bq/a; q^2)_k`: `Q_0 = 1`, `Q_1 = (x-c)/(1 - bq/a)`, and
/// `x Q_k = (1 - b q^{2k+1}/a) Q_{k+1} + c q^{2k} Q_k
///  + (1/4)(1 - a q^{2k-1}/b) Q_{k-1}`.
pub fn q_polys<S: Scalar>(p: &Entry12Params<S>, x: &S, kmax: usize) -> Result<Vec<S>> {
    let sc = scaling_constants(p)?;
    q_sequence(p, x, kmax, S::one(), x.clone() - sc.c)
}

/// Associated variant: `Q*_0 = 0`, `Q*_1 = 1/(1 - bq/a)`.
pub fn qstar_polys<S: Scalar>(p: &Entry12Params<S>, x: &S, kmax: usize) -> Result<Vec<S>> {
    q_sequence(p, x, kmax, S::zero(), S::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::convergents_forward;
    use crate::entry12::jfrac_h_spec;
    use crate::qseries::qpoch_finite;
    use crate::scalar::{c64, rat, Rat, Scalar, C64};

    fn cparams(a: f64, b: f64, q: f64) -> Entry12Params<C64> {
        Entry12Params::new(c64(a, 0.0), c64(b, 0.0), c64(q, 0.0))
    }

    fn rparams() -> Entry12Params<Rat> {
        Entry12Params::new(rat(1, 2), rat(-1, 2), rat(1, 3))
    }

    #[test]
    fn degrees_match_depth() {
        let p = Entry12Params::new(rat(1, 3), rat(-1, 4), rat(1, 5));
        let (n, d) = nd_coeff_polys(&p, 12);
        for k in 1..=12 {
            assert_eq!(n[k].degree(), Some(k - 1), "deg N_{k}");
            assert_eq!(d[k].degree(), Some(k), "deg D_{k}");
        }
    }

    #[test]
    fn coefficient_polys_match_forward_convergents_exactly() {
        let p = Entry12Params::new(rat(1, 3), rat(-1, 4), rat(1, 5));
        let (n, d) = nd_coeff_polys(&p, 10);
        for x in [rat(2, 1), rat(-3, 2), rat(7, 5), rat(1, 7), rat(-12, 5)] {
            let cf = jfrac_h_spec(&p, &x);
            for (i, item) in convergents_forward(&cf).take(10).enumerate() {
                let st = item.unwrap().state;
                let k = i + 1;
                assert_eq!(n[k].eval(&x), st.numerator(), "N_{k} at x = {x}");
                assert_eq!(d[k].eval(&x), st.denominator(), "D_{k} at x = {x}");
            }
        }
    }

    #[test]
    fn nd_values_match_polys() {
        let p = Entry12Params::new(rat(1, 3), rat(-1, 4), rat(1, 5));
        let x = rat(5, 3);
        let (nv, dv) = nd_values(&p, &x, 8);
        let (np, dp) = nd_coeff_polys(&p, 8);
        for k in 0..=8 {
            assert_eq!(nv[k], np[k].eval(&x));
            assert_eq!(dv[k], dp[k].eval(&x));
        }
    }

    #[test]
    fn zero_parameters_give_q_power_products() {
        // a = b = 0: D_2(x) = (x+1)(x+q^2).
        let p = Entry12Params::new(rat(0, 1), rat(0, 1), rat(1, 2));
        let (_, d) = nd_coeff_polys(&p, 2);
        let expect = Poly::new(vec![rat(1, 4), rat(5, 4), rat(1, 1)]);
        assert_eq!(d[2], expect);
    }

    #[test]
    fn scaling_identity_exact() {
        // P_k(x) * eta^k (1-ab)^k = D_k(eta x), exact when eta is rational.
        let p = rparams();
        let sc = scaling_constants(&p).unwrap();
        let one_ab = Rat::from_int(1) - p.ab();
        let x = rat(7, 4);
        let pk = p_polys(&p, &x, 10).unwrap();
        let (_, d) = nd_values(&p, &(sc.eta.clone() * x.clone()), 10);
        for k in 0..=10 {
            let scale = Scalar::pow_u(&sc.eta, k as u64) * Scalar::pow_u(&one_ab, k as u64);
            assert_eq!(pk[k].clone() * scale, d[k], "k = {k}");
        }
    }

    #[test]
    fn scaling_identity_floating() {
        let p = cparams(0.6, -0.15, 0.5);
        let sc = scaling_constants(&p).unwrap();
        let one_ab = C64::from(1.0) - p.ab();
        let x = c64(1.3, 0.2);
        let pk = p_polys(&p, &x, 10).unwrap();
        let (_, d) = nd_values(&p, &(sc.eta * x), 10);
        for k in 0..=10 {
            let scale = sc.eta.powu(k as u32) * one_ab.powu(k as u32);
            let rel = (pk[k] * scale - d[k]).norm() / d[k].norm();
            assert!(rel < 1e-12, "k = {k}: rel = {rel:e}");
        }
    }

    #[test]
    fn p_one_vanishes_at_c() {
        let p = rparams();
        let sc = scaling_constants(&p).unwrap();
        let pk = p_polys(&p, &sc.c, 2).unwrap();
        assert_eq!(pk[1], rat(0, 1));
    }

    #[test]
    fn q_equals_p_over_pochhammer_exactly() {
        let p = rparams();
        let x = rat(9, 5);
        let bq_a = p.b.clone() * p.q.clone() / p.a.clone();
        let q2 = p.q.clone() * p.q.clone();
        let pk = p_polys(&p, &x, 10).unwrap();
        let qk = q_polys(&p, &x, 10).unwrap();
        for k in 0..=10u32 {
            let poch = qpoch_finite(&bq_a, &q2, k);
            assert_eq!(qk[k as usize].clone() * poch, pk[k as usize], "k = {k}");
        }
    }

    #[test]
    fn q_one_vanishes_at_c() {
        let p = rparams();
        let sc = scaling_constants(&p).unwrap();
        let qk = q_polys(&p, &sc.c, 2).unwrap();
        assert_eq!(qk[1], rat(0, 1));
    }

    #[test]
    fn hat_values_match_definition() {
        let p = cparams(0.6, -0.15, 0.5);
        let x = c64(1.0, 0.0);
        let (n, d) = nd_values(&p, &x, 12);
        let (nh, dh) = hat_nd_values(&p, &x, 12).unwrap();
        let bq_a = p.b / p.a * p.q;
        let q2 = p.q * p.q;
        for k in 0..=12u32 {
            let poch = qpoch_finite(&bq_a, &q2, k);
            assert!((nh[k as usize] * poch - n[k as usize]).norm() < 1e-12);
            assert!((dh[k as usize] * poch - d[k as usize]).norm() < 1e-12);
        }
    }
}
