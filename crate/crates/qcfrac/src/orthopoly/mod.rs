//! Orthogonal-polynomial machinery for the J-fraction `H(x)` and its
//! scaled form: the convergent polynomial sequences and their scaled and
//! normalized variants, branch selection for `sqrt(x^2 - 1)`, the quadratic
//! roots entering the generating functions, Darboux-type asymptotic ratio
//! checks, and the closed form `X(x) = 2 rho F(rho) / G(rho)`.

mod asymptotics;
mod genfun;
mod recurrences;

pub use asymptotics::{
    darboux_ratio_check, f_series, g_series, x_closed, x_limit, DarbouxReport, XLimit,
};
pub use genfun::{delta_roots, genfun_q_check, h1_asymptotic_check, hat_nd_genfun_check};
pub use recurrences::{
    hat_nd_values, nd_coeff_polys, nd_values, p_polys, pstar_polys, q_polys, qstar_polys, Poly,
};

use num::Zero;

use crate::entry12::Entry12Params;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64};

/// The scaling pair: `eta` with `eta^2 = -4ab/(1-ab)^2` maps the convergent
/// denominators onto monic-normalized polynomials, and `c = -(1-ab)/(2 sqrt(-ab))`
/// is the resulting recurrence shift. The two are tied by `c = -1/eta`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingConstants<S> {
    pub eta: S,
    pub c: S,
}

/// Compute `eta` and `c`. Fails for `ab = 0` (the scaling degenerates) and,
/// in exact mode, when `-ab` is not a perfect rational square. `c` is real
/// whenever `a` and `b` are real with opposite signs.
pub fn scaling_constants<S: Scalar>(p: &Entry12Params<S>) -> Result<ScalingConstants<S>> {
    let ab = p.ab();
    if ab.is_zero() {
        return Err(Error::Degenerate(
            "scaling constants need ab != 0 (eta vanishes, c has a pole)".into(),
        ));
    }
    let root = (-ab.clone()).sqrt()?;
    let one_ab = S::one() - ab;
    let eta = (S::from_int(2) * root.clone()).checked_div(&one_ab)?;
    let c = (-one_ab).checked_div(&(S::from_int(2) * root))?;
    Ok(ScalingConstants { eta, c })
}

/// Coefficients of the normalized three-term recurrence
/// `x y_k = y_{k+1} + alpha_k y_k + beta_k y_{k-1}`:
/// `alpha_k = c q^{2k}` and
/// `beta_k = (1/4)(1 - b q^{2k-1}/a)(1 - a q^{2k-1}/b)`.
#[derive(Clone)]
pub struct RecurrenceCoeffs<S> {
    params: Entry12Params<S>,
    c: S,
}

impl<S: Scalar> RecurrenceCoeffs<S> {
    pub fn new(p: &Entry12Params<S>) -> Result<Self> {
        if p.a.is_zero() || p.b.is_zero() {
            return Err(Error::Domain(
                "recurrence coefficients need a, b != 0".into(),
            ));
        }
        let sc = scaling_constants(p)?;
        Ok(RecurrenceCoeffs {
            params: p.clone(),
            c: sc.c,
        })
    }

    pub fn c(&self) -> &S {
        &self.c
    }

    pub fn alpha(&self, k: u32) -> S {
        self.c.clone() * self.params.q.pow_u(2 * k as u64)
    }

    /// `beta_k`, positive for all `k >= 1` when `a` and `b` are real with
    /// opposite signs.
    pub fn beta(&self, k: u32) -> S {
        debug_assert!(k >= 1);
        let p = &self.params;
        let qp = p.q.pow_u(2 * k as u64 - 1);
        let f1 = S::one() - (p.b.clone() * qp.clone()) / p.a.clone();
        let f2 = S::one() - (p.a.clone() * qp) / p.b.clone();
        S::from_ratio(1, 4) * f1 * f2
    }
}

/// Which of the two roots `x -+ sqrt(x^2-1)` was selected as `rho*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoSelection {
    /// `x - sqrt(x^2-1)` (with the branch `sqrt(x^2-1) ~ x` at infinity).
    MinusRoot,
    /// `x + sqrt(x^2-1)`.
    PlusRoot,
    /// `x = +-1`: the roots coincide and `rho* = x`.
    Endpoint,
}

/// Branch data at a point `x` off the open interval `(-1, 1)`.
///
/// `sqrt_x2m1` carries the branch with cut on `[-1, 1]` and
/// `sqrt(x^2-1) ~ x` as `x -> infinity`, computed as
/// `sqrt(x-1) * sqrt(x+1)` with principal square roots. `rho1 * rho2 = 1`,
/// and `rho_star` is the root of modulus at most 1 (selection by modulus;
/// `selection` records which root that was).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchData {
    pub x: C64,
    pub sqrt_x2m1: C64,
    pub rho1: C64,
    pub rho2: C64,
    pub rho_star: C64,
    pub selection: RhoSelection,
}

/// Select the branch and the small root at `x`; fails for real `x` strictly
/// inside `(-1, 1)` (the spectrum interval).
pub fn branch(x: C64) -> Result<BranchData> {
    if x.im == 0.0 && x.re.abs() < 1.0 {
        return Err(Error::Domain(format!(
            "x = {} lies in the spectrum interval (-1, 1)",
            x.re
        )));
    }
    let s = (x - C64::from(1.0)).sqrt() * (x + C64::from(1.0)).sqrt();
    let rho2 = x + s;
    // Evaluating x - s as 1/(x + s) avoids the cancellation at large |x|
    // and keeps rho1 * rho2 = 1 at working precision.
    let rho1 = C64::from(1.0) / rho2;
    let (rho_star, selection) = if s.is_zero() {
        (x, RhoSelection::Endpoint)
    } else if rho1.norm() <= rho2.norm() {
        (rho1, RhoSelection::MinusRoot)
    } else {
        (rho2, RhoSelection::PlusRoot)
    };
    Ok(BranchData {
        x,
        sqrt_x2m1: s,
        rho1,
        rho2,
        rho_star,
        selection,
    })
}

/// The roots `gamma_1, gamma_2 = (aq/2b)(c +- sqrt(c^2 - 1))` of
/// `1 - acqt/b + a^2 q^2 t^2 / 4b^2 = (1 - gamma_1 t)(1 - gamma_2 t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaPair<S> {
    pub gamma1: S,
    pub gamma2: S,
}

pub fn gammas<S: Scalar>(p: &Entry12Params<S>) -> Result<GammaPair<S>> {
    if p.b.is_zero() {
        return Err(Error::Domain("gamma roots need b != 0".into()));
    }
    let sc = scaling_constants(p)?;
    let c = sc.c;
    let disc = (c.clone() * c.clone() - S::one()).sqrt()?;
    let front = (p.a.clone() * p.q.clone()).checked_div(&(S::from_int(2) * p.b.clone()))?;
    Ok(GammaPair {
        gamma1: front.clone() * (c.clone() + disc.clone()),
        gamma2: front * (c - disc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{c64, rat, Rat};

    fn params(a: f64, b: f64, q: f64) -> Entry12Params<C64> {
        Entry12Params::new(c64(a, 0.0), c64(b, 0.0), c64(q, 0.0))
    }

    #[test]
    fn scaling_constants_hand_value() {
        let p = params(0.5, -0.5, 0.7);
        let sc = scaling_constants(&p).unwrap();
        assert!((sc.eta - C64::from(0.8)).norm() < 1e-15);
        assert!((sc.c - C64::from(-1.25)).norm() < 1e-15);
        // c = -1/eta by construction.
        assert!((sc.c + C64::from(1.0) / sc.eta).norm() < 1e-15);
    }

    #[test]
    fn scaling_constants_exact_rational() {
        let p = Entry12Params::new(rat(1, 2), rat(-1, 2), rat(1, 3));
        let sc = scaling_constants(&p).unwrap();
        assert_eq!(sc.eta, rat(4, 5));
        assert_eq!(sc.c, rat(-5, 4));
        // c^2 - 1 = (1+ab)^2 / (-4ab), exactly.
        let ab = p.ab();
        let lhs = sc.c.clone() * sc.c.clone() - Rat::from_int(1);
        let rhs = (Rat::from_int(1) + ab.clone()) * (Rat::from_int(1) + ab.clone())
            / (Rat::from_int(-4) * ab);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scaling_rejects_zero_ab() {
        let p = params(0.0, -0.5, 0.7);
        assert!(matches!(scaling_constants(&p), Err(Error::Degenerate(_))));
        let p = params(0.5, 0.0, 0.7);
        assert!(matches!(scaling_constants(&p), Err(Error::Degenerate(_))));
    }

    #[test]
    fn beta_positive_for_opposite_signs() {
        let p = params(0.5, -0.5, 0.7);
        let rc = RecurrenceCoeffs::new(&p).unwrap();
        for k in 1..=50 {
            let beta = rc.beta(k);
            assert!(beta.re > 0.0 && beta.im == 0.0, "beta_{k} = {beta}");
        }
    }

    #[test]
    fn branch_at_two() {
        let bd = branch(C64::from(2.0)).unwrap();
        assert!((bd.sqrt_x2m1 - C64::from(3f64.sqrt())).norm() < 1e-15);
        assert!((bd.rho_star - C64::from(2.0 - 3f64.sqrt())).norm() < 1e-15);
        assert_eq!(bd.selection, RhoSelection::MinusRoot);
        assert!(bd.rho_star.norm() < 1.0);
    }

    #[test]
    fn branch_at_endpoints() {
        let bd = branch(C64::from(1.0)).unwrap();
        assert_eq!(bd.rho_star, C64::from(1.0));
        assert_eq!(bd.selection, RhoSelection::Endpoint);
        let bd = branch(C64::from(-1.0)).unwrap();
        assert_eq!(bd.rho_star, C64::from(-1.0));
    }

    #[test]
    fn branch_tracks_x_at_minus_two() {
        // sqrt(x^2-1) ~ x at infinity: at x = -2 the root is -sqrt(3).
        let bd = branch(C64::from(-2.0)).unwrap();
        assert!((bd.sqrt_x2m1 + C64::from(3f64.sqrt())).norm() < 1e-15);
        assert!(bd.rho_star.norm() < 1.0);
    }

    #[test]
    fn branch_imaginary_point() {
        let bd = branch(c64(0.0, 1.5)).unwrap();
        assert!(bd.rho_star.norm() < 1.0);
        let expected = c64(0.0, 1.5 - 3.25f64.sqrt());
        assert!((bd.rho_star - expected).norm() < 1e-14, "{}", bd.rho_star);
        // rho1 * rho2 = 1.
        assert!((bd.rho1 * bd.rho2 - C64::from(1.0)).norm() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn branch_product_identity_on_samples() {
        for &(re, im) in &[
            (2.0, 0.0),
            (-2.0, 0.0),
            (1.5, 0.3),
            (-0.4, 1.2),
            (0.4, -1.2),
            (3.0, -0.7),
        ] {
            let bd = branch(c64(re, im)).unwrap();
            assert!((bd.rho1 * bd.rho2 - C64::from(1.0)).norm() <= 4.0 * f64::EPSILON);
            assert!(bd.rho_star.norm() <= 1.0 + 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn branch_rejects_spectrum_interval() {
        assert!(matches!(branch(C64::from(0.5)), Err(Error::Domain(_))));
        assert!(matches!(branch(C64::from(-0.99)), Err(Error::Domain(_))));
    }

    #[test]
    fn rho_star_continuous_along_upper_path() {
        // Path from 2 to -2 + 0.1i through the upper half-plane.
        let steps = 400;
        let mut prev: Option<C64> = None;
        for i in 0..=steps {
            let t = i as f64 / steps as f64;
            // Arc: interpolate through 0.0 + 1.2i at midpoint.
            let x = c64(
                2.0 * (1.0 - t) + (-2.0) * t,
                0.1 * t + 1.2 * (1.0 - (2.0 * t - 1.0).powi(2)),
            );
            let bd = branch(x).unwrap();
            if let Some(p) = prev {
                let jump = (bd.rho_star - p).norm();
                assert!(jump < 0.1, "jump {jump} at t = {t}");
            }
            prev = Some(bd.rho_star);
        }
    }

    #[test]
    fn gamma_vieta_residuals() {
        let p = params(0.5, -0.5, 0.5);
        let g = gammas(&p).unwrap();
        let (a, b, q) = (0.5, -0.5, 0.5);
        let prod = g.gamma1 * g.gamma2;
        let expect_prod = C64::from(a * a * q * q / (4.0 * b * b));
        assert!((prod - expect_prod).norm() <= 4.0 * f64::EPSILON);

        let sc = scaling_constants(&p).unwrap();
        let sum = g.gamma1 + g.gamma2;
        let expect_sum = C64::from(a * q / b) * sc.c;
        assert!((sum - expect_sum).norm() <= 4.0 * f64::EPSILON * expect_sum.norm().max(1.0));
    }

    #[test]
    fn gamma_back_substitution() {
        let p = params(0.5, -0.5, 0.5);
        let g = gammas(&p).unwrap();
        let (a, b, q) = (0.5, -0.5, 0.5);
        let sc = scaling_constants(&p).unwrap();
        for gamma in [g.gamma1, g.gamma2] {
            // 1 - (acq/b) t + (a^2 q^2 / 4 b^2) t^2 at t = 1/gamma is 0.
            let t = C64::from(1.0) / gamma;
            let r = C64::from(1.0) - C64::from(a * q / b) * sc.c * t
                + C64::from(a * a * q * q / (4.0 * b * b)) * t * t;
            assert!(r.norm() < 1e-14, "residual {r}");
        }
    }

    #[test]
    fn gamma_rejects_zero_b() {
        let p = params(0.5, 0.0, 0.5);
        assert!(gammas(&p).is_err());
    }
}
