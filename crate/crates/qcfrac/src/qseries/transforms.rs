//! The two classical transformation oracles: the q-binomial theorem and
//! Heine's transformation of a `2phi1`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::phi::{phi_eval, PhiSeriesSpec};
use super::pochhammer::qpoch_infinite;

/// `| 1phi0(a; -; q, z) - (az;q)_inf / (z;q)_inf |`, both sides by their
/// own routine. Valid for `|z| < 1`, `|q| < 1`.
pub fn qbinomial_residual<S: Scalar>(a: &S, z: &S, q: &S, eps: f64) -> Result<f64> {
    if z.abs_f64() >= 1.0 || q.abs_f64() >= 1.0 {
        return Err(Error::Domain("q-binomial needs |z| < 1 and |q| < 1".into()));
    }
    let spec = PhiSeriesSpec::new(vec![a.clone()], vec![], q.clone(), z.clone());
    let (series, _) = phi_eval(&spec, eps)?;
    let (num, _) = qpoch_infinite(&(a.clone() * z.clone()), q, eps / 4.0)?;
    let (den, _) = qpoch_infinite(z, q, eps / 4.0)?;
    let product = num.checked_div(&den)?;
    Ok((series - product).abs_f64())
}

/// Residual of Heine's transformation
/// `2phi1(a,b;c;q,z) = [(b;q)_inf (az;q)_inf / ((c;q)_inf (z;q)_inf)]
///  * 2phi1(c/b, z; az; q, b)`,
/// valid for `|z| < 1`, `|b| < 1`, `|q| < 1`.
pub fn heine_residual<S: Scalar>(a: &S, b: &S, c: &S, z: &S, q: &S, eps: f64) -> Result<f64> {
    if z.abs_f64() >= 1.0 || b.abs_f64() >= 1.0 || q.abs_f64() >= 1.0 {
        return Err(Error::Domain(
            "Heine transformation needs |z| < 1, |b| < 1, |q| < 1".into(),
        ));
    }
    if b.is_zero() {
        return Err(Error::Domain("Heine transformation needs b != 0".into()));
    }
    let lhs_spec = PhiSeriesSpec::new(
        vec![a.clone(), b.clone()],
        vec![c.clone()],
        q.clone(),
        z.clone(),
    );
    let (lhs, _) = phi_eval(&lhs_spec, eps)?;

    let az = a.clone() * z.clone();
    let (pb, _) = qpoch_infinite(b, q, eps / 8.0)?;
    let (paz, _) = qpoch_infinite(&az, q, eps / 8.0)?;
    let (pc, _) = qpoch_infinite(c, q, eps / 8.0)?;
    let (pz, _) = qpoch_infinite(z, q, eps / 8.0)?;
    let prefactor = (pb * paz).checked_div(&(pc * pz))?;

    let rhs_spec = PhiSeriesSpec::new(
        vec![c.checked_div(b)?, z.clone()],
        vec![az],
        q.clone(),
        b.clone(),
    );
    let (rhs_series, _) = phi_eval(&rhs_spec, eps)?;
    Ok((lhs - prefactor * rhs_series).abs_f64())
}
