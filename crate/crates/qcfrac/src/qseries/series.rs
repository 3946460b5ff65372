//! Dense truncated power series, the carrier for generating-function
//! cross-checks.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A univariate power series known through a fixed order. Arithmetic
/// between two series truncates to the smaller order.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    coeffs: Vec<S>,
    var: String,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn new(var: &str, coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        TruncatedSeries {
            coeffs,
            var: var.to_string(),
        }
    }

    pub fn constant(var: &str, value: S, order: usize) -> Self {
        let mut coeffs = vec![S::zero(); order + 1];
        coeffs[0] = value;
        TruncatedSeries {
            coeffs,
            var: var.to_string(),
        }
    }

    pub fn one(var: &str, order: usize) -> Self {
        Self::constant(var, S::one(), order)
    }

    pub fn zero(var: &str, order: usize) -> Self {
        Self::constant(var, S::zero(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, k: usize, value: S) {
        self.coeffs[k] = value;
    }

    fn check_var(&self, other: &Self) {
        assert_eq!(self.var, other.var, "series variables differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_var(other);
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| self.coeffs[k].clone() + other.coeffs[k].clone())
            .collect();
        TruncatedSeries {
            coeffs,
            var: self.var.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_var(other);
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| self.coeffs[k].clone() - other.coeffs[k].clone())
            .collect();
        TruncatedSeries {
            coeffs,
            var: self.var.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_var(other);
        let n = self.order().min(other.order());
        let mut coeffs = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        TruncatedSeries {
            coeffs,
            var: self.var.clone(),
        }
    }

    /// Series division; the divisor must have a nonzero constant term.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_var(other);
        if other.coeffs[0].is_zero() {
            return Err(Error::Degenerate(
                "series division by zero constant term".into(),
            ));
        }
        let n = self.order().min(other.order());
        let mut coeffs = vec![S::zero(); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 0..k {
                acc = acc - coeffs[j].clone() * other.coeffs[k - j].clone();
            }
            coeffs[k] = acc.checked_div(&other.coeffs[0])?;
        }
        Ok(TruncatedSeries {
            coeffs,
            var: self.var.clone(),
        })
    }

    /// Substitute `t -> lambda t`.
    pub fn scale_var(&self, lambda: &S) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut pw = S::one();
        for c in &self.coeffs {
            coeffs.push(c.clone() * pw.clone());
            pw = pw * lambda.clone();
        }
        TruncatedSeries {
            coeffs,
            var: self.var.clone(),
        }
    }

    pub fn mul_scalar(&self, lambda: &S) -> Self {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.clone() * lambda.clone())
                .collect(),
            var: self.var.clone(),
        }
    }

    /// Multiply in place by the linear factor `1 - c t`.
    pub fn mul_one_minus_ct(&mut self, c: &S) {
        for k in (1..self.coeffs.len()).rev() {
            let lower = self.coeffs[k - 1].clone();
            self.coeffs[k] = self.coeffs[k].clone() - c.clone() * lower;
        }
    }

    /// Divide in place by the linear factor `1 - c t`.
    pub fn div_one_minus_ct(&mut self, c: &S) {
        for k in 1..self.coeffs.len() {
            let lower = self.coeffs[k - 1].clone();
            self.coeffs[k] = self.coeffs[k].clone() + c.clone() * lower;
        }
    }

    /// Multiply in place by `t` (shift coefficients up, dropping the top).
    pub fn mul_t(&mut self) {
        for k in (1..self.coeffs.len()).rev() {
            self.coeffs[k] = self.coeffs[k - 1].clone();
        }
        self.coeffs[0] = S::zero();
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs_f64())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use proptest::prelude::*;

    fn ts(coeffs: &[(i64, i64)]) -> TruncatedSeries<Rat> {
        TruncatedSeries::new("t", coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn mul_example() {
        let f = ts(&[(1, 1), (1, 1), (0, 1)]); // 1 + t, to order 2
        let g = ts(&[(1, 1), (-1, 1), (0, 1)]); // 1 - t
        assert_eq!(f.mul(&g), ts(&[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn geometric_series_by_division() {
        let one = TruncatedSeries::<Rat>::one("t", 3);
        let g = ts(&[(1, 1), (-1, 1), (0, 1), (0, 1)]); // 1 - t
        let inv = one.div(&g).unwrap();
        assert_eq!(inv, ts(&[(1, 1), (1, 1), (1, 1), (1, 1)]));
    }

    #[test]
    fn scale_var_example() {
        // (1 + t + t^2) with t -> q^2 t, q = 1/2.
        let f = ts(&[(1, 1), (1, 1), (1, 1)]);
        let scaled = f.scale_var(&rat(1, 4));
        assert_eq!(scaled, ts(&[(1, 1), (1, 4), (1, 16)]));
    }

    #[test]
    fn division_by_zero_constant_rejected() {
        let one = TruncatedSeries::<Rat>::one("t", 2);
        let g = ts(&[(0, 1), (1, 1), (0, 1)]);
        assert!(one.div(&g).is_err());
    }

    #[test]
    fn linear_factor_roundtrip() {
        let mut f = ts(&[(2, 1), (3, 5), (-1, 7), (4, 3)]);
        let orig = f.clone();
        f.mul_one_minus_ct(&rat(2, 3));
        f.div_one_minus_ct(&rat(2, 3));
        assert_eq!(f, orig);
    }

    proptest! {
        #[test]
        fn mul_by_reciprocal_is_one(
            c0n in 1i64..9, coeffs in proptest::collection::vec((-9i64..9, 1i64..9), 4)
        ) {
            let mut v: Vec<Rat> = vec![rat(c0n, 1)];
            v.extend(coeffs.iter().map(|&(n, d)| rat(n, d)));
            let f = TruncatedSeries::new("t", v);
            let one = TruncatedSeries::<Rat>::one("t", f.order());
            let recip = one.div(&f).unwrap();
            prop_assert_eq!(f.mul(&recip), one);
        }
    }
}
