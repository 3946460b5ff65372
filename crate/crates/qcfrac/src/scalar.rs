//! Scalar arithmetic foundations.
//!
//! Two instantiations of one field contract back everything else in the
//! crate: [`Rat`] (exact arbitrary-precision rationals) for identity checks
//! that must come out exactly zero, and [`C64`] (complex double precision)
//! for evaluation and asymptotics. Code in the other modules is generic
//! over [`Scalar`] wherever both modes make sense.
//!
//! [`ScaledValue`] is an overflow-safe representation `mantissa * 2^exponent`
//! used by forward convergent recurrences; scaling by powers of two is exact
//! in both modes, so no rounding is injected by rescaling.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::traits::ToPrimitive;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Exact big-rational scalar. Always kept in canonical form (positive
/// denominator, reduced) by the underlying implementation.
pub type Rat = num::BigRational;

/// Complex floating-point scalar (IEEE 754 double per component).
pub type C64 = num::complex::Complex64;

/// Shorthand for an exact rational from two machine integers.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for a complex scalar.
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The field contract shared by exact and floating evaluation modes.
///
/// Beyond ring/field operators this adds the small amount of analytic
/// structure the series and continued-fraction engines need: an
/// approximate modulus for tail bounds and rescaling decisions, exact
/// multiplication by powers of two, and a square root that fails loudly
/// when the result is not representable (non-square rationals).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// True for exact (rational) arithmetic, false for floating point.
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// Exact value `numer/denom`. Panics if `denom == 0`.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Modulus as `f64`. Approximate for rationals whose magnitude exceeds
    /// the double range; used only for tail bounds, convergence deltas and
    /// rescaling triggers, never for the values themselves.
    fn abs_f64(&self) -> f64;

    /// Exact multiplication by `2^e` in both modes.
    fn mul_pow2(&self, e: i64) -> Self;

    /// Principal square root. Fails with [`Error::InexactSqrt`] when the
    /// result cannot be represented (negative or non-square rational).
    fn sqrt(&self) -> Result<Self>;

    /// Both components finite. Rationals are always finite.
    fn is_finite(&self) -> bool;

    /// Approximate complex value, for reporting and bound arithmetic.
    fn approx(&self) -> C64;

    /// Division that signals exact zero divisors instead of panicking or
    /// producing infinities.
    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.clone() / rhs.clone();
        if !q.is_finite() {
            return Err(Error::NonFinite("division".into()));
        }
        Ok(q)
    }

    /// Exact zero in rational mode; `|self| < 1e-13` in floating mode.
    /// This is the degeneracy threshold for pole detection.
    fn is_negligible(&self) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.abs_f64() < 1e-13
        }
    }

    /// `|self - other| <= tol` on the approximate modulus.
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).abs_f64() <= tol
    }

    /// `self^n` by binary exponentiation.
    fn pow_u(&self, n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        Rat::from(BigInt::from(n))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator literal");
        Rat::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn abs_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if let Some(v) = self.to_f64() {
            if v.is_finite() && v != 0.0 {
                return v.abs();
            }
        }
        // Out of double range: estimate from bit lengths.
        let diff = self.numer().bits() as i64 - self.denom().bits() as i64;
        if diff > 1020 {
            f64::MAX
        } else if diff < -1020 {
            f64::MIN_POSITIVE
        } else {
            (diff as f64).exp2()
        }
    }

    fn mul_pow2(&self, e: i64) -> Self {
        let shift = Rat::from(BigInt::one() << e.unsigned_abs() as usize);
        if e >= 0 {
            self * shift
        } else {
            self / shift
        }
    }

    fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.numer().sign() == num::bigint::Sign::Minus {
            return Err(Error::InexactSqrt);
        }
        let rn = self.numer().sqrt();
        let rd = self.denom().sqrt();
        if &(&rn * &rn) == self.numer() && &(&rd * &rd) == self.denom() {
            Ok(Rat::new(rn, rd))
        } else {
            Err(Error::InexactSqrt)
        }
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn approx(&self) -> C64 {
        let v = self.to_f64().unwrap_or(f64::NAN);
        let v = if v.is_finite() {
            v
        } else {
            let sign = if self.numer().sign() == num::bigint::Sign::Minus {
                -1.0
            } else {
                1.0
            };
            sign * self.abs_f64()
        };
        C64::new(v, 0.0)
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator literal");
        C64::new(numer as f64 / denom as f64, 0.0)
    }

    fn abs_f64(&self) -> f64 {
        self.norm()
    }

    fn mul_pow2(&self, e: i64) -> Self {
        // Stepwise to stay exact even when |e| exceeds a single power's range.
        let mut v = *self;
        let mut e = e;
        while e > 1000 {
            v *= (1000f64).exp2();
            e -= 1000;
        }
        while e < -1000 {
            v *= (-1000f64).exp2();
            e += 1000;
        }
        v * (e as f64).exp2()
    }

    fn sqrt(&self) -> Result<Self> {
        Ok(num::complex::Complex::sqrt(*self))
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    fn approx(&self) -> C64 {
        *self
    }
}

/// `mantissa * 2^exponent` with `0.5 <= |mantissa| < 2` (or exactly zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub mantissa: C64,
    pub exponent: i64,
}

impl ScaledValue {
    pub fn zero() -> Self {
        ScaledValue {
            mantissa: C64::zero(),
            exponent: 0,
        }
    }

    /// The represented value; may overflow to infinity for extreme exponents.
    pub fn value(&self) -> C64 {
        Scalar::mul_pow2(&self.mantissa, self.exponent)
    }

    /// Exact ratio of two scaled values, combining mantissas and exponents
    /// separately so that extreme magnitudes cancel before any overflow.
    pub fn ratio(&self, rhs: &ScaledValue) -> Result<C64> {
        if rhs.mantissa.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.mantissa / rhs.mantissa;
        Ok(Scalar::mul_pow2(&m, self.exponent - rhs.exponent))
    }
}

/// Normalize `v * 2^e` into canonical scaled form.
pub fn scaled_normalize(v: C64, e: i64) -> ScaledValue {
    if v.is_zero() {
        return ScaledValue::zero();
    }
    let k = v.norm().log2().floor() as i64;
    ScaledValue {
        mantissa: Scalar::mul_pow2(&v, -k),
        exponent: e + k,
    }
}
