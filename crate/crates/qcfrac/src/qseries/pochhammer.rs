//! q-rising factorials `(a;q)_n`, finite and infinite.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Where an infinite product or series was truncated and a rigorous upper
/// bound on the absolute value of what was dropped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailBound {
    pub truncation_index: usize,
    pub bound: f64,
}

impl TailBound {
    pub fn exact(at: usize) -> Self {
        TailBound {
            truncation_index: at,
            bound: 0.0,
        }
    }
}

/// Length of a q-Pochhammer product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochLen {
    Finite(u32),
    Infinite,
}

/// `(a;q)_n = prod_{j=0}^{n-1} (1 - a q^j)`, the empty product for `n = 0`.
pub fn qpoch_finite<S: Scalar>(a: &S, q: &S, n: u32) -> S {
    let mut acc = S::one();
    let mut aq = a.clone();
    for _ in 0..n {
        acc = acc * (S::one() - aq.clone());
        aq = aq * q.clone();
    }
    acc
}

/// Truncated infinite product with its tail bound and the smallest factor
/// modulus seen (for pole detection by callers that divide by the result).
#[derive(Debug, Clone)]
pub struct InfiniteProduct<S> {
    pub value: S,
    pub tail: TailBound,
    pub min_factor: f64,
}

/// `(a;q)_inf` for `|q| < 1`, truncated once the dropped factors are
/// provably within relative error `eps`.
///
/// The bound comes from `|log prod_{k>K}(1-aq^k)| <= sum_{k>K} m_k/(1-m_k)`
/// with `m_k = |a||q|^k`, summed geometrically.
pub fn qpoch_infinite<S: Scalar>(a: &S, q: &S, eps: f64) -> Result<(S, TailBound)> {
    let full = qpoch_infinite_full(a, q, eps)?;
    Ok((full.value, full.tail))
}

pub fn qpoch_infinite_full<S: Scalar>(a: &S, q: &S, eps: f64) -> Result<InfiniteProduct<S>> {
    assert!(eps > 0.0, "eps must be positive");
    let r = q.abs_f64();
    if r >= 1.0 {
        return Err(Error::Domain(format!(
            "infinite product needs |q| < 1, got |q| = {r}"
        )));
    }
    if a.is_zero() {
        return Ok(InfiniteProduct {
            value: S::one(),
            tail: TailBound::exact(0),
            min_factor: 1.0,
        });
    }

    let abs_a = a.abs_f64();
    let mut acc = S::one();
    let mut aq = a.clone();
    let mut min_factor = f64::INFINITY;
    const MAX_FACTORS: usize = 1_000_000;
    for k in 0..MAX_FACTORS {
        let factor = S::one() - aq.clone();
        min_factor = min_factor.min(factor.abs_f64());
        acc = acc * factor;
        aq = aq * q.clone();
        // Tail over factors with index > k.
        let m = abs_a * r.powi(k as i32 + 1);
        if m < 1.0 {
            let log_tail = m / ((1.0 - m) * (1.0 - r));
            let rel = log_tail.exp_m1();
            if rel <= eps {
                return Ok(InfiniteProduct {
                    value: acc.clone(),
                    tail: TailBound {
                        truncation_index: k,
                        bound: acc.abs_f64() * rel,
                    },
                    min_factor,
                });
            }
        }
    }
    Err(Error::Divergence(
        "infinite product did not meet its tail bound within 1e6 factors".into(),
    ))
}

/// `(a_1, ..., a_r; q)_n`: product over the individual symbols.
pub fn qpoch_multi<S: Scalar>(
    args: &[S],
    q: &S,
    len: PochLen,
    eps: f64,
) -> Result<(S, TailBound)> {
    match len {
        PochLen::Finite(n) => {
            let mut acc = S::one();
            for a in args {
                acc = acc * qpoch_finite(a, q, n);
            }
            Ok((acc, TailBound::exact(n as usize)))
        }
        PochLen::Infinite => {
            let per_eps = eps / (args.len().max(1) as f64);
            let mut acc = S::one();
            let mut bound_rel = 0.0;
            let mut at = 0;
            for a in args {
                let (v, t) = qpoch_infinite(a, q, per_eps)?;
                bound_rel += if v.abs_f64() > 0.0 {
                    t.bound / v.abs_f64()
                } else {
                    0.0
                };
                at = at.max(t.truncation_index);
                acc = acc * v;
            }
            let bound = acc.abs_f64() * bound_rel;
            Ok((
                acc,
                TailBound {
                    truncation_index: at,
                    bound,
                },
            ))
        }
    }
}
