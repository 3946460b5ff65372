//! Generic continued-fraction engine: backward evaluation of the modified
//! approximants `S_n(w)`, forward convergents through the three-term
//! recurrence with power-of-two rescaling, convergence detection, the
//! determinant identity, and equivalence transforms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

type TermFn<S> = Arc<dyn Fn(usize) -> Result<(S, S)> + Send + Sync>;

/// A continued fraction `b0 + a1/(b1 + a2/(b2 + ...))` given by its leading
/// term and an indexed generator of partial numerators and denominators
/// `k -> (a_k, b_k)` for `k >= 1`.
///
/// A generated `a_k = 0` terminates the fraction: from that level on the
/// composed maps are constant, so the value is the exact finite approximant
/// `S_{k-1}(0)`. `truncation_hint` optionally announces that index.
#[derive(Clone)]
pub struct CfSpec<S> {
    b0: S,
    terms: TermFn<S>,
    truncation_hint: Option<usize>,
}

impl<S: Scalar> CfSpec<S> {
    pub fn new<F>(b0: S, terms: F) -> Self
    where
        F: Fn(usize) -> Result<(S, S)> + Send + Sync + 'static,
    {
        CfSpec {
            b0,
            terms: Arc::new(terms),
            truncation_hint: None,
        }
    }

    pub fn with_truncation_hint(mut self, k: usize) -> Self {
        self.truncation_hint = Some(k);
        self
    }

    pub fn b0(&self) -> &S {
        &self.b0
    }

    pub fn truncation_hint(&self) -> Option<usize> {
        self.truncation_hint
    }

    /// The pair `(a_k, b_k)`; `k` must be at least 1.
    pub fn term(&self, k: usize) -> Result<(S, S)> {
        assert!(k >= 1, "partial quotients are indexed from 1");
        (self.terms)(k)
    }

    /// Rescale by positive multipliers `c_k` (`c_0 = 1`):
    /// `a_k' = c_k c_{k-1} a_k`, `b_k' = c_k b_k`. Every approximant
    /// `S_k(0)` is unchanged. A zero multiplier is an error at the index
    /// where it is first used.
    pub fn equivalence_transform<F>(&self, multipliers: F) -> CfSpec<S>
    where
        F: Fn(usize) -> S + Send + Sync + 'static,
    {
        let inner = self.terms.clone();
        CfSpec {
            b0: self.b0.clone(),
            terms: Arc::new(move |k| {
                let (a, b) = inner(k)?;
                let ck = multipliers(k);
                if ck.is_zero() {
                    return Err(Error::Degenerate(format!(
                        "zero equivalence multiplier c_{k}"
                    )));
                }
                let ckm1 = if k == 1 {
                    S::one()
                } else {
                    let prev = multipliers(k - 1);
                    if prev.is_zero() {
                        return Err(Error::Degenerate(format!(
                            "zero equivalence multiplier c_{}",
                            k - 1
                        )));
                    }
                    prev
                };
                Ok((ck.clone() * ckm1 * a, ck * b))
            }),
            truncation_hint: self.truncation_hint,
        }
    }
}

/// Numerators and denominators of two consecutive convergents, all four
/// sharing one power-of-two exponent so that the represented values are
/// `stored * 2^shift`. The approximant `N_k / D_k` is independent of the
/// shift.
#[derive(Debug, Clone)]
pub struct ConvergentState<S> {
    pub n_curr: S,
    pub n_prev: S,
    pub d_curr: S,
    pub d_prev: S,
    pub shift: i64,
    pub k: usize,
}

impl<S: Scalar> ConvergentState<S> {
    fn initial(b0: S) -> Self {
        ConvergentState {
            n_curr: b0,
            n_prev: S::one(),
            d_curr: S::one(),
            d_prev: S::zero(),
            shift: 0,
            k: 0,
        }
    }

    /// `S_k(0) = N_k / D_k`, or `None` when `D_k = 0`.
    pub fn approximant(&self) -> Option<S> {
        if self.d_curr.is_zero() {
            None
        } else {
            Some(self.n_curr.clone() / self.d_curr.clone())
        }
    }

    /// True (unscaled) numerator of the current convergent.
    pub fn numerator(&self) -> S {
        self.n_curr.mul_pow2(self.shift)
    }

    /// True (unscaled) denominator of the current convergent.
    pub fn denominator(&self) -> S {
        self.d_curr.mul_pow2(self.shift)
    }
}

/// One forward convergent.
#[derive(Debug, Clone)]
pub struct Convergent<S> {
    pub k: usize,
    /// `S_k(0)`; `None` when the denominator vanishes at this depth.
    pub value: Option<S>,
    pub state: ConvergentState<S>,
    /// Set when `a_k = 0` was reached: the value is exact and final.
    pub terminated: bool,
}

/// Iterator over forward convergents `S_1(0), S_2(0), ...`.
pub struct Convergents<S> {
    spec: CfSpec<S>,
    state: ConvergentState<S>,
    zero_denominator_run: usize,
    rescale_exp: i64,
    done: bool,
}

impl<S: Scalar> Convergents<S> {
    pub fn new(spec: &CfSpec<S>) -> Self {
        Convergents {
            spec: spec.clone(),
            state: ConvergentState::initial(spec.b0().clone()),
            zero_denominator_run: 0,
            rescale_exp: 512,
            done: false,
        }
    }

    #[cfg(test)]
    pub(crate) fn with_rescale_exponent(mut self, exp: i64) -> Self {
        self.rescale_exp = exp;
        self
    }

    fn rescale(&mut self) {
        let st = &mut self.state;
        let m = [&st.n_curr, &st.n_prev, &st.d_curr, &st.d_prev]
            .iter()
            .map(|v| v.abs_f64())
            .fold(0.0f64, f64::max);
        if m == 0.0 {
            return;
        }
        let hi = (self.rescale_exp as f64).exp2();
        let lo = (-(self.rescale_exp) as f64).exp2();
        if m > hi || m < lo {
            let e = m.log2().floor() as i64;
            st.n_curr = st.n_curr.mul_pow2(-e);
            st.n_prev = st.n_prev.mul_pow2(-e);
            st.d_curr = st.d_curr.mul_pow2(-e);
            st.d_prev = st.d_prev.mul_pow2(-e);
            st.shift += e;
        }
    }
}

impl<S: Scalar> Iterator for Convergents<S> {
    type Item = Result<Convergent<S>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let k = self.state.k + 1;
        let (a, b) = match self.spec.term(k) {
            Ok(t) => t,
            Err(e) => {
                self.done = true;
                return Some(Err(e));
            }
        };
        if a.is_zero() {
            // Terminated: S_n(0) = S_{k-1}(0) for every n >= k.
            self.done = true;
            let value = self.state.approximant();
            let mut state = self.state.clone();
            state.k = k;
            return Some(Ok(Convergent {
                k,
                value,
                state,
                terminated: true,
            }));
        }
        let n_new = b.clone() * self.state.n_curr.clone() + a.clone() * self.state.n_prev.clone();
        let d_new = b * self.state.d_curr.clone() + a * self.state.d_prev.clone();
        if !n_new.is_finite() || !d_new.is_finite() {
            self.done = true;
            return Some(Err(Error::NonFinite(format!("convergent recurrence at k={k}"))));
        }
        self.state.n_prev = std::mem::replace(&mut self.state.n_curr, n_new);
        self.state.d_prev = std::mem::replace(&mut self.state.d_curr, d_new);
        self.state.k = k;
        self.rescale();

        let value = self.state.approximant();
        if value.is_none() {
            self.zero_denominator_run += 1;
            if self.zero_denominator_run >= 3 {
                self.done = true;
                return Some(Err(Error::DegenerateFraction(k + 1 - 3)));
            }
        } else {
            self.zero_denominator_run = 0;
        }
        Some(Ok(Convergent {
            k,
            value,
            state: self.state.clone(),
            terminated: false,
        }))
    }
}

/// Forward convergent stream for `cf`.
pub fn convergents_forward<S: Scalar>(cf: &CfSpec<S>) -> Convergents<S> {
    Convergents::new(cf)
}

/// Backward evaluation of the modified approximant `S_n(w)`: start from the
/// tail value `w` and apply `v <- a_k / (b_k + v)` from level `n` down to 1.
pub fn eval_backward<S: Scalar>(cf: &CfSpec<S>, n: usize, w: S) -> Result<S> {
    let mut v = w;
    for k in (1..=n).rev() {
        let (a, b) = cf.term(k)?;
        if a.is_zero() {
            // Levels at and below a vanished partial numerator contribute 0.
            v = S::zero();
            continue;
        }
        let den = b + v;
        if den.is_zero() {
            return Err(Error::ZeroDenominator(k));
        }
        v = a.checked_div(&den)?;
    }
    Ok(cf.b0().clone() + v)
}

/// `N_k D_{k-1} - N_{k-1} D_k - (-1)^{k-1} prod_{j=1}^k a_j`; exactly zero
/// in rational mode for any continued fraction.
pub fn determinant_check<S: Scalar>(cf: &CfSpec<S>, k: usize) -> Result<S> {
    assert!(k >= 1);
    let mut stream = Convergents::new(cf);
    let mut state = None;
    let mut prod_a = S::one();
    for _ in 0..k {
        match stream.next() {
            Some(Ok(c)) => {
                if c.terminated {
                    return Err(Error::Degenerate(format!(
                        "fraction terminates before depth {k}"
                    )));
                }
                let (a, _) = cf.term(c.k)?;
                prod_a = prod_a * a;
                state = Some(c.state);
            }
            Some(Err(e)) => return Err(e),
            None => return Err(Error::Degenerate("stream ended early".into())),
        }
    }
    let st = state.expect("k >= 1 iterations");
    let det = st.n_curr.clone() * st.d_prev.clone() - st.n_prev.clone() * st.d_curr.clone();
    let det = det.mul_pow2(2 * st.shift);
    let sign = if (k - 1) % 2 == 0 {
        S::one()
    } else {
        -S::one()
    };
    Ok(det - sign * prod_a)
}

/// Result of running the forward convergents to convergence.
#[derive(Debug, Clone)]
pub struct CfLimit<S> {
    pub value: S,
    pub depth: usize,
    pub last_delta: f64,
    pub converged: bool,
}

/// Iterate forward convergents until `|S_k(0) - S_{k-1}(0)| <= eps` holds
/// for three consecutive depths, the fraction terminates exactly, or
/// `max_depth` is reached (reported as `converged = false`, not an error).
pub fn limit_detect<S: Scalar>(cf: &CfSpec<S>, eps: f64, max_depth: usize) -> Result<CfLimit<S>> {
    assert!(eps > 0.0, "eps must be positive");
    let mut prev: Option<S> = None;
    let mut last: Option<S> = None;
    let mut last_delta = f64::INFINITY;
    let mut small_run = 0usize;
    let mut depth = 0usize;
    for item in Convergents::new(cf) {
        let c = item?;
        depth = c.k;
        if c.terminated {
            return Ok(CfLimit {
                value: c
                    .value
                    .ok_or(Error::DegenerateFraction(c.k))?,
                depth: c.k - 1,
                last_delta: 0.0,
                converged: true,
            });
        }
        match c.value {
            None => {
                prev = None;
                small_run = 0;
            }
            Some(v) => {
                if let Some(p) = prev.take() {
                    last_delta = (v.clone() - p).abs_f64();
                    if last_delta <= eps {
                        small_run += 1;
                    } else {
                        small_run = 0;
                    }
                }
                prev = Some(v.clone());
                last = Some(v);
                if small_run >= 3 {
                    return Ok(CfLimit {
                        value: last.expect("seen at least one value"),
                        depth,
                        last_delta,
                        converged: true,
                    });
                }
            }
        }
        if depth >= max_depth {
            break;
        }
    }
    Ok(CfLimit {
        value: last.ok_or(Error::DegenerateFraction(depth))?,
        depth,
        last_delta,
        converged: false,
    })
}
