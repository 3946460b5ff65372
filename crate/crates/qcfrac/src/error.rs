//! Error type shared by all numeric modules.

/// Errors raised by scalar arithmetic, series evaluation and
/// continued-fraction machinery.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Division by an exact zero in rational arithmetic.
    #[error("division by zero")]
    DivisionByZero,

    /// A precondition on the parameters is violated (modulus conditions,
    /// zero parameters where a quotient is needed, x inside the spectrum).
    #[error("domain violation: {0}")]
    Domain(String),

    /// A denominator factor vanished; `index` is the term or level where
    /// the degeneracy occurred.
    #[error("pole at index {index}: {what}")]
    Pole { index: usize, what: String },

    /// The series cannot converge for the given parameters.
    #[error("series diverges: {0}")]
    Divergence(String),

    /// Backward recurrence hit an exactly-zero denominator at level `0`.
    #[error("zero denominator in backward recurrence at level {0}")]
    ZeroDenominator(usize),

    /// Denominators of the convergents vanished for several consecutive
    /// indices; the fraction is degenerate from index `0` on.
    #[error("degenerate continued fraction: denominators vanish from index {0}")]
    DegenerateFraction(usize),

    /// A quotient of two computed quantities is too ill-conditioned to
    /// certify at the requested accuracy.
    #[error("ill-conditioned: {0}")]
    Conditioning(String),

    /// `|G(rho)|` fell below threshold: the closed form may sit on a mass
    /// point of the orthogonality measure.
    #[error("possible mass point: |G(rho)| = {0:e}")]
    MassPoint(f64),

    /// A floating-point operation produced NaN or infinity.
    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// An exact square root was requested for a rational that is not a
    /// perfect square.
    #[error("square root has no exact rational representation")]
    InexactSqrt,

    /// A structurally degenerate configuration (coincident roots, zero
    /// scaling, zero equivalence multiplier).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
