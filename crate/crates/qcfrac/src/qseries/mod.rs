//! q-series foundations: q-Pochhammer symbols, infinite products, basic
//! hypergeometric series with rigorous truncation bounds, truncated power
//! series algebra, and the classical q-binomial and Heine transformation
//! oracles.

mod phi;
mod pochhammer;
mod series;
mod transforms;

pub use phi::{phi_eval, PhiSeriesSpec};
pub use pochhammer::{
    qpoch_finite, qpoch_infinite, qpoch_infinite_full, qpoch_multi, InfiniteProduct, PochLen,
    TailBound,
};
pub use series::TruncatedSeries;
pub use transforms::{heine_residual, qbinomial_residual};
