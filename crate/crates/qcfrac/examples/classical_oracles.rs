//! The two classical transformation oracles used by the identity checks:
//! the q-binomial theorem and Heine's transformation of a 2phi1 series.
//!
//! ```bash
//! cargo run --example classical_oracles
//! ```

use qcfrac::qseries::{heine_residual, phi_eval, qbinomial_residual, qpoch_infinite, PhiSeriesSpec};
use qcfrac::scalar::{c64, C64};

fn main() {
    // Euler's series: a = 0 reduces the q-binomial theorem to
    // 1/(z;q)_inf = sum z^k / (q;q)_k.
    let (q, z) = (c64(0.5, 0.0), c64(0.4, 0.1));
    let r = qbinomial_residual(&C64::from(0.0), &z, &q, 1e-12).unwrap();
    println!("q-binomial residual at a = 0 (Euler's series): {r:.3e}");

    let a = c64(0.3, 0.2);
    let r = qbinomial_residual(&a, &z, &q, 1e-12).unwrap();
    println!("q-binomial residual at a = 0.3+0.2i:           {r:.3e}");

    let (va, vb, vc) = (c64(0.3, 0.0), c64(0.2, 0.0), c64(-0.4, 0.0));
    let r = heine_residual(&va, &vb, &vc, &c64(0.25, 0.0), &q, 1e-12).unwrap();
    println!("Heine residual at a generic real point:        {r:.3e}");

    // The specific substitution that carries the hat-sequence limits into
    // the closed form of H(1): base q^2, upper -aq/b and a^2 q, lower
    // -abq^2, argument bq/a.
    let (pa, pb, pq) = (0.3f64, -0.2f64, 0.5f64);
    let q2 = c64(pq * pq, 0.0);
    let r = heine_residual(
        &c64(-pa * pq / pb, 0.0),
        &c64(pa * pa * pq, 0.0),
        &c64(-pa * pb * pq * pq, 0.0),
        &c64(pb * pq / pa, 0.0),
        &q2,
        1e-12,
    )
    .unwrap();
    println!("Heine residual for the H(1) substitution:      {r:.3e}");

    // Both sides of the q-binomial theorem spelled out once.
    let spec = PhiSeriesSpec::new(vec![a], vec![], q, z);
    let (series, tail) = phi_eval(&spec, 1e-12).unwrap();
    let (num, _) = qpoch_infinite(&(a * z), &q, 1e-13).unwrap();
    let (den, _) = qpoch_infinite(&z, &q, 1e-13).unwrap();
    println!("\n1phi0(a; -; q, z)        = {series}  (tail <= {:.1e})", tail.bound);
    println!("(az;q)_inf / (z;q)_inf   = {}", num / den);
}
