//! Coefficient-level cross-checks: the closed-form generating functions of
//! the scaled sequences `Q_k`, `Q*_k` and of the hat-normalized convergent
//! sequences are expanded as truncated power series and compared against
//! the recurrences, coefficient by coefficient.
//!
//! ```bash
//! cargo run --example generating_functions
//! ```

use qcfrac::entry12::Entry12Params;
use qcfrac::orthopoly::{
    delta_roots, genfun_q_check, h1_asymptotic_check, hat_nd_genfun_check, q_polys,
};
use qcfrac::scalar::{c64, C64};

fn main() {
    let p = Entry12Params::new(c64(0.6, 0.0), c64(-0.15, 0.0), c64(0.5, 0.0));

    println!("Q_k(2) from the recurrence:");
    let qk = q_polys(&p, &C64::from(2.0), 8).unwrap();
    for (k, v) in qk.iter().enumerate() {
        println!("  Q_{k} = {:>20.14}", v.re);
    }

    for x in [c64(2.0, 0.0), c64(1.0, 0.0)] {
        let dev = genfun_q_check(&p, x, 12).unwrap();
        println!(
            "\nQ(t), Q*(t) closed forms vs recurrence at x = {}: max deviation {dev:.3e} (order 12)",
            x.re
        );
    }

    let (d1, d2) = delta_roots(&p, C64::from(1.0)).unwrap();
    println!("\ndelta roots of 1 - (1-ab)xt - abt^2 at x = 1: {} and {}", d1, d2);
    println!("(expected: 1 and -ab = {})", -p.ab());

    for x in [c64(1.0, 0.0), c64(1.7, 0.0)] {
        let dev = hat_nd_genfun_check(&p, x, 12).unwrap();
        println!(
            "hat-normalized generating functions at x = {}: max deviation {dev:.3e}",
            x.re
        );
    }

    let p = Entry12Params::new(c64(0.3, 0.0), c64(-0.2, 0.0), c64(0.5, 0.0));
    let dev = h1_asymptotic_check(&p, 200, 1e-12).unwrap();
    println!(
        "\nhat-sequence ratio at depth 200 vs H(1) closed form: deviation {dev:.3e}"
    );
}
