//! Reducing parameters outside the unit region to the base case: for
//! `|ab| > 1` replace `(a, b)` by `(1/a, 1/b)` and divide the product side
//! by `-ab`; for `|q| > 1` replace `q` by `1/q`. Both reductions are
//! equivalence transforms, so they agree with the original fraction at
//! every depth, not just in the limit.
//!
//! ```bash
//! cargo run --example inverted_parameters
//! ```

use qcfrac::cfrac::limit_detect;
use qcfrac::entry12::{
    approximants, cf_c_spec, entry12_residual, invert_params, invert_q,
    inversion_ab_depth_residual, inversion_q_depth_residual, Entry12Params,
};
use qcfrac::scalar::c64;

fn main() {
    // |ab| = 3 > 1.
    let p = Entry12Params::new(c64(2.0, 0.0), c64(-1.5, 0.0), c64(0.5, 0.0));
    let inv = invert_params(&p).unwrap();
    println!(
        "a = 2, b = -1.5 (|ab| = 3): inverted to a = {}, b = {} (|ab| = {})",
        inv.a,
        inv.b,
        inv.ab().norm()
    );
    let dev = inversion_ab_depth_residual(&p, 60).unwrap();
    println!("  per-depth deviation over 60 levels: {dev:.3e}");

    let orig = approximants(&cf_c_spec(&p), 8).unwrap();
    let scaled = approximants(&cf_c_spec(&inv), 8).unwrap();
    let scale = -1.0 / p.ab().re;
    println!("  depth-by-depth (original vs scaled inverted):");
    for k in 0..8 {
        if let (Some(o), Some(i)) = (&orig[k], &scaled[k]) {
            println!(
                "    S_{:<2} {:>20.14} {:>20.14}",
                k + 1,
                o.re,
                scale * i.re
            );
        }
    }

    // |q| = 2 > 1.
    let p = Entry12Params::new(c64(0.3, 0.0), c64(-0.2, 0.0), c64(2.0, 0.0));
    let inv = invert_q(&p).unwrap();
    println!("\nq = 2: inverted to q = {}", inv.q);
    let dev = inversion_q_depth_residual(&p, 60).unwrap();
    println!("  per-depth deviation over 60 levels: {dev:.3e}");

    // With |1/q| < 1 the full identity applies at the inverted base.
    let check = entry12_residual(&inv, 1e-12, 300).unwrap();
    let orig_limit = limit_detect(&cf_c_spec(&p), 1e-12, 300).unwrap();
    println!(
        "  product side at q = 1/2: {}\n  original fraction limit: {}\n  |difference| = {:.3e}",
        check.product,
        orig_limit.value,
        (check.product - orig_limit.value).norm()
    );
}
