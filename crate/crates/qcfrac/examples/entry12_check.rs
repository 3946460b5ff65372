//! Evaluate both sides of Ramanujan's Entry II.16.12 at one parameter
//! point: the ratio of infinite q-products against the continued-fraction
//! limit.
//!
//! ```bash
//! cargo run --example entry12_check
//! ```

use qcfrac::cfrac::{convergents_forward, limit_detect};
use qcfrac::entry12::{cf_c_spec, product_side, Entry12Params};
use qcfrac::scalar::c64;

fn main() {
    let p = Entry12Params::new(c64(0.3, 0.0), c64(-0.2, 0.0), c64(0.5, 0.0));
    println!("parameters: a = 0.3, b = -0.2, q = 0.5\n");

    let product = product_side(&p, 1e-12).unwrap();
    println!("product side  (a^2q^3, b^2q^3; q^4)_inf / (a^2q, b^2q; q^4)_inf");
    println!("            = {product}\n");

    println!("first convergents of the fraction:");
    for item in convergents_forward(&cf_c_spec(&p)).take(12) {
        let c = item.unwrap();
        let v = c.value.unwrap();
        println!(
            "  S_{:<2} = {:>22.16}   |S_k - product| = {:.3e}",
            c.k,
            v.re,
            (v - product).norm()
        );
    }

    let lim = limit_detect(&cf_c_spec(&p), 1e-12, 300).unwrap();
    println!(
        "\nlimit after {} levels = {} (last delta {:.2e})",
        lim.depth, lim.value, lim.last_delta
    );
    println!("residual |limit - product| = {:.3e}", (lim.value - product).norm());

    // A complex base inside the unit disk works the same way.
    let p = Entry12Params::new(c64(0.25, 0.0), c64(-0.2, 0.0), c64(0.3, 0.3));
    let product = product_side(&p, 1e-12).unwrap();
    let lim = limit_detect(&cf_c_spec(&p), 1e-12, 300).unwrap();
    println!(
        "\ncomplex q = 0.3+0.3i: residual {:.3e} at depth {}",
        (lim.value - product).norm(),
        lim.depth
    );
}
