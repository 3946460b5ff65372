//! The identity holds at every finite depth, not just in the limit: the
//! fraction truncated after `s + 2` levels and closed with the tail
//! denominator `(1 + q^{2s+2}) D(s+1)/D(s+2)` reproduces the product side
//! exactly, for every `s`.
//!
//! ```bash
//! cargo run --example finite_depth
//! ```

use qcfrac::entry12::{d_sum, finite_depth_residual, recursion_residual, Entry12Params};
use qcfrac::scalar::c64;

fn main() {
    let p = Entry12Params::new(c64(0.3, 0.0), c64(-0.2, 0.0), c64(0.5, 0.0));
    println!("parameters: a = 0.3, b = -0.2, q = 0.5\n");

    println!("the tail sums D(s):");
    for s in 0..4 {
        let d = d_sum(s, &p, 1e-12).unwrap();
        println!(
            "  D({s}) = {:>22.16}  (truncated at k = {}, tail <= {:.1e})",
            d.value.re, d.tail.truncation_index, d.tail.bound
        );
    }

    println!("\nfinite-depth residuals (depth-independent by construction):");
    for s in 0..=10u32 {
        let r = finite_depth_residual(s, &p, 1e-11).unwrap();
        println!("  s = {s:>2}: |truncated fraction - product side| = {r:.3e}");
    }

    println!("\nratio recursion residuals for D(s)/D(s+1):");
    for s in [0u32, 3, 7, 10] {
        let r = recursion_residual(s, &p, 1e-11).unwrap();
        println!("  s = {s:>2}: {r:.3e}");
    }
}
