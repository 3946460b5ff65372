//! The J-fraction generalization: H(1) against its closed form, and the
//! scaled fraction X(x) = 2 rho F(rho)/G(rho) against the convergent-limit
//! oracle at points off the spectrum interval [-1, 1].
//!
//! ```bash
//! cargo run --example jfraction_value
//! ```

use qcfrac::cfrac::limit_detect;
use qcfrac::entry12::{h1_closed, jfrac_h_spec, kc_relation_residual, Entry12Params};
use qcfrac::orthopoly::{branch, x_closed, x_limit};
use qcfrac::scalar::{c64, C64};

fn main() {
    let p = Entry12Params::new(c64(0.3, 0.0), c64(-0.2, 0.0), c64(0.5, 0.0));
    let closed = h1_closed(&p, 1e-12).unwrap();
    let lim = limit_detect(&jfrac_h_spec(&p, &C64::from(1.0)), 1e-12, 300).unwrap();
    println!("H(1) closed form      = {closed}");
    println!("H(1) J-fraction limit = {} (depth {})", lim.value, lim.depth);
    println!("residual              = {:.3e}", (closed - lim.value).norm());
    println!(
        "K-C relation residual |1/K - (1-ab) - 1/C| = {:.3e}\n",
        kc_relation_residual(&p, 1e-12, 300).unwrap()
    );

    let p = Entry12Params::new(c64(0.6, 0.0), c64(-0.15, 0.0), c64(0.5, 0.0));
    println!("X(x) at a = 0.6, b = -0.15, q = 0.5:");
    for x in [
        c64(2.0, 0.0),
        c64(-2.0, 0.0),
        c64(0.0, 1.5),
        c64(0.4, 1.2),
    ] {
        let bd = branch(x).unwrap();
        let xc = x_closed(&p, x, 1e-12).unwrap();
        let xl = x_limit(&p, &x, 300).unwrap();
        println!(
            "  x = {x:>10}: rho* = {:>24}  X = {xc}\n{:14}|closed - limit(300)| = {:.3e}",
            bd.rho_star,
            "",
            (xc - xl.value).norm()
        );
    }

    // The spectrum endpoint converges like O(1/k) instead of geometrically.
    let x = C64::from(1.0);
    let xc = x_closed(&p, x, 1e-12).unwrap();
    println!("\nx = 1 (endpoint, O(1/k) convergence): X = {xc}");
    for depth in [2500usize, 5000, 10_000] {
        let xl = x_limit(&p, &x, depth).unwrap();
        println!("  depth {depth:>6}: |closed - limit| = {:.3e}", (xc - xl.value).norm());
    }
}
