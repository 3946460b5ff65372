//! Asymptotics of the scaled polynomial sequences: `Q_k (2 rho*)^k` tends
//! to `G(rho*)/(1 - rho*^2)` away from the spectrum endpoints and, with an
//! extra `1/(k+1)`, to `G(+-1)` at them. The ratio of the starred and
//! plain sequences reproduces `X(x)`.
//!
//! ```bash
//! cargo run --example darboux_ratios
//! ```

use qcfrac::entry12::Entry12Params;
use qcfrac::orthopoly::darboux_ratio_check;
use qcfrac::scalar::c64;

fn main() {
    let p = Entry12Params::new(c64(0.6, 0.0), c64(-0.15, 0.0), c64(0.5, 0.0));

    println!("x = 2 (geometric convergence of the scaled ratios):");
    for k in [25usize, 50, 100, 200] {
        let r = darboux_ratio_check(&p, c64(2.0, 0.0), k).unwrap();
        println!(
            "  k = {k:>5}: Q-side dev {:.3e}   Q*-side dev {:.3e}   X consistency {:.3e}",
            r.rel_dev_q, r.rel_dev_qstar, r.rel_dev_x
        );
    }

    println!("\nx = 1 (endpoint normalization (k+1)/2^k, O(1/k) approach):");
    for k in [625usize, 1250, 2500, 5000] {
        let r = darboux_ratio_check(&p, c64(1.0, 0.0), k).unwrap();
        println!(
            "  k = {k:>5}: Q-side dev {:.3e}   Q*-side dev {:.3e}",
            r.rel_dev_q, r.rel_dev_qstar
        );
    }

    let r = darboux_ratio_check(&p, c64(2.0, 0.0), 200).unwrap();
    println!("\nscaled limits at x = 2:");
    println!("  G(rho*)/(1-rho*^2)      = {}", r.limit_q);
    println!("  2 rho* F(rho*)/(1-rho*^2) = {}", r.limit_qstar);
    println!("  their ratio (= X(2))     = {}", r.x_closed);
}
