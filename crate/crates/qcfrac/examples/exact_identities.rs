//! The algebraic backbone of the proof, checked in exact rational
//! arithmetic: the two splitting identities behind the index shifts and
//! the determinant identity of the convergents. Every residual is an exact
//! rational zero, not a small float.
//!
//! ```bash
//! cargo run --example exact_identities
//! ```

use qcfrac::cfrac::determinant_check;
use qcfrac::entry12::{cf_c_spec, star_residual, twostar_residual, Entry12Params};
use qcfrac::scalar::rat;

fn main() {
    let triples = [
        ((1, 3), (-1, 4), (1, 5)),
        ((2, 5), (-1, 7), (1, 3)),
        ((1, 2), (-1, 3), (1, 4)),
    ];

    for ((an, ad), (bn, bd), (qn, qd)) in triples {
        let p = Entry12Params::new(rat(an, ad), rat(bn, bd), rat(qn, qd));
        let mut checked = 0usize;
        let mut nonzero = 0usize;
        for k in 0..=10u32 {
            if !star_residual(k, &p).unwrap().eq(&rat(0, 1)) {
                nonzero += 1;
            }
            checked += 1;
            for s in 0..=10u32 {
                if !twostar_residual(k, s, &p).unwrap().eq(&rat(0, 1)) {
                    nonzero += 1;
                }
                checked += 1;
            }
        }
        println!(
            "a = {an}/{ad}, b = {bn}/{bd}, q = {qn}/{qd}: {checked} splitting identities, {nonzero} nonzero"
        );

        // Determinant identity N_k D_{k-1} - N_{k-1} D_k = (-1)^{k-1} prod a_j
        // for the fraction itself, exact at every depth.
        let cf = cf_c_spec(&p);
        let mut det_nonzero = 0usize;
        for k in 1..=12usize {
            if !determinant_check(&cf, k).unwrap().eq(&rat(0, 1)) {
                det_nonzero += 1;
            }
        }
        println!("  determinant identity through depth 12: {det_nonzero} nonzero residuals");
    }
}
