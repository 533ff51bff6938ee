//! `Σ 1/k² = π²/6` from the arcsin series: each transformed odd term is
//! exactly `1/(2k+1)²`.
//!
//! ```text
//! cargo run --example basel
//! ```

use std::f64::consts::PI;

use num_rational::BigRational;
use wallis_series::catalog::{catalog_lookup, Parity};
use wallis_series::transform::{integrate, transformed_terms};

fn main() {
    let arcsin = catalog_lookup("arcsin").unwrap();
    for (k, t) in transformed_terms(arcsin, Parity::Odd).take(6).enumerate() {
        let expected = BigRational::new(1.into(), ((2 * k + 1) * (2 * k + 1)).into());
        println!("k = {k}: {t} (1/(2k+1)² = {expected})");
    }
    let s = integrate(arcsin, 1e-12).unwrap();
    let odd_squares = s.rendered();
    println!("Σ 1/(2k+1)² = {odd_squares:.15} ± {:.1e}  (π²/8 = {:.15})", s.tail_bound, PI * PI / 8.0);
    println!("Σ 1/k²      = {:.15}           (π²/6 = {:.15})", odd_squares * 4.0 / 3.0, PI * PI / 6.0);
}
