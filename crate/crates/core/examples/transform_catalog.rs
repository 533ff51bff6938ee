//! Integrates every catalog entry through the Wallis transform and prints
//! the exact partial sum next to the rendered value.
//!
//! ```text
//! cargo run --example transform_catalog [tol]
//! ```

use wallis_series::catalog::catalog;
use wallis_series::transform::integrate;

fn main() {
    let tol: f64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1e-10);
    println!("{:<14} {:>20} {:>10} {:>8}  strategy", "name", "value", "bound", "terms");
    for spec in catalog() {
        match integrate(spec, tol) {
            Ok(v) => println!(
                "{:<14} {:>20.15} {:>10.1e} {:>8}  {}",
                spec.name(),
                v.rendered(),
                v.tail_bound,
                v.terms_used,
                v.strategy_used
            ),
            Err(e) => println!("{:<14} error: {e}", spec.name()),
        }
    }
}
