//! Bernoulli and Euler type numbers, `|B_{2k}|` and `|E_{2k}|`.
//!
//! ```text
//! cargo run --example type_numbers [count]
//! ```

use wallis_series::sequences::{BernoulliTable, EulerTable};

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    let bernoulli = BernoulliTable::new(count);
    let euler = EulerTable::new(count);
    println!("{:>3}  {:<28} E_k", "k", "B_k");
    for (k, (b, e)) in bernoulli.values().iter().zip(euler.values()).enumerate() {
        println!("{:>3}  {:<28} {e}", k + 1, b.to_string());
    }
}
