//! Exact values of `∫₀^{π/2} sin^m x dx` for small `m`.
//!
//! ```text
//! cargo run --example wallis_ratios
//! ```

use std::f64::consts::FRAC_PI_2;

use num_traits::ToPrimitive;
use wallis_series::exact::{WallisParity, WallisTable};
use wallis_series::quadrature::sin_power_integral;

fn main() {
    let table = WallisTable::shared();
    let odd = table.ratios(WallisParity::Odd);
    let even = table.ratios(WallisParity::Even);
    println!("{:>3}  {:<22} {:>20} {:>12}", "m", "exact", "value", "quadrature");
    for (n, (o, e)) in odd.zip(even).take(8).enumerate() {
        let even_value = e.to_f64().unwrap() * FRAC_PI_2;
        let odd_value = o.to_f64().unwrap();
        for (m, exact, value) in [(2 * n, format!("{e} · π/2"), even_value), (2 * n + 1, o.to_string(), odd_value)] {
            let q = sin_power_integral(m as u32, 1e-12).unwrap();
            println!("{m:>3}  {exact:<22} {value:>20.16} {:>12.1e}", (q.value - value).abs());
        }
    }
}
