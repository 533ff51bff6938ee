//! Runs the full verification suite and prints the table, or JSON with
//! `--json`.
//!
//! ```text
//! cargo run --example verify_applications [tol] [--json]
//! ```

use wallis_series::verification::{run_all, VerifyOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let json = args.iter().any(|a| a == "--json");
    let tol = args.iter().find_map(|a| a.parse().ok()).unwrap_or(1e-10);
    let report = run_all(&VerifyOptions::new(tol)).expect("valid tolerance");
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.render_table());
    }
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
