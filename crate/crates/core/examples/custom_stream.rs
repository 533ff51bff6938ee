//! Supplying your own coefficients: `exp` as a closure stream, split into
//! its even and odd halves, and a rational combination of catalog entries.
//!
//! ```text
//! cargo run --example custom_stream
//! ```

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use wallis_series::catalog::{catalog_lookup, CoefficientStream, FnStream, LinearCombination, Parity, Polynomial};
use wallis_series::quadrature::integrate_de;
use wallis_series::transform::{integrate, integrate_mixed};

fn factorial(k: usize) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

fn main() {
    let tol = 1e-12;

    let exp = FnStream::new(Parity::Mixed, |k| BigRational::new(1.into(), factorial(k)));
    let v = integrate_mixed(&exp, tol).unwrap();
    let q = integrate_de(|x: f64| x.sin().exp(), 0.0, FRAC_PI_2, tol).unwrap();
    println!("∫ exp(sin x) dx = {:.15} ± {:.1e}  (quadrature {:.15})", v.rendered(), v.tail_bound, q.value);
    println!("  odd part ≈ {:.15}, even part ≈ {:.15} · π/2", to_f64(&v.odd_part), to_f64(&v.even_part));

    // finite polynomials are summed exactly: 1 + 2x − 3x³
    let poly = Polynomial::new(vec![1.into(), 2.into(), 0.into(), (-3).into()].into_iter().map(BigRational::from_integer).collect());
    let p = integrate_mixed(&poly, tol).unwrap();
    println!("∫ (1 + 2s − 3s³) dx = {} + {} · π/2 exactly", p.odd_part, p.even_part);

    // sec − sech/2
    let stream = |name| Arc::new(catalog_lookup(name).unwrap()) as Arc<dyn CoefficientStream>;
    let combo = LinearCombination::new()
        .with(BigRational::from_integer(1.into()), stream("sec"))
        .with(BigRational::new((-1).into(), 2.into()), stream("sech"));
    let c = integrate(&combo, tol).unwrap();
    let q = integrate_de(|x: f64| 1.0 / x.sin().cos() - 0.5 / x.sin().cosh(), 0.0, FRAC_PI_2, tol).unwrap();
    println!("∫ (sec − sech/2)(sin x) dx = {:.15} via {} (quadrature {:.15})", c.rendered(), c.strategy_used, q.value);
}

fn to_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap()
}
