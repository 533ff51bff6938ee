use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use wallis_series::catalog::{catalog, catalog_lookup, CoefficientStream, LinearCombination, Parity, Polynomial};
use wallis_series::exact::{double_factorial, wallis_even_ratio, wallis_odd_ratio};
use wallis_series::quadrature::{oracle_integral, Inner};
use wallis_series::transform::{
    integrate, integrate_even, integrate_mixed, integrate_odd, integrate_odd_with, SummationStrategy, TransformError,
    TransformOptions,
};

const EVEN: [&str; 7] = ["cos", "cosh", "x_cot_x", "x_over_sin_x", "x_over_sinh_x", "sec", "sech"];
// the slowly convergent entries are left to the dedicated tests below
const ODD: [&str; 5] = ["sin", "sinh", "arctan", "arsinh", "tan"];

fn shared(name: &str) -> Arc<dyn CoefficientStream> {
    Arc::new(catalog_lookup(name).unwrap())
}

fn weight() -> impl Strategy<Value = (i64, i64)> {
    (1i64..=8).prop_flat_map(|q| (-q..=q, Just(q)))
}

fn rat((p, q): (i64, i64)) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// `∫₀^{π/2} sin^k x dx` from double factorials, independent of the
/// crate's Wallis tables.
fn wallis_float(k: usize) -> f64 {
    let k = k as u64;
    let ratio = if k == 0 {
        1.0
    } else {
        let num = double_factorial(k - 1);
        let den = double_factorial(k);
        BigRational::new(num, den).to_f64().unwrap()
    };
    if k.is_multiple_of(2) {
        ratio * FRAC_PI_2
    } else {
        ratio
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linearity(
        a in 0..EVEN.len(), b in 0..EVEN.len(), c in 0..ODD.len(), d in 0..ODD.len(),
        wa in weight(), wb in weight(), odd_route in any::<bool>(),
    ) {
        let tol = 1e-9;
        let (f, g) = if odd_route { (ODD[c], ODD[d]) } else { (EVEN[a], EVEN[b]) };
        let combo = LinearCombination::new().with(rat(wa), shared(f)).with(rat(wb), shared(g));
        let whole = integrate(&combo, tol).unwrap();
        let fv = integrate(catalog_lookup(f).unwrap(), tol).unwrap();
        let gv = integrate(catalog_lookup(g).unwrap(), tol).unwrap();
        let parts = wa.0 as f64 / wa.1 as f64 * fv.rendered() + wb.0 as f64 / wb.1 as f64 * gv.rendered();
        prop_assert!((whole.rendered() - parts).abs() <= 3.0 * tol, "{} vs {}", whole.rendered(), parts);
    }

    #[test]
    fn monomials_are_exact(n in 0usize..80) {
        let odd = integrate_odd(&Polynomial::monomial(2 * n + 1), 1e-12).unwrap();
        prop_assert_eq!(&odd.odd_part, &wallis_odd_ratio(n));
        prop_assert!(odd.even_part.is_zero());
        prop_assert_eq!(odd.tail_bound, 0.0);
        let even = integrate_even(&Polynomial::monomial(2 * n), 1e-12).unwrap();
        prop_assert_eq!(&even.even_part, &wallis_even_ratio(n));
        prop_assert!(even.odd_part.is_zero());
        prop_assert_eq!(even.tail_bound, 0.0);
    }

    #[test]
    fn polynomials_match_wallis_sums(coeffs in prop::collection::vec(-20i64..=20, 1..16)) {
        let poly = Polynomial::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect());
        let v = integrate_mixed(&poly, 1e-12).unwrap();
        prop_assert_eq!(v.tail_bound, 0.0);
        let expected: f64 = coeffs.iter().enumerate().map(|(k, &c)| c as f64 * wallis_float(k)).sum();
        prop_assert!((v.rendered() - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
    }

    #[test]
    fn mixed_decomposes(e in 0..EVEN.len(), o in 0..ODD.len()) {
        let tol = 1e-10;
        let combo = LinearCombination::new()
            .with(rat((1, 1)), shared(EVEN[e]))
            .with(rat((1, 1)), shared(ODD[o]));
        let mixed = integrate_mixed(&combo, tol).unwrap();
        let even = integrate_even(catalog_lookup(EVEN[e]).unwrap(), tol / 2.0).unwrap();
        let odd = integrate_odd(catalog_lookup(ODD[o]).unwrap(), tol / 2.0).unwrap();
        prop_assert_eq!(&mixed.even_part, &even.even_part);
        prop_assert_eq!(&mixed.odd_part, &odd.odd_part);
    }
}

#[test]
fn parity_preconditions() {
    for spec in catalog() {
        let wrong = match spec.parity() {
            Parity::Even => integrate_odd(spec, 1e-8),
            _ => integrate_even(spec, 1e-8),
        };
        assert!(matches!(wrong, Err(TransformError::ParityMismatch { .. })), "{}", spec.name());
    }
}

#[test]
fn tail_bounds_are_honest() {
    // a run at tol/100 is far closer to the truth, so it judges the run at tol
    for tol in [1e-6, 1e-8] {
        for spec in catalog() {
            let coarse = integrate(spec, tol).unwrap();
            let fine = integrate(spec, tol / 100.0).unwrap();
            assert!(coarse.tail_bound <= tol, "{}: {}", spec.name(), coarse.tail_bound);
            assert!(fine.tail_bound <= tol / 100.0, "{}", spec.name());
            let gap = (coarse.rendered() - fine.rendered()).abs();
            assert!(
                gap <= coarse.tail_bound + fine.tail_bound,
                "{} at {tol}: gap {gap:e} exceeds {:e}",
                spec.name(),
                coarse.tail_bound + fine.tail_bound
            );
        }
    }
}

#[test]
fn agrees_with_oracle() {
    let tol = 1e-10;
    for spec in catalog() {
        let series = integrate(spec, tol).unwrap();
        let oracle = oracle_integral(spec.name(), Inner::Sin, tol / 10.0).unwrap();
        assert!(oracle.converged);
        let diff = (series.rendered() - oracle.value).abs();
        assert!(
            diff <= series.tail_bound + oracle.error_estimate + 1e-12,
            "{}: {diff:e}",
            spec.name()
        );
    }
}

#[test]
fn exponential_is_sinh_plus_cosh() {
    let exp = LinearCombination::new()
        .with(rat((1, 1)), shared("sinh"))
        .with(rat((1, 1)), shared("cosh"));
    let v = integrate_mixed(&exp, 1e-10).unwrap();
    let oracle = wallis_series::quadrature::integrate_de(|x: f64| x.sin().exp(), 0.0, FRAC_PI_2, 1e-12).unwrap();
    assert!((v.rendered() - oracle.value).abs() < 1e-10);
}

#[test]
fn slow_series_strategies() {
    let artanh = catalog_lookup("artanh").unwrap();
    let v = integrate_odd(artanh, 1e-6).unwrap();
    assert_eq!(v.strategy_used, SummationStrategy::PowerlawMonotone.as_str());
    let oracle = oracle_integral("artanh", Inner::Sin, 1e-9).unwrap();
    assert!((v.rendered() - oracle.value).abs() <= v.tail_bound + oracle.error_estimate);

    let direct = TransformOptions {
        max_terms: 1000,
        strategy: Some(SummationStrategy::Direct),
    };
    assert!(matches!(
        integrate_odd_with(artanh, 1e-6, &direct),
        Err(TransformError::NonConvergence { .. })
    ));

    let arsinh = integrate_odd(catalog_lookup("arsinh").unwrap(), 1e-8).unwrap();
    assert_eq!(arsinh.strategy_used, SummationStrategy::AlternatingAccelerated.as_str());
    assert!((arsinh.rendered() - 0.915_965_594_177_219).abs() < 1e-8);
}

#[test]
fn invalid_tolerances() {
    let sin = catalog_lookup("sin").unwrap();
    for tol in [0.0, -1e-8, f64::NAN, f64::INFINITY] {
        assert!(matches!(integrate(sin, tol), Err(TransformError::InvalidTolerance(_))));
    }
}
