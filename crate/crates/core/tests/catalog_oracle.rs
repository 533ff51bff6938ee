mod common;

use common::{bernoulli_type, compose, euler_type, oracle, expansion_coefficient, rat, revert, sin, DEGREE};
use num_rational::BigRational;
use num_traits::{One, Zero};
use wallis_series::catalog::{catalog, coefficient, CoefficientStream};
use wallis_series::sequences::{bernoulli_positive, euler_positive, BernoulliTable, EulerTable};

#[test]
fn reversion_round_trips() {
    let s = sin(12);
    let mut x = vec![BigRational::zero(); 13];
    x[1] = BigRational::one();
    assert_eq!(compose(&s, &revert(&s)), x);
}

#[test]
fn catalog_matches_series_oracle() {
    for spec in catalog() {
        let expected = oracle(spec.name(), DEGREE);
        for (k, want) in expected.iter().enumerate() {
            assert_eq!(&spec.coefficient(k), want, "{} at x^{k}", spec.name());
        }
    }
}

#[test]
fn expansion_formulas_match_series_oracle() {
    // the closed-form expansions, instantiated with the crate's type numbers
    for spec in catalog() {
        let expected = oracle(spec.name(), DEGREE);
        for (j, want) in expected.iter().enumerate() {
            assert_eq!(&expansion_coefficient(spec.name(), j), want, "{} at x^{j}", spec.name());
        }
    }
}

#[test]
fn step2_matches_coefficients() {
    for spec in catalog() {
        let offset = spec.parity().offset();
        let stepped: Vec<_> = spec.step2(offset).take(15).collect();
        for (i, c) in stepped.iter().enumerate() {
            assert_eq!(c, &spec.coefficient(offset + 2 * i), "{}", spec.name());
        }
    }
}

#[test]
fn type_numbers_match_recurrence_oracles() {
    let bernoulli = bernoulli_type(10);
    let euler = euler_type(10);
    assert_eq!(BernoulliTable::new(10).values(), &bernoulli[..]);
    assert_eq!(EulerTable::new(10).values(), &euler[..]);
    for k in 1..=10 {
        assert_eq!(bernoulli_positive(k), bernoulli[k - 1]);
        assert_eq!(euler_positive(k), euler[k - 1]);
    }
    assert_eq!(bernoulli[..3], [rat(1, 6), rat(1, 30), rat(1, 42)]);
    assert_eq!(euler[..3], [1.into(), 5.into(), 61.into()]);
}

#[test]
fn tan_and_sec_patterns() {
    let tan = oracle("tan", 19);
    let sec = oracle("sec", 18);
    let tan_first: Vec<_> = (0..3).map(|i| expansion_coefficient("tan", 2 * i + 1)).collect();
    let sec_first: Vec<_> = (0..3).map(|i| expansion_coefficient("sec", 2 * i)).collect();
    assert_eq!(tan_first, [rat(1, 1), rat(1, 3), rat(2, 15)]);
    assert_eq!(sec_first, [rat(1, 1), rat(1, 2), rat(5, 24)]);
    for i in 0..10 {
        assert_eq!(expansion_coefficient("tan", 2 * i + 1), tan[2 * i + 1]);
        assert_eq!(expansion_coefficient("sec", 2 * i), sec[2 * i]);
        assert_eq!(coefficient("tan", 2 * i + 1).unwrap(), tan[2 * i + 1]);
        assert_eq!(coefficient("sec", 2 * i).unwrap(), sec[2 * i]);
    }
}
