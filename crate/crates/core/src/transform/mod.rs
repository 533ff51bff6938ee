//! From Maclaurin coefficients to `∫₀^{π/2} f(sin x) dx`.
//!
//! Integrating `Σ a_k sin^k x` term by term against the Wallis integrals
//! gives
//!
//! ```text
//! ∫₀^{π/2} f(sin x) dx = Σ_k a_{2k+1} W_odd(k) + (π/2) Σ_k a_{2k} W_even(k)
//! ```
//!
//! so every result is a pair of rationals (the plain part and the
//! coefficient of `π/2`), each summed to a certified tolerance.

pub mod accel;
pub mod summation;

use std::f64::consts::FRAC_PI_2;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{has_parity, CoefficientStream, Parity, ParityPart};
use crate::exact::{BigRational, WallisTable};
pub use summation::{classify_tail, sum_series, SeriesSum, SummationError, SummationStrategy};
use summation::to_f64;

/// Default cap on the number of terms read from one series.
pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

/// Leading terms inspected by [`classify_tail`] before summation starts.
pub const CLASSIFY_WINDOW: usize = 24;

/// Widest window tried when the leading terms have not settled into a
/// recognizable pattern.
pub const MAX_CLASSIFY_WINDOW: usize = 16 * CLASSIFY_WINDOW;

/// `odd_part + even_part · π/2`, plus an extrapolated tail and its bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiLinearValue {
    /// Sum of the odd-index contributions, exact up to truncation.
    #[serde(serialize_with = "serialize_rational")]
    pub odd_part: BigRational,
    /// Coefficient of `π/2`, exact up to truncation.
    #[serde(serialize_with = "serialize_rational")]
    pub even_part: BigRational,
    /// Extrapolated remainder beyond the truncation, in rendered units.
    pub tail_estimate: f64,
    /// Bound on `|true integral − rendered()|`.
    pub tail_bound: f64,
    pub terms_used: usize,
    pub strategy_used: String,
}

fn serialize_rational<S: serde::Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

impl PiLinearValue {
    pub fn zero() -> Self {
        PiLinearValue {
            odd_part: BigRational::zero(),
            even_part: BigRational::zero(),
            tail_estimate: 0.0,
            tail_bound: 0.0,
            terms_used: 0,
            strategy_used: "exact".into(),
        }
    }

    /// Floating-point value of the integral.
    pub fn rendered(&self) -> f64 {
        to_f64(&self.odd_part) + to_f64(&self.even_part) * FRAC_PI_2 + self.tail_estimate
    }

    /// Componentwise sum; tail bounds add.
    pub fn combine(&self, other: &PiLinearValue) -> PiLinearValue {
        PiLinearValue {
            odd_part: &self.odd_part + &other.odd_part,
            even_part: &self.even_part + &other.even_part,
            tail_estimate: self.tail_estimate + other.tail_estimate,
            tail_bound: self.tail_bound + other.tail_bound,
            terms_used: self.terms_used + other.terms_used,
            strategy_used: format!("even={},odd={}", self.strategy_used, other.strategy_used),
        }
    }

    fn from_sum(sum: SeriesSum, parity: Parity) -> Self {
        let strategy_used = sum.strategy.as_str().to_owned();
        match parity {
            Parity::Odd => PiLinearValue {
                odd_part: sum.partial,
                even_part: BigRational::zero(),
                tail_estimate: sum.tail_estimate,
                tail_bound: sum.tail_bound,
                terms_used: sum.terms_used,
                strategy_used,
            },
            _ => PiLinearValue {
                odd_part: BigRational::zero(),
                even_part: sum.partial,
                tail_estimate: sum.tail_estimate * FRAC_PI_2,
                tail_bound: sum.tail_bound * FRAC_PI_2,
                terms_used: sum.terms_used,
                strategy_used,
            },
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransformError {
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("expected a stream with only {expected} powers, found {found}")]
    ParityMismatch { expected: Parity, found: Parity },
    #[error("series did not converge: {source}")]
    NonConvergence {
        #[source]
        source: SummationError,
        /// Best truncated value reached before giving up, if any.
        best: Option<Box<PiLinearValue>>,
    },
}

/// Knobs for the transform engine.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformOptions {
    pub max_terms: usize,
    /// Skip classification and use this strategy.
    pub strategy: Option<SummationStrategy>,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions {
            max_terms: DEFAULT_MAX_TERMS,
            strategy: None,
        }
    }
}

/// `a_{2k+δ} · W(k)` for `k = 0, 1, …`, where `δ` is 0 for the even half
/// and 1 for the odd half.
pub fn transformed_terms<'a>(
    stream: &'a dyn CoefficientStream,
    parity: Parity,
) -> impl Iterator<Item = BigRational> + 'a {
    let ratios = WallisTable::shared().ratios(parity.wallis());
    stream.step2(parity.offset()).zip(ratios).map(|(a, w)| {
        if a.is_zero() {
            a
        } else {
            a * w
        }
    })
}

/// Exact sum of the first `n` transformed terms of one parity.
pub fn transform_partial(stream: &dyn CoefficientStream, parity: Parity, n: usize) -> BigRational {
    transformed_terms(stream, parity)
        .take(n)
        .fold(BigRational::zero(), |acc, t| acc + t)
}

fn check_tolerance(tol: f64) -> Result<(), TransformError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(TransformError::InvalidTolerance(tol))
    }
}

fn integrate_half(
    stream: &dyn CoefficientStream,
    parity: Parity,
    tol: f64,
    options: &TransformOptions,
) -> Result<PiLinearValue, TransformError> {
    check_tolerance(tol)?;
    if !has_parity(stream, parity) {
        return Err(TransformError::ParityMismatch {
            expected: parity,
            found: stream.parity(),
        });
    }
    if let Some(degree) = stream.degree() {
        let count = match parity {
            Parity::Odd => degree.div_ceil(2),
            _ => degree / 2 + 1,
        };
        let partial = transform_partial(stream, parity, count);
        let sum = SeriesSum {
            partial,
            tail_estimate: 0.0,
            tail_bound: 0.0,
            terms_used: count,
            strategy: SummationStrategy::Direct,
        };
        let mut value = PiLinearValue::from_sum(sum, parity);
        value.strategy_used = "exact".into();
        return Ok(value);
    }

    // bounds are produced in units of the summed series
    let series_tol = match parity {
        Parity::Odd => tol,
        _ => tol / FRAC_PI_2,
    };
    let outcome = sum_terms(|| transformed_terms(stream, parity), series_tol, options);
    match outcome {
        Ok(sum) => Ok(PiLinearValue::from_sum(sum, parity)),
        Err(err) => {
            let best = match &err {
                SummationError::BudgetExceeded { best, .. } => {
                    Some(Box::new(PiLinearValue::from_sum((**best).clone(), parity)))
                }
                _ => None,
            };
            Err(TransformError::NonConvergence { source: err, best })
        }
    }
}

/// Sums a series of exact terms, choosing the strategy from its first
/// [`CLASSIFY_WINDOW`] terms unless `options` forces one. An unclassifiable
/// head is widened fourfold up to [`MAX_CLASSIFY_WINDOW`] before falling
/// back to [`SummationStrategy::Direct`].
///
/// `make` must yield the same sequence every time it is called. When the
/// classified strategy's hypothesis fails the sum is retried with
/// [`SummationStrategy::Direct`].
pub fn sum_terms<I, F>(make: F, tol: f64, options: &TransformOptions) -> Result<SeriesSum, SummationError>
where
    F: Fn() -> I,
    I: Iterator<Item = BigRational>,
{
    let mut head: Vec<BigRational> = make().take(CLASSIFY_WINDOW).collect();
    let strategy = match options.strategy {
        Some(s) => s,
        None => loop {
            let floats: Vec<f64> = head.iter().map(to_f64).collect();
            match classify_tail(&floats) {
                Ok(s) => break s,
                Err(_) => {
                    let window = head.len();
                    // short or all-zero heads gain nothing from a wider look
                    if !(CLASSIFY_WINDOW..MAX_CLASSIFY_WINDOW).contains(&window) || floats.iter().all(|t| *t == 0.0) {
                        break SummationStrategy::Direct;
                    }
                    head.extend(make().skip(window).take(3 * window));
                    if head.len() == window {
                        break SummationStrategy::Direct;
                    }
                }
            }
        },
    };
    let run = |strategy| {
        let rest = make().skip(head.len());
        sum_series(head.iter().cloned().chain(rest), strategy, tol, options.max_terms)
    };
    match run(strategy) {
        Err(SummationError::HypothesisFailed { .. }) if options.strategy.is_none() => run(SummationStrategy::Direct),
        other => other,
    }
}

/// `∫₀^{π/2} f(sin x) dx` for an even `f`: the result is `even_part · π/2`.
pub fn integrate_even(stream: &dyn CoefficientStream, tol: f64) -> Result<PiLinearValue, TransformError> {
    integrate_even_with(stream, tol, &TransformOptions::default())
}

pub fn integrate_even_with(
    stream: &dyn CoefficientStream,
    tol: f64,
    options: &TransformOptions,
) -> Result<PiLinearValue, TransformError> {
    integrate_half(stream, Parity::Even, tol, options)
}

/// `∫₀^{π/2} g(sin x) dx` for an odd `g`: the result is `odd_part`.
pub fn integrate_odd(stream: &dyn CoefficientStream, tol: f64) -> Result<PiLinearValue, TransformError> {
    integrate_odd_with(stream, tol, &TransformOptions::default())
}

pub fn integrate_odd_with(
    stream: &dyn CoefficientStream,
    tol: f64,
    options: &TransformOptions,
) -> Result<PiLinearValue, TransformError> {
    integrate_half(stream, Parity::Odd, tol, options)
}

/// `∫₀^{π/2} h(sin x) dx` for any `h`: even and odd halves are summed
/// separately, each to `tol / 2`.
pub fn integrate_mixed(stream: &dyn CoefficientStream, tol: f64) -> Result<PiLinearValue, TransformError> {
    integrate_mixed_with(stream, tol, &TransformOptions::default())
}

pub fn integrate_mixed_with(
    stream: &dyn CoefficientStream,
    tol: f64,
    options: &TransformOptions,
) -> Result<PiLinearValue, TransformError> {
    check_tolerance(tol)?;
    let even = integrate_half(&ParityPart::new(stream, Parity::Even), Parity::Even, tol / 2.0, options)?;
    let odd = integrate_half(&ParityPart::new(stream, Parity::Odd), Parity::Odd, tol / 2.0, options)?;
    Ok(even.combine(&odd))
}

/// Dispatch on the stream's declared parity.
pub fn integrate(stream: &dyn CoefficientStream, tol: f64) -> Result<PiLinearValue, TransformError> {
    integrate_with(stream, tol, &TransformOptions::default())
}

pub fn integrate_with(
    stream: &dyn CoefficientStream,
    tol: f64,
    options: &TransformOptions,
) -> Result<PiLinearValue, TransformError> {
    match stream.parity() {
        Parity::Even => integrate_even_with(stream, tol, options),
        Parity::Odd => integrate_odd_with(stream, tol, options),
        Parity::Mixed => integrate_mixed_with(stream, tol, options),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_lookup, FnStream, Polynomial};
    use crate::exact::{wallis_even_ratio, wallis_odd_ratio};
    use num_bigint::BigInt;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn constant_and_identity() {
        let one = integrate_even(&Polynomial::new(vec![rat(1, 1)]), 1e-10).unwrap();
        assert_eq!(one.even_part, rat(1, 1));
        assert_eq!(one.odd_part, rat(0, 1));
        assert_eq!(one.tail_bound, 0.0);
        assert_eq!(one.rendered(), FRAC_PI_2);
        let x = integrate_odd(&Polynomial::monomial(1), 1e-10).unwrap();
        assert_eq!(x.odd_part, rat(1, 1));
        assert_eq!(x.rendered(), 1.0);
    }

    #[test]
    fn late_settling_series_is_classified() {
        // arsinh − arctan/5: terms grow until k ≈ 14 before alternating down
        use crate::catalog::{CoefficientStream, LinearCombination};
        use std::sync::Arc;
        let stream = |name| Arc::new(catalog_lookup(name).unwrap()) as Arc<dyn CoefficientStream>;
        let combo = LinearCombination::new()
            .with(rat(1, 1), stream("arsinh"))
            .with(rat(-1, 5), stream("arctan"));
        let v = integrate_odd(&combo, 1e-9).unwrap();
        assert_eq!(v.strategy_used, SummationStrategy::AlternatingAccelerated.as_str());
        let a = integrate_odd(catalog_lookup("arsinh").unwrap(), 1e-10).unwrap().rendered();
        let b = integrate_odd(catalog_lookup("arctan").unwrap(), 1e-10).unwrap().rendered();
        assert!((v.rendered() - (a - b / 5.0)).abs() <= v.tail_bound + 1e-10);
    }

    #[test]
    fn monomials_give_wallis_ratios() {
        for n in 0..25 {
            let odd = integrate_odd(&Polynomial::monomial(2 * n + 1), 1e-12).unwrap();
            assert_eq!(odd.odd_part, wallis_odd_ratio(n));
            assert_eq!(odd.tail_bound, 0.0);
            let even = integrate_even(&Polynomial::monomial(2 * n), 1e-12).unwrap();
            assert_eq!(even.even_part, wallis_even_ratio(n));
            assert_eq!(even.tail_bound, 0.0);
        }
    }

    #[test]
    fn mixed_examples() {
        let p = Polynomial::new(vec![rat(1, 1), rat(1, 1)]);
        let v = integrate_mixed(&p, 1e-10).unwrap();
        assert_eq!(v.odd_part, rat(1, 1));
        assert_eq!(v.even_part, rat(1, 1));
        assert_eq!(v.rendered(), 1.0 + FRAC_PI_2);
        let zero = integrate_mixed(&Polynomial::zero(), 1e-10).unwrap();
        assert_eq!(zero.rendered(), 0.0);
        assert_eq!(zero.tail_bound, 0.0);
    }

    #[test]
    fn catalog_examples() {
        let cos = integrate_even(catalog_lookup("cos").unwrap(), 1e-10).unwrap();
        assert!((cos.rendered() - 1.201_969_715_317_206_5).abs() < 1e-10);
        let cosh = integrate_even(catalog_lookup("cosh").unwrap(), 1e-10).unwrap();
        assert!((cosh.rendered() - 1.988_731_630_253_211_3).abs() < 1e-10);
        let sin = integrate_odd(catalog_lookup("sin").unwrap(), 1e-10).unwrap();
        assert!((sin.rendered() - 0.893_243_740_975_026_2).abs() < 1e-10);
        let arsinh = integrate_odd(catalog_lookup("arsinh").unwrap(), 1e-10).unwrap();
        assert!((arsinh.rendered() - 0.915_965_594_177_219).abs() < 1e-10);
    }

    #[test]
    fn exp_is_sinh_plus_cosh() {
        let exp = FnStream::new(Parity::Mixed, |k| {
            let fact = (2..=k).fold(BigInt::one(), |a, i| a * i);
            BigRational::new(BigInt::one(), fact)
        });
        let v = integrate_mixed(&exp, 1e-10).unwrap();
        let expected = 1.115_647_387_602_343_8 + 1.988_731_630_253_211_3;
        assert!((v.rendered() - expected).abs() < 1e-10);
    }

    #[test]
    fn parity_and_tolerance_errors() {
        let cos = catalog_lookup("cos").unwrap();
        assert!(matches!(integrate_odd(cos, 1e-8), Err(TransformError::ParityMismatch { .. })));
        assert!(matches!(integrate_even(cos, 0.0), Err(TransformError::InvalidTolerance(_))));
        assert!(matches!(integrate_mixed(cos, -1.0), Err(TransformError::InvalidTolerance(_))));
    }

    #[test]
    fn budget_is_reported() {
        let artanh = catalog_lookup("artanh").unwrap();
        let options = TransformOptions {
            max_terms: 1000,
            strategy: Some(SummationStrategy::Direct),
        };
        match integrate_odd_with(artanh, 1e-6, &options) {
            Err(TransformError::NonConvergence { best: Some(best), .. }) => assert!(best.tail_bound > 1e-6),
            other => panic!("unexpected {other:?}"),
        }
        let options = TransformOptions {
            max_terms: 1000,
            strategy: None,
        };
        let v = integrate_odd_with(artanh, 1e-6, &options).unwrap();
        assert_eq!(v.strategy_used, "powerlaw_monotone");
        assert!((v.rendered() - 1.831_931_188_354_438).abs() < 1e-6);
    }
}
