//! Maclaurin coefficient streams for the functions integrated against
//! `sin x` on `[0, π/2]`, together with closed-form evaluators for the
//! quadrature oracle.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{double_factorial, BigRational, WallisParity, WallisTable};
use crate::sequences::ZigzagTable;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CatalogError {
    #[error("unknown series `{0}`")]
    UnknownName(String),
    #[error("`{name}` is not defined at x = {x}")]
    Domain { name: &'static str, x: f64 },
}

/// Which powers of `x` may carry nonzero coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    /// Index offset of the first power of this parity.
    pub fn offset(self) -> usize {
        match self {
            Parity::Even | Parity::Mixed => 0,
            Parity::Odd => 1,
        }
    }

    pub fn admits(self, k: usize) -> bool {
        match self {
            Parity::Even => k.is_multiple_of(2),
            Parity::Odd => k % 2 == 1,
            Parity::Mixed => true,
        }
    }

    pub fn wallis(self) -> WallisParity {
        match self {
            Parity::Odd => WallisParity::Odd,
            Parity::Even | Parity::Mixed => WallisParity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Mixed => "mixed",
        })
    }
}

/// Behaviour of the series at the right end of `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryClass {
    Entire,
    ConvergesAt1,
    /// Diverges at `x = 1` but the singularity is integrable against `sin`.
    DivergesAt1Integrable,
}

/// A sequence of exact Maclaurin coefficients `a_k`.
pub trait CoefficientStream: Send + Sync {
    fn coefficient(&self, k: usize) -> BigRational;

    fn parity(&self) -> Parity;

    /// Highest possibly nonzero index for polynomials, `None` for series.
    fn degree(&self) -> Option<usize> {
        None
    }

    /// `a_start, a_{start+2}, a_{start+4}, …`.
    fn step2(&self, start: usize) -> Box<dyn Iterator<Item = BigRational> + '_> {
        Box::new((0..).map(move |m| self.coefficient(start + 2 * m)))
    }
}

impl<S: CoefficientStream + ?Sized> CoefficientStream for &S {
    fn coefficient(&self, k: usize) -> BigRational {
        (**self).coefficient(k)
    }
    fn parity(&self) -> Parity {
        (**self).parity()
    }
    fn degree(&self) -> Option<usize> {
        (**self).degree()
    }
    fn step2(&self, start: usize) -> Box<dyn Iterator<Item = BigRational> + '_> {
        (**self).step2(start)
    }
}

impl<S: CoefficientStream + ?Sized> CoefficientStream for Arc<S> {
    fn coefficient(&self, k: usize) -> BigRational {
        (**self).coefficient(k)
    }
    fn parity(&self) -> Parity {
        (**self).parity()
    }
    fn degree(&self) -> Option<usize> {
        (**self).degree()
    }
    fn step2(&self, start: usize) -> Box<dyn Iterator<Item = BigRational> + '_> {
        (**self).step2(start)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Arcsin,
    XCotX,
    Arctan,
    Artanh,
    Arsinh,
    Tan,
    XOverSinX,
    XOverSinhX,
    Sec,
    Sech,
}

/// A registered function: its coefficient formula, parity, behaviour at 1,
/// and a closed-form evaluator.
#[derive(Debug, PartialEq)]
pub struct SeriesSpec {
    name: &'static str,
    kind: Kind,
    parity: Parity,
    boundary_class: BoundaryClass,
}

const fn spec(name: &'static str, kind: Kind, parity: Parity, boundary_class: BoundaryClass) -> SeriesSpec {
    SeriesSpec {
        name,
        kind,
        parity,
        boundary_class,
    }
}

use BoundaryClass::{ConvergesAt1, DivergesAt1Integrable, Entire};

static CATALOG: [SeriesSpec; 14] = [
    spec("sin", Kind::Sin, Parity::Odd, Entire),
    spec("cos", Kind::Cos, Parity::Even, Entire),
    spec("sinh", Kind::Sinh, Parity::Odd, Entire),
    spec("cosh", Kind::Cosh, Parity::Even, Entire),
    spec("arcsin", Kind::Arcsin, Parity::Odd, ConvergesAt1),
    spec("x_cot_x", Kind::XCotX, Parity::Even, ConvergesAt1),
    spec("arctan", Kind::Arctan, Parity::Odd, ConvergesAt1),
    spec("artanh", Kind::Artanh, Parity::Odd, DivergesAt1Integrable),
    spec("arsinh", Kind::Arsinh, Parity::Odd, ConvergesAt1),
    spec("tan", Kind::Tan, Parity::Odd, ConvergesAt1),
    spec("x_over_sin_x", Kind::XOverSinX, Parity::Even, ConvergesAt1),
    spec("x_over_sinh_x", Kind::XOverSinhX, Parity::Even, ConvergesAt1),
    spec("sec", Kind::Sec, Parity::Even, ConvergesAt1),
    spec("sech", Kind::Sech, Parity::Even, ConvergesAt1),
];

/// Every registered series, in a fixed order.
pub fn catalog() -> &'static [SeriesSpec] {
    &CATALOG
}

/// Registered identifiers, in catalog order.
pub fn names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|s| s.name)
}

pub fn catalog_lookup(name: &str) -> Result<&'static SeriesSpec, CatalogError> {
    CATALOG
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| CatalogError::UnknownName(name.to_owned()))
}

/// `a_k` of the named series.
pub fn coefficient(name: &str, k: usize) -> Result<BigRational, CatalogError> {
    Ok(catalog_lookup(name)?.coefficient(k))
}

/// Closed-form value of the named function at `x ∈ [0, 1]`.
pub fn direct_eval(name: &str, x: f64) -> Result<f64, CatalogError> {
    catalog_lookup(name)?.direct_eval(x)
}

fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn signed(m: usize, value: BigRational) -> BigRational {
    if m % 2 == 1 {
        -value
    } else {
        value
    }
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

impl SeriesSpec {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn boundary_class(&self) -> BoundaryClass {
        self.boundary_class
    }

    /// Coefficient of `x^{2m}` (even entries) or `x^{2m+1}` (odd entries).
    fn parity_coefficient(&self, m: usize) -> BigRational {
        let zigzag = ZigzagTable::shared();
        let one = BigInt::one();
        match self.kind {
            Kind::Sin => signed(m, BigRational::new(one, factorial(2 * m + 1))),
            Kind::Cos => signed(m, BigRational::new(one, factorial(2 * m))),
            Kind::Sinh => BigRational::new(one, factorial(2 * m + 1)),
            Kind::Cosh => BigRational::new(one, factorial(2 * m)),
            // (2m−1)!! / ((2m)!! (2m+1))
            Kind::Arcsin | Kind::Arsinh => {
                let m64 = m as u64;
                let value = BigRational::new(
                    double_factorial((2 * m64).saturating_sub(1)),
                    double_factorial(2 * m64) * (2 * m64 + 1),
                );
                if self.kind == Kind::Arsinh {
                    signed(m, value)
                } else {
                    value
                }
            }
            Kind::Arctan => signed(m, BigRational::new(one, BigInt::from(2 * m + 1))),
            Kind::Artanh => BigRational::new(one, BigInt::from(2 * m + 1)),
            // 1 − Σ 4^m B_m x^{2m} / (2m)!
            Kind::XCotX => {
                if m == 0 {
                    return BigRational::one();
                }
                -zigzag.bernoulli(m) * BigRational::new(pow2(2 * m), factorial(2 * m))
            }
            // Σ_{j≥1} 2^{2j} (4^j − 1) B_j x^{2j−1} / (2j)!, with m = j − 1
            Kind::Tan => {
                let j = m + 1;
                let four_j = pow2(2 * j);
                zigzag.bernoulli(j) * BigRational::new(&four_j * (&four_j - 1u32), factorial(2 * j))
            }
            // 1 + 2 Σ (±1)^m (2^{2m−1} − 1) B_m x^{2m} / (2m)!
            Kind::XOverSinX | Kind::XOverSinhX => {
                if m == 0 {
                    return BigRational::one();
                }
                let scale = (pow2(2 * m - 1) - 1u32) * 2u32;
                let value = zigzag.bernoulli(m) * BigRational::new(scale, factorial(2 * m));
                if self.kind == Kind::XOverSinhX {
                    signed(m, value)
                } else {
                    value
                }
            }
            // 1 + Σ (±1)^m E_m x^{2m} / (2m)!
            Kind::Sec | Kind::Sech => {
                if m == 0 {
                    return BigRational::one();
                }
                let value = BigRational::new(zigzag.euler(m), factorial(2 * m));
                if self.kind == Kind::Sech {
                    signed(m, value)
                } else {
                    value
                }
            }
        }
    }

    /// Closed-form value at `x ∈ [0, 1]`.
    pub fn direct_eval(&self, x: f64) -> Result<f64, CatalogError> {
        self.check_domain(x)?;
        self.direct_eval_split(x, 1.0 - x)
    }

    /// Closed-form value at `x` when `1 − x` is known more accurately than
    /// the subtraction would give. Only entries singular at 1 use it.
    pub fn direct_eval_split(&self, x: f64, one_minus_x: f64) -> Result<f64, CatalogError> {
        // x itself may round to 1 while one_minus_x is still positive
        if !((0.0..=1.0).contains(&x) && one_minus_x >= 0.0) {
            return Err(CatalogError::Domain { name: self.name, x });
        }
        let value = match self.kind {
            Kind::Sin => x.sin(),
            Kind::Cos => x.cos(),
            Kind::Sinh => x.sinh(),
            Kind::Cosh => x.cosh(),
            Kind::Arcsin => x.asin(),
            Kind::XCotX => {
                if x == 0.0 {
                    1.0
                } else {
                    x / x.tan()
                }
            }
            Kind::Arctan => x.atan(),
            Kind::Artanh => {
                if one_minus_x == 0.0 {
                    return Err(CatalogError::Domain { name: self.name, x });
                }
                0.5 * ((1.0 + x).ln() - one_minus_x.ln())
            }
            Kind::Arsinh => x.asinh(),
            Kind::Tan => x.tan(),
            Kind::XOverSinX => {
                if x == 0.0 {
                    1.0
                } else {
                    x / x.sin()
                }
            }
            Kind::XOverSinhX => {
                if x == 0.0 {
                    1.0
                } else {
                    x / x.sinh()
                }
            }
            Kind::Sec => 1.0 / x.cos(),
            Kind::Sech => 1.0 / x.cosh(),
        };
        Ok(value)
    }

    fn check_domain(&self, x: f64) -> Result<(), CatalogError> {
        let upper_ok = match self.boundary_class {
            DivergesAt1Integrable => x < 1.0,
            _ => x <= 1.0,
        };
        if (0.0..).contains(&x) && upper_ok {
            Ok(())
        } else {
            Err(CatalogError::Domain { name: self.name, x })
        }
    }
}

impl CoefficientStream for SeriesSpec {
    fn coefficient(&self, k: usize) -> BigRational {
        if self.parity.admits(k) {
            self.parity_coefficient(k / 2)
        } else {
            BigRational::zero()
        }
    }

    fn parity(&self) -> Parity {
        self.parity
    }

    fn step2(&self, start: usize) -> Box<dyn Iterator<Item = BigRational> + '_> {
        if !self.parity.admits(start) {
            return Box::new(std::iter::repeat_with(BigRational::zero));
        }
        let first = start / 2;
        match self.kind {
            // a_{2m+1} = W_even(m) / (2m+1); walk the shared Wallis column
            Kind::Arcsin | Kind::Arsinh => {
                let alternate = self.kind == Kind::Arsinh;
                let ratios = WallisTable::shared().ratios(WallisParity::Even);
                Box::new(ratios.enumerate().skip(first).map(move |(m, w)| {
                    let value = w / BigRational::from_integer(BigInt::from(2 * m + 1));
                    if alternate {
                        signed(m, value)
                    } else {
                        value
                    }
                }))
            }
            _ => Box::new((first..).map(move |m| self.parity_coefficient(m))),
        }
    }
}

/// A finite coefficient list.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coefficients: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<BigRational>) -> Self {
        Polynomial { coefficients }
    }

    pub fn zero() -> Self {
        Polynomial::new(Vec::new())
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coefficients = vec![BigRational::zero(); n + 1];
        coefficients[n] = BigRational::one();
        Polynomial::new(coefficients)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }
}

impl CoefficientStream for Polynomial {
    fn coefficient(&self, k: usize) -> BigRational {
        self.coefficients.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    fn parity(&self) -> Parity {
        let nonzero = |odd: bool| {
            self.coefficients
                .iter()
                .enumerate()
                .any(|(k, c)| (k % 2 == 1) == odd && !c.is_zero())
        };
        match (nonzero(false), nonzero(true)) {
            (true, true) => Parity::Mixed,
            (false, true) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    fn degree(&self) -> Option<usize> {
        Some(self.coefficients.len().saturating_sub(1))
    }
}

/// Coefficients given by a closure, e.g. `a_k = 1/k!` for `exp`.
pub struct FnStream<F> {
    parity: Parity,
    f: F,
}

impl<F> FnStream<F>
where
    F: Fn(usize) -> BigRational + Send + Sync,
{
    pub fn new(parity: Parity, f: F) -> Self {
        FnStream { parity, f }
    }
}

impl<F> CoefficientStream for FnStream<F>
where
    F: Fn(usize) -> BigRational + Send + Sync,
{
    fn coefficient(&self, k: usize) -> BigRational {
        if self.parity.admits(k) {
            (self.f)(k)
        } else {
            BigRational::zero()
        }
    }

    fn parity(&self) -> Parity {
        self.parity
    }
}

/// `Σ αᵢ fᵢ` with rational weights.
#[derive(Clone)]
pub struct LinearCombination {
    terms: Vec<(BigRational, Arc<dyn CoefficientStream>)>,
}

impl LinearCombination {
    pub fn new() -> Self {
        LinearCombination { terms: Vec::new() }
    }

    pub fn with(mut self, weight: BigRational, stream: Arc<dyn CoefficientStream>) -> Self {
        self.terms.push((weight, stream));
        self
    }
}

impl Default for LinearCombination {
    fn default() -> Self {
        Self::new()
    }
}

impl CoefficientStream for LinearCombination {
    fn coefficient(&self, k: usize) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (w, s)| acc + w * s.coefficient(k))
    }

    fn parity(&self) -> Parity {
        let mut parities = self.terms.iter().map(|(_, s)| s.parity());
        match parities.next() {
            None => Parity::Even,
            Some(first) => {
                if parities.all(|p| p == first) {
                    first
                } else {
                    Parity::Mixed
                }
            }
        }
    }

    fn degree(&self) -> Option<usize> {
        self.terms
            .iter()
            .map(|(_, s)| s.degree())
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    fn step2(&self, start: usize) -> Box<dyn Iterator<Item = BigRational> + '_> {
        let mut iters: Vec<_> = self.terms.iter().map(|(w, s)| (w, s.step2(start))).collect();
        Box::new(std::iter::from_fn(move || {
            let mut acc = BigRational::zero();
            for (w, it) in iters.iter_mut() {
                acc += *w * it.next().unwrap_or_else(BigRational::zero);
            }
            Some(acc)
        }))
    }
}

/// The even or odd half of another stream.
pub struct ParityPart<S> {
    inner: S,
    keep: Parity,
}

impl<S: CoefficientStream> ParityPart<S> {
    /// `keep` must be [`Parity::Even`] or [`Parity::Odd`].
    pub fn new(inner: S, keep: Parity) -> Self {
        assert!(keep != Parity::Mixed, "a parity part keeps one parity");
        ParityPart { inner, keep }
    }
}

impl<S: CoefficientStream> CoefficientStream for ParityPart<S> {
    fn coefficient(&self, k: usize) -> BigRational {
        if self.keep.admits(k) {
            self.inner.coefficient(k)
        } else {
            BigRational::zero()
        }
    }

    fn parity(&self) -> Parity {
        self.keep
    }

    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn step2(&self, start: usize) -> Box<dyn Iterator<Item = BigRational> + '_> {
        if self.keep.admits(start) {
            self.inner.step2(start)
        } else {
            Box::new(std::iter::repeat_with(BigRational::zero))
        }
    }
}

/// `true` when every entry of the other parity is zero (checked exactly for
/// polynomials, by declaration for series).
pub fn has_parity(stream: &dyn CoefficientStream, parity: Parity) -> bool {
    match stream.degree() {
        Some(d) => (0..=d).all(|k| parity.admits(k) || stream.coefficient(k).is_zero()),
        None => parity == Parity::Mixed || stream.parity() == parity,
    }
}

/// Partial sum `Σ_{k ≤ degree} a_k x^k` in floating point.
pub fn partial_sum(stream: &dyn CoefficientStream, x: f64, degree: usize) -> f64 {
    use num_traits::ToPrimitive;
    (0..=degree)
        .rev()
        .fold(0.0, |acc, k| acc * x + stream.coefficient(k).to_f64().unwrap_or(0.0))
}

/// `|a_k|` as a float, for error estimates.
pub fn coefficient_magnitude(stream: &dyn CoefficientStream, k: usize) -> f64 {
    use num_traits::ToPrimitive;
    stream.coefficient(k).abs().to_f64().unwrap_or(f64::INFINITY)
}
