//! Tanh-sinh (double-exponential) quadrature and the catalog oracle built on it.
//!
//! The substitution `x = c + r·tanh((π/2) sinh t)` sends the interval to the
//! real line and makes the integrand decay doubly exponentially, so the
//! trapezoidal rule in `t` converges quickly even when the integrand has an
//! integrable singularity at an endpoint. Nodes never land on an endpoint.

use std::cell::Cell;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{catalog_lookup, CatalogError};

/// Highest level supported by the cached node tables.
pub const MAX_LEVEL: usize = 20;
/// Default level cap: step `2^{-12}` in `t`.
pub const DEFAULT_LEVEL_CAP: usize = 12;
/// Levels below this are never accepted as converged.
const MIN_LEVEL: usize = 3;
/// Truncation of the `t` axis. At `t = 4` nodes sit within ~1e-37 of the
/// endpoints (relative to the half-width).
const T_MAX: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// `|I_L − I_{L−1}|` between the last two levels.
    pub error_estimate: f64,
    pub evaluations: usize,
    /// Whether `error_estimate <= tol` was reached within the level cap.
    pub converged: bool,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("level cap must be between 1 and {MAX_LEVEL}, got {0}")]
    InvalidLevelCap(usize),
    #[error("integrand returned {value} at x = {x}")]
    NonFiniteSample { x: f64, value: f64 },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureOptions {
    pub level_cap: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            level_cap: DEFAULT_LEVEL_CAP,
        }
    }
}

/// A quadrature node together with its distances to both endpoints.
///
/// Near an endpoint `x` itself loses the information the distances keep:
/// `b − x` may round to zero while `to_b` is still 1e-37.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_a: f64,
    pub to_b: f64,
}

/// Node at `t > 0`, normalized to the interval `[−1, 1]`.
#[derive(Clone, Copy, Debug)]
struct Node {
    /// `1 − tanh(u)`, distance to the near endpoint.
    near: f64,
    /// `1 + tanh(u)`, distance to the far endpoint.
    far: f64,
    /// `(π/2) cosh t / cosh² u`.
    weight: f64,
}

impl Node {
    fn at(t: f64) -> Node {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u).exp();
        let near = 2.0 * e / (1.0 + e);
        let far = 2.0 / (1.0 + e);
        Node {
            near,
            far,
            weight: FRAC_PI_2 * t.cosh() * near * far,
        }
    }
}

static LEVELS: [OnceLock<Vec<Node>>; MAX_LEVEL + 1] = [const { OnceLock::new() }; MAX_LEVEL + 1];

/// Nodes first used at `level`: `t = j·2^{-level}` for odd `j` (all `j ≥ 1`
/// at level 0), up to `T_MAX`.
fn level_nodes(level: usize) -> &'static [Node] {
    LEVELS[level].get_or_init(|| {
        let scale = 1u64 << level;
        let last = (T_MAX as u64) * scale;
        let (first, stride) = if level == 0 { (1, 1) } else { (1, 2) };
        (first..=last)
            .step_by(stride)
            .map(|j| Node::at(j as f64 / scale as f64))
            .filter(|n| n.weight > 0.0)
            .collect()
    })
}

/// Integrates `f` over `(a, b)` to absolute tolerance `tol`.
///
/// Nodes that round onto an endpoint are skipped; use
/// [`integrate_de_with_distances`] when the integrand is singular there.
pub fn integrate_de<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_de_with(f, a, b, tol, &QuadratureOptions::default())
}

pub fn integrate_de_with<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    options: &QuadratureOptions,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_inner(
        |p: Abscissa| (p.x > a && p.x < b).then(|| f(p.x)),
        a,
        b,
        tol,
        options,
    )
}

/// Like [`integrate_de`], but the integrand sees each node's distances to
/// both endpoints and no node is skipped.
pub fn integrate_de_with_distances<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    options: &QuadratureOptions,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(Abscissa) -> f64,
{
    integrate_inner(|p| Some(f(p)), a, b, tol, options)
}

fn integrate_inner<F>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    options: &QuadratureOptions,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(Abscissa) -> Option<f64>,
{
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(QuadratureError::InvalidInterval { a, b });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(QuadratureError::InvalidTolerance(tol));
    }
    let cap = options.level_cap;
    if cap == 0 || cap > MAX_LEVEL {
        return Err(QuadratureError::InvalidLevelCap(cap));
    }

    let half = 0.5 * (b - a);
    let centre = a + half;
    let evaluations = Cell::new(0usize);
    let sample = |p: Abscissa| -> Result<f64, QuadratureError> {
        match f(p) {
            None => Ok(0.0),
            Some(v) if v.is_finite() => {
                evaluations.set(evaluations.get() + 1);
                Ok(v)
            }
            Some(v) => Err(QuadratureError::NonFiniteSample { x: p.x, value: v }),
        }
    };

    let mut raw = FRAC_PI_2
        * sample(Abscissa {
            x: centre,
            from_a: half,
            to_b: half,
        })?;
    let mut previous = f64::NAN;
    let mut result = QuadratureResult {
        value: 0.0,
        error_estimate: f64::INFINITY,
        evaluations: 0,
        converged: false,
    };
    for level in 0..=cap {
        let mut added = 0.0;
        for node in level_nodes(level) {
            let near = half * node.near;
            let far = half * node.far;
            let right = sample(Abscissa {
                x: b - near,
                from_a: far,
                to_b: near,
            })?;
            let left = sample(Abscissa {
                x: a + near,
                from_a: near,
                to_b: far,
            })?;
            added += node.weight * (right + left);
        }
        raw += added;
        let step = 0.5f64.powi(level as i32);
        let value = half * step * raw;
        let error_estimate = if level == 0 {
            f64::INFINITY
        } else {
            (value - previous).abs()
        };
        result = QuadratureResult {
            value,
            error_estimate,
            evaluations: evaluations.get(),
            converged: level >= MIN_LEVEL.min(cap) && error_estimate <= tol,
        };
        if result.converged {
            break;
        }
        previous = value;
    }
    Ok(result)
}

/// Inner function composed with the catalog entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Inner {
    Sin,
    Cos,
}

impl Inner {
    pub fn as_str(self) -> &'static str {
        match self {
            Inner::Sin => "sin",
            Inner::Cos => "cos",
        }
    }

    /// `(u, 1 − u)` at the node, both computed without cancellation.
    fn split(self, p: Abscissa) -> (f64, f64) {
        // distance from the point where the inner function equals 1
        let (delta, other) = match self {
            Inner::Sin => (p.to_b, p.from_a),
            Inner::Cos => (p.from_a, p.to_b),
        };
        let u = if delta < other { delta.cos() } else { other.sin() };
        let s = (0.5 * delta).sin();
        (u, 2.0 * s * s)
    }
}

/// `∫₀^{π/2} f(inner(x)) dx` for the catalog entry `name`.
pub fn oracle_integral(name: &str, inner: Inner, tol: f64) -> Result<QuadratureResult, QuadratureError> {
    oracle_integral_with(name, inner, tol, &QuadratureOptions::default())
}

pub fn oracle_integral_with(
    name: &str,
    inner: Inner,
    tol: f64,
    options: &QuadratureOptions,
) -> Result<QuadratureResult, QuadratureError> {
    let spec = catalog_lookup(name)?;
    let failure = OnceLock::new();
    let result = integrate_de_with_distances(
        |p| {
            let (u, one_minus_u) = inner.split(p);
            spec.direct_eval_split(u, one_minus_u).unwrap_or_else(|e| {
                let _ = failure.set(e);
                f64::NAN
            })
        },
        0.0,
        FRAC_PI_2,
        tol,
        options,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e.into());
    }
    result
}

/// `∫₀^{π/2} sin^m x dx` by quadrature, for checking the exact ratios.
pub fn sin_power_integral(m: u32, tol: f64) -> Result<QuadratureResult, QuadratureError> {
    integrate_de_with_distances(
        |p| {
            let s = if p.to_b < p.from_a { p.to_b.cos() } else { p.x.sin() };
            s.powi(m as i32)
        },
        0.0,
        FRAC_PI_2,
        tol,
        &QuadratureOptions::default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{wallis_even_ratio, wallis_odd_ratio};
    use crate::transform::summation::to_f64;

    #[test]
    fn elementary_integrals() {
        let r = integrate_de(f64::sin, 0.0, FRAC_PI_2, 1e-12).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.0).abs() < 1e-12);
        assert!(r.error_estimate <= 1e-12);
        let r = integrate_de(|x: f64| x.sin().powi(5), 0.0, FRAC_PI_2, 1e-12).unwrap();
        assert!((r.value - 8.0 / 15.0).abs() < 1e-12);
        let r = integrate_de(|x: f64| x * x, -1.0, 2.0, 1e-12).unwrap();
        assert!((r.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn endpoint_singularities() {
        let r = integrate_de(|x: f64| x.ln(), 0.0, 1.0, 1e-10).unwrap();
        assert!((r.value + 1.0).abs() < 1e-10, "{r:?}");
        let r = integrate_de_with_distances(|p| 1.0 / p.from_a.sqrt(), 0.0, 1.0, 1e-10, &QuadratureOptions::default())
            .unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn artanh_of_sin_is_finite() {
        let r = oracle_integral("artanh", Inner::Sin, 1e-9).unwrap();
        assert!(r.converged);
        assert!((r.value - 1.831_931_188_354_438).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn oracle_examples() {
        let r = oracle_integral("sin", Inner::Sin, 1e-10).unwrap();
        assert!((r.value - 0.893_243_740_975_026_2).abs() < 1e-10);
        let r = oracle_integral("cos", Inner::Cos, 1e-10).unwrap();
        assert!((r.value - 1.201_969_715_317_206_5).abs() < 1e-10);
        let r = oracle_integral("x_over_sinh_x", Inner::Sin, 1e-10).unwrap();
        assert!((r.value - 1.450_426_580_212_971_6).abs() < 1e-10);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            integrate_de(f64::sin, 1.0, 1.0, 1e-8),
            Err(QuadratureError::InvalidInterval { .. })
        ));
        assert!(matches!(
            integrate_de(f64::sin, 0.0, 1.0, 0.0),
            Err(QuadratureError::InvalidTolerance(_))
        ));
        assert!(matches!(
            integrate_de(|x: f64| 1.0 / (x - 0.5), 0.0, 1.0, 1e-8),
            Err(QuadratureError::NonFiniteSample { .. })
        ));
        assert!(matches!(
            oracle_integral("nosuch", Inner::Sin, 1e-8),
            Err(QuadratureError::Catalog(CatalogError::UnknownName(_)))
        ));
        let opts = QuadratureOptions { level_cap: 0 };
        assert!(integrate_de_with(f64::sin, 0.0, 1.0, 1e-8, &opts).is_err());
    }

    #[test]
    fn level_cap_reports_non_convergence() {
        let opts = QuadratureOptions { level_cap: 2 };
        let r = integrate_de_with(|x: f64| (50.0 * x).sin(), 0.0, 10.0, 1e-14, &opts).unwrap();
        assert!(!r.converged);
        assert!(r.evaluations > 0);
    }

    #[test]
    fn wallis_agreement() {
        for n in 0..=20u32 {
            let odd = sin_power_integral(2 * n + 1, 1e-12).unwrap();
            assert!((odd.value - to_f64(&wallis_odd_ratio(n as usize))).abs() < 1e-10);
            let even = sin_power_integral(2 * n, 1e-12).unwrap();
            assert!((even.value - to_f64(&wallis_even_ratio(n as usize)) * FRAC_PI_2).abs() < 1e-10);
        }
    }

    #[test]
    fn halving_tol_costs_at_most_one_level() {
        let mut tol = 1e-4;
        while tol > 1e-13 {
            let coarse = integrate_de(|x: f64| x.sin().exp(), 0.0, FRAC_PI_2, tol).unwrap();
            let fine = integrate_de(|x: f64| x.sin().exp(), 0.0, FRAC_PI_2, tol / 2.0).unwrap();
            assert!(fine.evaluations <= 2 * coarse.evaluations + 1);
            tol /= 3.0;
        }
    }
}
