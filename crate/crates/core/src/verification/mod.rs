//! Runs every application identity through both the transform engine and
//! the quadrature oracle and records how they compare.

pub mod cases;
pub mod constants;
pub mod report;

use std::f64::consts::FRAC_PI_2;
use std::time::Instant;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::catalog::{catalog, catalog_lookup, Parity};
use crate::exact::{wallis_even_ratio, wallis_odd_ratio, BigRational};
use crate::quadrature::{oracle_integral_with, sin_power_integral, Inner, QuadratureOptions, DEFAULT_LEVEL_CAP};
use crate::transform::{
    integrate_with, sum_terms, transformed_terms, PiLinearValue, SummationError, SummationStrategy, TransformError,
    TransformOptions, DEFAULT_MAX_TERMS,
};
pub use cases::{application, ApplicationCase, PrintedForm, APPLICATIONS};
pub use report::{BaselReport, CaseReport, KnownConstantCheck, SuiteSummary, SymmetryRow, VerificationReport, WallisRow};

/// Slack added to every comparison to absorb the final float rounding.
pub const COMPARISON_SLACK: f64 = 1e-12;
/// Agreement required between quadrature and exact Wallis values.
pub const WALLIS_TOLERANCE: f64 = 1e-10;
/// Largest power `m` in the Wallis sweep.
pub const WALLIS_SWEEP_MAX: u32 = 41;
/// Terms of the arcsin transform checked to equal `1/(2k+1)²` exactly.
pub const BASEL_EXACT_TERMS: usize = 51;
/// Length of the brute-force partial sum in the Basel check.
pub const BASEL_BRUTE_TERMS: usize = 10_000;
/// Leading terms compared exactly against a printed form.
pub const PRINTED_TERMS_CHECKED: usize = 30;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("no application with id {0}")]
    UnknownApplication(u32),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub tol: f64,
    pub max_terms: usize,
    pub level_cap: usize,
}

impl VerifyOptions {
    pub fn new(tol: f64) -> Self {
        VerifyOptions {
            tol,
            max_terms: DEFAULT_MAX_TERMS,
            level_cap: DEFAULT_LEVEL_CAP,
        }
    }

    fn check(&self) -> Result<(), VerifyError> {
        if self.tol > 0.0 && self.tol.is_finite() {
            Ok(())
        } else {
            Err(VerifyError::InvalidTolerance(self.tol))
        }
    }

    fn transform(&self) -> TransformOptions {
        TransformOptions {
            max_terms: self.max_terms,
            strategy: None,
        }
    }

    fn quadrature(&self) -> QuadratureOptions {
        QuadratureOptions {
            level_cap: self.level_cap,
        }
    }

    /// The oracle is asked for a tenth of the tolerance so its error
    /// estimate rarely dominates the comparison.
    fn oracle_tol(&self) -> f64 {
        self.tol / 10.0
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn route_scale(route: Parity) -> f64 {
    match route {
        Parity::Odd => 1.0,
        _ => FRAC_PI_2,
    }
}

/// Value of a printed right-hand side, summed to `tol`.
pub fn printed_value(form: &PrintedForm, route: Parity, tol: f64, max_terms: usize) -> Result<(f64, f64), SummationError> {
    let scale = route_scale(route);
    let options = TransformOptions {
        max_terms,
        strategy: None,
    };
    let sum = sum_terms(|| form.summands(), tol / scale, &options)?;
    Ok(((form.leading as f64 + sum.value()) * scale, sum.tail_bound * scale))
}

/// Whether the engine's first [`PRINTED_TERMS_CHECKED`] transformed terms
/// equal the printed form's exactly.
pub fn printed_form_matches(case: &ApplicationCase, form: &PrintedForm) -> bool {
    let Ok(spec) = catalog_lookup(case.series_name) else {
        return false;
    };
    transformed_terms(spec, case.route)
        .take(PRINTED_TERMS_CHECKED)
        .enumerate()
        .all(|(e, t)| t == form.aligned_term(e))
}

fn describe_transform_error(err: &TransformError) -> String {
    match err {
        TransformError::NonConvergence {
            source: SummationError::BudgetExceeded { max_terms, needed, .. },
            ..
        } => match needed {
            Some(n) => format!("budget of {max_terms} terms exceeded (about {n:.1e} needed)"),
            None => format!("budget of {max_terms} terms exceeded"),
        },
        other => other.to_string(),
    }
}

/// Compares one application's series value against the oracle.
pub fn run_application(id: u32, options: &VerifyOptions) -> Result<CaseReport, VerifyError> {
    options.check()?;
    let case = application(id).ok_or(VerifyError::UnknownApplication(id))?;
    Ok(run_case(case, options))
}

fn run_case(case: &ApplicationCase, options: &VerifyOptions) -> CaseReport {
    let started = Instant::now();
    let tol = options.tol;
    let mut notes: Vec<String> = Vec::new();
    let mut error = None;

    let series: Option<PiLinearValue> = match catalog_lookup(case.series_name) {
        Ok(spec) => match integrate_with(spec, tol, &options.transform()) {
            Ok(v) => Some(v),
            Err(e) => {
                error = Some(format!("series: {}", describe_transform_error(&e)));
                None
            }
        },
        Err(e) => {
            error = Some(e.to_string());
            None
        }
    };
    let oracle = match oracle_integral_with(case.series_name, Inner::Sin, options.oracle_tol(), &options.quadrature()) {
        Ok(r) => {
            if !r.converged {
                notes.push(format!("oracle did not converge within level {}", options.level_cap));
            }
            Some(r)
        }
        Err(e) => {
            error.get_or_insert(format!("oracle: {e}"));
            None
        }
    };

    let series_value = series.as_ref().map(PiLinearValue::rendered);
    let abs_diff = match (series_value, oracle) {
        (Some(s), Some(o)) => Some((s - o.value).abs()),
        _ => None,
    };
    let pass = match (&series, oracle, abs_diff) {
        (Some(s), Some(o), Some(d)) => o.converged && d <= s.tail_bound + o.error_estimate + COMPARISON_SLACK,
        _ => false,
    };

    if let Some(s) = &series {
        if s.strategy_used == SummationStrategy::PowerlawMonotone.as_str() {
            notes.push(direct_comparison(case, options));
        }
    }

    let printed_matches = printed_form_matches(case, &case.printed);
    let mut printed = None;
    if let Some(corrected) = &case.corrected {
        let corrected_matches = printed_form_matches(case, corrected);
        match printed_value(&case.printed, case.route, tol, options.max_terms) {
            Ok((value, _)) => {
                let reference = oracle.map(|o| o.value).or(series_value).unwrap_or(f64::NAN);
                let deviation = value - reference;
                notes.push(format!(
                    "printed form deviates from the oracle by {deviation:.6e}; corrected form {} {}",
                    corrected.text,
                    if corrected_matches { "matches" } else { "does not match" }
                ));
                printed = Some((value, deviation));
            }
            Err(e) => notes.push(format!("printed form could not be summed: {e}")),
        }
    } else if !printed_matches {
        notes.push("printed form differs from the engine's terms".into());
    }

    let known_constant = case.known_constant.and_then(|c| {
        series_value.map(|v| KnownConstantCheck {
            key: c.key,
            label: c.label,
            value: c.value,
            deviation: v - c.value,
            provenance: c.provenance,
        })
    });
    if let Some(k) = &known_constant {
        notes.push(format!("series − {} = {:.1e}", k.label, k.deviation));
    }

    CaseReport::new(report::CaseInputs {
        case,
        tolerance: tol,
        series: series.as_ref(),
        oracle,
        abs_diff,
        pass,
        printed_form_matches: printed_matches,
        printed,
        known_constant,
        notes,
        error,
        runtime: started.elapsed(),
    })
}

fn direct_comparison(case: &ApplicationCase, options: &VerifyOptions) -> String {
    let Ok(spec) = catalog_lookup(case.series_name) else {
        return String::new();
    };
    let direct = TransformOptions {
        max_terms: options.max_terms,
        strategy: Some(SummationStrategy::Direct),
    };
    match integrate_with(spec, options.tol, &direct) {
        Ok(v) => format!("direct summation also converges in {} terms", v.terms_used),
        Err(e) => format!("direct summation: {}", describe_transform_error(&e)),
    }
}

/// `Σ 1/k² = π²/6` from the arcsin transform: the odd-power terms are
/// `1/(2k+1)²` exactly, and the odd squares carry three quarters of the sum.
pub fn basel_derivation(options: &VerifyOptions) -> Result<BaselReport, VerifyError> {
    options.check()?;
    let started = Instant::now();
    let arcsin = catalog_lookup("arcsin").expect("arcsin is in the catalog");
    let exact_terms_match = transformed_terms(arcsin, Parity::Odd)
        .take(BASEL_EXACT_TERMS)
        .enumerate()
        .all(|(k, t)| {
            let n = num_bigint::BigInt::from(2 * k + 1);
            t == BigRational::new(1.into(), &n * &n)
        });

    let mut brute = 0.0f64;
    let mut compensation = 0.0f64;
    for k in 0..BASEL_BRUTE_TERMS {
        let n = (2 * k + 1) as f64;
        let t = 1.0 / (n * n);
        let s = brute + t;
        compensation += (brute - s) + t;
        brute = s;
    }
    let brute_partial = brute + compensation;

    let sum = integrate_with(arcsin, 0.75 * options.tol, &options.transform());
    let mut report = BaselReport::new(exact_terms_match, brute_partial);
    match sum {
        Ok(s) => report.fill(s.rendered(), s.tail_bound),
        Err(e) => report.error = Some(describe_transform_error(&e)),
    }
    report.finish(started.elapsed());
    Ok(report)
}

/// `|∫ f(sin x) − ∫ f(cos x)| ≤ 2·tol` for every catalog entry.
pub fn symmetry_sweep(options: &VerifyOptions) -> Result<Vec<SymmetryRow>, VerifyError> {
    options.check()?;
    let q = options.quadrature();
    Ok(catalog()
        .iter()
        .map(|spec| {
            let name = spec.name();
            let sin = oracle_integral_with(name, Inner::Sin, options.tol, &q);
            let cos = oracle_integral_with(name, Inner::Cos, options.tol, &q);
            match (sin, cos) {
                (Ok(s), Ok(c)) => SymmetryRow::new(name, s.value, c.value, 2.0 * options.tol),
                (Err(e), _) | (_, Err(e)) => SymmetryRow::failed(name, e.to_string()),
            }
        })
        .collect())
}

/// Quadrature of `sin^m` against the exact ratios for `m ≤ 41`.
pub fn wallis_sweep() -> Vec<WallisRow> {
    (0..=WALLIS_SWEEP_MAX)
        .map(|m| {
            let n = (m / 2) as usize;
            let (text, value) = if m % 2 == 1 {
                let r = wallis_odd_ratio(n);
                (r.to_string(), to_f64(&r))
            } else {
                let r = wallis_even_ratio(n);
                (format!("{r} × π/2"), to_f64(&r) * FRAC_PI_2)
            };
            match sin_power_integral(m, WALLIS_TOLERANCE / 100.0) {
                Ok(q) => WallisRow::new(m, text, value, q.value, WALLIS_TOLERANCE),
                Err(e) => WallisRow::failed(m, text, value, e.to_string()),
            }
        })
        .collect()
}

/// Everything: the fourteen applications, the Basel derivation and both
/// sweeps. Rows come back in a fixed order whatever the thread timing.
pub fn run_all(options: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    options.check()?;
    let started = Instant::now();
    let (cases, basel, symmetry, wallis) = std::thread::scope(|scope| {
        let handles: Vec<_> = APPLICATIONS
            .iter()
            .map(|case| scope.spawn(move || run_case(case, options)))
            .collect();
        let basel = scope.spawn(|| basel_derivation(options));
        let symmetry = scope.spawn(|| symmetry_sweep(options));
        let wallis = scope.spawn(wallis_sweep);
        let cases: Vec<CaseReport> = handles
            .into_iter()
            .map(|h| h.join().expect("application thread panicked"))
            .collect();
        (
            cases,
            basel.join().expect("basel thread panicked"),
            symmetry.join().expect("symmetry thread panicked"),
            wallis.join().expect("wallis thread panicked"),
        )
    });
    Ok(VerificationReport::assemble(
        options,
        cases,
        basel?,
        symmetry?,
        wallis,
        started.elapsed(),
    ))
}
