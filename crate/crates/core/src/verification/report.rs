//! Report rows, JSON serialization and the plain-text table.
//!
//! Every float is rounded to 15 significant digits when a row is built, so
//! the JSON and the table carry the same numbers.

use std::collections::hash_map::DefaultHasher;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::time::Duration;

use serde::Serialize;

use super::cases::ApplicationCase;
use super::constants::{PI_SQUARED_OVER_6, PI_SQUARED_OVER_8};
use super::{VerifyOptions, BASEL_BRUTE_TERMS, BASEL_EXACT_TERMS, COMPARISON_SLACK};
use crate::catalog::Parity;
use crate::quadrature::QuadratureResult;
use crate::transform::PiLinearValue;

pub const SUITE_NAME: &str = "wallis-series verification";

/// Rounds to 15 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x.is_finite() && x != 0.0 {
        format!("{x:.14e}").parse().unwrap_or(x)
    } else {
        x
    }
}

fn round_opt(x: Option<f64>) -> Option<f64> {
    x.map(round_sig)
}

fn millis(d: Duration) -> f64 {
    round_sig(d.as_secs_f64() * 1e3)
}

/// Renders a rounded float for the table; same value as the JSON number.
pub fn format_number(x: f64) -> String {
    let x = round_sig(x);
    if x != 0.0 && x.is_finite() && !(1e-4..1e15).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_else(|| "-".into())
}

/// Hex digest of the exact partial sums, for run-to-run comparison.
fn digest(v: &PiLinearValue) -> String {
    let mut h = DefaultHasher::new();
    v.odd_part.to_string().hash(&mut h);
    v.even_part.to_string().hash(&mut h);
    format!("{:016x}", h.finish())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KnownConstantCheck {
    pub key: &'static str,
    pub label: &'static str,
    pub value: f64,
    /// `series − value`
    pub deviation: f64,
    pub provenance: &'static str,
}

pub(crate) struct CaseInputs<'a> {
    pub case: &'a ApplicationCase,
    pub tolerance: f64,
    pub series: Option<&'a PiLinearValue>,
    pub oracle: Option<QuadratureResult>,
    pub abs_diff: Option<f64>,
    pub pass: bool,
    pub printed_form_matches: bool,
    pub printed: Option<(f64, f64)>,
    pub known_constant: Option<KnownConstantCheck>,
    pub notes: Vec<String>,
    pub error: Option<String>,
    pub runtime: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub id: u32,
    pub name: &'static str,
    pub series_value: Option<f64>,
    pub series_tail: Option<f64>,
    pub oracle_value: Option<f64>,
    pub oracle_error: Option<f64>,
    pub abs_diff: Option<f64>,
    pub pass: bool,
    pub notes: String,
    pub integrand: &'static str,
    pub route: Parity,
    pub tolerance: f64,
    pub strategy: Option<String>,
    pub terms_used: Option<usize>,
    pub evaluations: Option<usize>,
    pub partial_sum_digest: Option<String>,
    pub printed_form: &'static str,
    pub printed_form_matches: bool,
    pub suspected_typo: bool,
    pub corrected_form: Option<&'static str>,
    pub printed_value: Option<f64>,
    /// `printed_value − oracle_value`
    pub printed_deviation: Option<f64>,
    pub known_constant: Option<KnownConstantCheck>,
    pub error: Option<String>,
    pub runtime_ms: f64,
}

impl CaseReport {
    pub(crate) fn new(inputs: CaseInputs<'_>) -> Self {
        let CaseInputs {
            case,
            tolerance,
            series,
            oracle,
            abs_diff,
            pass,
            printed_form_matches,
            printed,
            known_constant,
            notes,
            error,
            runtime,
        } = inputs;
        CaseReport {
            id: case.id,
            name: case.series_name,
            series_value: round_opt(series.map(PiLinearValue::rendered)),
            series_tail: round_opt(series.map(|s| s.tail_bound)),
            oracle_value: round_opt(oracle.map(|o| o.value)),
            oracle_error: round_opt(oracle.map(|o| o.error_estimate)),
            abs_diff: round_opt(abs_diff),
            pass,
            notes: notes.join("; "),
            integrand: case.integrand,
            route: case.route,
            tolerance,
            strategy: series.map(|s| s.strategy_used.clone()),
            terms_used: series.map(|s| s.terms_used),
            evaluations: oracle.map(|o| o.evaluations),
            partial_sum_digest: series.map(digest),
            printed_form: case.printed.text,
            printed_form_matches,
            suspected_typo: case.suspected_typo(),
            corrected_form: case.corrected.map(|c| c.text),
            printed_value: round_opt(printed.map(|p| p.0)),
            printed_deviation: round_opt(printed.map(|p| p.1)),
            known_constant: known_constant.map(|k| KnownConstantCheck {
                value: round_sig(k.value),
                deviation: round_sig(k.deviation),
                ..k
            }),
            error,
            runtime_ms: millis(runtime),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaselReport {
    pub exact_terms_checked: usize,
    pub exact_terms_match: bool,
    /// `S = Σ 1/(2k+1)²` from the arcsin transform.
    pub series_value: Option<f64>,
    pub series_tail: Option<f64>,
    pub pi_squared_over_8: f64,
    pub series_deviation: Option<f64>,
    /// `(4/3)·S`
    pub basel_value: Option<f64>,
    pub pi_squared_over_6: f64,
    pub basel_deviation: Option<f64>,
    pub brute_terms: usize,
    pub brute_partial: f64,
    pub brute_below: bool,
    pub pass: bool,
    pub provenance: &'static str,
    pub error: Option<String>,
    pub runtime_ms: f64,
}

impl BaselReport {
    pub(crate) fn new(exact_terms_match: bool, brute_partial: f64) -> Self {
        BaselReport {
            exact_terms_checked: BASEL_EXACT_TERMS,
            exact_terms_match,
            series_value: None,
            series_tail: None,
            pi_squared_over_8: PI_SQUARED_OVER_8.value,
            series_deviation: None,
            basel_value: None,
            pi_squared_over_6: PI_SQUARED_OVER_6.value,
            basel_deviation: None,
            brute_terms: BASEL_BRUTE_TERMS,
            brute_partial,
            brute_below: false,
            pass: false,
            provenance: PI_SQUARED_OVER_6.provenance,
            error: None,
            runtime_ms: 0.0,
        }
    }

    pub(crate) fn fill(&mut self, s: f64, tail: f64) {
        let basel = 4.0 / 3.0 * s;
        self.series_value = Some(s);
        self.series_tail = Some(tail);
        self.series_deviation = Some(s - PI_SQUARED_OVER_8.value);
        self.basel_value = Some(basel);
        self.basel_deviation = Some(basel - PI_SQUARED_OVER_6.value);
        self.brute_below = self.brute_partial < s;
        self.pass = self.exact_terms_match
            && self.brute_below
            && (basel - PI_SQUARED_OVER_6.value).abs() <= 4.0 / 3.0 * tail + COMPARISON_SLACK;
    }

    pub(crate) fn finish(&mut self, runtime: Duration) {
        self.series_value = round_opt(self.series_value);
        self.series_tail = round_opt(self.series_tail);
        self.series_deviation = round_opt(self.series_deviation);
        self.basel_value = round_opt(self.basel_value);
        self.basel_deviation = round_opt(self.basel_deviation);
        self.brute_partial = round_sig(self.brute_partial);
        self.runtime_ms = millis(runtime);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryRow {
    pub name: &'static str,
    pub sin_value: Option<f64>,
    pub cos_value: Option<f64>,
    pub abs_diff: Option<f64>,
    pub bound: f64,
    pub pass: bool,
    pub error: Option<String>,
}

impl SymmetryRow {
    pub(crate) fn new(name: &'static str, sin: f64, cos: f64, bound: f64) -> Self {
        let diff = (sin - cos).abs();
        SymmetryRow {
            name,
            sin_value: Some(round_sig(sin)),
            cos_value: Some(round_sig(cos)),
            abs_diff: Some(round_sig(diff)),
            bound,
            pass: diff <= bound,
            error: None,
        }
    }

    pub(crate) fn failed(name: &'static str, error: String) -> Self {
        SymmetryRow {
            name,
            sin_value: None,
            cos_value: None,
            abs_diff: None,
            bound: 0.0,
            pass: false,
            error: Some(error),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallisRow {
    pub m: u32,
    pub exact: String,
    pub exact_value: f64,
    pub quadrature: Option<f64>,
    pub abs_diff: Option<f64>,
    pub pass: bool,
    pub error: Option<String>,
}

impl WallisRow {
    pub(crate) fn new(m: u32, exact: String, exact_value: f64, quadrature: f64, bound: f64) -> Self {
        let diff = (exact_value - quadrature).abs();
        WallisRow {
            m,
            exact,
            exact_value: round_sig(exact_value),
            quadrature: Some(round_sig(quadrature)),
            abs_diff: Some(round_sig(diff)),
            pass: diff <= bound,
            error: None,
        }
    }

    pub(crate) fn failed(m: u32, exact: String, exact_value: f64, error: String) -> Self {
        WallisRow {
            m,
            exact,
            exact_value: round_sig(exact_value),
            quadrature: None,
            abs_diff: None,
            pass: false,
            error: Some(error),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub name: &'static str,
    pub tolerance: f64,
    pub max_terms: usize,
    pub quadrature_level_cap: usize,
    pub applications_total: usize,
    pub applications_passed: usize,
    pub basel_pass: bool,
    pub symmetry_pass: bool,
    pub wallis_pass: bool,
    pub all_passed: bool,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: SuiteSummary,
    pub cases: Vec<CaseReport>,
    pub basel: BaselReport,
    pub symmetry: Vec<SymmetryRow>,
    pub wallis: Vec<WallisRow>,
}

impl VerificationReport {
    pub(crate) fn assemble(
        options: &VerifyOptions,
        cases: Vec<CaseReport>,
        basel: BaselReport,
        symmetry: Vec<SymmetryRow>,
        wallis: Vec<WallisRow>,
        runtime: Duration,
    ) -> Self {
        let applications_passed = cases.iter().filter(|c| c.pass).count();
        let symmetry_pass = symmetry.iter().all(|r| r.pass);
        let wallis_pass = wallis.iter().all(|r| r.pass);
        let all_passed = applications_passed == cases.len() && basel.pass && symmetry_pass && wallis_pass;
        VerificationReport {
            suite: SuiteSummary {
                name: SUITE_NAME,
                tolerance: options.tol,
                max_terms: options.max_terms,
                quadrature_level_cap: options.level_cap,
                applications_total: cases.len(),
                applications_passed,
                basel_pass: basel.pass,
                symmetry_pass,
                wallis_pass,
                all_passed,
                runtime_ms: millis(runtime),
            },
            cases,
            basel,
            symmetry,
            wallis,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.suite.all_passed
    }

    /// Copy with every timing field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.suite.runtime_ms = 0.0;
        r.basel.runtime_ms = 0.0;
        for c in &mut r.cases {
            c.runtime_ms = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>3}  {:<14} {:<5} {:>18} {:>20}  {:>18} {:>20}  {:>20}  {:<4}  strategy",
            "id", "name", "route", "series_value", "± tail", "oracle_value", "± error", "abs_diff", "pass"
        );
        for c in &self.cases {
            let _ = writeln!(
                out,
                "{:>3}  {:<14} {:<5} {:>18} {:>20}  {:>18} {:>20}  {:>20}  {:<4}  {}",
                c.id,
                c.name,
                c.route.to_string(),
                format_opt(c.series_value),
                format_opt(c.series_tail),
                format_opt(c.oracle_value),
                format_opt(c.oracle_error),
                format_opt(c.abs_diff),
                if c.pass { "ok" } else { "FAIL" },
                c.strategy.as_deref().unwrap_or("-"),
            );
            if let Some(e) = &c.error {
                let _ = writeln!(out, "{:>5}error: {e}", "");
            }
            if !c.notes.is_empty() {
                let _ = writeln!(out, "{:>5}{}", "", c.notes);
            }
        }
        let b = &self.basel;
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "basel: S = {} ± {} (π²/8 = {}), (4/3)S = {} (π²/6 = {}), exact terms k < {}: {}, {}-term partial {} below: {}  {}",
            format_opt(b.series_value),
            format_opt(b.series_tail),
            format_number(b.pi_squared_over_8),
            format_opt(b.basel_value),
            format_number(b.pi_squared_over_6),
            b.exact_terms_checked,
            if b.exact_terms_match { "match" } else { "MISMATCH" },
            b.brute_terms,
            format_number(b.brute_partial),
            b.brute_below,
            if b.pass { "ok" } else { "FAIL" },
        );
        let worst_symmetry = self.symmetry.iter().filter_map(|r| r.abs_diff).fold(0.0, f64::max);
        let _ = writeln!(
            out,
            "symmetry: {}/{} entries within 2·tol (largest |sin − cos| = {})",
            self.symmetry.iter().filter(|r| r.pass).count(),
            self.symmetry.len(),
            format_number(worst_symmetry),
        );
        let worst_wallis = self.wallis.iter().filter_map(|r| r.abs_diff).fold(0.0, f64::max);
        let _ = writeln!(
            out,
            "wallis: {}/{} powers within 1e-10 (largest difference = {})",
            self.wallis.iter().filter(|r| r.pass).count(),
            self.wallis.len(),
            format_number(worst_wallis),
        );
        let s = &self.suite;
        let _ = writeln!(
            out,
            "suite: {}/{} applications passed at tol {}; {}",
            s.applications_passed,
            s.applications_total,
            format_number(s.tolerance),
            if s.all_passed { "all checks passed" } else { "FAILURES" },
        );
        out
    }
}
