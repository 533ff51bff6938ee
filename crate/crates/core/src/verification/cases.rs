//! The fourteen application identities, each with the right-hand side as
//! printed next to it.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::constants::{self, ReferenceConstant};
use crate::catalog::Parity;
use crate::exact::{double_factorial, BigRational};
use crate::sequences::{bernoulli_positive, euler_positive};

/// A printed right-hand side `leading + Σ_{k ≥ start} term(k)`, in route
/// units (the coefficient of `π/2` on the even route).
///
/// Printed index `k` lines up with engine index `k − index_offset`.
#[derive(Clone, Copy, Debug)]
pub struct PrintedForm {
    pub text: &'static str,
    pub leading: i64,
    pub start: usize,
    pub index_offset: usize,
    pub term: fn(usize) -> BigRational,
}

impl PrintedForm {
    /// Contribution at engine index `e`, so partial sums can be compared
    /// term by term with the transform engine.
    pub fn aligned_term(&self, e: usize) -> BigRational {
        let mut value = if e == 0 {
            BigRational::from_integer(self.leading.into())
        } else {
            BigRational::zero()
        };
        let k = e + self.index_offset;
        if k >= self.start {
            value += (self.term)(k);
        }
        value
    }

    /// `term(start), term(start + 1), …`
    pub fn summands(&self) -> impl Iterator<Item = BigRational> + '_ {
        (self.start..).map(self.term)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ApplicationCase {
    pub id: u32,
    pub series_name: &'static str,
    pub route: Parity,
    pub integrand: &'static str,
    pub printed: PrintedForm,
    /// Form implied by the catalog coefficients, present when the printed
    /// form disagrees with them.
    pub corrected: Option<PrintedForm>,
    pub known_constant: Option<ReferenceConstant>,
}

impl ApplicationCase {
    pub fn suspected_typo(&self) -> bool {
        self.corrected.is_some()
    }

    /// The form the engine is expected to reproduce.
    pub fn expected_form(&self) -> &PrintedForm {
        self.corrected.as_ref().unwrap_or(&self.printed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseSummary {
    pub id: u32,
    pub series_name: &'static str,
    pub route: Parity,
    pub integrand: &'static str,
    pub printed_rhs: &'static str,
    pub suspected_typo: bool,
    pub known_constant: Option<ReferenceConstant>,
}

impl From<&ApplicationCase> for CaseSummary {
    fn from(c: &ApplicationCase) -> Self {
        CaseSummary {
            id: c.id,
            series_name: c.series_name,
            route: c.route,
            integrand: c.integrand,
            printed_rhs: c.printed.text,
            suspected_typo: c.suspected_typo(),
            known_constant: c.known_constant,
        }
    }
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn pow2(n: usize) -> BigInt {
    BigInt::one() << n
}

fn df(n: i64) -> BigRational {
    if n <= 0 {
        BigRational::one()
    } else {
        int(double_factorial(n as u64))
    }
}

/// `1 / (1²·3²·…·(2k+1)²)`
fn inverse_odd_double_factorial_squared(k: usize) -> BigRational {
    let d = df(2 * k as i64 + 1);
    (&d * &d).recip()
}

/// `1 / (4^k (k!)²)`
fn inverse_central(k: usize) -> BigRational {
    let f = factorial(k);
    BigRational::new(BigInt::one(), pow2(2 * k) * &f * &f)
}

/// `1 / (2k+1)²`
fn inverse_odd_square(k: usize) -> BigRational {
    let n = BigInt::from(2 * k + 1);
    BigRational::new(BigInt::one(), &n * &n)
}

/// `(2k)!! / ((2k−1)!! (2k+1)²)`
fn double_factorial_quotient(k: usize) -> BigRational {
    df(2 * k as i64) / df(2 * k as i64 - 1) * inverse_odd_square(k)
}

/// `2^{2k−1}(2^{2k−1} − 1)·B_k·2 / (2^{2k} (k!)²)`, i.e. the summand of
/// `π Σ (2^{2k−1}−1) B_k / (2^{2k} (k!)²)` in units of `π/2`.
fn x_over_sin_summand(k: usize) -> BigRational {
    let f = factorial(k);
    int(pow2(2 * k - 1) - 1) * bernoulli_positive(k) * int(2) / int(pow2(2 * k) * &f * &f)
}

fn sec_summand(k: usize) -> BigRational {
    // π Σ E_k / (2^{2k+1} (k!)²) in units of π/2
    let f = factorial(k);
    int(euler_positive(k)) * int(2) / int(pow2(2 * k + 1) * &f * &f)
}

/// Printed forms, in order.
pub static APPLICATIONS: [ApplicationCase; 14] = [
    ApplicationCase {
        id: 1,
        series_name: "sin",
        route: Parity::Odd,
        integrand: "sin(sin x)",
        printed: PrintedForm {
            text: "Σ_{k≥0} (−1)^k / (1²·3²·…·(2k+1)²)",
            leading: 0,
            start: 0,
            index_offset: 0,
            term: |k| sign(k) * inverse_odd_double_factorial_squared(k),
        },
        corrected: None,
        known_constant: Some(constants::HALF_PI_STRUVE_H0_1),
    },
    ApplicationCase {
        id: 2,
        series_name: "cos",
        route: Parity::Even,
        integrand: "cos(sin x)",
        printed: PrintedForm {
            text: "(π/2) Σ_{k≥0} (−1)^k / (4^k (k!)²)",
            leading: 0,
            start: 0,
            index_offset: 0,
            term: |k| sign(k) * inverse_central(k),
        },
        corrected: None,
        known_constant: Some(constants::HALF_PI_J0_1),
    },
    ApplicationCase {
        id: 3,
        series_name: "sinh",
        route: Parity::Odd,
        integrand: "sinh(sin x)",
        printed: PrintedForm {
            text: "Σ_{k≥0} 1 / (1²·3²·…·(2k+1)²)",
            leading: 0,
            start: 0,
            index_offset: 0,
            term: inverse_odd_double_factorial_squared,
        },
        corrected: None,
        known_constant: Some(constants::HALF_PI_STRUVE_L0_1),
    },
    ApplicationCase {
        id: 4,
        series_name: "cosh",
        route: Parity::Even,
        integrand: "cosh(sin x)",
        printed: PrintedForm {
            text: "(π/2) Σ_{k≥0} 1 / (4^k (k!)²)",
            leading: 0,
            start: 0,
            index_offset: 0,
            term: inverse_central,
        },
        corrected: None,
        known_constant: Some(constants::HALF_PI_I0_1),
    },
    ApplicationCase {
        id: 5,
        series_name: "arcsin",
        route: Parity::Odd,
        integrand: "arcsin(sin x)",
        printed: PrintedForm {
            text: "π²/8 = Σ_{k≥0} 1 / (2k+1)²",
            leading: 0,
            start: 0,
            index_offset: 0,
            term: inverse_odd_square,
        },
        corrected: None,
        known_constant: Some(constants::PI_SQUARED_OVER_8),
    },
    ApplicationCase {
        id: 6,
        series_name: "x_cot_x",
        route: Parity::Even,
        integrand: "sin x · cot(sin x)",
        printed: PrintedForm {
            text: "π/2 − (π/2) Σ_{k≥1} B_k / (k!)²",
            leading: 1,
            start: 1,
            index_offset: 0,
            term: |k| {
                let f = factorial(k);
                -bernoulli_positive(k) / int(&f * &f)
            },
        },
        corrected: None,
        known_constant: Some(constants::X_COT_X),
    },
    ApplicationCase {
        id: 7,
        series_name: "arctan",
        route: Parity::Odd,
        integrand: "arctan(sin x)",
        printed: PrintedForm {
            text: "1 + Σ_{k≥1} (−1)^k (2·4·…·2k) / (1·3·…·(2k−1)·(2k+1)²)",
            leading: 1,
            start: 1,
            index_offset: 0,
            term: |k| sign(k) * double_factorial_quotient(k),
        },
        corrected: None,
        known_constant: Some(constants::ARCTAN),
    },
    ApplicationCase {
        id: 8,
        series_name: "artanh",
        route: Parity::Odd,
        integrand: "artanh(sin x)",
        printed: PrintedForm {
            text: "1 + Σ_{k≥1} (2·4·…·2k) / (1·3·…·(2k−1)·(2k+1)²)",
            leading: 1,
            start: 1,
            index_offset: 0,
            term: double_factorial_quotient,
        },
        corrected: None,
        known_constant: Some(constants::TWICE_CATALAN),
    },
    ApplicationCase {
        id: 9,
        series_name: "arsinh",
        route: Parity::Odd,
        integrand: "arsinh(sin x)",
        printed: PrintedForm {
            text: "Σ_{k≥1} (−1)^k / (2k+1)²",
            leading: 0,
            start: 1,
            index_offset: 0,
            term: |k| sign(k) * inverse_odd_square(k),
        },
        corrected: Some(PrintedForm {
            text: "Σ_{k≥0} (−1)^k / (2k+1)²",
            leading: 0,
            start: 0,
            index_offset: 0,
            term: |k| sign(k) * inverse_odd_square(k),
        }),
        known_constant: Some(constants::CATALAN),
    },
    ApplicationCase {
        id: 10,
        series_name: "tan",
        route: Parity::Odd,
        integrand: "tan(sin x)",
        printed: PrintedForm {
            text: "Σ_{k≥1} 2^{2k−1} (4^k − 1) B_k / (1²·3²·…·(2k−1)² · k)",
            leading: 0,
            start: 1,
            index_offset: 1,
            term: |k| {
                let d = df(2 * k as i64 - 1);
                int(pow2(2 * k - 1) * (pow2(2 * k) - 1)) * bernoulli_positive(k) / (&d * &d * int(k))
            },
        },
        corrected: None,
        known_constant: Some(constants::TAN),
    },
    ApplicationCase {
        id: 11,
        series_name: "x_over_sin_x",
        route: Parity::Even,
        integrand: "sin x / sin(sin x)",
        printed: PrintedForm {
            text: "π/2 + π Σ_{k≥1} (2^{2k−1} − 1) B_k / (2^{2k} (k!)²)",
            leading: 1,
            start: 1,
            index_offset: 0,
            term: x_over_sin_summand,
        },
        corrected: None,
        known_constant: Some(constants::X_OVER_SIN_X),
    },
    ApplicationCase {
        id: 12,
        series_name: "x_over_sinh_x",
        route: Parity::Even,
        integrand: "sin x / sinh(sin x)",
        printed: PrintedForm {
            text: "π/2 + π Σ_{k≥1} (2^{2k−1} − 1) B_k / (2^{2k} (k!)²)",
            leading: 1,
            start: 1,
            index_offset: 0,
            term: x_over_sin_summand,
        },
        corrected: Some(PrintedForm {
            text: "π/2 + π Σ_{k≥1} (−1)^k (2^{2k−1} − 1) B_k / (2^{2k} (k!)²)",
            leading: 1,
            start: 1,
            index_offset: 0,
            term: |k| sign(k) * x_over_sin_summand(k),
        }),
        known_constant: Some(constants::X_OVER_SINH_X),
    },
    ApplicationCase {
        id: 13,
        series_name: "sec",
        route: Parity::Even,
        integrand: "sec(sin x)",
        printed: PrintedForm {
            text: "π/2 + π Σ_{k≥1} E_k / (2^{2k+1} (k!)²)",
            leading: 1,
            start: 1,
            index_offset: 0,
            term: sec_summand,
        },
        corrected: None,
        known_constant: Some(constants::SEC),
    },
    ApplicationCase {
        id: 14,
        series_name: "sech",
        route: Parity::Even,
        integrand: "sech(sin x)",
        printed: PrintedForm {
            text: "π/2 + π Σ_{k≥1} (−1)^k E_k / (2^{2k+1} (k!)²)",
            leading: 1,
            start: 1,
            index_offset: 0,
            term: |k| sign(k) * sec_summand(k),
        },
        corrected: None,
        known_constant: Some(constants::SECH),
    },
];

pub fn application(id: u32) -> Option<&'static ApplicationCase> {
    APPLICATIONS.iter().find(|c| c.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog_lookup;
    use crate::transform::transformed_terms;

    const CHECKED_TERMS: usize = 30;

    fn engine_matches(case: &ApplicationCase, form: &PrintedForm) -> bool {
        let spec = catalog_lookup(case.series_name).unwrap();
        transformed_terms(spec, case.route)
            .take(CHECKED_TERMS)
            .enumerate()
            .all(|(e, t)| t == form.aligned_term(e))
    }

    #[test]
    fn table_shape() {
        let ids: Vec<u32> = APPLICATIONS.iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=14).collect::<Vec<_>>());
        for c in &APPLICATIONS {
            let spec = catalog_lookup(c.series_name).unwrap();
            use crate::catalog::CoefficientStream;
            assert_eq!(spec.parity(), c.route);
            assert_eq!(c.suspected_typo(), c.id == 9 || c.id == 12);
        }
    }

    #[test]
    fn expected_forms_match_engine_terms() {
        for c in &APPLICATIONS {
            assert!(engine_matches(c, c.expected_form()), "application {}", c.id);
        }
    }

    #[test]
    fn typo_forms_do_not_match() {
        for c in APPLICATIONS.iter().filter(|c| c.suspected_typo()) {
            assert!(!engine_matches(c, &c.printed), "application {}", c.id);
        }
    }
}
