//! Truncated power series over exact rationals, used as an independent
//! source of Maclaurin coefficients.
//!
//! Everything here is built from the exponential-type series of sin, cos,
//! sinh and cosh by multiplication, division and series reversion; nothing
//! goes through the crate's own number tables.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use wallis_series::sequences::{bernoulli_positive, euler_positive};

/// Coefficients `a_0 … a_N`.
pub type Series = Vec<BigRational>;

pub const DEGREE: usize = 20;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn from_fn(n: usize, f: impl Fn(usize) -> BigRational) -> Series {
    (0..=n).map(f).collect()
}

/// `Σ x^k / k!` with the sign pattern `signs(k)` (0 drops the term).
fn exp_like(n: usize, signs: impl Fn(usize) -> i64) -> Series {
    from_fn(n, |k| BigRational::new(signs(k).into(), factorial(k)))
}

pub fn sin(n: usize) -> Series {
    exp_like(n, |k| match k % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    })
}

pub fn cos(n: usize) -> Series {
    exp_like(n, |k| match k % 4 {
        0 => 1,
        2 => -1,
        _ => 0,
    })
}

pub fn sinh(n: usize) -> Series {
    exp_like(n, |k| (k % 2) as i64)
}

pub fn cosh(n: usize) -> Series {
    exp_like(n, |k| 1 - (k % 2) as i64)
}

pub fn mul(a: &Series, b: &Series) -> Series {
    let n = a.len().min(b.len());
    from_fn(n - 1, |k| (0..=k).map(|i| &a[i] * &b[k - i]).sum())
}

/// `a / b`; needs `b_0 ≠ 0`.
pub fn div(a: &Series, b: &Series) -> Series {
    let n = a.len().min(b.len());
    assert!(!b[0].is_zero());
    let mut q: Series = Vec::with_capacity(n);
    for k in 0..n {
        let mut r = a[k].clone();
        for i in 1..=k {
            r -= &b[i] * &q[k - i];
        }
        q.push(r / &b[0]);
    }
    q
}

/// `f(x) / x`, dropping the vanishing constant term.
pub fn shift_down(f: &Series) -> Series {
    assert!(f[0].is_zero());
    let mut s = f[1..].to_vec();
    s.push(BigRational::zero());
    s
}

/// `f(g(x))`; needs `g_0 = 0`.
pub fn compose(f: &Series, g: &Series) -> Series {
    assert!(g[0].is_zero());
    let n = f.len().min(g.len());
    let mut out: Series = vec![BigRational::zero(); n];
    for c in f[..n].iter().rev() {
        out = mul(&out, &g[..n].to_vec());
        out[0] += c;
    }
    out
}

/// Compositional inverse of `f`; needs `f_0 = 0`, `f_1 ≠ 0`.
pub fn revert(f: &Series) -> Series {
    let n = f.len();
    let mut g: Series = vec![BigRational::zero(); n];
    g[1] = f[1].recip();
    for k in 2..n {
        let c = compose(f, &g)[k].clone();
        g[k] = -c / &f[1];
    }
    g
}

/// Coefficients of every catalog entry to degree `n`, by name.
pub fn oracle(name: &str, n: usize) -> Series {
    let m = n + 1;
    match name {
        "sin" => sin(n),
        "cos" => cos(n),
        "sinh" => sinh(n),
        "cosh" => cosh(n),
        "tan" => div(&sin(n), &cos(n)),
        "sec" => div(&unit(n), &cos(n)),
        "sech" => div(&unit(n), &cosh(n)),
        // x/sin x = 1 / (sin x / x); one extra degree so the shift keeps n terms
        "x_over_sin_x" => {
            let s = shift_down(&sin(m));
            div(&unit(n), &s[..=n].to_vec())
        }
        "x_over_sinh_x" => {
            let s = shift_down(&sinh(m));
            div(&unit(n), &s[..=n].to_vec())
        }
        "x_cot_x" => {
            let s = shift_down(&sin(m));
            div(&cos(n), &s[..=n].to_vec())
        }
        "arcsin" => revert(&sin(n)),
        "arsinh" => revert(&sinh(n)),
        "arctan" => revert(&div(&sin(n), &cos(n))),
        "artanh" => revert(&div(&sinh(n), &cosh(n))),
        other => panic!("no oracle for {other}"),
    }
}

fn unit(n: usize) -> Series {
    from_fn(n, |k| if k == 0 { BigRational::one() } else { BigRational::zero() })
}

/// Standard Bernoulli numbers `B_0 … B_n` (with `B_1 = −1/2`) from
/// `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_by_recurrence(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let s: BigRational = (0..m)
            .map(|j| BigRational::from_integer(binomial(m + 1, j)) * &b[j])
            .sum();
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `|B_{2k}|` for `k = 1 … count`.
pub fn bernoulli_type(count: usize) -> Vec<BigRational> {
    let b = bernoulli_by_recurrence(2 * count);
    (1..=count).map(|k| b[2 * k].abs()).collect()
}

/// `|E_{2k}| = (2k)! [x^{2k}] sec x` for `k = 1 … count`.
pub fn euler_type(count: usize) -> Vec<BigInt> {
    let sec = oracle("sec", 2 * count);
    (1..=count)
        .map(|k| {
            let v = &sec[2 * k] * BigRational::from_integer(factorial(2 * k));
            assert!(v.is_integer());
            v.to_integer().abs()
        })
        .collect()
}

fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

fn sign(k: usize) -> BigRational {
    if k.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Coefficient of `x^j` from each function's closed-form expansion, with
/// the type numbers taken from the crate. Returns zero for powers of the
/// wrong parity.
pub fn expansion_coefficient(name: &str, j: usize) -> BigRational {
    let odd = j % 2 == 1;
    let zero = BigRational::zero;
    let p2 = |e: usize| int(BigInt::one() << e);
    match name {
        "sin" if odd => sign((j - 1) / 2) / int(factorial(j)),
        "cos" if !odd => sign(j / 2) / int(factorial(j)),
        "sinh" if odd => int(1) / int(factorial(j)),
        "cosh" if !odd => int(1) / int(factorial(j)),
        "arcsin" | "arsinh" if odd => {
            let k = (j - 1) / 2;
            let s = if name == "arsinh" { sign(k) } else { int(1) };
            s * int(double_factorial(2 * k as i64 - 1)) / (int(double_factorial(2 * k as i64)) * int(j))
        }
        "x_cot_x" if !odd => {
            let k = j / 2;
            if k == 0 {
                int(1)
            } else {
                -p2(2 * k) * bernoulli_positive(k) / int(factorial(j))
            }
        }
        "arctan" if odd => sign((j - 1) / 2) / int(j),
        "artanh" if odd => int(1) / int(j),
        "tan" if odd => {
            let k = j.div_ceil(2);
            p2(2 * k) * (p2(2 * k) - int(1)) * bernoulli_positive(k) / int(factorial(2 * k))
        }
        "x_over_sin_x" | "x_over_sinh_x" if !odd => {
            let k = j / 2;
            if k == 0 {
                int(1)
            } else {
                let s = if name == "x_over_sinh_x" { sign(k) } else { int(1) };
                s * int(2) * (p2(2 * k - 1) - int(1)) * bernoulli_positive(k) / int(factorial(j))
            }
        }
        "sec" | "sech" if !odd => {
            let k = j / 2;
            if k == 0 {
                int(1)
            } else {
                let s = if name == "sech" { sign(k) } else { int(1) };
                s * int(euler_positive(k)) / int(factorial(j))
            }
        }
        "sin" | "cos" | "sinh" | "cosh" | "arcsin" | "arsinh" | "x_cot_x" | "arctan" | "artanh" | "tan"
        | "x_over_sin_x" | "x_over_sinh_x" | "sec" | "sech" => zero(),
        other => panic!("no expansion for {other}"),
    }
}
