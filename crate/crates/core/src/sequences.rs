//! Bernoulli and Euler numbers in the positive, even-index convention.
//!
//! `bernoulli_positive(k) = |B_{2k}|` and `euler_positive(k) = |E_{2k}|`, so
//! `B_1 = 1/6, B_2 = 1/30, …` and `E_1 = 1, E_2 = 5, E_3 = 61, …`.
//!
//! Both come from one integer triangle: the Seidel–Entringer boustrophedon
//! yields the zigzag numbers `A_n` (the Taylor coefficients of
//! `sec x + tan x` times `n!`). Even-indexed `A_{2k}` are the secant numbers
//! `|E_{2k}|`; odd-indexed `A_{2k−1}` are the tangent numbers `T_k`, and
//! `|B_{2k}| = 2k · T_k / (4^k (4^k − 1))`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::BigRational;

/// Growable table of zigzag numbers `A_0, A_1, …`.
#[derive(Debug)]
pub struct ZigzagTable {
    state: Mutex<ZigzagState>,
}

#[derive(Debug)]
struct ZigzagState {
    /// Last completed Entringer row `E(n, 0..=n)`.
    row: Vec<BigInt>,
    zigzag: Vec<BigInt>,
}

impl Default for ZigzagTable {
    fn default() -> Self {
        Self::new()
    }
}

impl ZigzagTable {
    pub fn new() -> Self {
        ZigzagTable {
            state: Mutex::new(ZigzagState {
                row: vec![BigInt::one()],
                zigzag: vec![BigInt::one()],
            }),
        }
    }

    pub fn shared() -> &'static ZigzagTable {
        static SHARED: OnceLock<ZigzagTable> = OnceLock::new();
        SHARED.get_or_init(ZigzagTable::new)
    }

    /// `A_n`, extending the triangle if needed.
    pub fn zigzag(&self, n: usize) -> BigInt {
        let mut state = self.state.lock().expect("zigzag table poisoned");
        while state.zigzag.len() <= n {
            // E(m, 0) = 0 for m > 0; E(m, j) = E(m, j−1) + E(m−1, m−j)
            let m = state.row.len();
            let mut next = Vec::with_capacity(m + 1);
            next.push(BigInt::zero());
            for j in 1..=m {
                let value = &next[j - 1] + &state.row[m - j];
                next.push(value);
            }
            let last = next[m].clone();
            state.row = next;
            state.zigzag.push(last);
        }
        state.zigzag[n].clone()
    }

    /// Number of zigzag numbers computed so far.
    pub fn computed(&self) -> usize {
        self.state.lock().expect("zigzag table poisoned").zigzag.len()
    }

    /// Tangent number `T_k = A_{2k−1}`, `k ≥ 1`.
    pub fn tangent(&self, k: usize) -> BigInt {
        assert!(k >= 1, "tangent numbers start at k = 1");
        self.zigzag(2 * k - 1)
    }

    /// `|B_{2k}|`, `k ≥ 1`.
    pub fn bernoulli(&self, k: usize) -> BigRational {
        assert!(k >= 1, "Bernoulli type numbers start at k = 1");
        let four_k = BigInt::one() << (2 * k);
        let num = BigInt::from(2 * k) * self.tangent(k);
        let den = &four_k * (&four_k - 1u32);
        BigRational::new(num, den)
    }

    /// `|E_{2k}|`, `k ≥ 1`.
    pub fn euler(&self, k: usize) -> BigInt {
        assert!(k >= 1, "Euler type numbers start at k = 1");
        self.zigzag(2 * k)
    }
}

/// The `k`-th Bernoulli type number, `|B_{2k}|`. Panics for `k = 0`.
pub fn bernoulli_positive(k: usize) -> BigRational {
    ZigzagTable::shared().bernoulli(k)
}

/// The `k`-th Euler type number, `|E_{2k}|`. Panics for `k = 0`.
pub fn euler_positive(k: usize) -> BigInt {
    ZigzagTable::shared().euler(k)
}

/// `B_1..=B_n` in the positive convention.
#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn new(n: usize) -> Self {
        let zigzag = ZigzagTable::shared();
        BernoulliTable {
            values: (1..=n).map(|k| zigzag.bernoulli(k)).collect(),
        }
    }

    /// `B_k` for `1 ≤ k ≤ len`.
    pub fn get(&self, k: usize) -> Option<&BigRational> {
        k.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `E_1..=E_n` in the positive convention.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerTable {
    values: Vec<BigInt>,
}

impl EulerTable {
    pub fn new(n: usize) -> Self {
        let zigzag = ZigzagTable::shared();
        EulerTable {
            values: (1..=n).map(|k| zigzag.euler(k)).collect(),
        }
    }

    pub fn get(&self, k: usize) -> Option<&BigInt> {
        k.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
