//! Exact Wallis ratios and the double factorials behind them.
//!
//! `∫₀^{π/2} sin^{2n+1} x dx` is the rational `(2n)!! / (2n+1)!!`, and
//! `∫₀^{π/2} sin^{2n} x dx` is `(2n−1)!! / (2n)!!` times `π/2`. The even
//! ratio is always returned without the `π/2` factor; callers carry it.
//!
//! Ratios are produced by the integration-by-parts recurrence
//! `W(n) = W(n−1) · 2n/(2n+1)` (odd) and `W(n) = W(n−1) · (2n−1)/(2n)` (even)
//! and memoized in a [`WallisTable`].

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

pub use num_rational::BigRational;

/// Largest index kept in a table's cache. Ratios past this point are still
/// available through [`WallisRatios`], which continues the recurrence
/// without storing (each ratio near index `n` carries roughly `4n` bits).
pub const CACHE_LIMIT: usize = 4096;

/// Which family of Wallis integrals a ratio belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WallisParity {
    /// `∫ sin^{2n+1}`: the ratio is the full value.
    Odd,
    /// `∫ sin^{2n}`: the ratio multiplies `π/2`.
    Even,
}

impl WallisParity {
    /// Multiplier taking `W(n−1)` to `W(n)`.
    fn step(self, n: usize) -> BigRational {
        let n = BigInt::from(n);
        let two_n = &n + &n;
        match self {
            WallisParity::Odd => BigRational::new(two_n.clone(), two_n + 1),
            WallisParity::Even => BigRational::new(&two_n - 1, two_n),
        }
    }
}

/// `n!! = n·(n−2)·(n−4)·…`, ending at 1 or 2. `0!! = 1`.
pub fn double_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// `(2n)!! / (2n+1)!!`, the value of `∫₀^{π/2} sin^{2n+1} x dx`.
pub fn wallis_odd_ratio(n: usize) -> BigRational {
    WallisTable::shared().ratio(WallisParity::Odd, n)
}

/// `(2n−1)!! / (2n)!!`, the rational factor of `∫₀^{π/2} sin^{2n} x dx`.
pub fn wallis_even_ratio(n: usize) -> BigRational {
    WallisTable::shared().ratio(WallisParity::Even, n)
}

#[derive(Debug)]
struct Cached {
    odd: Vec<BigRational>,
    even: Vec<BigRational>,
}

impl Cached {
    fn column(&mut self, parity: WallisParity) -> &mut Vec<BigRational> {
        match parity {
            WallisParity::Odd => &mut self.odd,
            WallisParity::Even => &mut self.even,
        }
    }
}

/// Memoized odd and even Wallis ratios.
///
/// Readers share the lock; growth takes it exclusively and extends the cache
/// by recurrence, so entries are never recomputed once stored.
#[derive(Debug)]
pub struct WallisTable {
    cached: RwLock<Cached>,
}

impl Default for WallisTable {
    fn default() -> Self {
        Self::new()
    }
}

impl WallisTable {
    pub fn new() -> Self {
        WallisTable {
            cached: RwLock::new(Cached {
                odd: vec![BigRational::one()],
                even: vec![BigRational::one()],
            }),
        }
    }

    /// Process-wide table used by the free functions and the transform engine.
    pub fn shared() -> &'static WallisTable {
        static SHARED: OnceLock<WallisTable> = OnceLock::new();
        SHARED.get_or_init(WallisTable::new)
    }

    /// Number of cached entries for one parity.
    pub fn cached_len(&self, parity: WallisParity) -> usize {
        let cached = self.cached.read().expect("wallis table poisoned");
        match parity {
            WallisParity::Odd => cached.odd.len(),
            WallisParity::Even => cached.even.len(),
        }
    }

    pub fn ratio(&self, parity: WallisParity, n: usize) -> BigRational {
        if n < CACHE_LIMIT {
            return self.cached_ratio(parity, n);
        }
        self.ratios(parity).nth(n).expect("ratio stream is infinite")
    }

    fn cached_ratio(&self, parity: WallisParity, n: usize) -> BigRational {
        {
            let cached = self.cached.read().expect("wallis table poisoned");
            let column = match parity {
                WallisParity::Odd => &cached.odd,
                WallisParity::Even => &cached.even,
            };
            if let Some(value) = column.get(n) {
                return value.clone();
            }
        }
        let mut cached = self.cached.write().expect("wallis table poisoned");
        let column = cached.column(parity);
        while column.len() <= n {
            let k = column.len();
            let next = &column[k - 1] * parity.step(k);
            column.push(next);
        }
        column[n].clone()
    }

    /// `W(0), W(1), …` for one parity: cached entries first, then the
    /// recurrence carried on locally past [`CACHE_LIMIT`].
    pub fn ratios(&self, parity: WallisParity) -> WallisRatios<'_> {
        WallisRatios {
            table: self,
            parity,
            next_index: 0,
            current: None,
        }
    }
}

/// Sequential iterator over one column of a [`WallisTable`].
#[derive(Debug)]
pub struct WallisRatios<'a> {
    table: &'a WallisTable,
    parity: WallisParity,
    next_index: usize,
    current: Option<BigRational>,
}

impl Iterator for WallisRatios<'_> {
    type Item = BigRational;

    fn next(&mut self) -> Option<BigRational> {
        let n = self.next_index;
        let value = match self.current.take() {
            Some(prev) if n >= CACHE_LIMIT => prev * self.parity.step(n),
            _ => self.table.cached_ratio(self.parity, n),
        };
        self.next_index += 1;
        self.current = Some(value.clone());
        Some(value)
    }
}
