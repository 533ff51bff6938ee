//! Certified-tail summation of exact rational term streams.
//!
//! Partial sums are kept as exact rationals. Tail bounds, and the
//! extrapolated corrections of the accelerated strategies, are floats. Each
//! strategy checks its hypothesis on the terms it actually sees and reports
//! [`SummationError::HypothesisFailed`] instead of returning a bound it
//! cannot back up.

use std::cell::RefCell;
use std::collections::VecDeque;
use std::fmt;
use std::rc::Rc;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::accel::{levin_u, richardson_diagonal};
use crate::exact::BigRational;

/// Fewest nonzero terms inspected before any tail claim is made.
pub const MIN_TERMS: usize = 16;

/// Ratio window for the geometric bound.
const RATIO_WINDOW: usize = 8;

/// Largest admissible tail ratio for the geometric strategy.
const MAX_RATIO: f64 = 0.9;

/// The Levin transform is stable in double precision up to about this many
/// terms of an alternating series; past it the alternating strategy falls
/// back to the plain alternating-series bound.
const LEVIN_MAX_TERMS: usize = 64;

/// First Richardson sample size; later samples double it.
const RICHARDSON_START: usize = 16;

/// Index by which an alternating tail must have settled.
const SETTLE_LIMIT: usize = 4 * MIN_TERMS;

/// Longest run of zero terms hidden from the strategies.
const ZERO_RUN: usize = 16;

/// Terms that stay pending (not yet folded into the exact sum) so a strategy
/// may finish a few terms behind what it has already looked at.
const LOOKAHEAD: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SummationStrategy {
    /// Terms shrink by a stable ratio below 0.9; tail bounded by a geometric series.
    Geometric,
    /// Signs alternate and magnitudes decay like a power; Levin u-transform.
    AlternatingAccelerated,
    /// One-signed terms decaying like `c·k^{−p}`, `p > 1`; Richardson extrapolation.
    PowerlawMonotone,
    /// Plain partial sums with the strongest hypothesis-free bound available.
    Direct,
}

impl SummationStrategy {
    pub fn as_str(self) -> &'static str {
        match self {
            SummationStrategy::Geometric => "geometric",
            SummationStrategy::AlternatingAccelerated => "alternating_accelerated",
            SummationStrategy::PowerlawMonotone => "powerlaw_monotone",
            SummationStrategy::Direct => "direct",
        }
    }
}

impl fmt::Display for SummationStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of [`sum_series`].
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSum {
    /// Exact sum of the first `terms_used` terms.
    pub partial: BigRational,
    /// Extrapolated remainder `Σ_{k ≥ terms_used} t_k`; zero unless accelerated.
    pub tail_estimate: f64,
    /// Bound on `|true sum − value()|`.
    pub tail_bound: f64,
    pub terms_used: usize,
    pub strategy: SummationStrategy,
}

impl SeriesSum {
    pub fn value(&self) -> f64 {
        to_f64(&self.partial) + self.tail_estimate
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SummationError {
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("{strategy} hypothesis failed: {reason}")]
    HypothesisFailed {
        strategy: SummationStrategy,
        reason: String,
    },
    #[error("{strategy} summation exceeded the {max_terms}-term budget (best bound {:e})", best.tail_bound)]
    BudgetExceeded {
        strategy: SummationStrategy,
        max_terms: usize,
        /// Best partial reached and its bound.
        best: Box<SeriesSum>,
        /// Extrapolated number of terms the bound would need, when predictable.
        needed: Option<f64>,
    },
    #[error("cannot classify tail: {0}")]
    Unclassifiable(String),
}

pub(crate) fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Pairwise accumulator: merging equal-sized partial sums keeps the cost of
/// exact addition close to that of the final denominator.
#[derive(Debug, Default)]
struct TreeSum {
    stack: Vec<(u32, BigRational)>,
}

impl TreeSum {
    fn push(&mut self, value: BigRational) {
        let mut level = 0;
        let mut value = value;
        while let Some((top, _)) = self.stack.last() {
            if *top != level {
                break;
            }
            let (_, prev) = self.stack.pop().expect("checked above");
            value = prev + value;
            level += 1;
        }
        self.stack.push((level, value));
    }

    fn total(&self) -> BigRational {
        self.stack
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, (_, v)| acc + v)
    }
}

/// Pulls exact terms on demand, mirrors them as floats, and folds them into
/// an exact running sum a few terms behind the read position.
struct Terms<I> {
    source: I,
    floats: Vec<f64>,
    /// `sums[n]` is the float sum of the first `n` terms.
    sums: Vec<f64>,
    compensation: f64,
    running: f64,
    pending: VecDeque<BigRational>,
    committed: usize,
    exact: TreeSum,
    exhausted: bool,
}

impl<I: Iterator<Item = BigRational>> Terms<I> {
    fn new(source: I) -> Self {
        Terms {
            source,
            floats: Vec::new(),
            sums: vec![0.0],
            compensation: 0.0,
            running: 0.0,
            pending: VecDeque::new(),
            committed: 0,
            exact: TreeSum::default(),
            exhausted: false,
        }
    }

    fn len(&self) -> usize {
        self.floats.len()
    }

    /// Make at least `n` terms available; `false` if the stream ended first.
    fn pull_to(&mut self, n: usize) -> bool {
        while self.floats.len() < n {
            let Some(term) = self.source.next() else {
                self.exhausted = true;
                return false;
            };
            let t = to_f64(&term);
            // Neumaier summation
            let sum = self.running + t;
            if self.running.abs() >= t.abs() {
                self.compensation += (self.running - sum) + t;
            } else {
                self.compensation += (t - sum) + self.running;
            }
            self.running = sum;
            self.floats.push(t);
            self.sums.push(self.running + self.compensation);
            self.pending.push_back(term);
            while self.pending.len() > LOOKAHEAD {
                let value = self.pending.pop_front().expect("nonempty");
                self.exact.push(value);
                self.committed += 1;
            }
        }
        true
    }

    /// Exact sum of the first `n` terms; `n` must not be behind the commit point.
    fn exact_partial(&self, n: usize) -> BigRational {
        assert!(n >= self.committed && n <= self.len(), "partial sum outside the pending window");
        let mut total = self.exact.total();
        for value in self.pending.iter().take(n - self.committed) {
            total += value;
        }
        total
    }

    fn finish(&self, n: usize, strategy: SummationStrategy, value: Option<f64>, tail_bound: f64) -> SeriesSum {
        let partial = self.exact_partial(n);
        let tail_estimate = match value {
            Some(v) => v - to_f64(&partial),
            None => 0.0,
        };
        SeriesSum {
            partial,
            tail_estimate,
            tail_bound,
            terms_used: n,
            strategy,
        }
    }

    fn finish_exhausted(&self, strategy: SummationStrategy) -> SeriesSum {
        self.finish(self.len(), strategy, None, 0.0)
    }
}

/// Geometric tail bound after summing the first `n` terms, with the ratio
/// taken from the last [`RATIO_WINDOW`] steps and extrapolated along its
/// trend. Falls back to two-step ratios `|t_{k+2} / t_k|` when the one-step
/// ratios jump, as in a sum of a one-signed and an alternating series.
/// Returns `(bound, ratio)`.
fn geometric_bound(floats: &[f64], n: usize) -> Option<(f64, f64)> {
    let one = geometric_bound_step(floats, n, 1)?;
    if one.1 < MAX_RATIO {
        return Some(one);
    }
    match geometric_bound_step(floats, n, 2) {
        Some(two) if two.1 < MAX_RATIO => Some(two),
        _ => Some(one),
    }
}

fn geometric_bound_step(floats: &[f64], n: usize, step: usize) -> Option<(f64, f64)> {
    if n < RATIO_WINDOW + step {
        return None;
    }
    let window = &floats[n - RATIO_WINDOW - step..n];
    if window.iter().all(|t| *t == 0.0) {
        return Some((0.0, 0.0));
    }
    let ratios: Vec<f64> = window
        .iter()
        .zip(&window[step..])
        .map(|(a, b)| if *a == 0.0 { f64::INFINITY } else { (b / a).abs() })
        .collect();
    let first = ratios[0];
    let last = ratios[ratios.len() - 1];
    let mut ratio = ratios.iter().copied().fold(0.0, f64::max);
    if last > first {
        // ratios approaching a limit like L − c/k: extrapolate to k → ∞
        let first_index = (n - RATIO_WINDOW) as f64;
        let limit = last + (last - first) * first_index / (RATIO_WINDOW - 1) as f64;
        ratio = ratio.max(limit);
    }
    if !ratio.is_finite() || ratio >= 1.0 {
        return Some((f64::INFINITY, ratio));
    }
    // one geometric chain per residue class mod `step`
    let last_terms: f64 = floats[n - step..n].iter().map(|t| t.abs()).sum();
    Some((last_terms * ratio / (1.0 - ratio), ratio))
}

/// Signs strictly alternate and magnitudes do not increase over `window`.
fn alternating_decreasing(window: &[f64]) -> bool {
    window.iter().all(|t| *t != 0.0)
        && window.windows(2).all(|w| w[0].signum() != w[1].signum() && w[1].abs() <= w[0].abs())
}

/// All terms nonzero, same sign, magnitudes not increasing.
fn monotone_decreasing(window: &[f64]) -> bool {
    let Some(first) = window.first() else {
        return false;
    };
    *first != 0.0
        && window
            .windows(2)
            .all(|w| w[1] != 0.0 && w[0].signum() == w[1].signum() && w[1].abs() <= w[0].abs())
}

/// Log-log decay exponent `p` of `|t_k| ~ c k^{−p}`, fitted between indices
/// `n/2` and `n − 1`.
fn powerlaw_exponent(floats: &[f64], n: usize) -> Option<f64> {
    let hi = n.checked_sub(1)?;
    let lo = n / 2;
    if lo < 1 || hi <= lo {
        return None;
    }
    let (a, b) = (floats[lo].abs(), floats[hi].abs());
    if a == 0.0 || b == 0.0 {
        return None;
    }
    let p = -(b / a).ln() / (hi as f64 / lo as f64).ln();
    p.is_finite().then_some(p)
}

/// Snap a fitted exponent to the nearest half-integer when it is close.
fn snap_exponent(p: f64) -> f64 {
    let snapped = (2.0 * p).round() / 2.0;
    if (p - snapped).abs() < 0.15 {
        snapped
    } else {
        p
    }
}

/// `c` in `|t_k| ≤ c k^{−p}`, the largest value over the last window.
fn powerlaw_constant(floats: &[f64], n: usize, p: f64) -> f64 {
    (n.saturating_sub(RATIO_WINDOW).max(1)..n)
        .map(|k| floats[k].abs() * (k as f64).powf(p))
        .fold(0.0, f64::max)
}

/// Integral tail bound `2 · c N^{1−p} / (p − 1)` for one-signed power-law terms.
fn powerlaw_raw_bound(floats: &[f64], n: usize, p: f64) -> f64 {
    if p <= 1.0 {
        return f64::INFINITY;
    }
    let c = powerlaw_constant(floats, n, p);
    2.0 * c * (n as f64).powf(1.0 - p) / (p - 1.0)
}

/// Pick a strategy from the leading terms of a series.
///
/// Zero terms are skipped; at least [`MIN_TERMS`] nonzero terms are needed.
pub fn classify_tail(terms: &[f64]) -> Result<SummationStrategy, SummationError> {
    let nonzero: Vec<f64> = terms.iter().copied().filter(|t| *t != 0.0).collect();
    if nonzero.len() < MIN_TERMS {
        return Err(SummationError::Unclassifiable(format!(
            "{} nonzero terms, need at least {MIN_TERMS}",
            nonzero.len()
        )));
    }
    if nonzero.iter().any(|t| !t.is_finite()) {
        return Err(SummationError::Unclassifiable("non-finite term".into()));
    }
    let n = nonzero.len();
    if let Some((_, ratio)) = geometric_bound(&nonzero, n) {
        if ratio < MAX_RATIO {
            return Ok(SummationStrategy::Geometric);
        }
    }
    let tail = &nonzero[n / 2..];
    let decaying = powerlaw_exponent(&nonzero, n).is_some_and(|p| p > 0.0);
    if decaying && alternating_decreasing(tail) {
        return Ok(SummationStrategy::AlternatingAccelerated);
    }
    if monotone_decreasing(tail) && powerlaw_exponent(&nonzero, n).is_some_and(|p| p > 1.0) {
        return Ok(SummationStrategy::PowerlawMonotone);
    }
    Err(SummationError::Unclassifiable(
        "terms neither geometric, alternating, nor monotone power-law".into(),
    ))
}

/// Hides zero terms from the strategies, so a series whose nonzero terms
/// are interleaved with zeros is judged on the nonzero ones. A run of
/// [`ZERO_RUN`] zeros is passed through as a single zero, which keeps an
/// all-zero tail visible. Records the raw length consumed through each
/// yielded term.
struct SkipZeros<I> {
    inner: I,
    raw: usize,
    positions: Rc<RefCell<Vec<usize>>>,
}

impl<I: Iterator<Item = BigRational>> Iterator for SkipZeros<I> {
    type Item = BigRational;

    fn next(&mut self) -> Option<BigRational> {
        let mut zeros = 0;
        loop {
            let term = self.inner.next()?;
            self.raw += 1;
            if !term.is_zero() || {
                zeros += 1;
                zeros == ZERO_RUN
            } {
                self.positions.borrow_mut().push(self.raw);
                return Some(term);
            }
        }
    }
}

/// Sum a stream of exact terms to within `tol` using `strategy`.
///
/// Zero terms are skipped (see [`SkipZeros`]); `max_terms` caps the number
/// of nonzero terms read, while `terms_used` in the result counts every
/// term of the original stream up to the truncation point.
pub fn sum_series<I>(
    terms: I,
    strategy: SummationStrategy,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesSum, SummationError>
where
    I: IntoIterator<Item = BigRational>,
{
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SummationError::InvalidTolerance(tol));
    }
    let positions = Rc::new(RefCell::new(Vec::new()));
    let mut terms = Terms::new(SkipZeros {
        inner: terms.into_iter(),
        raw: 0,
        positions: Rc::clone(&positions),
    });
    let max_terms = max_terms.max(1);
    let result = match strategy {
        SummationStrategy::Geometric => sum_geometric(&mut terms, tol, max_terms),
        SummationStrategy::AlternatingAccelerated => sum_alternating(&mut terms, tol, max_terms),
        SummationStrategy::PowerlawMonotone => sum_powerlaw(&mut terms, tol, max_terms),
        SummationStrategy::Direct => sum_direct(&mut terms, tol, max_terms),
    };
    let positions = positions.borrow();
    let raw = |n: usize| if n == 0 { 0 } else { positions[n - 1] };
    match result {
        Ok(mut sum) => {
            sum.terms_used = raw(sum.terms_used);
            Ok(sum)
        }
        Err(SummationError::BudgetExceeded {
            strategy,
            max_terms,
            mut best,
            needed,
        }) => {
            let n = best.terms_used;
            best.terms_used = raw(n);
            let scale = if n == 0 { 1.0 } else { best.terms_used as f64 / n as f64 };
            Err(SummationError::BudgetExceeded {
                strategy,
                max_terms,
                best,
                needed: needed.map(|x| x * scale),
            })
        }
        Err(e) => Err(e),
    }
}

fn budget_exceeded<I: Iterator<Item = BigRational>>(
    terms: &Terms<I>,
    strategy: SummationStrategy,
    max_terms: usize,
    n: usize,
    value: Option<f64>,
    bound: f64,
    needed: Option<f64>,
) -> SummationError {
    SummationError::BudgetExceeded {
        strategy,
        max_terms,
        best: Box::new(terms.finish(n, strategy, value, bound)),
        needed,
    }
}

fn sum_geometric<I: Iterator<Item = BigRational>>(
    terms: &mut Terms<I>,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesSum, SummationError> {
    let strategy = SummationStrategy::Geometric;
    let mut n = 0;
    let mut bound = f64::INFINITY;
    loop {
        if n >= max_terms {
            return Err(budget_exceeded(terms, strategy, max_terms, n, None, bound, None));
        }
        if !terms.pull_to(n + 1) {
            return Ok(terms.finish_exhausted(strategy));
        }
        n += 1;
        if n < MIN_TERMS {
            continue;
        }
        let (b, ratio) = geometric_bound(&terms.floats, n).expect("n ≥ window");
        if ratio >= MAX_RATIO {
            return Err(SummationError::HypothesisFailed {
                strategy,
                reason: format!("term ratio {ratio:.4} is not below {MAX_RATIO}"),
            });
        }
        bound = b;
        if bound <= tol {
            return Ok(terms.finish(n, strategy, None, bound));
        }
    }
}

fn sum_alternating<I: Iterator<Item = BigRational>>(
    terms: &mut Terms<I>,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesSum, SummationError> {
    let strategy = SummationStrategy::AlternatingAccelerated;
    let mut estimates: Vec<f64> = Vec::new();
    let mut best: Option<SeriesSum> = None;
    let mut settled = false;
    let mut n = MIN_TERMS.min(max_terms);
    loop {
        // t_n is needed for the enclosure [S_n, S_{n+1}]
        if !terms.pull_to(n + 1) {
            return Ok(terms.finish_exhausted(strategy));
        }
        let window = &terms.floats[n.saturating_sub(MIN_TERMS)..=n];
        if !alternating_decreasing(window) {
            // leading terms may break the pattern before the tail settles
            if !settled && n < SETTLE_LIMIT.min(max_terms) {
                n += 1;
                continue;
            }
            return Err(SummationError::HypothesisFailed {
                strategy,
                reason: format!("terms stop alternating with decreasing magnitude near index {n}"),
            });
        }
        settled = true;
        let next = terms.floats[n];
        let raw = next.abs();
        if raw <= tol {
            return Ok(terms.finish(n, strategy, None, raw));
        }
        if n <= LEVIN_MAX_TERMS {
            if let Some(value) = levin_u(&terms.floats[..n], &terms.sums[1..=n]) {
                estimates.push(value);
                let (lo, hi) = {
                    let (a, b) = (terms.sums[n], terms.sums[n + 1]);
                    (a.min(b), a.max(b))
                };
                let slack = 4.0 * f64::EPSILON * value.abs().max(1.0);
                let enclosed = value >= lo - slack && value <= hi + slack;
                if estimates.len() >= 3 && enclosed {
                    let m = estimates.len();
                    let spread =
                        (estimates[m - 1] - estimates[m - 2]).abs() + (estimates[m - 2] - estimates[m - 3]).abs();
                    let floor = 32.0 * f64::EPSILON * value.abs().max(1.0);
                    let bound = spread.max(floor).min(raw);
                    if bound <= tol {
                        return Ok(terms.finish(n, strategy, Some(value), bound));
                    }
                    if best.as_ref().is_none_or(|b| bound < b.tail_bound) {
                        best = Some(terms.finish(n, strategy, Some(value), bound));
                    }
                }
            }
        }
        if n >= max_terms {
            let best = match best {
                Some(b) if b.tail_bound < raw => b,
                _ => terms.finish(n, strategy, None, raw),
            };
            return Err(SummationError::BudgetExceeded {
                strategy,
                max_terms,
                best: Box::new(best),
                needed: None,
            });
        }
        n += 1;
    }
}

fn sum_powerlaw<I: Iterator<Item = BigRational>>(
    terms: &mut Terms<I>,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesSum, SummationError> {
    let strategy = SummationStrategy::PowerlawMonotone;
    let mut checkpoints: Vec<usize> = Vec::new();
    let mut best: Option<SeriesSum> = None;
    let mut n = RICHARDSON_START.min(max_terms);
    loop {
        if !terms.pull_to(n) {
            return Ok(terms.finish_exhausted(strategy));
        }
        let window = &terms.floats[n.saturating_sub(MIN_TERMS)..n];
        let fitted = powerlaw_exponent(&terms.floats, n);
        let p = match fitted {
            Some(p) if p > 1.0 && monotone_decreasing(window) => snap_exponent(p),
            _ => {
                return Err(SummationError::HypothesisFailed {
                    strategy,
                    reason: format!("terms are not one-signed with k^-p decay, p > 1, near index {n}"),
                })
            }
        };
        let raw = powerlaw_raw_bound(&terms.floats, n, p);
        if raw <= tol {
            return Ok(terms.finish(n, strategy, None, raw));
        }
        checkpoints.push(n);
        if checkpoints.len() >= 4 {
            // tail ~ N^{1−p} (d_0 + d_1/N + …)
            let exponents: Vec<f64> = (0..checkpoints.len()).map(|i| p - 1.0 + i as f64).collect();
            let sums: Vec<f64> = checkpoints.iter().map(|&c| terms.sums[c]).collect();
            let diagonal = richardson_diagonal(&sums, &exponents);
            let m = diagonal.len();
            let value = diagonal[m - 1];
            let spread = (diagonal[m - 1] - diagonal[m - 2]).abs();
            let floor = 64.0 * f64::EPSILON * value.abs().max(1.0);
            let bound = spread.max(floor);
            // the extrapolated remainder must have the terms' sign and fit under the raw bound
            let remainder = (value - terms.sums[n]) * terms.floats[n - 1].signum();
            let slack = floor;
            if remainder >= -slack && remainder <= raw + slack && bound < raw {
                if bound <= tol {
                    return Ok(terms.finish(n, strategy, Some(value), bound));
                }
                if best.as_ref().is_none_or(|b| bound < b.tail_bound) {
                    best = Some(terms.finish(n, strategy, Some(value), bound));
                }
            }
        }
        if 2 * n > max_terms {
            let needed = n as f64 * (raw / tol).powf(1.0 / (p - 1.0));
            let best = match best {
                Some(b) if b.tail_bound < raw => b,
                _ => terms.finish(n, strategy, None, raw),
            };
            return Err(SummationError::BudgetExceeded {
                strategy,
                max_terms,
                best: Box::new(best),
                needed: Some(needed),
            });
        }
        n *= 2;
    }
}

/// Strongest bound on the remainder after `n` terms that does not rely on
/// acceleration, and the predicted term count for reaching `tol`.
fn raw_bound(floats: &[f64], n: usize, tol: f64) -> (f64, Option<f64>) {
    let mut bound = f64::INFINITY;
    let mut needed = None;
    if let Some((b, ratio)) = geometric_bound(floats, n) {
        if ratio < MAX_RATIO {
            bound = bound.min(b);
        }
    }
    let window = &floats[n.saturating_sub(MIN_TERMS)..=n];
    let p = powerlaw_exponent(floats, n);
    if alternating_decreasing(window) {
        let b = floats[n].abs();
        bound = bound.min(b);
        if let Some(p) = p.filter(|p| *p > 0.0) {
            needed = Some(n as f64 * (b / tol).powf(1.0 / p));
        }
    } else if monotone_decreasing(window) {
        if let Some(p) = p.filter(|p| *p > 1.0) {
            let b = powerlaw_raw_bound(floats, n, p);
            bound = bound.min(b);
            needed = Some(n as f64 * (b / tol).powf(1.0 / (p - 1.0)));
        }
    }
    (bound, needed)
}

fn sum_direct<I: Iterator<Item = BigRational>>(
    terms: &mut Terms<I>,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesSum, SummationError> {
    let strategy = SummationStrategy::Direct;
    let mut n = 0;
    let mut next_check = MIN_TERMS;
    loop {
        // t_n stays visible for the alternating bound
        if !terms.pull_to(n + 1) {
            return Ok(terms.finish(n, strategy, None, 0.0));
        }
        if n >= MIN_TERMS {
            let (bound, needed) = raw_bound(&terms.floats, n, tol);
            if bound <= tol {
                return Ok(terms.finish(n, strategy, None, bound));
            }
            let hopeless = n >= next_check && needed.is_some_and(|need| need > max_terms as f64);
            if n >= next_check {
                next_check *= 2;
            }
            if n >= max_terms || hopeless {
                return Err(budget_exceeded(terms, strategy, max_terms, n, None, bound, needed));
            }
        }
        n += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn geometric_terms(ratio: BigRational) -> impl Iterator<Item = BigRational> {
        std::iter::successors(Some(rat(1, 1)), move |t| Some(t * &ratio))
    }

    fn catalan_terms() -> impl Iterator<Item = BigRational> {
        (0i64..).map(|k| {
            let d = (2 * k + 1) * (2 * k + 1);
            rat(if k % 2 == 0 { 1 } else { -1 }, d)
        })
    }

    #[test]
    fn geometric_inverse_pi_squared() {
        // ratio 1/π² approximated by the rational 1/9.8696; closed form 1/(1 − r)
        let r = BigRational::new(BigInt::from(10_000), BigInt::from(98_696));
        let closed = 1.0 / (1.0 - to_f64(&r));
        let sum = sum_series(geometric_terms(r), SummationStrategy::Geometric, 1e-10, 1000).unwrap();
        assert!(sum.terms_used <= 25, "used {}", sum.terms_used);
        assert!(sum.tail_bound <= 1e-10);
        assert!((sum.value() - closed).abs() <= sum.tail_bound + 1e-15);
    }

    #[test]
    fn geometric_two_step_pattern() {
        // 1/3^k + (−1/3)^k alternates between 2/3^k and 0; scaled so no term vanishes
        let terms = (0..).map(|k: u32| {
            let p = BigRational::new(1.into(), BigInt::from(3).pow(k));
            let sign = if k.is_multiple_of(2) { rat(1, 1) } else { rat(-1, 1) };
            &p * rat(5, 8) + &p * sign * rat(3, 8)
        });
        let sum = sum_series(terms, SummationStrategy::Geometric, 1e-12, 1000).unwrap();
        let expected = 5.0 / 8.0 * 1.5 + 3.0 / 8.0 * 0.75;
        assert!((sum.value() - expected).abs() <= sum.tail_bound + 1e-15);
        assert!(sum.terms_used < 60, "used {}", sum.terms_used);
    }

    #[test]
    fn geometric_rejects_slow_ratio() {
        let err = sum_series(geometric_terms(rat(19, 20)), SummationStrategy::Geometric, 1e-10, 1000).unwrap_err();
        assert!(matches!(err, SummationError::HypothesisFailed { .. }));
    }

    #[test]
    fn alternating_after_burn_in() {
        // three positive terms, then the Catalan tail scaled down
        let head = [rat(1, 1), rat(1, 2), rat(1, 3)];
        let terms = head.into_iter().chain(catalan_terms().map(|t| t / BigRational::from_integer(7.into())));
        let sum = sum_series(terms, SummationStrategy::AlternatingAccelerated, 1e-9, 1_000_000).unwrap();
        let expected = 1.0 + 0.5 + 1.0 / 3.0 + 0.915_965_594_177_219 / 7.0;
        assert!((sum.value() - expected).abs() <= sum.tail_bound + 1e-15);
        assert!(sum.terms_used < 1000);
    }

    #[test]
    fn alternating_rejects_one_signed() {
        let terms = (1..).map(|k: i64| rat(1, k * k));
        let err = sum_series(terms, SummationStrategy::AlternatingAccelerated, 1e-9, 1000).unwrap_err();
        assert!(matches!(err, SummationError::HypothesisFailed { .. }));
    }

    #[test]
    fn alternating_catalan() {
        let sum = sum_series(catalan_terms(), SummationStrategy::AlternatingAccelerated, 1e-8, 1_000_000).unwrap();
        // Catalan's constant
        assert!((sum.value() - 0.915_965_594_177_219).abs() < 1e-8);
        assert!(sum.tail_bound <= 1e-8);
        assert!(sum.terms_used < 64);
    }

    #[test]
    fn powerlaw_odd_reciprocal_squares() {
        let terms = (0i64..).map(|k| rat(1, (2 * k + 1) * (2 * k + 1)));
        let sum = sum_series(terms, SummationStrategy::PowerlawMonotone, 1e-10, 1_000_000).unwrap();
        let exact = std::f64::consts::PI.powi(2) / 8.0;
        assert!((sum.value() - exact).abs() < 1e-10, "{} vs {exact}", sum.value());
        assert!((sum.value() - exact).abs() <= sum.tail_bound);
    }

    #[test]
    fn direct_predicts_hopeless_budget() {
        let terms = (0i64..).map(|k| rat(1, (2 * k + 1) * (2 * k + 1)));
        let err = sum_series(terms, SummationStrategy::Direct, 1e-10, 1_000_000).unwrap_err();
        match err {
            SummationError::BudgetExceeded { needed, best, .. } => {
                assert!(needed.unwrap() > 1e6);
                assert!(best.terms_used < 1000);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn interleaved_zeros_are_skipped() {
        let terms = geometric_terms(rat(1, 3)).flat_map(|t| [t, BigRational::zero()]);
        let sum = sum_series(terms, SummationStrategy::Geometric, 1e-12, 1000).unwrap();
        assert!((sum.value() - 1.5).abs() <= sum.tail_bound + 1e-15);
        assert_eq!(sum.terms_used % 2, 1);
        let zeros = std::iter::repeat_with(BigRational::zero);
        let sum = sum_series(zeros, SummationStrategy::Direct, 1e-12, 1000).unwrap();
        assert!(sum.partial.is_zero());
        assert_eq!(sum.tail_bound, 0.0);
    }

    #[test]
    fn direct_sums_geometric() {
        let sum = sum_series(geometric_terms(rat(1, 2)), SummationStrategy::Direct, 1e-12, 1000).unwrap();
        assert!((sum.value() - 2.0).abs() <= sum.tail_bound);
        assert!(sum.tail_estimate == 0.0);
    }

    #[test]
    fn finite_stream_is_exact() {
        let terms = vec![rat(1, 2), rat(1, 3)];
        for strategy in [
            SummationStrategy::Geometric,
            SummationStrategy::AlternatingAccelerated,
            SummationStrategy::PowerlawMonotone,
            SummationStrategy::Direct,
        ] {
            let sum = sum_series(terms.clone(), strategy, 1e-12, 100).unwrap();
            assert_eq!(sum.partial, rat(5, 6), "{strategy}");
            assert_eq!(sum.tail_bound, 0.0);
        }
    }

    #[test]
    fn invalid_tolerance() {
        for tol in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                sum_series(catalan_terms(), SummationStrategy::Direct, tol, 10),
                Err(SummationError::InvalidTolerance(_))
            ));
        }
    }

    #[test]
    fn classify_examples() {
        let geo: Vec<f64> = (0..24).map(|k| 0.1f64.powi(k)).collect();
        assert_eq!(classify_tail(&geo).unwrap(), SummationStrategy::Geometric);
        let alt: Vec<f64> = (0..24).map(|k| (-1f64).powi(k) / ((2 * k + 1) as f64).powi(2)).collect();
        assert_eq!(classify_tail(&alt).unwrap(), SummationStrategy::AlternatingAccelerated);
        let mono: Vec<f64> = (1..25).map(|k| (k as f64).powf(-1.5)).collect();
        assert_eq!(classify_tail(&mono).unwrap(), SummationStrategy::PowerlawMonotone);
        let harmonic: Vec<f64> = (1..25).map(|k| 1.0 / k as f64).collect();
        assert!(classify_tail(&harmonic).is_err());
        assert!(classify_tail(&geo[..10]).is_err());
    }

    #[test]
    fn tree_sum_matches_fold() {
        let values: Vec<BigRational> = (1..50).map(|k| rat(1, k)).collect();
        let mut tree = TreeSum::default();
        for v in values.iter().cloned() {
            tree.push(v);
        }
        let folded = values.iter().fold(BigRational::zero(), |a, b| a + b);
        assert_eq!(tree.total(), folded);
    }
}
