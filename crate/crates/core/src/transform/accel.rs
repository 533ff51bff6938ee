//! Floating-point sequence transformations used to extrapolate slowly
//! convergent partial sums.

/// Levin u-transform of the partial sums `s_j = t_0 + … + t_j`, using every
/// supplied term.
///
/// `terms` and `sums` have equal length `n`; `sums[j]` includes `terms[j]`.
/// Remainder estimates are `ω_j = (j + 1) t_j`. Returns `None` when a term is
/// zero or the denominator vanishes.
pub fn levin_u(terms: &[f64], sums: &[f64]) -> Option<f64> {
    assert_eq!(terms.len(), sums.len());
    let n = terms.len();
    if n == 0 {
        return None;
    }
    let k = n - 1;
    let beta = 1.0;
    let mut num = 0.0;
    let mut den = 0.0;
    let mut binom = 1.0;
    for j in 0..=k {
        let omega = (beta + j as f64) * terms[j];
        if omega == 0.0 || !omega.is_finite() {
            return None;
        }
        let scale = ((beta + j as f64) / (beta + k as f64)).powi(k as i32 - 1);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * binom * scale / omega;
        num += w * sums[j];
        den += w;
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    let value = num / den;
    (den != 0.0 && value.is_finite()).then_some(value)
}

/// Richardson extrapolation of `values[j] ≈ L + Σ_i c_i h_j^{e_i}` with
/// `h_j = 2^{−j}` (sample sizes doubling) and known exponents `e_i`.
///
/// Returns the diagonal `R[j][j]` for each `j`: the best estimate available
/// after `j + 1` samples.
pub fn richardson_diagonal(values: &[f64], exponents: &[f64]) -> Vec<f64> {
    let mut diagonal = Vec::with_capacity(values.len());
    let mut prev_row: Vec<f64> = Vec::new();
    for (j, &v) in values.iter().enumerate() {
        let mut row = Vec::with_capacity(j + 1);
        row.push(v);
        for i in 1..=j {
            let factor = 2f64.powf(exponents[i - 1]) - 1.0;
            let refined = row[i - 1] + (row[i - 1] - prev_row[i - 1]) / factor;
            row.push(refined);
        }
        diagonal.push(row[j]);
        prev_row = row;
    }
    diagonal
}
