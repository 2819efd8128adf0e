//! Fixed distributions as weighted samples, and generators that turn
//! prior information into a relevant-alternative distribution via
//! interpretable effects.

use crate::error::{Error, Result};

/// A fixed distribution represented by support points with positive
/// weights. This is not a random sample: weights are relative
/// frequencies (or probabilities), and all estimands are computed
/// exactly from the normalized CDF F(x) = (F⁻(x) + F⁺(x)) / 2.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSample {
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl WeightedSample {
    pub fn new(values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if values.len() != weights.len() {
            return Err(Error::InvalidSample(format!(
                "{} values but {} weights",
                values.len(),
                weights.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidSample("non-finite value".into()));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidSample("weights must be positive and finite".into()));
        }
        Ok(Self { values, weights })
    }

    /// Unit weights.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec(), vec![1.0; values.len()])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        crate::ranking::kahan_sum(self.weights.iter().copied())
    }

    /// Normalized CDF at x: P(X < x) + P(X = x)/2.
    pub fn cdf(&self, x: f64) -> f64 {
        let w = self.total_weight();
        let mut below = 0.0;
        let mut at = 0.0;
        for (v, wt) in self.values.iter().zip(&self.weights) {
            if *v < x {
                below += wt;
            } else if *v == x {
                at += wt;
            }
        }
        (below + 0.5 * at) / w
    }

    /// Weighted mean of the support points.
    pub fn mean(&self) -> f64 {
        let w = self.total_weight();
        let s = crate::ranking::kahan_sum(
            self.values.iter().zip(&self.weights).map(|(v, wt)| v * wt),
        );
        s / w
    }

    /// Support points aggregated by value: sorted (value, normalized mass).
    pub fn mass_function(&self) -> Vec<(f64, f64)> {
        let w = self.total_weight();
        let mut pairs: Vec<(f64, f64)> = self
            .values
            .iter()
            .zip(&self.weights)
            .map(|(v, wt)| (*v, *wt / w))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
        for (v, m) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += m,
                _ => out.push((v, m)),
            }
        }
        out
    }
}

/// Multiplicative effect x ↦ q·x, optionally floored to integers
/// (for count data such as seizure frequencies).
pub fn scale_effect(base: &WeightedSample, q: f64, integer_floor: bool) -> Result<WeightedSample> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "scale factor must be in (0, 1], got {q}"
        )));
    }
    let values = base
        .values()
        .iter()
        .map(|&x| {
            let y = q * x;
            if integer_floor {
                y.floor()
            } else {
                y
            }
        })
        .collect();
    WeightedSample::new(values, base.weights().to_vec())
}

/// Location shift x ↦ x + delta, optionally rounded to a fixed number
/// of decimals (measurements are often recorded at fixed precision).
pub fn shift_effect(
    base: &WeightedSample,
    delta: f64,
    round_decimals: Option<u32>,
) -> Result<WeightedSample> {
    let values = base
        .values()
        .iter()
        .map(|&x| {
            let y = x + delta;
            match round_decimals {
                Some(k) => {
                    let scale = 10f64.powi(k as i32);
                    (y * scale).round() / scale
                }
                None => y,
            }
        })
        .collect();
    WeightedSample::new(values, base.weights().to_vec())
}

/// Direction in which mass moves between adjacent ordered categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    /// Toward higher category indices.
    Up,
    /// Toward lower category indices.
    Down,
}

/// Move `move_fraction` of the count of each selected category one
/// category up or down. Fractional counts are allowed. Moves are
/// computed from the original counts simultaneously.
pub fn ordinal_shift(
    base_counts: &[f64],
    move_fraction: f64,
    direction: ShiftDirection,
    categories: &[usize],
) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&move_fraction) {
        return Err(Error::InvalidArgument(format!(
            "move fraction must be in [0, 1], got {move_fraction}"
        )));
    }
    if base_counts.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
        return Err(Error::InvalidArgument("counts must be nonnegative".into()));
    }
    let n = base_counts.len();
    let mut out = base_counts.to_vec();
    for &cat in categories {
        if cat >= n {
            return Err(Error::InvalidArgument(format!(
                "category {cat} out of range (only {n} categories)"
            )));
        }
        let target = match direction {
            ShiftDirection::Up => {
                if cat + 1 >= n {
                    if base_counts[cat] > 0.0 {
                        return Err(Error::InvalidArgument(format!(
                            "cannot move mass up from top category {cat}"
                        )));
                    }
                    continue;
                }
                cat + 1
            }
            ShiftDirection::Down => {
                if cat == 0 {
                    if base_counts[cat] > 0.0 {
                        return Err(Error::InvalidArgument(
                            "cannot move mass down from bottom category 0".into(),
                        ));
                    }
                    continue;
                }
                cat - 1
            }
        };
        let moved = move_fraction * base_counts[cat];
        out[cat] -= moved;
        out[target] += moved;
    }
    Ok(out)
}

/// Weighted sample from an ordered frequency table: category labels
/// become the numeric codes 0, 1, 2, ... in the given order; entries
/// may be probabilities or counts. Zero-weight categories are dropped.
pub fn from_frequency_table(probs_or_counts: &[f64]) -> Result<WeightedSample> {
    if probs_or_counts.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::InvalidSample("frequencies must be nonnegative".into()));
    }
    let mut values = Vec::new();
    let mut weights = Vec::new();
    for (i, &w) in probs_or_counts.iter().enumerate() {
        if w > 0.0 {
            values.push(i as f64);
            weights.push(w);
        }
    }
    if values.is_empty() {
        return Err(Error::InvalidSample("all frequencies are zero".into()));
    }
    WeightedSample::new(values, weights)
}

/// Deterministic synthetic sample from a quantile function: values
/// F⁻¹((k - 1/2)/m) for k = 1..m with unit weights. The ECDF of this
/// sample converges to the target distribution as m grows.
pub fn quantile_grid(cdf_inverse: impl Fn(f64) -> f64, m: usize) -> Result<WeightedSample> {
    if m == 0 {
        return Err(Error::InvalidArgument("grid size must be at least 1".into()));
    }
    let mut values = Vec::with_capacity(m);
    for k in 1..=m {
        let u = (k as f64 - 0.5) / m as f64;
        let q = cdf_inverse(u);
        if !q.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "quantile function returned {q} at {u}"
            )));
        }
        values.push(q);
    }
    WeightedSample::new(values, vec![1.0; m])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws(values: &[f64]) -> WeightedSample {
        WeightedSample::from_values(values).unwrap()
    }

    #[test]
    fn scale_effect_halves_and_floors_seizure_counts() {
        // Table rows: 3 -> 1, 21 -> 10, 29 -> 14, 0 -> 0
        let base = ws(&[3.0, 21.0, 29.0, 0.0]);
        let out = scale_effect(&base, 0.5, true).unwrap();
        assert_eq!(out.values(), &[1.0, 10.0, 14.0, 0.0]);
    }

    #[test]
    fn scale_effect_identity_and_exact_quarter() {
        let base = ws(&[1.5, 2.0, 7.0]);
        assert_eq!(scale_effect(&base, 1.0, false).unwrap(), base);
        let out = scale_effect(&ws(&[4.0]), 0.25, true).unwrap();
        assert_eq!(out.values(), &[1.0]);
    }

    #[test]
    fn scale_effect_rejects_nonpositive_q() {
        assert!(scale_effect(&ws(&[1.0]), 0.0, false).is_err());
        assert!(scale_effect(&ws(&[1.0]), -0.5, false).is_err());
    }

    #[test]
    fn shift_effect_cases() {
        let base = ws(&[6.62, 5.37]);
        let out = shift_effect(&base, 0.3005, Some(2)).unwrap();
        assert_eq!(out.values(), &[6.92, 5.67]);
        assert_eq!(shift_effect(&base, 0.0, None).unwrap(), base);
        let out = shift_effect(&ws(&[1.0, 2.0]), -1.0, None).unwrap();
        assert_eq!(out.values(), &[0.0, 1.0]);
    }

    #[test]
    fn ordinal_shift_quarter_up() {
        let out = ordinal_shift(&[64.0, 12.0, 4.0, 0.0], 0.25, ShiftDirection::Up, &[0, 1, 2])
            .unwrap();
        assert_eq!(out, vec![48.0, 25.0, 6.0, 1.0]);
    }

    #[test]
    fn ordinal_shift_identity_and_forced_split() {
        let counts = [3.0, 2.0];
        assert_eq!(
            ordinal_shift(&counts, 0.0, ShiftDirection::Up, &[0]).unwrap(),
            counts.to_vec()
        );
        assert_eq!(
            ordinal_shift(&[8.0, 0.0], 0.5, ShiftDirection::Up, &[0]).unwrap(),
            vec![4.0, 4.0]
        );
    }

    #[test]
    fn ordinal_shift_boundary_errors() {
        assert!(ordinal_shift(&[1.0, 2.0], 0.5, ShiftDirection::Up, &[1]).is_err());
        assert!(ordinal_shift(&[1.0, 2.0], 0.5, ShiftDirection::Down, &[0]).is_err());
        // a boundary category with zero count is allowed
        assert!(ordinal_shift(&[1.0, 0.0], 0.5, ShiftDirection::Up, &[0, 1]).is_ok());
    }

    #[test]
    fn frequency_table_drops_zero_categories() {
        let s = from_frequency_table(&[0.85, 0.10, 0.05]).unwrap();
        assert_eq!(s.values(), &[0.0, 1.0, 2.0]);
        assert_eq!(s.weights(), &[0.85, 0.10, 0.05]);
        let s = from_frequency_table(&[64.0, 12.0, 4.0, 0.0]).unwrap();
        assert_eq!(s.values(), &[0.0, 1.0, 2.0]);
        let s = from_frequency_table(&[2.0]).unwrap();
        assert_eq!(s.len(), 1);
        assert!(from_frequency_table(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn quantile_grid_uniform() {
        let s = quantile_grid(|u| u, 4).unwrap();
        assert_eq!(s.values(), &[0.125, 0.375, 0.625, 0.875]);
        let s = quantile_grid(|u| u, 1).unwrap();
        assert_eq!(s.values(), &[0.5]);
        assert!(quantile_grid(|u| (u - 0.5).ln(), 4).is_err());
    }

    #[test]
    fn effects_preserve_total_weight() {
        let base = WeightedSample::new(vec![1.0, 2.0, 3.0], vec![0.2, 0.3, 0.5]).unwrap();
        let w = base.total_weight();
        assert_eq!(scale_effect(&base, 0.7, false).unwrap().total_weight(), w);
        assert_eq!(shift_effect(&base, 1.3, None).unwrap().total_weight(), w);
        let counts = [5.0, 7.0, 1.0];
        let shifted = ordinal_shift(&counts, 0.3, ShiftDirection::Up, &[0, 1]).unwrap();
        assert!((shifted.iter().sum::<f64>() - 13.0).abs() < 1e-12);
    }

    #[test]
    fn cdf_is_normalized_version() {
        let s = WeightedSample::new(vec![0.0, 1.0], vec![0.3, 0.7]).unwrap();
        assert_eq!(s.cdf(-1.0), 0.0);
        assert_eq!(s.cdf(0.0), 0.15);
        assert_eq!(s.cdf(0.5), 0.3);
        assert_eq!(s.cdf(1.0), 0.3 + 0.35);
        assert_eq!(s.cdf(2.0), 1.0);
    }
}
