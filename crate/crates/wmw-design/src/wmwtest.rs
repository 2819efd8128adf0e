//! Two-sided asymptotic Wilcoxon-Mann-Whitney test with tie-aware
//! variance, used as the rejection oracle inside the power simulation.

use crate::dist::normal_cdf;
use crate::error::{Error, Result};
use crate::ranking::{kahan_sum, rank_summary};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    /// Standardized statistic z = √N (p̂ - 1/2) / σ̂₀.
    pub statistic: f64,
    /// Two-sided p-value 2(1 - Φ(|z|)).
    pub p_value: f64,
    /// Empirical relative effect p̂ from rank means.
    pub p_hat: f64,
    /// Rejection at the requested level: p-value ≤ α.
    pub reject: bool,
    /// All pooled values identical; z = 0 and p-value = 1 by convention.
    pub degenerate: bool,
}

/// Asymptotic two-sided WMW test at level `alpha`. The null variance
/// uses the pooled-rank tie-aware σ̂² (the classical tie-corrected
/// rank-sum variance); no continuity correction.
pub fn wmw_asymptotic_test(g1: &[f64], g2: &[f64], alpha: f64) -> Result<TestResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must be in (0, 1), got {alpha}"
        )));
    }
    let s = rank_summary(g1, g2)?;
    let n1 = g1.len() as f64;
    let n2 = g2.len() as f64;
    let n = n1 + n2;
    let t = n1 / n;

    let r1_mean = kahan_sum(s.overall_ranks_g1.iter().copied()) / n1;
    let r2_mean = kahan_sum(s.overall_ranks_g2.iter().copied()) / n2;
    let p_hat = (r2_mean - r1_mean) / n + 0.5;

    let center = (n + 1.0) / 2.0;
    let sigma2 = kahan_sum(
        s.overall_ranks_g1
            .iter()
            .chain(&s.overall_ranks_g2)
            .map(|r| (r - center) * (r - center)),
    ) / (n * n * n);

    if sigma2 <= 0.0 {
        return Ok(TestResult {
            statistic: 0.0,
            p_value: 1.0,
            p_hat,
            reject: false,
            degenerate: true,
        });
    }
    let sigma0 = (sigma2 / (t * (1.0 - t))).sqrt();
    let z = n.sqrt() * (p_hat - 0.5) / sigma0;
    let p_value = (2.0 * (1.0 - normal_cdf(z.abs()))).min(1.0);
    Ok(TestResult {
        statistic: z,
        p_value,
        p_hat,
        reject: p_value <= alpha,
        degenerate: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fully_tied_data_is_degenerate() {
        let r = wmw_asymptotic_test(&[5.0, 5.0, 5.0], &[5.0, 5.0, 5.0], 0.05).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert!(!r.reject);
    }

    #[test]
    fn identical_groups_give_null_result() {
        let r = wmw_asymptotic_test(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], 0.05).unwrap();
        assert!(!r.degenerate);
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.p_hat, 0.5);
    }

    #[test]
    fn group_swap_negates_z() {
        let g1 = [1.0, 4.0, 4.0, 6.0];
        let g2 = [2.0, 5.0, 9.0];
        let a = wmw_asymptotic_test(&g1, &g2, 0.05).unwrap();
        let b = wmw_asymptotic_test(&g2, &g1, 0.05).unwrap();
        assert!((a.statistic + b.statistic).abs() < 1e-12);
        assert!((a.p_value - b.p_value).abs() < 1e-12);
    }

    #[test]
    fn monotone_transform_leaves_test_unchanged() {
        let g1 = [0.1, 0.7, 1.4, 2.0];
        let g2 = [0.5, 1.9, 3.3];
        let a = wmw_asymptotic_test(&g1, &g2, 0.05).unwrap();
        let t1: Vec<f64> = g1.iter().map(|x| x.exp()).collect();
        let t2: Vec<f64> = g2.iter().map(|x| x.exp()).collect();
        let b = wmw_asymptotic_test(&t1, &t2, 0.05).unwrap();
        assert_eq!(a.statistic, b.statistic);
        assert_eq!(a.p_value, b.p_value);
    }

    #[test]
    fn separated_groups_reject() {
        let g1 = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0];
        let g2 = [11.0, 12.0, 13.0, 14.0, 15.0, 16.0, 17.0, 18.0];
        let r = wmw_asymptotic_test(&g1, &g2, 0.05).unwrap();
        assert_eq!(r.p_hat, 1.0);
        assert!(r.reject);
    }

    #[test]
    fn empty_group_errors() {
        assert!(wmw_asymptotic_test(&[], &[1.0], 0.05).is_err());
    }
}
