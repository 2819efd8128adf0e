//! Midranks, within-group ranks, and placements for pooled two-group
//! data with ties.
//!
//! Ties are detected by exact equality: the inputs are constructed
//! (synthetic) data, so an epsilon-based tie grouping would silently
//! change the estimands downstream.

use crate::error::{Error, Result};

/// Overall and within-group midranks plus placements for a pooled
/// two-group dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct RankSummary {
    pub overall_ranks_g1: Vec<f64>,
    pub overall_ranks_g2: Vec<f64>,
    pub within_ranks_g1: Vec<f64>,
    pub within_ranks_g2: Vec<f64>,
    /// P*_1k = R*_1k - R*_1k^(1), each in [0, n2].
    pub placements_g1: Vec<f64>,
    /// P*_2k = R*_2k - R*_2k^(2), each in [0, n1].
    pub placements_g2: Vec<f64>,
}

/// Midranks of `values`: rank of v = #{u < v} + (#{u = v} + 1)/2.
/// Tied values share the average of the positions they occupy.
pub fn midranks(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i+1 .. j share the midrank (i + j + 1) / 2
        let rank = (i + j + 1) as f64 / 2.0;
        for &idx in &order[i..j] {
            ranks[idx] = rank;
        }
        i = j;
    }
    Ok(ranks)
}

/// Overall midranks over the pooled data, within-group midranks, and
/// placements as their differences.
pub fn rank_summary(g1: &[f64], g2: &[f64]) -> Result<RankSummary> {
    if g1.is_empty() || g2.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut pooled = Vec::with_capacity(g1.len() + g2.len());
    pooled.extend_from_slice(g1);
    pooled.extend_from_slice(g2);
    let overall = midranks(&pooled)?;
    let (overall_ranks_g1, overall_ranks_g2) = {
        let (a, b) = overall.split_at(g1.len());
        (a.to_vec(), b.to_vec())
    };
    let within_ranks_g1 = midranks(g1)?;
    let within_ranks_g2 = midranks(g2)?;
    let placements_g1 = overall_ranks_g1
        .iter()
        .zip(&within_ranks_g1)
        .map(|(r, w)| r - w)
        .collect();
    let placements_g2 = overall_ranks_g2
        .iter()
        .zip(&within_ranks_g2)
        .map(|(r, w)| r - w)
        .collect();
    Ok(RankSummary {
        overall_ranks_g1,
        overall_ranks_g2,
        within_ranks_g1,
        within_ranks_g2,
        placements_g1,
        placements_g2,
    })
}

/// Kahan-compensated sum; keeps rank-sum invariants exact for large N.
pub(crate) fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let y = v - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}
