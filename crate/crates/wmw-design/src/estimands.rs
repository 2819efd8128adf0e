//! Relative effect and variances from two fixed distributions.
//!
//! Two independent computation paths are provided: the rank/placement
//! path for unit-weight data, and the normalized-ECDF integral path for
//! general weighted samples. For unit weights they agree to floating
//! point accuracy; tests cross-validate one against the other.

use crate::error::{Error, Result};
use crate::ranking::{kahan_sum, rank_summary};
use crate::synthetic::WeightedSample;

/// Relative effect p*, null variance σ*², and the two alternative
/// variance components σ₁*², σ₂*², computed exactly from synthetic data.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimands {
    /// Relative effect p* = ∫F₁dF₂ ∈ [0, 1].
    pub p_star: f64,
    /// σ*² = ∫F²dF − 1/4 over the pooled distribution.
    pub sigma2_null: f64,
    /// σ₁*² = Var(F₂(X₁)).
    pub sigma2_1: f64,
    /// σ₂*² = Var(F₁(X₂)).
    pub sigma2_2: f64,
    /// Effective group sizes (observation counts for the rank path,
    /// total weights for the integral path).
    pub n1: f64,
    pub n2: f64,
}

impl Estimands {
    /// κ = σ₂*/σ₁*. Infinite when σ₁* = 0 < σ₂*, an error when both
    /// variances vanish.
    pub fn kappa(&self) -> Result<f64> {
        if self.sigma2_1 == 0.0 && self.sigma2_2 == 0.0 {
            return Err(Error::KappaUndefined);
        }
        if self.sigma2_1 == 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok((self.sigma2_2 / self.sigma2_1).sqrt())
    }
}

// Degenerate population variances come out as noise around zero (either
// sign) in floating point; snap them so zero-variance cases are detected.
fn clamp_var(v: f64) -> f64 {
    if v.abs() < 1e-12 {
        0.0
    } else {
        v
    }
}

// The relative effect lives in [0, 1] but normalized-weight sums can
// overshoot by an ulp on fully separated samples; likewise exchangeable
// samples can land an ulp off 1/2, which must stay detectable as a null
// effect.
fn clamp_unit(p: f64) -> f64 {
    if (p - 0.5).abs() < 1e-12 {
        0.5
    } else {
        p.clamp(0.0, 1.0)
    }
}

/// Estimands from the rank/placement representation (unit weights).
pub fn estimands_by_ranks(g1: &[f64], g2: &[f64]) -> Result<Estimands> {
    let s = rank_summary(g1, g2)?;
    let n1 = g1.len() as f64;
    let n2 = g2.len() as f64;
    let n = n1 + n2;

    let r1_mean = kahan_sum(s.overall_ranks_g1.iter().copied()) / n1;
    let r2_mean = kahan_sum(s.overall_ranks_g2.iter().copied()) / n2;
    let p_star = clamp_unit((r2_mean - r1_mean) / n + 0.5);

    let center = (n + 1.0) / 2.0;
    let ss = kahan_sum(
        s.overall_ranks_g1
            .iter()
            .chain(&s.overall_ranks_g2)
            .map(|r| (r - center) * (r - center)),
    );
    let sigma2_null = ss / (n * n * n);

    let p1_mean = kahan_sum(s.placements_g1.iter().copied()) / n1;
    let p2_mean = kahan_sum(s.placements_g2.iter().copied()) / n2;
    let sigma2_1 = kahan_sum(s.placements_g1.iter().map(|p| (p - p1_mean) * (p - p1_mean)))
        / (n1 * n2 * n2);
    let sigma2_2 = kahan_sum(s.placements_g2.iter().map(|p| (p - p2_mean) * (p - p2_mean)))
        / (n1 * n1 * n2);

    Ok(Estimands {
        p_star,
        sigma2_null: clamp_var(sigma2_null),
        sigma2_1: clamp_var(sigma2_1),
        sigma2_2: clamp_var(sigma2_2),
        n1,
        n2,
    })
}

/// Estimands from normalized-ECDF integrals over weighted samples. The
/// pooled mixture for σ*² uses the groups' weight shares as mixing
/// proportions (matching the rank path, which pools all observations).
pub fn estimands_by_integrals(f1: &WeightedSample, f2: &WeightedSample) -> Result<Estimands> {
    let w1 = f1.total_weight();
    let w2 = f2.total_weight();
    estimands_by_integrals_pooled(f1, f2, w1 / (w1 + w2))
}

/// Same as [`estimands_by_integrals`] but with an explicit mixing
/// proportion `t` for the pooled null-variance mixture.
pub fn estimands_by_integrals_pooled(
    f1: &WeightedSample,
    f2: &WeightedSample,
    t: f64,
) -> Result<Estimands> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "mixing proportion must be in (0, 1), got {t}"
        )));
    }
    let m1 = f1.mass_function();
    let m2 = f2.mass_function();

    // Merge the two sorted supports; at each union point x record both
    // normalized CDFs F_i(x) = (below_i + at_i/2) and both masses.
    struct Point {
        mass1: f64,
        mass2: f64,
        cdf1: f64,
        cdf2: f64,
    }
    let mut points: Vec<Point> = Vec::with_capacity(m1.len() + m2.len());
    let (mut i, mut j) = (0, 0);
    let (mut below1, mut below2) = (0.0_f64, 0.0_f64);
    while i < m1.len() || j < m2.len() {
        let v = match (m1.get(i), m2.get(j)) {
            (Some(a), Some(b)) => a.0.min(b.0),
            (Some(a), None) => a.0,
            (None, Some(b)) => b.0,
            (None, None) => unreachable!(),
        };
        let a1 = if i < m1.len() && m1[i].0 == v {
            i += 1;
            m1[i - 1].1
        } else {
            0.0
        };
        let a2 = if j < m2.len() && m2[j].0 == v {
            j += 1;
            m2[j - 1].1
        } else {
            0.0
        };
        points.push(Point {
            mass1: a1,
            mass2: a2,
            cdf1: below1 + 0.5 * a1,
            cdf2: below2 + 0.5 * a2,
        });
        below1 += a1;
        below2 += a2;
    }

    let p_star = clamp_unit(kahan_sum(points.iter().map(|pt| pt.mass2 * pt.cdf1)));
    let e_f2_sq = kahan_sum(points.iter().map(|pt| pt.mass1 * pt.cdf2 * pt.cdf2));
    let e_f1_sq = kahan_sum(points.iter().map(|pt| pt.mass2 * pt.cdf1 * pt.cdf1));
    let sigma2_1 = e_f2_sq - (1.0 - p_star) * (1.0 - p_star);
    let sigma2_2 = e_f1_sq - p_star * p_star;

    let sigma2_null = kahan_sum(points.iter().map(|pt| {
        let pooled_cdf = t * pt.cdf1 + (1.0 - t) * pt.cdf2;
        let pooled_mass = t * pt.mass1 + (1.0 - t) * pt.mass2;
        pooled_mass * pooled_cdf * pooled_cdf
    })) - 0.25;

    Ok(Estimands {
        p_star,
        sigma2_null: clamp_var(sigma2_null),
        sigma2_1: clamp_var(sigma2_1),
        sigma2_2: clamp_var(sigma2_2),
        n1: f1.total_weight(),
        n2: f2.total_weight(),
    })
}
