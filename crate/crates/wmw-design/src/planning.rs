//! Sample-size formula N(t), Noether comparator, optimal allocation
//! with analytic interval bounds, and the balanced-design (mirror)
//! characterization.

use crate::error::{Error, Result};
use crate::estimands::{estimands_by_integrals, Estimands};
use crate::synthetic::WeightedSample;

pub use crate::dist::normal_quantile;

/// Group-allocation policy for the total sample size N = n₁ + n₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Allocation {
    /// t = 1/2.
    Balanced,
    /// A fixed allocation rate t = n₁/N ∈ (0, 1).
    Fixed(f64),
    /// The N-minimizing rate t₀.
    Optimal,
}

/// Error rates and allocation policy for a planning run. `alpha` is
/// always two-sided.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanInput {
    pub alpha: f64,
    pub power: f64,
    pub allocation: Allocation,
}

impl PlanInput {
    pub fn new(alpha: f64, power: f64, allocation: Allocation) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha must be in (0, 1), got {alpha}"
            )));
        }
        if !(power > 0.0 && power < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "power must be in (0, 1), got {power}"
            )));
        }
        if let Allocation::Fixed(t) = allocation {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "allocation rate must be in (0, 1), got {t}"
                )));
            }
        }
        Ok(Self {
            alpha,
            power,
            allocation,
        })
    }

    fn u_alpha(&self) -> Result<f64> {
        normal_quantile(1.0 - self.alpha / 2.0)
    }

    fn u_beta(&self) -> Result<f64> {
        normal_quantile(self.power)
    }
}

/// How the optimal-allocation interval was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    /// 0 < σ₁ ≠ σ₂ > 0: bounds 1/(κ+1) and the root of h(t).
    Regular,
    /// σ₁ = 0 < σ₂: lower bound from the root of l(t).
    Sigma1Zero,
    /// σ₂ = 0 < σ₁: mirrored analogue.
    Sigma2Zero,
    /// σ₁ = σ₂ > 0: the interval collapses to {1/2}.
    DegenerateHalf,
}

/// Analytic bracket for the optimal allocation rate t₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AllocationInterval {
    pub lower: f64,
    pub upper: f64,
    pub kind: IntervalKind,
}

/// Outcome of a planning run: the allocation rate used, the unrounded
/// N(t), and the conservatively rounded per-group sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanResult {
    pub t: f64,
    pub n_raw: f64,
    pub n1: u64,
    pub n2: u64,
    pub n_total: u64,
    pub interval: Option<AllocationInterval>,
    pub estimands: Estimands,
}

/// Unrounded total sample size N(t) for the Wilcoxon-Mann-Whitney test:
///
///   N(t) = (σ* u_{1-α/2} + u_{1-β} √(t σ₂*² + (1-t) σ₁*²))²
///          / (t (1-t) (p* - 1/2)²)
pub fn sample_size_at_t(e: &Estimands, input: &PlanInput, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "allocation rate must be in (0, 1), got {t}"
        )));
    }
    if e.p_star == 0.5 {
        return Err(Error::NullEffect);
    }
    let ua = input.u_alpha()?;
    let ub = input.u_beta()?;
    let sigma = e.sigma2_null.sqrt();
    let mix = (t * e.sigma2_2 + (1.0 - t) * e.sigma2_1).sqrt();
    let num = sigma * ua + ub * mix;
    Ok(num * num / (t * (1.0 - t) * (e.p_star - 0.5) * (e.p_star - 0.5)))
}

/// Noether's classical approximation, which replaces the alternative
/// variance by the continuous-data null variance 1/12:
///
///   N = (u_{1-α/2} + u_{1-β})² / (12 t (1-t) (p - 1/2)²)
pub fn noether_sample_size(p_star: f64, input: &PlanInput, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "allocation rate must be in (0, 1), got {t}"
        )));
    }
    if p_star == 0.5 {
        return Err(Error::NullEffect);
    }
    let u = input.u_alpha()? + input.u_beta()?;
    Ok(u * u / (12.0 * t * (1.0 - t) * (p_star - 0.5) * (p_star - 0.5)))
}

/// Analytic interval bracketing the optimal allocation rate t₀.
///
/// For 0 < σ₁ < σ₂ the bounds are I₁ = 1/(κ+1) and
/// I₂ = √z / (√z + u_{1-α/2}√q σ + u_{1-β} σ₂²) with q = p(1-p) and
/// z = (u_{1-α/2}√q σ + u_{1-β} σ₁²)(u_{1-α/2}√q σ + u_{1-β} σ₂²);
/// for σ₁ > σ₂ the same expressions bracket from the other side. When
/// the smaller variance is exactly zero, 1/(κ+1) degenerates and is
/// replaced by the root of the tangent minorant l(t).
pub fn allocation_interval(e: &Estimands, input: &PlanInput) -> Result<AllocationInterval> {
    if input.power <= 0.5 {
        return Err(Error::InvalidArgument(format!(
            "optimal allocation requires power > 0.5, got {}",
            input.power
        )));
    }
    let s1 = e.sigma2_1;
    let s2 = e.sigma2_2;
    if s1 == s2 {
        if s1 == 0.0 {
            return Err(Error::AllocationUndetermined);
        }
        return Ok(AllocationInterval {
            lower: 0.5,
            upper: 0.5,
            kind: IntervalKind::DegenerateHalf,
        });
    }
    let ua = input.u_alpha()?;
    let ub = input.u_beta()?;
    let sigma = e.sigma2_null.sqrt();
    let q = e.p_star * (1.0 - e.p_star);
    let base = ua * q.sqrt() * sigma;
    let z = (base + ub * s1) * (base + ub * s2);
    // i2 is the root of h(t); it lies on the same side of 1/2 as t0.
    let i2 = z.sqrt() / (z.sqrt() + base + ub * s2);

    // the analytic bounds can cross by an ulp when the interval is
    // nearly degenerate, so order them defensively
    let ordered = |a: f64, b: f64, kind: IntervalKind| AllocationInterval {
        lower: a.min(b),
        upper: a.max(b),
        kind,
    };
    if s1 > 0.0 && s2 > 0.0 {
        let kappa = (s2 / s1).sqrt();
        let i1 = 1.0 / (kappa + 1.0);
        return Ok(ordered(i1, i2, IntervalKind::Regular));
    }
    if s1 == 0.0 {
        // lower bound from the root of l(t)
        let i1_zero = ua * sigma / (2.0 * ua * sigma + ub * s2.sqrt());
        Ok(ordered(i1_zero, i2, IntervalKind::Sigma1Zero))
    } else {
        // mirrored analogue of the sigma1 = 0 case
        let i1_zero = 1.0 - ua * sigma / (2.0 * ua * sigma + ub * s1.sqrt());
        Ok(ordered(i2, i1_zero, IntervalKind::Sigma2Zero))
    }
}

/// Location and value of the unique minimum of N(t) on (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub t0: f64,
    pub n_raw: f64,
}

// Golden-section search for the minimum of f on [a, b].
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// The unique minimizer t₀ of N(t) on (0, 1), located by golden-section
/// search over the analytic allocation interval (expanded by a small
/// safety margin against rounding in the bounds themselves).
pub fn minimize_t(e: &Estimands, input: &PlanInput) -> Result<Minimum> {
    if e.p_star == 0.5 {
        return Err(Error::NullEffect);
    }
    if input.power <= 0.5 {
        return Err(Error::InvalidArgument(format!(
            "optimal allocation requires power > 0.5, got {}",
            input.power
        )));
    }
    if e.sigma2_1 == e.sigma2_2 {
        let n_raw = sample_size_at_t(e, input, 0.5)?;
        return Ok(Minimum { t0: 0.5, n_raw });
    }
    let interval = allocation_interval(e, input)?;
    const EPS: f64 = 1e-6;
    let lo = (interval.lower - 0.05).max(EPS);
    let hi = (interval.upper + 0.05).min(1.0 - EPS);
    let obj = |t: f64| sample_size_at_t(e, input, t).unwrap_or(f64::INFINITY);
    let (t0, n_raw) = golden_min(obj, lo, hi, 1e-10);
    Ok(Minimum { t0, n_raw })
}

// Conservative integer rounding: never below the unrounded requirement
// (modulo a 1e-9 guard against floating point noise), at least 1.
fn ceil_count(x: f64) -> u64 {
    ((x - 1e-9).ceil().max(1.0)) as u64
}

/// Full planning run: estimands from the two weighted samples, N at the
/// policy's allocation rate, conservative rounding to integer group
/// sizes.
pub fn plan(f1: &WeightedSample, f2: &WeightedSample, input: &PlanInput) -> Result<PlanResult> {
    let e = estimands_by_integrals(f1, f2)?;
    plan_with_estimands(&e, input)
}

/// Planning from already-computed estimands.
pub fn plan_with_estimands(e: &Estimands, input: &PlanInput) -> Result<PlanResult> {
    let (t, n_raw, interval) = match input.allocation {
        Allocation::Balanced => (0.5, sample_size_at_t(e, input, 0.5)?, None),
        Allocation::Fixed(t) => (t, sample_size_at_t(e, input, t)?, None),
        Allocation::Optimal => {
            let m = minimize_t(e, input)?;
            let interval = if e.sigma2_1 == e.sigma2_2 {
                AllocationInterval {
                    lower: 0.5,
                    upper: 0.5,
                    kind: IntervalKind::DegenerateHalf,
                }
            } else {
                allocation_interval(e, input)?
            };
            (m.t0, m.n_raw, Some(interval))
        }
    };
    let (n1, n2) = if matches!(input.allocation, Allocation::Balanced) {
        let n = ceil_count(n_raw / 2.0);
        (n, n)
    } else {
        (ceil_count(t * n_raw), ceil_count((1.0 - t) * n_raw))
    };
    Ok(PlanResult {
        t,
        n_raw,
        n1,
        n2,
        // the casts saturate for astronomically large N(t)
        n_total: n1.saturating_add(n2),
        interval,
        estimands: e.clone(),
    })
}

/// Check the mirror condition F₁(a + x) = 1 - F₂(a - x) with
/// a = (μ₁ + μ₂)/2. For discrete distributions this is equivalent to
/// P(X₁ = x) = P(X₂ = 2a - x) at every support point; on success the
/// constant `a` is returned and certifies that t₀ = 1/2.
pub fn check_mirror_symmetry(f1: &WeightedSample, f2: &WeightedSample, tol: f64) -> Option<f64> {
    let a = 0.5 * (f1.mean() + f2.mean());
    let m1 = f1.mass_function();
    let mut m2r: Vec<(f64, f64)> = f2
        .mass_function()
        .into_iter()
        .map(|(v, m)| (2.0 * a - v, m))
        .collect();
    m2r.sort_by(|x, y| x.0.total_cmp(&y.0));
    if m1.len() != m2r.len() {
        return None;
    }
    for ((v1, p1), (v2, p2)) in m1.iter().zip(&m2r) {
        if (v1 - v2).abs() > tol || (p1 - p2).abs() > tol {
            return None;
        }
    }
    Some(a)
}
