//! Monte-Carlo power estimation: resample with replacement from the two
//! synthetic distributions, run the asymptotic WMW test, count
//! rejections.
//!
//! Every replication gets its own counter-derived RNG stream, so the
//! result is identical for any parallelism degree and any platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::synthetic::WeightedSample;
use crate::wmwtest::wmw_asymptotic_test;

/// Walker/Vose alias table for O(1) weighted index sampling.
#[derive(Debug, Clone)]
pub struct AliasTable {
    prob: Vec<f64>,
    alias: Vec<usize>,
}

impl AliasTable {
    pub fn new(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptySample);
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidArgument(
                "alias table weights must be positive and finite".into(),
            ));
        }
        let n = weights.len();
        let total: f64 = weights.iter().sum();
        let mut scaled: Vec<f64> = weights.iter().map(|w| w * n as f64 / total).collect();
        let mut prob = vec![0.0; n];
        let mut alias = vec![0usize; n];
        let mut small: Vec<usize> = Vec::with_capacity(n);
        let mut large: Vec<usize> = Vec::with_capacity(n);
        for (i, &s) in scaled.iter().enumerate() {
            if s < 1.0 {
                small.push(i);
            } else {
                large.push(i);
            }
        }
        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            prob[s] = scaled[s];
            alias[s] = l;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            if scaled[l] < 1.0 {
                large.pop();
                small.push(l);
            }
        }
        for &i in large.iter().chain(&small) {
            prob[i] = 1.0;
            alias[i] = i;
        }
        Ok(Self { prob, alias })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let j = rng.random_range(0..self.prob.len());
        if rng.random::<f64>() < self.prob[j] {
            j
        } else {
            self.alias[j]
        }
    }
}

/// Rejection-rate estimate from a power simulation run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerResult {
    pub power_hat: f64,
    pub replications: u64,
    pub rejections: u64,
    pub seed: u64,
    /// Monte-Carlo standard error √(p̂(1-p̂)/R).
    pub mc_stderr: f64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

// Seed for the i-th replication stream.
fn stream_seed(seed: u64, replication: u64) -> u64 {
    splitmix64(seed ^ splitmix64(replication.wrapping_add(1)))
}

/// Estimate the power of the two-sided asymptotic WMW test at level
/// `alpha` for group sizes (n1, n2), drawing i.i.d. with probabilities
/// proportional to the sample weights. Deterministic given `seed`,
/// regardless of thread count.
pub fn simulate_power(
    f1: &WeightedSample,
    f2: &WeightedSample,
    n1: usize,
    n2: usize,
    alpha: f64,
    replications: u64,
    seed: u64,
) -> Result<PowerResult> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::InvalidArgument(format!(
            "group sizes must be at least 2, got {n1}/{n2}"
        )));
    }
    if replications == 0 {
        return Err(Error::InvalidArgument("need at least one replication".into()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "alpha must be in (0, 1), got {alpha}"
        )));
    }
    let t1 = AliasTable::new(f1.weights())?;
    let t2 = AliasTable::new(f2.weights())?;
    let v1 = f1.values();
    let v2 = f2.values();

    let rejections: u64 = (0..replications)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, i));
            let z1: Vec<f64> = (0..n1).map(|_| v1[t1.sample(&mut rng)]).collect();
            let z2: Vec<f64> = (0..n2).map(|_| v2[t2.sample(&mut rng)]).collect();
            let res = wmw_asymptotic_test(&z1, &z2, alpha).expect("nonempty groups");
            u64::from(res.reject)
        })
        .sum();

    let power_hat = rejections as f64 / replications as f64;
    Ok(PowerResult {
        power_hat,
        replications,
        rejections,
        seed,
        mc_stderr: (power_hat * (1.0 - power_hat) / replications as f64).sqrt(),
    })
}
