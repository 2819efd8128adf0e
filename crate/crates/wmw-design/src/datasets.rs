//! Embedded example datasets with their effect constructions.
//!
//! Each fixture stores the second group both as literal data and as the
//! output of the effect generator applied to the first group; a test
//! asserts the two agree, so transcription errors in either place are
//! caught.

use crate::dist::beta_quantile;
use crate::error::{Error, Result};
use crate::planning::{Allocation, PlanInput};
use crate::synthetic::{
    from_frequency_table, ordinal_shift, quantile_grid, scale_effect, shift_effect,
    ShiftDirection, WeightedSample,
};

/// Number of seizures for 28 epilepsy-trial placebo subjects.
pub const SEIZURES_PLACEBO: [f64; 28] = [
    3.0, 3.0, 5.0, 4.0, 21.0, 7.0, 2.0, 12.0, 5.0, 0.0, 22.0, 4.0, 2.0, 12.0, 9.0, 5.0, 3.0,
    29.0, 5.0, 7.0, 4.0, 4.0, 5.0, 8.0, 25.0, 1.0, 2.0, 12.0,
];
/// Relevant alternative: a 50% seizure reduction, floored to counts.
pub const SEIZURES_ALTERNATIVE: [f64; 28] = [
    1.0, 1.0, 2.0, 2.0, 10.0, 3.0, 1.0, 6.0, 2.0, 0.0, 11.0, 2.0, 1.0, 6.0, 4.0, 2.0, 1.0, 14.0,
    2.0, 3.0, 2.0, 2.0, 2.0, 4.0, 12.0, 0.0, 1.0, 6.0,
];

/// Rats per nasal-mucosa defect score 0..3 for substance 1.
pub const NASAL_SUBSTANCE1: [f64; 4] = [64.0, 12.0, 4.0, 0.0];
/// Substance 2: 25% of the rats in scores 0..2 worsen by one score.
pub const NASAL_SUBSTANCE2: [f64; 4] = [48.0, 25.0, 6.0, 1.0];

/// Relative kidney weights (permille) for 8 male Wistar placebo rats.
pub const KIDNEY_PLACEBO: [f64; 8] = [6.62, 6.65, 5.78, 5.63, 6.05, 6.48, 5.50, 5.37];
/// Treatment: a location shift of 5% of the placebo mean, rounded to
/// two decimals as reported.
pub const KIDNEY_TREATMENT: [f64; 8] = [6.92, 6.95, 6.08, 5.93, 6.35, 6.78, 5.80, 5.67];

/// Albuminuria category probabilities (normal, micro, macro).
pub const ALBUMIN_CONTROL: [f64; 3] = [0.85, 0.10, 0.05];
pub const ALBUMIN_EXPERIMENTAL: [f64; 3] = [0.90, 0.075, 0.025];

/// Default grid size for the Beta(5,5)/Beta(3,2) quantile-grid example.
pub const BETA_GRID_DEFAULT_M: usize = 100_000;

/// A named two-group planning example with its default error rates.
#[derive(Debug, Clone)]
pub struct NamedExample {
    pub name: &'static str,
    pub f1: WeightedSample,
    pub f2: WeightedSample,
    pub input: PlanInput,
}

pub const EXAMPLE_NAMES: [&str; 5] = ["seizures", "nasal", "kidney", "albumin", "beta55_32"];

/// Load an embedded example by name.
pub fn load_example(name: &str) -> Result<NamedExample> {
    let defaults = |power: f64| PlanInput::new(0.05, power, Allocation::Balanced);
    match name {
        "seizures" => Ok(NamedExample {
            name: "seizures",
            f1: WeightedSample::from_values(&SEIZURES_PLACEBO)?,
            f2: WeightedSample::from_values(&SEIZURES_ALTERNATIVE)?,
            input: defaults(0.8)?,
        }),
        "nasal" => Ok(NamedExample {
            name: "nasal",
            f1: from_frequency_table(&NASAL_SUBSTANCE1)?,
            f2: from_frequency_table(&NASAL_SUBSTANCE2)?,
            input: defaults(0.8)?,
        }),
        "kidney" => Ok(NamedExample {
            name: "kidney",
            f1: WeightedSample::from_values(&KIDNEY_PLACEBO)?,
            f2: WeightedSample::from_values(&KIDNEY_TREATMENT)?,
            input: defaults(0.8)?,
        }),
        "albumin" => Ok(NamedExample {
            name: "albumin",
            f1: from_frequency_table(&ALBUMIN_CONTROL)?,
            f2: from_frequency_table(&ALBUMIN_EXPERIMENTAL)?,
            input: defaults(0.9)?,
        }),
        "beta55_32" => beta_grid_example(BETA_GRID_DEFAULT_M),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// Deterministic Beta(5,5) vs Beta(3,2) quantile-grid example with an
/// explicit grid size.
pub fn beta_grid_example(m: usize) -> Result<NamedExample> {
    let f1 = quantile_grid(|u| beta_quantile(5.0, 5.0, u).expect("u in (0,1)"), m)?;
    let f2 = quantile_grid(|u| beta_quantile(3.0, 2.0, u).expect("u in (0,1)"), m)?;
    Ok(NamedExample {
        name: "beta55_32",
        f1,
        f2,
        input: PlanInput::new(0.05, 0.8, Allocation::Balanced)?,
    })
}

/// Re-derive the stored alternative of each table fixture through its
/// effect generator.
pub fn derive_alternative(name: &str) -> Result<WeightedSample> {
    match name {
        "seizures" => {
            let base = WeightedSample::from_values(&SEIZURES_PLACEBO)?;
            scale_effect(&base, 0.5, true)
        }
        "nasal" => {
            let counts = ordinal_shift(&NASAL_SUBSTANCE1, 0.25, ShiftDirection::Up, &[0, 1, 2])?;
            from_frequency_table(&counts)
        }
        "kidney" => {
            let base = WeightedSample::from_values(&KIDNEY_PLACEBO)?;
            let delta = 0.05 * base.mean();
            shift_effect(&base, delta, Some(2))
        }
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_match_their_generators() {
        for name in ["seizures", "nasal", "kidney"] {
            let ex = load_example(name).unwrap();
            let derived = derive_alternative(name).unwrap();
            assert_eq!(ex.f2, derived, "fixture vs generator for {name}");
        }
    }

    #[test]
    fn seizures_shape() {
        let ex = load_example("seizures").unwrap();
        assert_eq!(ex.f1.len(), 28);
        let max1 = ex.f1.values().iter().cloned().fold(f64::MIN, f64::max);
        let max2 = ex.f2.values().iter().cloned().fold(f64::MIN, f64::max);
        assert_eq!(max1, 29.0);
        assert_eq!(max2, 14.0);
    }

    #[test]
    fn albumin_defaults_to_90_percent_power() {
        let ex = load_example("albumin").unwrap();
        assert_eq!(ex.input.power, 0.9);
    }

    #[test]
    fn kidney_shift_is_5_percent_of_mean() {
        let base = WeightedSample::from_values(&KIDNEY_PLACEBO).unwrap();
        assert!((0.05 * base.mean() - 0.3005).abs() < 1e-12);
    }

    #[test]
    fn unknown_name_errors() {
        let err = load_example("unknown").unwrap_err();
        assert!(err.to_string().contains("seizures"));
    }
}
