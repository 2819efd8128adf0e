//! Sample-size planning for the two-sided Wilcoxon-Mann-Whitney test
//! from synthetic data.
//!
//! The planning inputs are two fixed distributions: prior information
//! for the reference group and a relevant alternative generated from it
//! by an interpretable effect (a percentage reduction, a location
//! shift, or a category shift). Treating both as fixed distributions,
//! the relative effect and all variances in the sample-size formula are
//! computed exactly from ranks or normalized-ECDF integrals; the total
//! sample size can then be minimized over the group-allocation rate,
//! with analytic bounds bracketing the minimizer. A Monte-Carlo power
//! simulation verifies planned sizes against the asymptotic WMW test.
//!
//! See the `examples/` directory for one runnable walk-through per
//! capability, or the `wmw-design` binary for the CLI.

pub mod cli;
pub mod datasets;
pub mod dist;
pub mod error;
pub mod estimands;
pub mod planning;
pub mod powersim;
pub mod ranking;
pub mod synthetic;
pub mod wmwtest;

pub use error::{Error, Result};
pub use estimands::{estimands_by_integrals, estimands_by_ranks, Estimands};
pub use planning::{
    allocation_interval, check_mirror_symmetry, minimize_t, noether_sample_size, plan,
    sample_size_at_t, Allocation, AllocationInterval, PlanInput, PlanResult,
};
pub use powersim::{simulate_power, PowerResult};
pub use synthetic::WeightedSample;
pub use wmwtest::wmw_asymptotic_test;
