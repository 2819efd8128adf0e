//! Plan a two-arm study from prior data: take the epilepsy placebo
//! counts, posit a 50% seizure reduction (floored to whole counts) as
//! the relevant alternative, and size the trial.

use wmw_design::datasets::SEIZURES_PLACEBO;
use wmw_design::estimands::{estimands_by_integrals, estimands_by_ranks};
use wmw_design::planning::{noether_sample_size, plan, Allocation, PlanInput};
use wmw_design::synthetic::{scale_effect, WeightedSample};

fn main() {
    let placebo = WeightedSample::from_values(&SEIZURES_PLACEBO).unwrap();
    let treated = scale_effect(&placebo, 0.5, true).unwrap();

    // both computation paths give the same estimands on unit weights
    let e = estimands_by_integrals(&placebo, &treated).unwrap();
    let e_ranks = estimands_by_ranks(placebo.values(), treated.values()).unwrap();
    assert!((e.p_star - e_ranks.p_star).abs() < 1e-12);

    println!("relative effect p* = {:.4}", e.p_star);
    println!("sigma*  = {:.4}", e.sigma2_null.sqrt());
    println!("sigma1* = {:.4}", e.sigma2_1.sqrt());
    println!("sigma2* = {:.4}", e.sigma2_2.sqrt());

    let input = PlanInput::new(0.05, 0.8, Allocation::Balanced).unwrap();
    let result = plan(&placebo, &treated, &input).unwrap();
    println!(
        "balanced design: n1 = {}, n2 = {} (N(1/2) = {:.2})",
        result.n1, result.n2, result.n_raw
    );

    // the classical approximation ignores the alternative's variances
    // and overshoots here
    let noether = noether_sample_size(e.p_star, &input, 0.5).unwrap();
    println!(
        "Noether comparator: {}/{} per group",
        (noether / 2.0).ceil(),
        (noether / 2.0).ceil()
    );
}
