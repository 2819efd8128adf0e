//! Minimize the total sample size over the allocation rate t = n1/N.
//! Uses the albuminuria category probabilities, where the optimum is
//! visibly unbalanced.

use wmw_design::datasets::load_example;
use wmw_design::estimands::estimands_by_integrals;
use wmw_design::planning::{
    allocation_interval, plan, sample_size_at_t, Allocation, PlanInput,
};

fn main() {
    let ex = load_example("albumin").unwrap();
    let e = estimands_by_integrals(&ex.f1, &ex.f2).unwrap();
    println!("p* = {:.6}, kappa = {:.4}", e.p_star, e.kappa().unwrap());

    let input = PlanInput::new(ex.input.alpha, ex.input.power, Allocation::Optimal).unwrap();

    // analytic bounds bracket the optimum before any search runs
    let iv = allocation_interval(&e, &input).unwrap();
    println!("t0 bracketed by [{:.4}, {:.4}]", iv.lower, iv.upper);

    let result = plan(&ex.f1, &ex.f2, &input).unwrap();
    println!(
        "optimal:  t0 = {:.4}, n1 = {}, n2 = {}, N = {}",
        result.t, result.n1, result.n2, result.n_total
    );

    let balanced = plan(
        &ex.f1,
        &ex.f2,
        &PlanInput::new(ex.input.alpha, ex.input.power, Allocation::Balanced).unwrap(),
    )
    .unwrap();
    println!(
        "balanced: t  = 0.5000, n1 = {}, n2 = {}, N = {}",
        balanced.n1, balanced.n2, balanced.n_total
    );

    // N(t) rises on both sides of the optimum
    for t in [0.3, 0.4, result.t, 0.6, 0.7] {
        let n = sample_size_at_t(&e, &input, t).unwrap();
        println!("  N({t:.4}) = {n:.2}");
    }
}
