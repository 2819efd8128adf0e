//! Continuous distributions enter through deterministic quantile grids.
//! This sweeps alpha and power for Beta(5,5) vs Beta(3,2) and shows how
//! the optimal allocation rate t0 drifts away from 1/2.

use wmw_design::datasets::beta_grid_example;
use wmw_design::estimands::estimands_by_integrals;
use wmw_design::planning::{minimize_t, sample_size_at_t, Allocation, PlanInput};

fn main() {
    // 100k grid points per distribution; fully deterministic
    let ex = beta_grid_example(100_000).unwrap();
    let e = estimands_by_integrals(&ex.f1, &ex.f2).unwrap();
    println!("p* = {:.4}, kappa = {:.4}\n", e.p_star, e.kappa().unwrap());

    println!("alpha   t0      N(t0)    N(1/2)   (power 0.80)");
    for k in 1..=10 {
        let alpha = k as f64 / 100.0;
        let input = PlanInput::new(alpha, 0.8, Allocation::Optimal).unwrap();
        let m = minimize_t(&e, &input).unwrap();
        let half = sample_size_at_t(&e, &input, 0.5).unwrap();
        println!("{alpha:.2}    {:.4}  {:7.2}  {half:7.2}", m.t0, m.n_raw);
    }

    println!("\npower   t0      N(t0)    N(1/2)   (alpha 0.05)");
    for power in [0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95] {
        let input = PlanInput::new(0.05, power, Allocation::Optimal).unwrap();
        let m = minimize_t(&e, &input).unwrap();
        let half = sample_size_at_t(&e, &input, 0.5).unwrap();
        println!("{power:.2}    {:.4}  {:7.2}  {half:7.2}", m.t0, m.n_raw);
    }
}
