//! Ordered categorical data: build the alternative by moving a fraction
//! of each category one step up, then plan. Uses the nasal-mucosa
//! defect scores (0..3).

use wmw_design::datasets::NASAL_SUBSTANCE1;
use wmw_design::estimands::estimands_by_integrals;
use wmw_design::planning::{plan, Allocation, PlanInput};
use wmw_design::synthetic::{from_frequency_table, ordinal_shift, ShiftDirection};

fn main() {
    // 25% of the rats in scores 0..2 worsen by one score
    let shifted = ordinal_shift(&NASAL_SUBSTANCE1, 0.25, ShiftDirection::Up, &[0, 1, 2]).unwrap();
    println!("substance 1 counts: {NASAL_SUBSTANCE1:?}");
    println!("substance 2 counts: {shifted:?}");

    let f1 = from_frequency_table(&NASAL_SUBSTANCE1).unwrap();
    let f2 = from_frequency_table(&shifted).unwrap();
    let e = estimands_by_integrals(&f1, &f2).unwrap();
    println!("relative effect p* = {:.4} (heavy ties, handled exactly)", e.p_star);

    let input = PlanInput::new(0.05, 0.8, Allocation::Balanced).unwrap();
    let result = plan(&f1, &f2, &input).unwrap();
    println!("balanced design: n1 = {}, n2 = {}", result.n1, result.n2);

    let optimal = plan(
        &f1,
        &f2,
        &PlanInput::new(0.05, 0.8, Allocation::Optimal).unwrap(),
    )
    .unwrap();
    println!(
        "optimal design: t0 = {:.4}, n1 = {}, n2 = {} (same total N = {})",
        optimal.t, optimal.n1, optimal.n2, optimal.n_total
    );
}
