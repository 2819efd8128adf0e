//! When the second distribution is the first reflected about a point,
//! the balanced design is provably optimal: t0 = 1/2 without any
//! search. `check_mirror_symmetry` certifies this from the data.

use wmw_design::estimands::estimands_by_integrals;
use wmw_design::planning::{check_mirror_symmetry, minimize_t, Allocation, PlanInput};
use wmw_design::synthetic::WeightedSample;

fn main() {
    let f1 = WeightedSample::new(vec![0.0, 1.0, 3.0], vec![0.2, 0.5, 0.3]).unwrap();
    // reflect about a = 2: the pair satisfies F1(a + x) = 1 - F2(a - x)
    let f2 = WeightedSample::new(vec![4.0, 3.0, 1.0], vec![0.2, 0.5, 0.3]).unwrap();

    match check_mirror_symmetry(&f1, &f2, 1e-9) {
        Some(a) => println!("mirror point found: a = {a} (so t0 = 1/2)"),
        None => println!("not a mirror pair"),
    }

    let e = estimands_by_integrals(&f1, &f2).unwrap();
    println!(
        "sigma1* = {:.6}, sigma2* = {:.6} (equal, as the symmetry demands)",
        e.sigma2_1.sqrt(),
        e.sigma2_2.sqrt()
    );

    let input = PlanInput::new(0.05, 0.8, Allocation::Optimal).unwrap();
    let m = minimize_t(&e, &input).unwrap();
    println!("search confirms: t0 = {:.6}, N(t0) = {:.2}", m.t0, m.n_raw);

    // a non-mirrored pair is rejected
    let f3 = WeightedSample::new(vec![0.0, 5.0], vec![0.9, 0.1]).unwrap();
    assert!(check_mirror_symmetry(&f1, &f3, 1e-9).is_none());
    println!("asymmetric pair correctly rejected");
}
