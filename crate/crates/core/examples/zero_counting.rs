// Separated zeros and level-set confinement, zero counts under perturbation, and the
// shrinking of level-set components as the threshold goes to 0.

use blaschke_persistence::blaschke::BlaschkeProduct;
use blaschke_persistence::hyperbolic::ComplexPoint;
use blaschke_persistence::levelset::{build_grid, diameter_decay_scan, hoffman_check, rouche_zero_count};

pub fn run_example() -> blaschke_persistence::Result<()> {
    let c = ComplexPoint::new;
    let b = BlaschkeProduct::from_simple_zeros(&[c(0.7, 0.0), c(-0.7, 0.0)])?;
    let grid = build_grid(&b, 512)?;
    let report = hoffman_check(&b, 0.8, 0.3, 0.15, &grid)?;
    println!("separation {:.4}, violations {}, passed {}", report.separation, report.violations.len(), report.passed());
    println!("eta too large: {}", hoffman_check(&b, 0.8, 0.5, 0.1, &grid).unwrap_err());

    let b1 = BlaschkeProduct::from_simple_zeros(&[c(0.6, 0.0), c(-0.6, 0.0)])?;
    let b2 = BlaschkeProduct::from_simple_zeros(&[c(0.61, 0.0), c(-0.6, 0.0)])?;
    let counts = rouche_zero_count(&b1, &b2, 0.2, &build_grid(&b1, 512)?)?;
    println!("||B1 - B2|| = {:.4}; per component: {:?}", counts.sup_norm, counts.components);

    for (theta, delta) in diameter_decay_scan(&b1, &[0.35, 0.2, 0.1, 0.05, 0.02], 512)? {
        println!("delta(theta = {theta}) ~ {delta:.4}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
