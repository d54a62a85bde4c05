// Degree-two products: the closed-form distance against the full pipeline.

use blaschke_persistence::blaschke::BlaschkeProduct;
use blaschke_persistence::distance::{interleaving_distance, moduli_distance, order2_distance};
use blaschke_persistence::hyperbolic::{rho, ComplexPoint, MobiusTransform};

pub fn run_example() -> blaschke_persistence::Result<()> {
    let c = ComplexPoint::new;
    let first = [c(0.6, 0.0), c(-0.6, 0.0)];
    let second = [c(0.3, 0.0), c(-0.3, 0.0)];
    let (w1, w2) = (rho(first[0], first[1])?, rho(second[0], second[1])?);
    let closed = order2_distance(w1, w2)?;
    let pipeline = moduli_distance(&first, &second)?;
    println!("w1 = {w1:.6}, w2 = {w2:.6}");
    println!("closed form {closed:.9}, pipeline {pipeline:.9}, 0.5 ln(17/8) = {:.9}", 0.5 * (17.0f64 / 8.0).ln());

    // A double zero (w = 0) against the +-0.6 pair.
    println!("double zero vs +-0.6: {:.9}", order2_distance(0.0, w1)?);
    let double = BlaschkeProduct::new(c(1.0, 0.0), [(c(0.2, 0.2), 2)])?;
    println!("pipeline: {:.9}", interleaving_distance(&double, &BlaschkeProduct::from_simple_zeros(&first)?)?);

    // The distance only sees zero tuples up to disk automorphisms.
    let phi = MobiusTransform::new(c(0.4, -0.1), c(0.0, 1.0))?;
    let moved = [phi.apply(first[0])?, phi.apply(first[1])?];
    println!("moved pair: {:.2e}", moduli_distance(&first, &moved)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
