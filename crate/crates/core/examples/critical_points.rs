// Critical points of a product, their orders and death times.

use blaschke_persistence::blaschke::BlaschkeProduct;
use blaschke_persistence::critical::{critical_numerator, critical_points, order2_normal_form, DEFAULT_ROOT_TOL};
use blaschke_persistence::hyperbolic::ComplexPoint;
use blaschke_persistence::sampling::{random_product, seeded_rng};

pub fn run_example() -> blaschke_persistence::Result<()> {
    let c = ComplexPoint::new;
    let pair = BlaschkeProduct::from_simple_zeros(&[c(0.6, 0.0), c(-0.6, 0.0)])?;
    println!("numerator coefficients: {:?}", critical_numerator(&pair).coefficients());
    for p in critical_points(&pair, DEFAULT_ROOT_TOL)? {
        println!("w = {:.3}, order {}, |B(w)| = {:.6}, death t = {:.7}", p.location, p.order, p.critical_value, p.death_time);
    }
    println!("normal form for w = 15/17: {:?}", order2_normal_form(15.0 / 17.0)?);

    // Zeros of multiplicity m contribute critical points of order m - 1 on themselves.
    let mixed = BlaschkeProduct::new(c(1.0, 0.0), [(c(0.3, 0.1), 3), (c(-0.5, 0.2), 1)])?;
    for p in critical_points(&mixed, DEFAULT_ROOT_TOL)? {
        println!("at_zero = {:5}, order {}, location {:.4}", p.at_zero, p.order, p.location);
    }

    let mut rng = seeded_rng(3);
    let b = random_product(&mut rng, 6, 0.9, 0.1);
    let total: u32 = critical_points(&b, DEFAULT_ROOT_TOL)?.iter().map(|p| p.order).sum();
    println!("degree 6 product: orders sum to {total}");
    assert_eq!(total, 5);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
