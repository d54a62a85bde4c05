// The barcode of a product's sublevel-set filtration.

use blaschke_persistence::barcode::{betti_at, canonicalize, direct_sum, shift, theorem_a_barcode, Bar};
use blaschke_persistence::blaschke::BlaschkeProduct;
use blaschke_persistence::critical::DEFAULT_ROOT_TOL;
use blaschke_persistence::hyperbolic::ComplexPoint;

pub fn run_example() -> blaschke_persistence::Result<()> {
    let c = ComplexPoint::new;
    let b = BlaschkeProduct::from_simple_zeros(&[c(0.6, 0.0), c(-0.6, 0.0), c(0.0, 0.7)])?;
    let barcode = theorem_a_barcode(&b, DEFAULT_ROOT_TOL)?;
    for bar in barcode.bars() {
        println!("({}, {}] x{}", bar.birth, bar.death, bar.multiplicity);
    }
    for t in [0.1, 0.5, 1.0, 2.0, 5.0] {
        println!("dim V_{t} = {}", betti_at(&barcode, t)?);
    }
    println!("{}", serde_json::to_string(&barcode).unwrap());

    let extra = canonicalize([Bar::finite(0.0, 1.0)?, Bar::finite(0.0, 1.0)?])?;
    println!("direct sum: {:?}", direct_sum(&barcode, &extra).bars());
    println!("shifted by 0.25: {:?}", shift(&extra, 0.25).bars());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
