// SVG plots of a barcode and of a level-set scan.

use blaschke_persistence::barcode::theorem_a_barcode;
use blaschke_persistence::blaschke::BlaschkeProduct;
use blaschke_persistence::cli::svg::{barcode_svg, scan_svg};
use blaschke_persistence::critical::DEFAULT_ROOT_TOL;
use blaschke_persistence::hyperbolic::ComplexPoint;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = ComplexPoint::new;
    let b = BlaschkeProduct::from_simple_zeros(&[c(0.6, 0.0), c(-0.6, 0.0), c(0.0, 0.5), c(0.2, -0.7)])?;
    let dir = std::env::temp_dir().join("blaschke-pm-plots");
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("barcode.svg"), barcode_svg(&theorem_a_barcode(&b, DEFAULT_ROOT_TOL)?))?;
    std::fs::write(dir.join("scan.svg"), scan_svg(&b, &[0.1, 0.3, 0.5], 96))?;
    println!("plots written to {}", dir.display());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
