// Pseudo-hyperbolic distance and disk automorphisms.

use blaschke_persistence::hyperbolic::{hyperbolic_disk_contains, rho, ComplexPoint, MobiusTransform};

pub fn run_example() -> blaschke_persistence::Result<()> {
    let (x, y) = (ComplexPoint::new(0.3, 0.0), ComplexPoint::new(-0.3, 0.0));
    let d = rho(x, y)?;
    println!("rho(0.3, -0.3) = {d:.6}");

    // phi(z) = (a - z)/(1 - conj(a) z) swaps 0 and a and preserves rho.
    let phi = MobiusTransform::involution(ComplexPoint::new(0.2, 0.5))?;
    let moved = rho(phi.apply(x)?, phi.apply(y)?)?;
    println!("after an automorphism: {moved:.6}");
    assert!((d - moved).abs() < 1e-12);

    let back = phi.invert().apply(phi.apply(x)?)?;
    assert!((back - x).norm() < 1e-12);

    println!("0.4 in D_rho(0, 0.5): {}", hyperbolic_disk_contains(ComplexPoint::new(0.0, 0.0), 0.5, ComplexPoint::new(0.4, 0.0))?);
    println!("rho(0.5, 1.0) -> {:?}", rho(ComplexPoint::new(0.5, 0.0), ComplexPoint::new(1.0, 0.0)).err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
