// Building and evaluating finite Blaschke products.

use blaschke_persistence::blaschke::{sup_norm_diff, t_of_theta, BlaschkeProduct};
use blaschke_persistence::hyperbolic::{ComplexPoint, MobiusTransform};

pub fn run_example() -> blaschke_persistence::Result<()> {
    let c = ComplexPoint::new;
    let b = BlaschkeProduct::from_simple_zeros(&[c(0.6, 0.0), c(-0.6, 0.0)])?;
    println!("B(0) = {}", b.eval(c(0.0, 0.0))?);
    println!("B'(0.3i)/B(0.3i) = {}", b.log_derivative(c(0.0, 0.3))?);

    // A double zero and a zero at the origin, with a non-trivial phase.
    let d = BlaschkeProduct::new(c(0.0, 1.0), [(c(0.5, 0.0), 2), (c(0.0, 0.0), 1)])?;
    println!("degree {} with zeros {:?}", d.degree(), d.zero_list());

    let phi = MobiusTransform::involution(c(0.1, -0.4))?;
    let composed = b.compose_mobius(&phi)?;
    println!("zeros of B o phi: {:?}", composed.zero_list());

    let nudged = BlaschkeProduct::from_simple_zeros(&[c(0.61, 0.0), c(-0.6, 0.0)])?;
    println!("sup |B - B~| on the circle = {:.6}", sup_norm_diff(&b, &nudged, 1 << 12)?);

    let time = t_of_theta(0.36)?;
    println!("theta 0.36 sits at filtration time t = {:.7}", time.t);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
