//! Critical points of finite Blaschke products: locations, orders, critical values and
//! the filtration times at which the corresponding components merge.

use num_complex::Complex64;

use crate::blaschke::{time_of_threshold, BlaschkeProduct};
use crate::error::{Error, Result};
use crate::hyperbolic::ComplexPoint;
use crate::poly::{find_roots, Polynomial};

pub use crate::poly::Root;

/// Default clustering/residual tolerance for root finding.
pub const DEFAULT_ROOT_TOL: f64 = 1e-10;

/// Roots within this Euclidean distance of a zero of `B` are classified as lying on it.
pub const AT_ZERO_DISTANCE: f64 = 1e-9;

/// Critical points this close to the unit circle are rejected.
pub const CONDITIONING_MARGIN: f64 = 1e-9;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// A zero of `B'` inside the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub location: ComplexPoint,
    /// Multiplicity of the zero of `B'` at `location`.
    pub order: u32,
    /// `|B(location)|`; exactly 0 for critical points on a zero of `B`.
    pub critical_value: f64,
    /// `ln((1 + v) / (1 - v))` for the critical value `v`; 0 when `at_zero`.
    pub death_time: f64,
    pub at_zero: bool,
}

fn linear(constant: ComplexPoint, slope: ComplexPoint) -> Polynomial {
    Polynomial::new(vec![constant, slope])
}

/// `P = N' D - N D'` with `N = prod (beta_k - z)^{m_k}` and `D = prod (1 - conj(beta_k) z)^{m_k}`.
///
/// Inside the disk `B' = phase * P / D^2`, so the disk roots of `P` are the critical points
/// of `B`; a zero of multiplicity `m` shows up as a root of multiplicity `m - 1`.
pub fn critical_numerator(b: &BlaschkeProduct) -> Polynomial {
    let mut n = Polynomial::from_real(&[1.0]);
    let mut d = Polynomial::from_real(&[1.0]);
    for beta in b.zero_list() {
        n = n.mul(&linear(beta, -ONE));
        d = d.mul(&linear(ONE, -beta.conj()));
    }
    let lhs = n.derivative().mul(&d);
    let rhs = n.mul(&d.derivative());
    let mut coefficients = lhs.sub_raw(&rhs);
    // The degree 2n - 1 terms cancel identically when no zero sits at the origin.
    if b.zeros().iter().all(|z| z.location != Complex64::new(0.0, 0.0)) && coefficients.len() == 2 * b.degree() {
        coefficients.pop();
    }
    Polynomial::new(coefficients)
}

/// `R = sum_k m_k (|beta_k|^2 - 1) prod_{j != k} (beta_j - z)(1 - conj(beta_j) z)` over the
/// distinct zeros, so that `B' = B * R / prod_j (beta_j - z)(1 - conj(beta_j) z)`.
///
/// `R` carries exactly the off-zero critical points; the zero-located ones are known in
/// closed form from the multiplicities.
fn off_zero_numerator(b: &BlaschkeProduct) -> Polynomial {
    let zeros = b.zeros();
    let mut total = vec![Complex64::new(0.0, 0.0); 2 * zeros.len().max(1) - 1];
    for (k, zk) in zeros.iter().enumerate() {
        let weight = zk.multiplicity as f64 * (zk.location.norm_sqr() - 1.0);
        let mut term = Polynomial::from_real(&[weight]);
        for (j, zj) in zeros.iter().enumerate() {
            if j != k {
                term = term.mul(&linear(zj.location, -ONE));
                term = term.mul(&linear(ONE, -zj.location.conj()));
            }
        }
        for (slot, c) in total.iter_mut().zip(term.coefficients()) {
            *slot += c;
        }
    }
    Polynomial::new(total)
}

/// Every critical point of `B` in the open disk, with orders summing to `deg B - 1`.
pub fn critical_points(b: &BlaschkeProduct, tol: f64) -> Result<Vec<CriticalPoint>> {
    let mut points = Vec::new();
    for zero in b.zeros().iter().filter(|z| z.multiplicity > 1) {
        points.push(CriticalPoint {
            location: zero.location,
            order: zero.multiplicity - 1,
            critical_value: 0.0,
            death_time: 0.0,
            at_zero: true,
        });
    }
    let expected = b.zeros().len() - 1;
    let mut found = 0usize;
    if expected > 0 {
        for root in find_roots(&off_zero_numerator(b), tol)? {
            let modulus = root.location.norm();
            if modulus >= 1.0 {
                continue;
            }
            if modulus >= 1.0 - CONDITIONING_MARGIN {
                return Err(Error::IllConditioned(format!(
                    "critical point {} lies within {CONDITIONING_MARGIN:e} of the unit circle",
                    root.location
                )));
            }
            found += root.multiplicity as usize;
            let at_zero = b
                .zeros()
                .iter()
                .any(|z| (z.location - root.location).norm() < AT_ZERO_DISTANCE);
            let critical_value = if at_zero { 0.0 } else { b.modulus_unchecked(root.location) };
            points.push(CriticalPoint {
                location: root.location,
                order: root.multiplicity,
                critical_value,
                death_time: if at_zero { 0.0 } else { time_of_threshold(critical_value) },
                at_zero,
            });
        }
    }
    if found != expected {
        return Err(Error::IllConditioned(format!(
            "found {found} off-zero critical points in the disk, expected {expected}"
        )));
    }
    Ok(points)
}

/// Critical point `c1 = (1 - sqrt(1 - w^2)) / w` and critical value `c1^2` of the
/// degree-two product `-z (w - z) / (1 - w z)`, whose zeros are at pseudo-hyperbolic
/// distance `w`.
pub fn order2_normal_form(w_modulus: f64) -> Result<(f64, f64)> {
    if !(w_modulus > 0.0 && w_modulus < 1.0) {
        return Err(Error::Domain(format!(
            "w = {w_modulus} not in (0, 1); w = 0 is a double zero without off-zero critical point"
        )));
    }
    // (1 - sqrt(1 - w^2)) / w rewritten as w / (1 + sqrt(1 - w^2)) to avoid cancellation.
    let c1 = w_modulus / (1.0 + (1.0 - w_modulus * w_modulus).sqrt());
    Ok((c1, c1 * c1))
}
