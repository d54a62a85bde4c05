//! Pseudo-hyperbolic geometry of the open unit disk.
//!
//! The pseudo-hyperbolic distance `rho(z1, z2) = |(z1 - z2) / (1 - conj(z1) z2)|`
//! is invariant under the disk automorphisms represented by [`MobiusTransform`].

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the complex plane. Disk operations require `|z| < 1`.
pub type ComplexPoint = Complex64;

/// Points at or beyond this modulus are treated as boundary points.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

pub(crate) fn check_finite(z: ComplexPoint, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} is not finite: {z}")))
    }
}

/// Rejects points that are not strictly inside the disk (with the boundary tolerance).
pub fn check_interior(z: ComplexPoint, what: &str) -> Result<()> {
    check_finite(z, what)?;
    if z.norm() >= 1.0 - BOUNDARY_TOLERANCE {
        return Err(Error::Domain(format!(
            "{what} = {z} has modulus {} >= 1 - {BOUNDARY_TOLERANCE:e}",
            z.norm()
        )));
    }
    Ok(())
}

/// Pseudo-hyperbolic distance between two disk points.
pub fn rho(z1: ComplexPoint, z2: ComplexPoint) -> Result<f64> {
    check_interior(z1, "z1")?;
    check_interior(z2, "z2")?;
    Ok(rho_unchecked(z1, z2))
}

/// [`rho`] without domain checks, for hot loops over points already known to be interior.
#[inline]
pub fn rho_unchecked(z1: ComplexPoint, z2: ComplexPoint) -> f64 {
    let num = z1 - z2;
    let den = Complex64::new(1.0, 0.0) - z1.conj() * z2;
    (num.norm() / den.norm()).min(1.0)
}

/// `true` iff `z` lies in the open pseudo-hyperbolic disk of the given radius about `center`.
pub fn hyperbolic_disk_contains(center: ComplexPoint, radius: f64, z: ComplexPoint) -> Result<bool> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::Domain(format!("radius {radius} not in (0, 1)")));
    }
    Ok(rho(center, z)? < radius)
}

/// Disk automorphism `z -> phase * (pivot - z) / (1 - conj(pivot) z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusTransform {
    pivot: ComplexPoint,
    phase: ComplexPoint,
}

impl MobiusTransform {
    pub fn new(pivot: ComplexPoint, phase: ComplexPoint) -> Result<Self> {
        check_interior(pivot, "pivot")?;
        check_finite(phase, "phase")?;
        if (phase.norm() - 1.0).abs() > BOUNDARY_TOLERANCE {
            return Err(Error::Domain(format!(
                "phase {phase} is not unimodular (|phase| = {})",
                phase.norm()
            )));
        }
        Ok(Self { pivot, phase })
    }

    /// The involution `z -> (a - z) / (1 - conj(a) z)`.
    pub fn involution(pivot: ComplexPoint) -> Result<Self> {
        Self::new(pivot, Complex64::new(1.0, 0.0))
    }

    pub fn pivot(&self) -> ComplexPoint {
        self.pivot
    }

    pub fn phase(&self) -> ComplexPoint {
        self.phase
    }

    /// Applies the transform to a point of the closed disk.
    pub fn apply(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        check_finite(z, "z")?;
        if z.norm() > 1.0 + BOUNDARY_TOLERANCE {
            return Err(Error::Domain(format!("|z| = {} > 1", z.norm())));
        }
        let den = Complex64::new(1.0, 0.0) - self.pivot.conj() * z;
        if den.norm() < 1e-15 {
            return Err(Error::Singularity(format!("|1 - conj(a) z| < 1e-15 at z = {z}")));
        }
        Ok(self.phase * (self.pivot - z) / den)
    }

    /// The inverse automorphism: pivot `phase * pivot`, phase `conj(phase)`.
    pub fn invert(&self) -> Self {
        Self {
            pivot: self.phase * self.pivot,
            phase: self.phase.conj(),
        }
    }
}

/// Free-function form of [`MobiusTransform::apply`].
pub fn mobius_apply(phi: &MobiusTransform, z: ComplexPoint) -> Result<ComplexPoint> {
    phi.apply(z)
}

/// Free-function form of [`MobiusTransform::invert`].
pub fn mobius_invert(phi: &MobiusTransform) -> MobiusTransform {
    phi.invert()
}
