//! Finite Blaschke products and the threshold/filtration-time change of variable.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperbolic::{check_finite, check_interior, ComplexPoint, MobiusTransform, BOUNDARY_TOLERANCE};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Default number of boundary samples used by [`sup_norm_diff`].
pub const DEFAULT_BOUNDARY_SAMPLES: usize = 1 << 14;

/// A zero of a product together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub location: ComplexPoint,
    pub multiplicity: u32,
}

/// `B(z) = phase * prod_k ((beta_k - z) / (1 - conj(beta_k) z))^{m_k}`.
///
/// A zero at the origin contributes the factor `-z`; a `z^m` factor is represented as
/// `m` copies of the zero `0`. Zeros given at identical locations are merged.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    phase: ComplexPoint,
    zeros: Vec<Zero>,
}

impl BlaschkeProduct {
    pub fn new(phase: ComplexPoint, zeros: impl IntoIterator<Item = (ComplexPoint, u32)>) -> Result<Self> {
        check_finite(phase, "phase")?;
        if (phase.norm() - 1.0).abs() > BOUNDARY_TOLERANCE {
            return Err(Error::Domain(format!("phase {phase} is not unimodular")));
        }
        let mut merged: Vec<Zero> = Vec::new();
        for (i, (location, multiplicity)) in zeros.into_iter().enumerate() {
            check_interior(location, &format!("zero {i}"))?;
            if multiplicity == 0 {
                return Err(Error::Domain(format!("zero {i} has multiplicity 0")));
            }
            match merged.iter_mut().find(|z| z.location == location) {
                Some(existing) => existing.multiplicity += multiplicity,
                None => merged.push(Zero { location, multiplicity }),
            }
        }
        if merged.is_empty() {
            return Err(Error::Domain("a Blaschke product needs at least one zero".into()));
        }
        Ok(Self { phase, zeros: merged })
    }

    /// Phase-one product with each listed zero of multiplicity one.
    pub fn from_simple_zeros(zeros: &[ComplexPoint]) -> Result<Self> {
        Self::new(ONE, zeros.iter().map(|&z| (z, 1)))
    }

    pub fn phase(&self) -> ComplexPoint {
        self.phase
    }

    /// Distinct zeros with multiplicities, in insertion order.
    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    /// Total degree `n = sum of multiplicities`.
    pub fn degree(&self) -> usize {
        self.zeros.iter().map(|z| z.multiplicity as usize).sum()
    }

    /// Zero locations repeated according to multiplicity.
    pub fn zero_list(&self) -> Vec<ComplexPoint> {
        self.zeros
            .iter()
            .flat_map(|z| std::iter::repeat_n(z.location, z.multiplicity as usize))
            .collect()
    }

    pub fn with_phase(&self, phase: ComplexPoint) -> Result<Self> {
        Self::new(phase, self.zeros.iter().map(|z| (z.location, z.multiplicity)))
    }

    /// Evaluates the product on the closed disk.
    pub fn eval(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        check_finite(z, "z")?;
        if z.norm() > 1.0 + BOUNDARY_TOLERANCE {
            return Err(Error::Singularity(format!("|z| = {} > 1", z.norm())));
        }
        Ok(self.eval_unchecked(z))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, z: ComplexPoint) -> ComplexPoint {
        let mut value = self.phase;
        for zero in &self.zeros {
            let factor = (zero.location - z) / (ONE - zero.location.conj() * z);
            value *= factor.powu(zero.multiplicity);
        }
        value
    }

    /// `|B(z)|` without domain checks, for grid sweeps.
    #[inline]
    pub fn modulus_unchecked(&self, z: ComplexPoint) -> f64 {
        let mut value = 1.0;
        for zero in &self.zeros {
            let r = (zero.location - z).norm() / (ONE - zero.location.conj() * z).norm();
            value *= r.powi(zero.multiplicity as i32);
        }
        value
    }

    /// `B'(z) / B(z) = sum_k m_k (|beta_k|^2 - 1) / ((beta_k - z)(1 - conj(beta_k) z))`.
    pub fn log_derivative(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        check_interior(z, "z")?;
        let mut sum = Complex64::new(0.0, 0.0);
        for zero in &self.zeros {
            let beta = zero.location;
            if (beta - z).norm() < 1e-12 {
                return Err(Error::Pole(format!("{beta}")));
            }
            let m = zero.multiplicity as f64;
            sum += m * Complex64::new(beta.norm_sqr() - 1.0, 0.0)
                / ((beta - z) * (ONE - beta.conj() * z));
        }
        Ok(sum)
    }

    /// `B'(z)` by the product rule; finite at the zeros as well.
    pub fn derivative(&self, z: ComplexPoint) -> Result<ComplexPoint> {
        check_interior(z, "z")?;
        let factors: Vec<(ComplexPoint, ComplexPoint)> = self
            .zero_list()
            .into_iter()
            .map(|beta| {
                let den = ONE - beta.conj() * z;
                ((beta - z) / den, Complex64::new(beta.norm_sqr() - 1.0, 0.0) / (den * den))
            })
            .collect();
        let mut total = Complex64::new(0.0, 0.0);
        for k in 0..factors.len() {
            let mut term = factors[k].1;
            for (j, f) in factors.iter().enumerate() {
                if j != k {
                    term *= f.0;
                }
            }
            total += term;
        }
        Ok(self.phase * total)
    }

    /// The product `B o phi`, normalised so that its value at 0 equals `B(phi(0))`
    /// (phase one when that value vanishes).
    pub fn compose_mobius(&self, phi: &MobiusTransform) -> Result<Self> {
        let inverse = phi.invert();
        let mut zeros = Vec::with_capacity(self.zeros.len());
        for zero in &self.zeros {
            let pulled = inverse.apply(zero.location)?;
            check_interior(pulled, "transported zero")?;
            zeros.push((pulled, zero.multiplicity));
        }
        let unit = Self::new(ONE, zeros)?;
        let target = self.eval(phi.apply(Complex64::new(0.0, 0.0))?)?;
        let at_origin = unit.eval_unchecked(Complex64::new(0.0, 0.0));
        let phase = if target.norm() > 1e-300 && at_origin.norm() > 1e-300 {
            let p = target / at_origin;
            p / p.norm()
        } else {
            ONE
        };
        unit.with_phase(phase)
    }
}

/// Free-function form of [`BlaschkeProduct::eval`].
pub fn eval(b: &BlaschkeProduct, z: ComplexPoint) -> Result<ComplexPoint> {
    b.eval(z)
}

pub fn log_derivative(b: &BlaschkeProduct, z: ComplexPoint) -> Result<ComplexPoint> {
    b.log_derivative(z)
}

pub fn compose_mobius(b: &BlaschkeProduct, phi: &MobiusTransform) -> Result<BlaschkeProduct> {
    b.compose_mobius(phi)
}

/// Lower estimate of `sup_{|z|<=1} |B1(z) - B2(z)|`.
///
/// The maximum of `|B1 - B2|` over the closed disk is attained on the circle, which is
/// sampled at `samples` equispaced angles; the best sample is then refined by a
/// golden-section search over the neighbouring angular cell.
pub fn sup_norm_diff(b1: &BlaschkeProduct, b2: &BlaschkeProduct, samples: usize) -> Result<f64> {
    if samples < 256 {
        return Err(Error::Domain(format!("samples = {samples} < 256")));
    }
    let step = std::f64::consts::TAU / samples as f64;
    let gap = |angle: f64| {
        let z = Complex64::from_polar(1.0, angle);
        (b1.eval_unchecked(z) - b2.eval_unchecked(z)).norm()
    };
    let (best_index, best_value) = (0..samples)
        .into_par_iter()
        .map(|k| (k, gap(k as f64 * step)))
        .reduce(
            || (0, f64::NEG_INFINITY),
            |a, b| if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) { b } else { a },
        );
    let center = best_index as f64 * step;
    let refined = golden_section_max(&gap, center - step, center + step, 1e-10);
    Ok(best_value.max(refined))
}

fn golden_section_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}

/// A threshold `theta` in (0, 1) paired with its filtration time
/// `t = ln((1 + theta) / (1 - theta)) = 2 artanh(theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterTime {
    pub t: f64,
    pub theta: f64,
}

pub fn t_of_theta(theta: f64) -> Result<FilterTime> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!("theta = {theta} not in (0, 1)")));
    }
    Ok(FilterTime { t: 2.0 * theta.atanh(), theta })
}

pub fn theta_of_t(t: f64) -> Result<FilterTime> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("t = {t} not in (0, inf)")));
    }
    Ok(FilterTime { t, theta: (0.5 * t).tanh() })
}

/// `t(theta)` for any `theta` in [0, 1); `+inf` at 1.
#[inline]
pub fn time_of_threshold(theta: f64) -> f64 {
    2.0 * theta.atanh()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::MobiusTransform;
    use crate::sampling::{disk_point, random_mobius, random_product, seeded_rng, unimodular};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> ComplexPoint {
        Complex64::new(re, im)
    }

    fn pm06() -> BlaschkeProduct {
        BlaschkeProduct::from_simple_zeros(&[c(0.6, 0.0), c(-0.6, 0.0)]).unwrap()
    }

    #[test]
    fn construction_invariants() {
        assert!(BlaschkeProduct::new(c(1.0, 0.0), Vec::new()).is_err());
        assert!(BlaschkeProduct::new(c(2.0, 0.0), [(c(0.1, 0.0), 1)]).is_err());
        assert!(BlaschkeProduct::new(c(1.0, 0.0), [(c(1.0, 0.0), 1)]).is_err());
        assert!(BlaschkeProduct::new(c(1.0, 0.0), [(c(0.1, 0.0), 0)]).is_err());
        let b = BlaschkeProduct::new(c(1.0, 0.0), [(c(0.1, 0.0), 1), (c(0.1, 0.0), 2)]).unwrap();
        assert_eq!(b.zeros().len(), 1);
        assert_eq!(b.degree(), 3);
    }

    #[test]
    fn eval_examples() {
        let minus_z = BlaschkeProduct::from_simple_zeros(&[c(0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(minus_z.eval(c(0.5, 0.0)).unwrap().re, -0.5);
        let half = BlaschkeProduct::from_simple_zeros(&[c(0.5, 0.0)]).unwrap();
        assert_abs_diff_eq!(half.eval(c(0.0, 0.0)).unwrap().re, 0.5);
        let b = pm06();
        let at0 = b.eval(c(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(at0.re, -0.36, epsilon = 1e-15);
        assert_abs_diff_eq!(at0.im, 0.0);
        assert_eq!(b.eval(c(0.6, 0.0)).unwrap().norm(), 0.0);
        assert!(matches!(b.eval(c(1.1, 0.0)), Err(Error::Singularity(_))));
    }

    #[test]
    fn eval_unimodular_on_circle() {
        let mut rng = seeded_rng(3);
        let b = random_product(&mut rng, 5, 0.95, 0.0).with_phase(unimodular(&mut rng)).unwrap();
        for k in 0..64 {
            let z = Complex64::from_polar(1.0, 0.1 * k as f64);
            assert_abs_diff_eq!(b.eval(z).unwrap().norm(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn eval_is_multiplicative_over_factors() {
        let mut rng = seeded_rng(4);
        for _ in 0..20 {
            let b = random_product(&mut rng, 6, 0.99, 0.0);
            let z = disk_point(&mut rng, 0.999);
            let full = b.eval(z).unwrap();
            let product: Complex64 = b
                .zero_list()
                .iter()
                .map(|&beta| BlaschkeProduct::from_simple_zeros(&[beta]).unwrap().eval(z).unwrap())
                .product();
            assert!((full - product).norm() <= 1e-12 * product.norm().max(1e-300));
        }
    }

    #[test]
    fn maximum_modulus_respected() {
        let mut rng = seeded_rng(5);
        for _ in 0..20 {
            let b = random_product(&mut rng, 4, 0.999, 0.0);
            let boundary_max = (0..4096)
                .map(|k| b.eval(Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 4096.0)).unwrap().norm())
                .fold(0.0, f64::max);
            for _ in 0..50 {
                let z = disk_point(&mut rng, 0.999);
                assert!(b.eval(z).unwrap().norm() < boundary_max + 1e-9);
            }
        }
    }

    #[test]
    fn log_derivative_examples() {
        let minus_z = BlaschkeProduct::from_simple_zeros(&[c(0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(minus_z.log_derivative(c(0.3, 0.0)).unwrap().re, 1.0 / 0.3, epsilon = 1e-12);
        let ld = pm06().log_derivative(c(1e-4, 0.0)).unwrap();
        assert!(ld.norm() < 1e-3, "{ld}");
        assert!(matches!(pm06().log_derivative(c(0.6, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn log_derivative_matches_finite_differences() {
        let mut rng = seeded_rng(6);
        let h = 1e-6;
        for _ in 0..50 {
            let b = random_product(&mut rng, 5, 0.9, 0.05);
            let z = disk_point(&mut rng, 0.9);
            let value = b.eval(z).unwrap();
            let fd = (b.eval(z + h).unwrap() - b.eval(z - h).unwrap()) / (2.0 * h);
            let expected = fd / value;
            let got = b.log_derivative(z).unwrap();
            assert!((got - expected).norm() <= 1e-7 * expected.norm().max(1.0), "{got} vs {expected}");
            let derivative = b.derivative(z).unwrap();
            assert!((derivative - fd).norm() <= 1e-7 * fd.norm().max(1.0));
        }
    }

    #[test]
    fn compose_examples() {
        let half = BlaschkeProduct::from_simple_zeros(&[c(0.5, 0.0)]).unwrap();
        let phi = MobiusTransform::involution(c(0.5, 0.0)).unwrap();
        let composed = half.compose_mobius(&phi).unwrap();
        assert!(composed.zeros()[0].location.norm() < 1e-15);

        let neg = MobiusTransform::new(c(0.0, 0.0), c(-1.0, 0.0)).unwrap();
        let b = pm06();
        let back = b.compose_mobius(&neg).unwrap().compose_mobius(&neg.invert()).unwrap();
        let mut original: Vec<_> = b.zero_list();
        let mut restored: Vec<_> = back.zero_list();
        let key = |z: &Complex64| (z.re, z.im);
        original.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        restored.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        for (a, b) in original.iter().zip(&restored) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn compose_matches_modulus_of_composition() {
        let mut rng = seeded_rng(7);
        for _ in 0..20 {
            let b = BlaschkeProduct::new(
                unimodular(&mut rng),
                random_product(&mut rng, 4, 0.95, 0.0).zero_list().into_iter().enumerate().map(|(i, z)| (z, 1 + (i % 2) as u32)),
            )
            .unwrap();
            let phi = random_mobius(&mut rng, 0.9);
            let composed = b.compose_mobius(&phi).unwrap();
            assert_eq!(composed.degree(), b.degree());
            let mut m1: Vec<u32> = b.zeros().iter().map(|z| z.multiplicity).collect();
            let mut m2: Vec<u32> = composed.zeros().iter().map(|z| z.multiplicity).collect();
            m1.sort();
            m2.sort();
            assert_eq!(m1, m2);
            let mut worst: f64 = 0.0;
            for _ in 0..100 {
                let z = disk_point(&mut rng, 0.999);
                let lhs = composed.eval(z).unwrap();
                let rhs = b.eval(phi.apply(z).unwrap()).unwrap();
                worst = worst.max((lhs.norm() - rhs.norm()).abs());
                assert!((lhs - rhs).norm() < 1e-9);
            }
            assert!(worst < 1e-10);
        }
    }

    #[test]
    fn sup_norm_examples() {
        let b = pm06();
        assert_eq!(sup_norm_diff(&b, &b, 1024).unwrap(), 0.0);
        let minus_z = BlaschkeProduct::from_simple_zeros(&[c(0.0, 0.0)]).unwrap();
        let flipped = minus_z.with_phase(c(-1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(sup_norm_diff(&minus_z, &flipped, 256).unwrap(), 2.0, epsilon = 1e-12);
        assert!(sup_norm_diff(&b, &b, 100).is_err());
    }

    #[test]
    fn sup_norm_refinement_converges() {
        let b1 = pm06();
        let b2 = BlaschkeProduct::from_simple_zeros(&[c(0.61, 0.0), c(-0.6, 0.0)]).unwrap();
        let coarse = sup_norm_diff(&b1, &b2, 1 << 14).unwrap();
        let fine = sup_norm_diff(&b1, &b2, 1 << 15).unwrap();
        assert!((coarse - fine).abs() < 1e-6, "{coarse} vs {fine}");
        assert!(coarse > 0.0);
    }

    #[test]
    fn filter_time_examples() {
        let e = std::f64::consts::E;
        assert_abs_diff_eq!(t_of_theta((e - 1.0) / (e + 1.0)).unwrap().t, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(t_of_theta(0.36).unwrap().t, 2.125f64.ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(t_of_theta(0.36).unwrap().t, 0.7537718, epsilon = 1e-7);
        let small: Vec<f64> = [1e-2, 1e-4, 1e-8].iter().map(|&th| t_of_theta(th).unwrap().t).collect();
        assert!(small.windows(2).all(|w| w[1] < w[0]) && small[2] < 1e-7);
        assert!(t_of_theta(0.0).is_err() && t_of_theta(1.0).is_err());
        assert!(theta_of_t(0.0).is_err() && theta_of_t(-1.0).is_err());
    }

    #[test]
    fn filter_time_round_trip() {
        // Above t ~ 10 the threshold 1 - theta ~ 2e^-t is below double resolution of 1,
        // so the round trip is checked on (0, 10].
        let mut t = 1e-6;
        let mut previous = 0.0;
        while t <= 10.0 {
            let ft = theta_of_t(t).unwrap();
            assert!(ft.theta > previous);
            previous = ft.theta;
            let back = t_of_theta(ft.theta).unwrap().t;
            assert!((back - t).abs() <= 1e-12 * t.max(1.0), "{t} -> {back}");
            t *= 1.37;
        }

    }
}
