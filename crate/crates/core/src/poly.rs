//! Dense complex polynomials and a simultaneous (Aberth–Ehrlich) root finder.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hyperbolic::ComplexPoint;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const MAX_ITERATIONS: usize = 500;

/// Coefficients in ascending degree. Leading coefficients below `1e-14` relative to the
/// largest coefficient are trimmed on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coefficients: Vec<ComplexPoint>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<ComplexPoint>) -> Self {
        let scale = coefficients.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while coefficients.len() > 1 && coefficients.last().unwrap().norm() <= 1e-14 * scale {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(ZERO);
        }
        Self { coefficients }
    }

    pub fn from_real(coefficients: &[f64]) -> Self {
        Self::new(coefficients.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `prod (z - r)` over the given roots.
    pub fn from_roots(roots: &[ComplexPoint]) -> Self {
        let mut p = Self { coefficients: vec![Complex64::new(1.0, 0.0)] };
        for &r in roots {
            p = p.mul(&Self { coefficients: vec![-r, Complex64::new(1.0, 0.0)] });
        }
        p
    }

    pub fn coefficients(&self) -> &[ComplexPoint] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.len() == 1 && self.coefficients[0] == ZERO
    }

    pub fn eval(&self, z: ComplexPoint) -> ComplexPoint {
        self.coefficients.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` by Horner's scheme.
    pub fn eval_with_derivative(&self, z: ComplexPoint) -> (ComplexPoint, ComplexPoint) {
        let mut value = ZERO;
        let mut slope = ZERO;
        for &c in self.coefficients.iter().rev() {
            slope = slope * z + value;
            value = value * z + c;
        }
        (value, slope)
    }

    /// `sum |c_k| |z|^k`, the scale against which residuals at `z` are measured.
    pub fn magnitude_at(&self, z: ComplexPoint) -> f64 {
        let r = z.norm();
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn derivative(&self) -> Self {
        if self.coefficients.len() == 1 {
            return Self { coefficients: vec![ZERO] };
        }
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![ZERO; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            for (j, &b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coefficients: out }
    }

    /// Difference without trimming; callers trim via [`Polynomial::new`].
    pub(crate) fn sub_raw(&self, other: &Self) -> Vec<ComplexPoint> {
        let len = self.coefficients.len().max(other.coefficients.len());
        (0..len)
            .map(|k| {
                self.coefficients.get(k).copied().unwrap_or(ZERO)
                    - other.coefficients.get(k).copied().unwrap_or(ZERO)
            })
            .collect()
    }

    fn monic(&self) -> Vec<ComplexPoint> {
        let lead = *self.coefficients.last().unwrap();
        self.coefficients.iter().map(|&c| c / lead).collect()
    }
}

/// A root with its detected multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub location: ComplexPoint,
    pub multiplicity: u32,
}

/// All complex roots of `p`.
///
/// Roots are found simultaneously by Aberth–Ehrlich iteration, simple roots are polished
/// with Newton's method, and clusters whose diameter is below `tol^(1/size)` (scaled by
/// `max(1, |centroid|)`) are merged into one root at their centroid.
pub fn find_roots(p: &Polynomial, tol: f64) -> Result<Vec<Root>> {
    if !(tol > 1e-14 && tol < 1e-3) {
        return Err(Error::Domain(format!("tol = {tol:e} not in (1e-14, 1e-3)")));
    }
    let degree = p.degree();
    if degree == 0 {
        return Ok(Vec::new());
    }
    // Roots at the origin are exact; factor them out first.
    let leading_zeros = p.coefficients.iter().take_while(|c| **c == ZERO).count();
    let reduced = Polynomial::new(p.coefficients[leading_zeros..].to_vec());
    let mut estimates = aberth(&reduced, tol)?;
    estimates.extend(std::iter::repeat_n(ZERO, leading_zeros));

    let clusters = cluster(&estimates, tol);
    let mut roots = Vec::with_capacity(clusters.len());
    for members in clusters {
        let size = members.len();
        let centroid = members.iter().map(|&i| estimates[i]).sum::<Complex64>() / size as f64;
        // A root of multiplicity m is a simple root of the (m-1)-th derivative.
        let mut target = p.clone();
        for _ in 1..size {
            target = target.derivative();
        }
        let location = newton_polish(&target, centroid);
        roots.push(Root { location, multiplicity: size as u32 });
    }
    roots.sort_by(|a, b| {
        (a.location.norm(), a.location.arg())
            .partial_cmp(&(b.location.norm(), b.location.arg()))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(roots)
}

fn aberth(p: &Polynomial, tol: f64) -> Result<Vec<ComplexPoint>> {
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let monic = Polynomial { coefficients: p.monic() };
    if n == 1 {
        return Ok(vec![-monic.coefficients[0]]);
    }
    // Initial guesses on a circle of radius comparable to the root moduli (geometric mean
    // from the constant term, capped by the Cauchy bound), with an irrational angle offset.
    let cauchy = 1.0 + monic.coefficients[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mean = monic.coefficients[0].norm().powf(1.0 / n as f64);
    let radius = if mean > 0.0 { mean.min(cauchy) } else { 0.5 };
    let mut z: Vec<ComplexPoint> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let mut converged = vec![false; n];
    let mut worst = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        worst = 0.0;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (value, slope) = monic.eval_with_derivative(z[i]);
            let scale = monic.magnitude_at(z[i]);
            let residual = value.norm() / scale;
            if residual < f64::EPSILON * 4.0 {
                converged[i] = true;
                continue;
            }
            let newton = value / slope;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d == ZERO { ZERO } else { Complex64::new(1.0, 0.0) / d }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() > 0.0 && (newton / denom).is_finite() { newton / denom } else { newton };
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                converged[i] = true;
            }
            worst = worst.max(residual);
        }
        if converged.iter().all(|&c| c) {
            break;
        }
    }
    let worst_final = z
        .iter()
        .map(|&r| monic.eval(r).norm() / monic.magnitude_at(r))
        .fold(0.0, f64::max);
    if worst_final >= tol {
        return Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            residual: worst_final.max(if worst.is_finite() { 0.0 } else { worst }),
        });
    }
    Ok(z)
}

fn newton_polish(p: &Polynomial, mut z: ComplexPoint) -> ComplexPoint {
    for _ in 0..8 {
        let (value, slope) = p.eval_with_derivative(z);
        if slope == ZERO {
            break;
        }
        let step = value / slope;
        let candidate = z - step;
        if !candidate.is_finite() || p.eval(candidate).norm() > value.norm() {
            break;
        }
        z = candidate;
        if step.norm() <= f64::EPSILON * z.norm().max(1e-300) {
            break;
        }
    }
    z
}

/// Greedy agglomeration: merge two clusters while the union's diameter is within the
/// perturbation radius `tol^(1/size)` expected for a root of that multiplicity.
fn cluster(points: &[ComplexPoint], tol: f64) -> Vec<Vec<usize>> {
    let mut clusters: Vec<Vec<usize>> = (0..points.len()).map(|i| vec![i]).collect();
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let size = clusters[a].len() + clusters[b].len();
                let members = clusters[a].iter().chain(&clusters[b]);
                let centroid = members.clone().map(|&i| points[i]).sum::<Complex64>() / size as f64;
                let diameter = members
                    .clone()
                    .flat_map(|&i| members.clone().map(move |&j| (points[i] - points[j]).norm()))
                    .fold(0.0, f64::max);
                let radius = tol.powf(1.0 / size as f64) * centroid.norm().max(1.0);
                if diameter <= radius && best.is_none_or(|(_, _, d)| diameter < d) {
                    best = Some((a, b, diameter));
                }
            }
        }
        match best {
            Some((a, b, _)) => {
                let moved = clusters.remove(b);
                clusters[a].extend(moved);
            }
            None => return clusters,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{disk_point, seeded_rng};

    fn c(re: f64, im: f64) -> ComplexPoint {
        Complex64::new(re, im)
    }

    #[test]
    fn trims_negligible_leading_coefficients() {
        let p = Polynomial::from_real(&[1.0, 2.0, 1e-17]);
        assert_eq!(p.degree(), 1);
        assert!(Polynomial::from_real(&[0.0, 0.0]).is_zero());
    }

    #[test]
    fn simple_quadratic() {
        let roots = find_roots(&Polynomial::from_real(&[-0.25, 0.0, 1.0]), 1e-10).unwrap();
        assert_eq!(roots.len(), 2);
        let mut re: Vec<f64> = roots.iter().map(|r| r.location.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 0.5).abs() < 1e-14 && (re[1] - 0.5).abs() < 1e-14);
        assert!(roots.iter().all(|r| r.multiplicity == 1 && r.location.im.abs() < 1e-14));
    }

    #[test]
    fn exact_double_root() {
        let roots = find_roots(&Polynomial::from_real(&[0.09, -0.6, 1.0]), 1e-10).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert!((roots[0].location - c(0.3, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn triple_root_and_roots_at_origin() {
        let p = Polynomial::from_roots(&[c(0.2, 0.1), c(0.2, 0.1), c(0.2, 0.1), c(0.0, 0.0), c(0.0, 0.0), c(-0.7, 0.0)]);
        let roots = find_roots(&p, 1e-10).unwrap();
        let mult: Vec<u32> = roots.iter().map(|r| r.multiplicity).collect();
        assert_eq!(mult.iter().sum::<u32>(), 6);
        assert_eq!(roots.len(), 3, "{roots:?}");
        let triple = roots.iter().find(|r| r.multiplicity == 3).unwrap();
        assert!((triple.location - c(0.2, 0.1)).norm() < 1e-9);
        let origin = roots.iter().find(|r| r.multiplicity == 2).unwrap();
        assert_eq!(origin.location, c(0.0, 0.0));
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(find_roots(&Polynomial::from_real(&[-1.0]), 1e-10).unwrap().is_empty());
        assert!(find_roots(&Polynomial::from_real(&[1.0, 1.0]), 1.0).is_err());
    }

    #[test]
    fn planted_roots_recovered() {
        let mut rng = seeded_rng(21);
        for _ in 0..50 {
            let planted: Vec<ComplexPoint> = loop {
                let pts: Vec<_> = (0..8).map(|_| disk_point(&mut rng, 2.0)).collect();
                let separated = pts.iter().enumerate().all(|(i, a)| pts[i + 1..].iter().all(|b| (a - b).norm() > 0.05));
                if separated {
                    break pts;
                }
            };
            let roots = find_roots(&Polynomial::from_roots(&planted), 1e-10).unwrap();
            assert_eq!(roots.len(), 8);
            for r in &planted {
                let nearest = roots.iter().map(|x| (x.location - r).norm()).fold(f64::INFINITY, f64::min);
                assert!(nearest < 1e-8, "planted {r} missed by {nearest}");
            }
        }
    }

    #[test]
    fn residual_bound_holds_for_simple_roots() {
        let p = Polynomial::from_roots(&[c(0.1, 0.9), c(-1.3, 0.2), c(3.0, -2.0), c(0.5, 0.5)]);
        let tol = 1e-10;
        for r in find_roots(&p, tol).unwrap() {
            assert!(p.eval(r.location).norm() < tol * p.magnitude_at(r.location));
        }
    }
}
