//! Seeded random sampling of disk points, automorphisms and products.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::barcode::{canonicalize, Bar, Barcode};
use crate::blaschke::BlaschkeProduct;
use crate::hyperbolic::{rho_unchecked, ComplexPoint, MobiusTransform};

/// Radius of the disk that property tests sample from.
pub const SAMPLE_RADIUS: f64 = 0.999;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform (area measure) point in the disk `|z| < radius`.
pub fn disk_point<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> ComplexPoint {
    let r = radius * rng.gen::<f64>().sqrt();
    let angle = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, angle)
}

pub fn unimodular<R: Rng + ?Sized>(rng: &mut R) -> ComplexPoint {
    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_mobius<R: Rng + ?Sized>(rng: &mut R, pivot_radius: f64) -> MobiusTransform {
    MobiusTransform::new(disk_point(rng, pivot_radius), unimodular(rng))
        .expect("sampled pivot lies inside the disk")
}

/// `count` points of `|z| < radius` with pairwise pseudo-hyperbolic distance at least
/// `min_separation`, by rejection.
pub fn separated_points<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    radius: f64,
    min_separation: f64,
) -> Vec<ComplexPoint> {
    let mut points: Vec<ComplexPoint> = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while points.len() < count {
        attempts += 1;
        if attempts > 100_000 {
            points.clear();
            attempts = 0;
        }
        let z = disk_point(rng, radius);
        if points.iter().all(|&p| rho_unchecked(p, z) >= min_separation) {
            points.push(z);
        }
    }
    points
}

/// Phase-one product with `degree` simple zeros drawn from `|z| < radius`.
pub fn random_product<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    radius: f64,
    min_separation: f64,
) -> BlaschkeProduct {
    let zeros = separated_points(rng, degree, radius, min_separation);
    BlaschkeProduct::from_simple_zeros(&zeros).expect("sampled zeros lie inside the disk")
}

/// Canonical barcode of `finite` bars and `infinite` infinite bars with endpoints on the
/// quarter grid, so that ties between candidate distances are common.
pub fn random_barcode<R: Rng + ?Sized>(rng: &mut R, finite: usize, infinite: usize) -> Barcode {
    let mut bars: Vec<Bar> = (0..finite)
        .map(|_| {
            let birth = (rng.gen_range(0.0..3.0f64) * 4.0).round() / 4.0;
            let length = (rng.gen_range(0.25..3.0f64) * 4.0).round() / 4.0;
            Bar::new(birth, birth + length.max(0.25), 1).unwrap()
        })
        .collect();
    bars.extend((0..infinite).map(|_| Bar::infinite((rng.gen_range(0.0..2.0f64) * 4.0).round() / 4.0)));
    canonicalize(bars).unwrap()
}

pub fn random_barcode_upto<R: Rng + ?Sized>(rng: &mut R, max_finite: usize, infinite: usize) -> Barcode {
    let finite = rng.gen_range(0..=max_finite);
    random_barcode(rng, finite, infinite)
}
