//! Level-set suites: the grid oracle against the analytic pipeline, and the perturbation
//! experiments behind the stability bound.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::{product_json, Tally, VerifyConfig};
use crate::barcode::{betti_at, theorem_a_barcode};
use crate::blaschke::{sup_norm_diff, t_of_theta, BlaschkeProduct};
use crate::critical::critical_points;
use crate::distance::{interleaving_distance_with_witness, theorem_b_bound, StabilityBound};
use crate::error::{Error, Result};
use crate::hyperbolic::{rho_unchecked, ComplexPoint, MobiusTransform};
use crate::levelset::{
    build_grid, component_diameter, component_diameters, diameter_decay_scan, euler_characteristic, grid_barcode,
    rouche_zero_count, sublevel_components, GridFiltration, RoucheReport,
};
use crate::sampling::{disk_point, random_product, seeded_rng, separated_points};

/// Largest pseudo-hyperbolic displacement of a zero in a perturbation experiment.
pub const MAX_PERTURBATION: f64 = 0.02;

/// Death-time tolerance of the grid oracle: 2e-2 at N = 1024, halving with each doubling.
pub fn grid_death_tolerance(resolution: usize) -> f64 {
    2e-2 * 1024.0 / resolution as f64
}

/// The fixed family used for oracle comparisons: 20 products of degree 2-6 with zeros in
/// `|z| < 0.8` and pairwise pseudo-hyperbolic separation at least 0.3.
pub fn oracle_products(seed: u64) -> Vec<BlaschkeProduct> {
    let mut rng = seeded_rng(seed);
    rng.set_stream(1 << 32);
    (0..20).map(|i| random_product(&mut rng, 2 + i % 5, 0.8, 0.3)).collect()
}

fn separated_product(rng: &mut ChaCha8Rng, max_degree: usize) -> BlaschkeProduct {
    let degree = rng.gen_range(2..=max_degree);
    random_product(rng, degree, 0.8, 0.3)
}

pub(super) fn grid_oracle(_: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for b in oracle_products(config.seed) {
        let analytic = theorem_a_barcode(&b, config.tol)?.finite_deaths();
        for resolution in [config.grid, 2 * config.grid] {
            let grid = grid_barcode(&build_grid(&b, resolution)?).finite_deaths();
            let error = if grid.len() == analytic.len() {
                grid.iter().zip(&analytic).map(|(g, a)| (g - a).abs()).fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            let tolerance = grid_death_tolerance(resolution);
            tally.check(error <= tolerance, || {
                json!({"product": product_json(&b), "resolution": resolution, "analytic": analytic, "grid": grid, "max_error": error, "tolerance": tolerance})
            });
        }
    }
    Ok(())
}

/// Euler characteristic equals the component count (no holes), and the annulus fixture is flagged.
pub(super) fn euler(_: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for b in oracle_products(config.seed) {
        let grid = build_grid(&b, config.grid)?;
        for k in 1..=16 {
            let theta = k as f64 / 17.0;
            let count = sublevel_components(&grid, theta)?.component_count as i64;
            let chi = euler_characteristic(&grid, theta)?;
            tally.check(chi == count, || json!({"product": product_json(&b), "theta": theta, "components": count, "euler": chi}));
        }
    }
    let annulus = GridFiltration::from_fn(config.grid.min(512), |z| ((z.norm() - 0.5).abs() * 2.0).min(0.99))?;
    let count = sublevel_components(&annulus, 0.2)?.component_count as i64;
    let chi = euler_characteristic(&annulus, 0.2)?;
    tally.check(count == 1 && chi == 0, || json!({"fixture": "annulus", "components": count, "euler": chi}));
    Ok(())
}

pub(super) fn merge_order(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..5 {
        let b = separated_product(rng, 6);
        let grid = build_grid(&b, config.grid)?;
        let barcode = grid_barcode(&grid);
        for k in 1..25 {
            let theta = k as f64 / 25.0;
            let count = sublevel_components(&grid, theta)?.component_count;
            let betti = betti_at(&barcode, t_of_theta(theta)?.t)?;
            tally.check(count == betti, || json!({"product": product_json(&b), "theta": theta, "components": count, "betti": betti}));
        }
    }
    Ok(())
}

/// Across a critical value of total order M the component count drops by exactly M.
pub(super) fn critical_merges(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    const STRADDLE: f64 = 5e-3;
    for _ in 0..10 {
        let b = separated_product(rng, 5);
        let grid = build_grid(&b, config.grid)?;
        let mut values: Vec<(f64, u32)> = critical_points(&b, config.tol)?
            .into_iter()
            .filter(|p| !p.at_zero)
            .map(|p| (p.critical_value, p.order))
            .collect();
        values.sort_by(|a, b| a.0.total_cmp(&b.0));
        // Critical values closer than two straddles cannot be told apart; group them.
        let mut clusters: Vec<(f64, f64, u32)> = Vec::new();
        for (v, order) in values {
            match clusters.last_mut() {
                Some(last) if v - last.1 < 2.0 * STRADDLE => {
                    last.1 = v;
                    last.2 += order;
                }
                _ => clusters.push((v, v, order)),
            }
        }
        for (lo, hi, order) in clusters {
            if lo - STRADDLE <= 0.0 || hi + STRADDLE >= 1.0 {
                continue;
            }
            let below = sublevel_components(&grid, lo - STRADDLE)?.component_count;
            let above = sublevel_components(&grid, hi + STRADDLE)?.component_count;
            tally.check(below >= above && below - above == order as usize, || {
                json!({"product": product_json(&b), "critical_values": [lo, hi], "order": order, "below": below, "above": above})
            });
        }
    }
    Ok(())
}

/// Every component contains a zero, and every zero lies in a component.
pub(super) fn zero_assignment(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..10 {
        let b = separated_product(rng, 6);
        let grid = build_grid(&b, config.grid)?;
        for k in 1..20 {
            let theta = k as f64 * 0.05;
            let snapshot = sublevel_components(&grid, theta)?;
            let mut hit = vec![false; snapshot.component_count];
            let mut unassigned = 0;
            for id in &snapshot.zero_assignment {
                match id {
                    Some(id) => hit[*id as usize] = true,
                    None => unassigned += 1,
                }
            }
            let ok = unassigned == 0 && hit.iter().all(|&h| h);
            tally.check(ok, || json!({"product": product_json(&b), "theta": theta, "assignment": snapshot.zero_assignment, "components": snapshot.component_count}));
        }
    }
    Ok(())
}

/// A component of diameter `delta < 1` at level `eta` holds at most `ln eta / ln delta + 1` zeros.
pub(super) fn zero_count_bound(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..10 {
        let b = separated_product(rng, 6);
        let grid = build_grid(&b, config.grid)?;
        for eta in [0.05, 0.1, 0.2, 0.3, 0.5] {
            let snapshot = sublevel_components(&grid, eta)?;
            let diameters = component_diameters(&snapshot, &grid);
            let mut counts = vec![0u32; snapshot.component_count];
            for (zero, id) in b.zeros().iter().zip(&snapshot.zero_assignment) {
                if let Some(id) = id {
                    counts[*id as usize] += zero.multiplicity;
                }
            }
            for (&delta, &count) in diameters.iter().zip(&counts) {
                if delta > 0.0 && delta < 1.0 {
                    let bound = eta.ln() / delta.ln() + 1.0;
                    tally.check(count as f64 <= bound, || json!({"product": product_json(&b), "eta": eta, "diameter": delta, "zeros": count, "bound": bound}));
                }
            }
        }
    }
    Ok(())
}

pub const DECAY_THRESHOLDS: [f64; 5] = [0.35, 0.2, 0.1, 0.05, 0.02];

pub(super) fn decay(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..10 {
        let b = separated_product(rng, 6);
        let scan = diameter_decay_scan(&b, &DECAY_THRESHOLDS, config.grid)?;
        tally.check(scan.windows(2).all(|w| w[1].1 < w[0].1), || json!({"product": product_json(&b), "scan": scan}));
    }
    Ok(())
}

/// One perturbation experiment: a product, its perturbation, the chosen level and the
/// measured quantities.
#[derive(Debug, Clone, Serialize)]
pub struct PerturbationOutcome {
    pub zeros: Vec<[f64; 2]>,
    pub perturbed: Vec<[f64; 2]>,
    /// Largest pseudo-hyperbolic displacement of a zero.
    pub displacement: f64,
    pub sup_norm: f64,
    pub eta: f64,
    pub bound: StabilityBound,
    pub distance: f64,
    pub rouche: RoucheReport,
    /// Draws rejected because the bound's preconditions failed.
    pub rejected: usize,
}

impl PerturbationOutcome {
    pub fn within_bound(&self) -> bool {
        self.distance <= self.bound.big_delta + 1e-9
    }
}

fn pair(z: ComplexPoint) -> [f64; 2] {
    [z.re, z.im]
}

/// Draws a product of degree 2-4 (zeros in `|z| < 0.8`, separation at least 0.6), moves each
/// zero by at most [`MAX_PERTURBATION`], picks `eta = max(1.25 ||B - B~||, 0.02)` and
/// measures `delta0 = min(delta_{B,eta}, delta_{B~,eta})` on grids. Draws whose measured
/// constants violate the bound's preconditions are rejected and redrawn.
pub fn perturbation_experiment(rng: &mut ChaCha8Rng, resolution: usize, samples: usize) -> Result<PerturbationOutcome> {
    let inv_e = (-1.0f64).exp();
    for rejected in 0..100 {
        let degree = rng.gen_range(2..=4);
        let zeros = separated_points(rng, degree, 0.8, 0.6);
        let perturbed = zeros
            .iter()
            .map(|&a| MobiusTransform::involution(a)?.apply(disk_point(rng, MAX_PERTURBATION)))
            .collect::<Result<Vec<_>>>()?;
        let b = BlaschkeProduct::from_simple_zeros(&zeros)?;
        let bt = BlaschkeProduct::from_simple_zeros(&perturbed)?;
        let sup_norm = sup_norm_diff(&b, &bt, samples)?;
        let eta = (1.25 * sup_norm).max(0.02);
        let grid = build_grid(&b, resolution)?;
        let measure = |g: &GridFiltration| -> Result<f64> { component_diameter(&sublevel_components(g, eta)?, g) };
        let delta0 = measure(&grid)?.min(measure(&build_grid(&bt, resolution)?)?);
        if !(delta0 > 0.0 && delta0 < inv_e) {
            continue;
        }
        let bound = match theorem_b_bound(delta0, eta) {
            Ok(bound) => bound,
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        };
        let distance = interleaving_distance_with_witness(&b, &bt, crate::critical::DEFAULT_ROOT_TOL)?.0.value;
        let rouche = rouche_zero_count(&b, &bt, eta, &grid)?;
        let displacement = zeros.iter().zip(&perturbed).map(|(&a, &c)| rho_unchecked(a, c)).fold(0.0, f64::max);
        return Ok(PerturbationOutcome {
            zeros: zeros.into_iter().map(pair).collect(),
            perturbed: perturbed.into_iter().map(pair).collect(),
            displacement,
            sup_norm,
            eta,
            bound,
            distance,
            rouche,
            rejected,
        });
    }
    Err(Error::Precondition("no admissible perturbation in 100 draws".into()))
}

pub(super) fn stability(rng: &mut ChaCha8Rng, config: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for _ in 0..50 {
        let outcome = perturbation_experiment(rng, config.grid, config.samples)?;
        tally.check(outcome.within_bound(), || json!(outcome));
        tally.check(outcome.rouche.passed(), || json!(outcome));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_halves_with_resolution() {
        assert_eq!(grid_death_tolerance(1024), 2e-2);
        assert_eq!(grid_death_tolerance(2048), 1e-2);
    }

    #[test]
    fn perturbation_experiment_is_admissible() {
        let mut rng = seeded_rng(5);
        for _ in 0..3 {
            let outcome = perturbation_experiment(&mut rng, 512, 4096).unwrap();
            assert!(outcome.displacement <= MAX_PERTURBATION);
            assert!(outcome.sup_norm < outcome.eta);
            assert!(outcome.bound.delta + 2.0 * outcome.eta < 1.0);
            assert!(outcome.within_bound() && outcome.rouche.passed(), "{outcome:?}");
        }
    }
}
