//! Grid checks of the level-set inclusions, zero counts and diameter decay.

use serde::Serialize;

use super::{build_grid, component_diameter, sublevel_components, GridFiltration};
use crate::blaschke::{sup_norm_diff, BlaschkeProduct, DEFAULT_BOUNDARY_SAMPLES};
use crate::error::{Error, Result};
use crate::hyperbolic::{rho_unchecked, ComplexPoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum InclusionViolation {
    /// `|B(z)| < eps` but `rho(z, zeros) >= eta`.
    SmallValueFarFromZeros { cell: usize },
    /// `rho(z, zeros) < eta` but `|B(z)| >= eta`.
    NearZerosLargeValue { cell: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HoffmanReport {
    /// Smallest `prod_{k != n} rho(a_k, a_n)` over the zeros.
    pub separation: f64,
    /// Pairs of zeros whose pseudo-hyperbolic `eta`-disks intersect.
    pub overlapping_disks: Vec<(usize, usize)>,
    pub violations: Vec<InclusionViolation>,
}

impl HoffmanReport {
    pub fn passed(&self) -> bool {
        self.overlapping_disks.is_empty() && self.violations.is_empty()
    }
}

/// Checks disjointness of the disks `D_rho(a, eta)` and the inclusions
/// `{|B| < eps} ⊆ {rho(z, Z(B)) < eta} ⊆ {|B| < eta}` on every grid cell, for a product
/// whose zeros satisfy `prod_{k != n} rho(a_k, a_n) >= delta`.
pub fn hoffman_check(b: &BlaschkeProduct, delta: f64, eta: f64, eps: f64, grid: &GridFiltration) -> Result<HoffmanReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Precondition(format!("0 < delta < 1 fails for delta = {delta}")));
    }
    let eta_max = delta / (1.0 + (1.0 - delta * delta).sqrt());
    // The bound is open; stay clear of it by a rounding margin.
    if !(eta > 0.0 && eta < eta_max - 1e-12) {
        return Err(Error::Precondition(format!(
            "0 < eta < (1 - sqrt(1 - delta^2))/delta = {eta_max} fails for eta = {eta}"
        )));
    }
    let eps_max = eta * (delta - eta) / (1.0 - delta * eta);
    if !(eps > 0.0 && eps < eps_max) {
        return Err(Error::Precondition(format!(
            "0 < eps < eta (delta - eta)/(1 - delta eta) = {eps_max} fails for eps = {eps}"
        )));
    }
    let zeros = b.zero_list();
    let separation = (0..zeros.len())
        .map(|n| {
            (0..zeros.len())
                .filter(|&k| k != n)
                .map(|k| rho_unchecked(zeros[k], zeros[n]))
                .product::<f64>()
        })
        .fold(1.0, f64::min);
    if separation < delta {
        return Err(Error::Precondition(format!(
            "zero separation prod rho(a_k, a_n) = {separation} < delta = {delta}"
        )));
    }
    // Two eta-disks meet iff their centres are closer than 2 eta / (1 + eta^2).
    let reach = 2.0 * eta / (1.0 + eta * eta);
    let mut overlapping_disks = Vec::new();
    for i in 0..zeros.len() {
        for j in i + 1..zeros.len() {
            if rho_unchecked(zeros[i], zeros[j]) < reach {
                overlapping_disks.push((i, j));
            }
        }
    }
    let mut violations = Vec::new();
    for (cell, (&z, &value)) in grid.centers().iter().zip(grid.values()).enumerate() {
        let distance = zeros.iter().map(|&a| rho_unchecked(a, z)).fold(f64::INFINITY, f64::min);
        if value < eps && distance >= eta {
            violations.push(InclusionViolation::SmallValueFarFromZeros { cell });
        }
        if distance < eta && value >= eta {
            violations.push(InclusionViolation::NearZerosLargeValue { cell });
        }
    }
    Ok(HoffmanReport { separation, overlapping_disks, violations })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentZeroCount {
    pub component: u32,
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoucheReport {
    pub sup_norm: f64,
    pub eta: f64,
    pub components: Vec<ComponentZeroCount>,
    /// Zeros (with multiplicity) whose cell is not in any component of `{|B1| < eta}`.
    pub unassigned_first: usize,
    pub unassigned_second: usize,
}

impl RoucheReport {
    pub fn passed(&self) -> bool {
        self.unassigned_first == 0 && self.unassigned_second == 0 && self.components.iter().all(|c| c.first == c.second)
    }
}

/// Counts, per component of `{|B1| < eta}` on `grid` (a grid of `B1`), the zeros of `B1`
/// and of `B2`. Refuses unless `||B1 - B2||_inf < eta`.
pub fn rouche_zero_count(b1: &BlaschkeProduct, b2: &BlaschkeProduct, eta: f64, grid: &GridFiltration) -> Result<RoucheReport> {
    let sup_norm = sup_norm_diff(b1, b2, DEFAULT_BOUNDARY_SAMPLES)?;
    if !(sup_norm < eta) {
        return Err(Error::Precondition(format!("||B1 - B2|| = {sup_norm} is not below eta = {eta}")));
    }
    let snapshot = sublevel_components(grid, eta)?;
    let mut counts: Vec<ComponentZeroCount> = (0..snapshot.component_count as u32)
        .map(|component| ComponentZeroCount { component, first: 0, second: 0 })
        .collect();
    let mut tally = |zeros: Vec<ComplexPoint>, second: bool| {
        let mut unassigned = 0;
        for z in zeros {
            match snapshot.component_of(grid, z) {
                Some(id) if second => counts[id as usize].second += 1,
                Some(id) => counts[id as usize].first += 1,
                None => unassigned += 1,
            }
        }
        unassigned
    };
    let unassigned_first = tally(b1.zero_list(), false);
    let unassigned_second = tally(b2.zero_list(), true);
    Ok(RoucheReport { sup_norm, eta, components: counts, unassigned_first, unassigned_second })
}

/// Grid estimates of `delta_{B, theta}` along a strictly decreasing list of thresholds.
pub fn diameter_decay_scan(b: &BlaschkeProduct, thetas: &[f64], resolution: usize) -> Result<Vec<(f64, f64)>> {
    if thetas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Domain("thresholds must be strictly decreasing".into()));
    }
    let grid = build_grid(b, resolution)?;
    thetas
        .iter()
        .map(|&theta| {
            let snapshot = sublevel_components(&grid, theta)?;
            let diameter = if snapshot.component_count == 0 { 0.0 } else { component_diameter(&snapshot, &grid)? };
            Ok((theta, diameter))
        })
        .collect()
}
