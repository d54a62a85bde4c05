//! Elder-rule sweep over cells in increasing value.

use rayon::prelude::*;
use serde::Serialize;

use super::{DisjointSets, GridFiltration};
use crate::barcode::{canonicalize, Bar, Barcode};
use crate::blaschke::time_of_threshold;

/// Components absorbed at one merge value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MergeEvent {
    pub theta_merge: f64,
    pub components_absorbed: u32,
}

/// Full output of the sweep, in threshold (`theta`) coordinates.
#[derive(Debug, Clone)]
pub struct GridSweep {
    /// `(birth, death)` thresholds of every component that died, before noise filtering.
    pub finite_pairs: Vec<(f64, f64)>,
    pub essential_birth: f64,
    /// Merge values, strictly increasing.
    pub merge_events: Vec<MergeEvent>,
    /// Births below this are clamped to 0 and bars shorter than it are dropped: `4/N`.
    pub noise_floor: f64,
}

impl GridSweep {
    /// Barcode in filtration time, with births below the noise floor clamped to 0 and bars
    /// of threshold persistence below the floor discarded.
    pub fn barcode(&self) -> Barcode {
        let clamp = |theta: f64| if theta < self.noise_floor { 0.0 } else { time_of_threshold(theta) };
        let mut bars = vec![Bar::infinite(clamp(self.essential_birth))];
        for &(birth, death) in &self.finite_pairs {
            if death - birth >= self.noise_floor {
                bars.push(Bar { birth: clamp(birth), death: time_of_threshold(death), multiplicity: 1 });
            }
        }
        canonicalize(bars).expect("sweep bars are ordered")
    }
}

/// Sweeps the cells in increasing `(value, cell index)` order. A cell with no active
/// neighbour starts a component; a cell touching several components merges them into the
/// oldest (earliest birth, ties by birth cell) and the others die at the cell's value.
pub fn grid_sweep(grid: &GridFiltration) -> GridSweep {
    let values = grid.values();
    let mut order: Vec<u32> = (0..grid.cell_count() as u32).collect();
    order.par_sort_unstable_by(|&a, &b| values[a as usize].total_cmp(&values[b as usize]).then(a.cmp(&b)));

    let mut sets = DisjointSets::new(grid.cell_count());
    let mut active = vec![false; grid.cell_count()];
    // Birth cell of the component rooted at each root.
    let mut birth_cell = vec![u32::MAX; grid.cell_count()];
    let mut finite_pairs = Vec::new();
    let mut merge_events: Vec<MergeEvent> = Vec::new();
    let mut essential = None;

    for &cell in &order {
        let cell = cell as usize;
        let value = values[cell];
        active[cell] = true;
        let mut roots: Vec<usize> = grid
            .neighbours(cell)
            .into_iter()
            .flatten()
            .filter(|&n| active[n])
            .map(|n| sets.find(n))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        if roots.is_empty() {
            birth_cell[cell] = cell as u32;
            if essential.is_none() {
                essential = Some(value);
            }
            continue;
        }
        // Oldest component first: (birth value, birth cell).
        roots.sort_by(|&a, &b| {
            let (ba, bb) = (birth_cell[a] as usize, birth_cell[b] as usize);
            values[ba].total_cmp(&values[bb]).then(ba.cmp(&bb))
        });
        let elder = roots[0];
        let elder_birth = birth_cell[elder];
        for &younger in &roots[1..] {
            finite_pairs.push((values[birth_cell[younger] as usize], value));
        }
        let mut root = elder;
        for &other in roots[1..].iter().chain(std::iter::once(&cell)) {
            if let Some(r) = sets.union(root, other) {
                root = r;
            }
        }
        birth_cell[root] = elder_birth;
        let absorbed = roots.len() as u32 - 1;
        if absorbed > 0 {
            match merge_events.last_mut() {
                Some(last) if last.theta_merge == value => last.components_absorbed += absorbed,
                _ => merge_events.push(MergeEvent { theta_merge: value, components_absorbed: absorbed }),
            }
        }
    }
    GridSweep {
        finite_pairs,
        essential_birth: essential.unwrap_or(0.0),
        merge_events,
        noise_floor: 4.0 / grid.resolution() as f64,
    }
}

/// Grid counterpart of the analytic barcode (see [`GridSweep::barcode`]).
pub fn grid_barcode(grid: &GridFiltration) -> Barcode {
    grid_sweep(grid).barcode()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcode::{betti_at, theorem_a_barcode};
    use crate::blaschke::{t_of_theta, BlaschkeProduct};
    use crate::critical::DEFAULT_ROOT_TOL;
    use crate::hyperbolic::ComplexPoint;
    use crate::levelset::{build_grid, sublevel_components};
    use crate::sampling::{random_product, seeded_rng};

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    #[test]
    fn symmetric_pair_grid_barcode() {
        let b = BlaschkeProduct::from_simple_zeros(&[c(0.6, 0.0), c(-0.6, 0.0)]).unwrap();
        let barcode = grid_barcode(&build_grid(&b, 1024).unwrap());
        assert_eq!(barcode.infinite_multiplicity(), 1);
        let deaths = barcode.finite_deaths();
        assert_eq!(deaths.len(), 1);
        assert!((deaths[0] - 2.125f64.ln()).abs() < 2e-2, "{deaths:?}");
        assert!(barcode.bars().iter().all(|b| b.birth == 0.0));
    }

    #[test]
    fn single_zero_has_no_finite_bars() {
        let b = BlaschkeProduct::from_simple_zeros(&[c(0.4, -0.3)]).unwrap();
        let barcode = grid_barcode(&build_grid(&b, 512).unwrap());
        assert_eq!(barcode.total_multiplicity(), 1);
    }

    #[test]
    fn degree_four_matches_analytic_deaths() {
        let mut rng = seeded_rng(71);
        let b = random_product(&mut rng, 4, 0.8, 0.4);
        let grid = grid_barcode(&build_grid(&b, 1024).unwrap()).finite_deaths();
        let analytic = theorem_a_barcode(&b, DEFAULT_ROOT_TOL).unwrap().finite_deaths();
        assert_eq!(grid.len(), 3);
        assert_eq!(analytic.len(), 3);
        for (g, a) in grid.iter().zip(&analytic) {
            assert!((g - a).abs() < 2e-2, "{grid:?} vs {analytic:?}");
        }
    }

    #[test]
    fn merge_bookkeeping_matches_component_counts() {
        let mut rng = seeded_rng(72);
        let b = random_product(&mut rng, 5, 0.85, 0.3);
        let grid = build_grid(&b, 512).unwrap();
        let sweep = grid_sweep(&grid);
        assert!(sweep.merge_events.windows(2).all(|w| w[0].theta_merge < w[1].theta_merge));
        let raw = canonicalize(
            std::iter::once(Bar::infinite(0.0)).chain(
                sweep.finite_pairs.iter().map(|&(b, d)| Bar { birth: time_of_threshold(b), death: time_of_threshold(d), multiplicity: 1 }),
            ),
        )
        .unwrap();
        let clean = sweep.barcode();
        for k in 1..40 {
            let theta = k as f64 / 40.0;
            let t = t_of_theta(theta).unwrap().t;
            let count = sublevel_components(&grid, theta).unwrap().component_count;
            assert_eq!(count, betti_at(&raw, t).unwrap(), "theta {theta}");
            assert_eq!(count, betti_at(&clean, t).unwrap(), "theta {theta}");
        }
    }
}
