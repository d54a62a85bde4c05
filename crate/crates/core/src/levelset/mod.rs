//! Rasterised sublevel-set filtration of `|B|` on the disk.
//!
//! This is an oracle independent of the critical-point pipeline: components of
//! `{|B| < theta}` are tracked on a square lattice with 4-connectivity and a union-find
//! sweep, which yields grid barcodes, component diameters, Euler characteristics and the
//! zero/component checks used to test the structural properties of level sets.

mod checks;
mod dump;
mod sweep;
mod union_find;

use rayon::prelude::*;

use crate::blaschke::{BlaschkeProduct, Zero};
use crate::error::{Error, Result};
use crate::hyperbolic::{rho_unchecked, ComplexPoint};

pub use checks::{
    diameter_decay_scan, hoffman_check, rouche_zero_count, ComponentZeroCount, HoffmanReport, InclusionViolation, RoucheReport,
};
pub use dump::{read_grid_dump, write_grid_dump, GRID_MAGIC};
pub use sweep::{grid_barcode, grid_sweep, GridSweep, MergeEvent};
pub use union_find::DisjointSets;

/// Smallest supported lattice resolution.
pub const MIN_RESOLUTION: usize = 64;

/// Maximum number of boundary cells per component used for diameter estimates.
pub const DIAMETER_SUBSAMPLE: usize = 2000;

const NO_CELL: u32 = u32::MAX;

/// Values of `|B|` at the centres of the lattice cells well inside the disk.
///
/// The lattice has `N x N` square cells of side `2/N` covering `[-1, 1]^2`; cell `(ix, iy)`
/// is centred at `(-1 + (ix + 1/2) 2/N, -1 + (iy + 1/2) 2/N)`. Only cells whose centre has
/// modulus `< 1 - 1.5/N` are kept, stored in row-major order (`iy` outer, `ix` inner).
#[derive(Debug, Clone)]
pub struct GridFiltration {
    resolution: usize,
    lattice: Vec<(u32, u32)>,
    centers: Vec<ComplexPoint>,
    values: Vec<f64>,
    index: Vec<u32>,
    zeros: Vec<Zero>,
}

impl GridFiltration {
    /// Margin keeping every included cell strictly inside the disk.
    pub fn margin(resolution: usize) -> f64 {
        1.5 / resolution as f64
    }

    fn layout(resolution: usize) -> Result<(Vec<(u32, u32)>, Vec<ComplexPoint>, Vec<u32>)> {
        if resolution < MIN_RESOLUTION {
            return Err(Error::Domain(format!("grid resolution {resolution} < {MIN_RESOLUTION}")));
        }
        let n = resolution;
        let h = 2.0 / n as f64;
        let limit = 1.0 - Self::margin(n);
        let mut lattice = Vec::new();
        let mut centers = Vec::new();
        let mut index = vec![NO_CELL; n * n];
        for iy in 0..n {
            let y = -1.0 + (iy as f64 + 0.5) * h;
            for ix in 0..n {
                let x = -1.0 + (ix as f64 + 0.5) * h;
                let z = ComplexPoint::new(x, y);
                if z.norm() < limit {
                    index[iy * n + ix] = centers.len() as u32;
                    lattice.push((ix as u32, iy as u32));
                    centers.push(z);
                }
            }
        }
        Ok((lattice, centers, index))
    }

    /// Grid of an arbitrary nonnegative function; used for synthetic fixtures.
    pub fn from_fn(resolution: usize, f: impl Fn(ComplexPoint) -> f64 + Sync) -> Result<Self> {
        let (lattice, centers, index) = Self::layout(resolution)?;
        let values = centers.par_iter().map(|&z| f(z)).collect();
        Ok(Self { resolution, lattice, centers, values, index, zeros: Vec::new() })
    }

    pub(crate) fn from_values(resolution: usize, values: Vec<f64>, zeros: Vec<Zero>) -> Result<Self> {
        let (lattice, centers, index) = Self::layout(resolution)?;
        if values.len() != centers.len() {
            return Err(Error::LengthMismatch { left: values.len(), right: centers.len() });
        }
        Ok(Self { resolution, lattice, centers, values, index, zeros })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn cell_count(&self) -> usize {
        self.values.len()
    }

    pub fn centers(&self) -> &[ComplexPoint] {
        &self.centers
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Distinct zeros of the sampled product (empty for synthetic grids).
    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    pub fn cell_side(&self) -> f64 {
        2.0 / self.resolution as f64
    }

    /// Lattice coordinates of a cell.
    pub fn lattice_position(&self, cell: usize) -> (usize, usize) {
        let (ix, iy) = self.lattice[cell];
        (ix as usize, iy as usize)
    }

    /// Cell at lattice position, if included.
    pub fn cell_at_lattice(&self, ix: isize, iy: isize) -> Option<usize> {
        let n = self.resolution as isize;
        if ix < 0 || iy < 0 || ix >= n || iy >= n {
            return None;
        }
        let id = self.index[(iy * n + ix) as usize];
        (id != NO_CELL).then_some(id as usize)
    }

    /// Included cell whose square contains `z`, if any.
    pub fn cell_containing(&self, z: ComplexPoint) -> Option<usize> {
        let h = self.cell_side();
        let ix = ((z.re + 1.0) / h).floor() as isize;
        let iy = ((z.im + 1.0) / h).floor() as isize;
        self.cell_at_lattice(ix, iy)
    }

    /// The four lattice neighbours of a cell; `None` for those outside the grid.
    pub fn neighbours(&self, cell: usize) -> [Option<usize>; 4] {
        let (ix, iy) = self.lattice[cell];
        let (ix, iy) = (ix as isize, iy as isize);
        [
            self.cell_at_lattice(ix - 1, iy),
            self.cell_at_lattice(ix + 1, iy),
            self.cell_at_lattice(ix, iy - 1),
            self.cell_at_lattice(ix, iy + 1),
        ]
    }
}

/// Samples `|B|` at every included cell centre of the `N x N` lattice.
pub fn build_grid(b: &BlaschkeProduct, resolution: usize) -> Result<GridFiltration> {
    let (lattice, centers, index) = GridFiltration::layout(resolution)?;
    let values = centers.par_iter().map(|&z| b.modulus_unchecked(z)).collect();
    Ok(GridFiltration { resolution, lattice, centers, values, index, zeros: b.zeros().to_vec() })
}

/// Components of `{|B| < theta}` on the grid.
#[derive(Debug, Clone)]
pub struct ComponentSnapshot {
    pub theta: f64,
    /// Component id per cell; `None` for cells with value `>= theta`.
    pub labels: Vec<Option<u32>>,
    pub component_count: usize,
    /// Component of the cell containing each distinct zero; `None` when that cell is
    /// inactive or outside the grid.
    pub zero_assignment: Vec<Option<u32>>,
}

impl ComponentSnapshot {
    /// Cells of each component, in row-major order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.component_count];
        for (cell, label) in self.labels.iter().enumerate() {
            if let Some(id) = label {
                members[*id as usize].push(cell);
            }
        }
        members
    }

    /// Component of the cell containing `z`.
    pub fn component_of(&self, grid: &GridFiltration, z: ComplexPoint) -> Option<u32> {
        grid.cell_containing(z).and_then(|cell| self.labels[cell])
    }
}

fn check_threshold(theta: f64) -> Result<()> {
    if theta > 0.0 && theta < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta = {theta} not in (0, 1)")))
    }
}

/// Union-find labelling of the active cells `value < theta` under 4-adjacency. Component
/// ids are assigned in order of each component's first cell.
pub fn sublevel_components(grid: &GridFiltration, theta: f64) -> Result<ComponentSnapshot> {
    check_threshold(theta)?;
    let active: Vec<bool> = grid.values.iter().map(|&v| v < theta).collect();
    let mut sets = DisjointSets::new(grid.cell_count());
    for cell in 0..grid.cell_count() {
        if !active[cell] {
            continue;
        }
        let [_, right, _, up] = grid.neighbours(cell);
        for other in [right, up].into_iter().flatten() {
            if active[other] {
                sets.union(cell, other);
            }
        }
    }
    let mut root_label = vec![NO_CELL; grid.cell_count()];
    let mut labels = vec![None; grid.cell_count()];
    let mut count = 0u32;
    for cell in 0..grid.cell_count() {
        if active[cell] {
            let root = sets.find(cell);
            if root_label[root] == NO_CELL {
                root_label[root] = count;
                count += 1;
            }
            labels[cell] = Some(root_label[root]);
        }
    }
    let zero_assignment = grid
        .zeros
        .iter()
        .map(|z| grid.cell_containing(z.location).and_then(|cell| labels[cell]))
        .collect();
    Ok(ComponentSnapshot { theta, labels, component_count: count as usize, zero_assignment })
}

/// Active cells with an inactive or missing 4-neighbour.
fn is_boundary_cell(grid: &GridFiltration, snapshot: &ComponentSnapshot, cell: usize) -> bool {
    grid.neighbours(cell)
        .iter()
        .any(|n| n.is_none_or(|other| snapshot.labels[other].is_none()))
}

/// Pseudo-hyperbolic diameter estimate of every component, from (subsampled) boundary cells.
pub fn component_diameters(snapshot: &ComponentSnapshot, grid: &GridFiltration) -> Vec<f64> {
    snapshot
        .members()
        .into_par_iter()
        .map(|cells| {
            let boundary: Vec<ComplexPoint> = cells
                .into_iter()
                .filter(|&c| is_boundary_cell(grid, snapshot, c))
                .map(|c| grid.centers[c])
                .collect();
            let stride = boundary.len().div_ceil(DIAMETER_SUBSAMPLE).max(1);
            let sample: Vec<ComplexPoint> = boundary.into_iter().step_by(stride).collect();
            let mut diameter: f64 = 0.0;
            for (i, &a) in sample.iter().enumerate() {
                for &b in &sample[i + 1..] {
                    diameter = diameter.max(rho_unchecked(a, b));
                }
            }
            diameter
        })
        .collect()
}

/// Largest component diameter: the grid estimate of `delta_{B, theta}`.
pub fn component_diameter(snapshot: &ComponentSnapshot, grid: &GridFiltration) -> Result<f64> {
    if snapshot.component_count == 0 {
        return Err(Error::Domain(format!("no active cells below theta = {}", snapshot.theta)));
    }
    Ok(component_diameters(snapshot, grid).into_iter().fold(0.0, f64::max))
}

/// `V - E + F` of the cubical complex whose vertices are active cells, edges are
/// 4-adjacent active pairs and squares are fully active 2x2 blocks. Its connectivity is the
/// 4-connectivity of the sublevel set, and each hole lowers it by one.
pub fn euler_characteristic(grid: &GridFiltration, theta: f64) -> Result<i64> {
    check_threshold(theta)?;
    let active = |cell: Option<usize>| cell.is_some_and(|c| grid.values[c] < theta);
    let (mut vertices, mut edges, mut squares) = (0i64, 0i64, 0i64);
    for cell in 0..grid.cell_count() {
        if grid.values[cell] >= theta {
            continue;
        }
        vertices += 1;
        let (ix, iy) = grid.lattice[cell];
        let (ix, iy) = (ix as isize, iy as isize);
        let right = active(grid.cell_at_lattice(ix + 1, iy));
        let up = active(grid.cell_at_lattice(ix, iy + 1));
        edges += right as i64 + up as i64;
        if right && up && active(grid.cell_at_lattice(ix + 1, iy + 1)) {
            squares += 1;
        }
    }
    Ok(vertices - edges + squares)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_product, seeded_rng};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im)
    }

    fn pm06() -> BlaschkeProduct {
        BlaschkeProduct::from_simple_zeros(&[c(0.6, 0.0), c(-0.6, 0.0)]).unwrap()
    }

    fn lattice_disk_count(n: usize) -> usize {
        let h = 2.0 / n as f64;
        let limit = 1.0 - 1.5 / n as f64;
        (0..n * n)
            .filter(|k| {
                let (x, y) = (-1.0 + ((k % n) as f64 + 0.5) * h, -1.0 + ((k / n) as f64 + 0.5) * h);
                (x * x + y * y).sqrt() < limit
            })
            .count()
    }

    #[test]
    fn grid_cells_and_values() {
        let minus_z = BlaschkeProduct::from_simple_zeros(&[c(0.0, 0.0)]).unwrap();
        let grid = build_grid(&minus_z, 64).unwrap();
        assert_eq!(grid.cell_count(), lattice_disk_count(64));
        let center = grid.cell_containing(c(1e-9, 1e-9)).unwrap();
        assert!(grid.values()[center] < 2.0 / 64.0);
        let doubled = build_grid(&minus_z, 128).unwrap();
        let ratio = doubled.cell_count() as f64 / grid.cell_count() as f64;
        assert!((ratio - 4.0).abs() < 0.2, "{ratio}");
        assert!(build_grid(&minus_z, 32).is_err());
        assert!(grid.centers().iter().all(|z| z.norm() < 1.0 - 1.5 / 64.0));
    }

    #[test]
    fn grid_values_match_evaluation() {
        let mut rng = seeded_rng(61);
        let b = random_product(&mut rng, 4, 0.9, 0.1);
        let grid = build_grid(&b, 256).unwrap();
        for cell in (0..grid.cell_count()).step_by(grid.cell_count() / 100) {
            let expected = b.eval(grid.centers()[cell]).unwrap().norm();
            assert_abs_diff_eq!(grid.values()[cell], expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn symmetric_pair_components() {
        let grid = build_grid(&pm06(), 512).unwrap();
        let low = sublevel_components(&grid, 0.1).unwrap();
        assert_eq!(low.component_count, 2);
        assert_ne!(low.zero_assignment[0], low.zero_assignment[1]);
        assert!(low.zero_assignment.iter().all(Option::is_some));
        let high = sublevel_components(&grid, 0.5).unwrap();
        assert_eq!(high.component_count, 1);
        assert_eq!(high.zero_assignment[0], high.zero_assignment[1]);
        assert_eq!(sublevel_components(&grid, 0.999999).unwrap().component_count, 1);
        assert!(sublevel_components(&grid, 1.0).is_err());
    }

    #[test]
    fn zero_below_grid_floor_is_unassigned() {
        let b = BlaschkeProduct::from_simple_zeros(&[c(0.013, 0.0)]).unwrap();
        let grid = build_grid(&b, 64).unwrap();
        let snapshot = sublevel_components(&grid, 1e-6).unwrap();
        assert_eq!(snapshot.zero_assignment, vec![None]);
    }

    #[test]
    fn centred_disk_diameter() {
        let minus_z = BlaschkeProduct::from_simple_zeros(&[c(0.0, 0.0)]).unwrap();
        let grid = build_grid(&minus_z, 512).unwrap();
        let d = component_diameter(&sublevel_components(&grid, 0.3).unwrap(), &grid).unwrap();
        assert_abs_diff_eq!(d, 2.0 * 0.3 / 1.09, epsilon = 0.01);
        let mut previous = 0.0;
        for k in 1..10 {
            let d = component_diameter(&sublevel_components(&grid, 0.1 * k as f64).unwrap(), &grid).unwrap();
            assert!(previous <= d + 0.01);
            previous = d;
        }
    }

    #[test]
    fn diameter_jumps_across_merge() {
        let grid = build_grid(&pm06(), 512).unwrap();
        let below = component_diameter(&sublevel_components(&grid, 0.35).unwrap(), &grid).unwrap();
        let above = component_diameter(&sublevel_components(&grid, 0.37).unwrap(), &grid).unwrap();
        assert!(below < above - 0.1, "{below} vs {above}");
    }

    #[test]
    fn euler_characteristic_counts_components() {
        let grid = build_grid(&pm06(), 512).unwrap();
        assert_eq!(euler_characteristic(&grid, 0.1).unwrap(), 2);
        assert_eq!(euler_characteristic(&grid, 0.5).unwrap(), 1);
        let mut rng = seeded_rng(62);
        let b = random_product(&mut rng, 5, 0.85, 0.3);
        let grid = build_grid(&b, 512).unwrap();
        for theta in [0.02, 0.05].into_iter().chain((1..16).map(|k| k as f64 / 16.0)) {
            let count = sublevel_components(&grid, theta).unwrap().component_count as i64;
            assert_eq!(euler_characteristic(&grid, theta).unwrap(), count, "theta {theta}");
        }
    }

    #[test]
    fn annulus_fixture_is_flagged() {
        let grid = GridFiltration::from_fn(256, |z| ((z.norm() - 0.5).abs() * 2.0).min(0.99)).unwrap();
        let snapshot = sublevel_components(&grid, 0.2).unwrap();
        assert_eq!(snapshot.component_count, 1);
        assert_eq!(euler_characteristic(&grid, 0.2).unwrap(), 0);
    }
}
