// Rasterized sublevel sets: components, Euler characteristic and the grid barcode.

use blaschke_persistence::barcode::theorem_a_barcode;
use blaschke_persistence::blaschke::BlaschkeProduct;
use blaschke_persistence::critical::DEFAULT_ROOT_TOL;
use blaschke_persistence::hyperbolic::ComplexPoint;
use blaschke_persistence::levelset::{build_grid, component_diameter, euler_characteristic, grid_sweep, sublevel_components};

pub fn run_example() -> blaschke_persistence::Result<()> {
    let c = ComplexPoint::new;
    let b = BlaschkeProduct::from_simple_zeros(&[c(0.6, 0.0), c(-0.6, 0.0), c(0.1, 0.65)])?;
    let grid = build_grid(&b, 512)?;
    println!("{} cells at N = {}", grid.cell_count(), grid.resolution());

    for theta in [0.05, 0.2, 0.35, 0.5, 0.8] {
        let snapshot = sublevel_components(&grid, theta)?;
        println!(
            "theta {theta}: {} components, chi = {}, delta ~ {:.4}, zeros in {:?}",
            snapshot.component_count,
            euler_characteristic(&grid, theta)?,
            component_diameter(&snapshot, &grid)?,
            snapshot.zero_assignment
        );
    }

    let sweep = grid_sweep(&grid);
    println!("merge events: {:?}", sweep.merge_events);
    println!("grid deaths     {:?}", sweep.barcode().finite_deaths());
    println!("analytic deaths {:?}", theorem_a_barcode(&b, DEFAULT_ROOT_TOL)?.finite_deaths());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
