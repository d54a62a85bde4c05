// Saving a grid to the binary dump format and reading it back.

use blaschke_persistence::blaschke::BlaschkeProduct;
use blaschke_persistence::hyperbolic::ComplexPoint;
use blaschke_persistence::levelset::{build_grid, read_grid_dump, sublevel_components, write_grid_dump};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = BlaschkeProduct::from_simple_zeros(&[ComplexPoint::new(0.5, 0.5), ComplexPoint::new(-0.4, 0.0)])?;
    let grid = build_grid(&b, 128)?;
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("grid.bin");
    write_grid_dump(&grid, std::io::BufWriter::new(std::fs::File::create(&path)?))?;
    println!("{} bytes written", std::fs::metadata(&path)?.len());

    let back = read_grid_dump(std::io::BufReader::new(std::fs::File::open(&path)?))?;
    assert_eq!(back.values(), grid.values());
    println!("components at 0.3: {}", sublevel_components(&back, 0.3)?.component_count);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
