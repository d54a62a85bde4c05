//! Binary grid dumps: magic `BPGRID01`, `N` and cell count as little-endian `u64`, then
//! the cell values as little-endian `f64` in row-major cell order.

use std::io::{self, Read, Write};

use super::GridFiltration;

pub const GRID_MAGIC: &[u8; 8] = b"BPGRID01";

pub fn write_grid_dump<W: Write>(grid: &GridFiltration, mut out: W) -> io::Result<()> {
    out.write_all(GRID_MAGIC)?;
    out.write_all(&(grid.resolution() as u64).to_le_bytes())?;
    out.write_all(&(grid.cell_count() as u64).to_le_bytes())?;
    for value in grid.values() {
        out.write_all(&value.to_le_bytes())?;
    }
    Ok(())
}

/// Reads a dump back; the zero list of the original product is not stored.
pub fn read_grid_dump<R: Read>(mut input: R) -> io::Result<GridFiltration> {
    let invalid = |msg: String| io::Error::new(io::ErrorKind::InvalidData, msg);
    let mut magic = [0u8; 8];
    input.read_exact(&mut magic)?;
    if &magic != GRID_MAGIC {
        return Err(invalid(format!("bad magic {magic:?}")));
    }
    let mut word = [0u8; 8];
    input.read_exact(&mut word)?;
    let resolution = u64::from_le_bytes(word) as usize;
    input.read_exact(&mut word)?;
    let count = u64::from_le_bytes(word) as usize;
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        input.read_exact(&mut word)?;
        values.push(f64::from_le_bytes(word));
    }
    GridFiltration::from_values(resolution, values, Vec::new()).map_err(|e| invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blaschke::BlaschkeProduct;
    use crate::hyperbolic::ComplexPoint;
    use crate::levelset::build_grid;

    #[test]
    fn dump_round_trip() {
        let b = BlaschkeProduct::from_simple_zeros(&[ComplexPoint::new(0.2, 0.5)]).unwrap();
        let grid = build_grid(&b, 64).unwrap();
        let mut bytes = Vec::new();
        write_grid_dump(&grid, &mut bytes).unwrap();
        assert_eq!(&bytes[..8], b"BPGRID01");
        assert_eq!(bytes.len(), 24 + 8 * grid.cell_count());
        let back = read_grid_dump(bytes.as_slice()).unwrap();
        assert_eq!(back.values(), grid.values());
        assert_eq!(back.centers(), grid.centers());
        bytes[0] = b'X';
        assert!(read_grid_dump(bytes.as_slice()).is_err());
        assert!(read_grid_dump(&bytes[..20]).is_err());
    }
}
