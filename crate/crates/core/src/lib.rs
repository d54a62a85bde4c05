//! Persistence of the sublevel sets `{|B| < theta}` of finite Blaschke products.
//!
//! The analytic pipeline goes product → critical points → barcode → interleaving
//! distance. A rasterized level-set oracle recomputes the same barcodes from
//! a grid, independently of the analytic pipeline.

pub mod barcode;
pub mod blaschke;
pub mod cli;
pub mod critical;
pub mod distance;
pub mod error;
pub mod hyperbolic;
pub mod levelset;
pub mod poly;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
