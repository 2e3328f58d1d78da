//! Exact-arithmetic workbench for the WDVV associativity equations of a graded
//! Gorenstein algebra: relation generation, reconstruction of the numbers
//! `N(β;d)` by per-class linear solving, verification, and identity checks.

pub mod algebra;
pub mod degrees;
pub mod dsl;
pub mod error;
pub mod linalg;
pub mod presets;
pub mod problem;
pub mod solver;
pub mod tableio;
pub mod wdvv;

pub use error::{Error, Result};
