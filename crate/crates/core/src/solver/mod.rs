//! Reconstruction of the numbers `N(β;d)` by exact per-class linear solving,
//! and verification of complete tables.
//!
//! For fixed `β` every quadratic term of a relation only involves classes with
//! strictly smaller `⟨·,ω⟩`, so once those are known the relations are linear
//! in the unknowns `N(β;·)`.

pub mod linear;
pub mod reconstruct;
pub mod table;

pub use linear::{coefficient_rank, solve_system, solve_with_zero_frees, LinearSystem, Row, RowTag, SolveReport, SolveStatus, Witness};
pub use reconstruct::{
    assemble_system, check_seed_relations, fsr_residual, reconstruct, verify_table, FsrChecker, Halt, Policy,
    Reconstruction, SeedViolation, VerifyOutcome,
};
pub use table::{permute_table, rescale_table, BasisPermutation, SolutionTable};
