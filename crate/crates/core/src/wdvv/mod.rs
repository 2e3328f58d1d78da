//! Associativity relations as exact quadratic polynomials, and the structural
//! identities among them.

pub mod counting;
pub mod identities;
pub mod poly;
pub mod relations;

pub use counting::{brute_count, count_formulas, BRUTE_COUNT_MAX};
pub use identities::{
    check_m_diagonal, check_three_symbols, check_two_out_of_three, five_symbols_combination, run_identity_suite,
    SuiteReport, Tally,
};
pub use poly::{NVar, QuadPoly};
pub use relations::{
    build_basis_relation, build_relation, canonical_tuple, canonical_tuples, enumerate_relations,
    enumerate_seed_relations, gamma_coefficient, linear_contribution, quadratic_contribution, relation_instances,
    relation_row, RelationId,
};
