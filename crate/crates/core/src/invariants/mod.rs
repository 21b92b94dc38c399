//! Invariant subalgebras under tori, finite abelian groups and Lie algebra
//! actions on V, their associated graded comparison, commutants of
//! Heisenberg currents, and strong generation checks by explicit spans.

mod action;
mod commutant;
mod span;

pub use action::{
    dim_table, extend_action, gr_dim_table, gr_invariant_dim, invariant_basis, Character, Derivation, DimTable,
    GroupAction,
};
pub use commutant::{commutant_basis, heisenberg_current, lattice_generators, torus_currents};
pub use span::{span_check, Deficiency, SpanReport};
