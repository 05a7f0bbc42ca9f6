//! Exact Minkowski volume and surface tensors of convex polytopes.
//!
//! Scalars live in `ℚ(√2, √3, …)[π^{±1}]` ([`algebra::ExactScalar`]); every
//! tensor entry is computed without floating point. Surface tensors come from
//! three engines (closed formula, derivative extraction, series extraction)
//! plus a definitional oracle that integrates facet moments directly.

pub mod adjoint;
pub mod algebra;
pub mod cli;
pub mod fixtures;
pub mod oracle;
pub mod polytope;
pub mod tensor;
