//! Exact computation of Casimir invariants of Lie algebras, their
//! decomposition under Inönü–Wigner contractions along a reduction chain,
//! and the construction of commuting labelling operators in the universal
//! enveloping algebra.

pub mod algebra;
pub mod builtins;
pub mod contraction;
pub mod enveloping;
pub mod error;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod mlp;
pub mod poly;
pub mod scalar;
pub mod sparse;

pub use algebra::{check_chain, ChainReport, ChainSpec, JacobiReport, LieAlgebra};
pub use contraction::{contract, decompose_casimir, mlp_counts, MLPCounts};
pub use enveloping::{poisson_bracket, Enveloping, UEElement, UEWord};
pub use error::{Error, Result};
pub use invariants::{count_invariants, is_invariant, is_subgroup_scalar, solve_invariants_degree, MatrixTemplate};
pub use linalg::Matrix;
pub use mlp::{jacobian_independent, solve, CasimirSource, MLPReport, SolveOptions};
pub use poly::{parse_poly, BiDegree, Decomposition, Monomial, Poly};
pub use scalar::{Rational, Scalar};
