//! Graded index spaces, truncation windows, sparse shift operators and
//! residual utilities shared by every realization in the crate.

pub mod basis;
pub mod operator;
pub mod residual;
pub mod window;

pub use basis::{
    cartan_weyl_matrix, cartan_weyl_valid, conversion_factor, convert_basis, BasisConvention,
};
pub use operator::{commutator, BoxOp, MonomialSpace, ShiftDegree, ShiftOperator};
pub use residual::{
    casimir_su2, equal_on, interior_residual, interior_residual_with_margins, residual_on,
};
pub use window::{enumerate_basis, GradedIndex, GradedVector, TruncationWindow};
