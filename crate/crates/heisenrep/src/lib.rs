//! heisenrep — a finite-truncation workbench for Fock and non-Fock
//! oscillator representations.
//!
//! The crate builds concrete sparse realizations of two-mode oscillator
//! algebras on truncated graded spaces, together with the su(2),
//! sl(2,C) and sp(2,R) symmetry operators generated by their bilinears,
//! the invariant sesquilinear forms that pair them, the interlacing
//! kernel relating the graded realization to an extended two-variable
//! Fock realization, and the eight-generator involutive algebra with
//! its Dirac-matrix bilinears and u(1,1) restriction.
//!
//! Everything polynomial is verified with exact rational arithmetic: an
//! identity either holds entry-by-entry on the interior of the
//! truncation window or the check fails. Floating point enters only
//! where Gamma, Bessel or exponential factors do. The `suites` module
//! packages all checks behind a deterministic, machine-readable report.

pub mod core;
pub mod error;
pub mod forms;
pub mod h8;
pub mod interlace;
pub mod oscillators;
pub mod scalar;
pub mod special;
pub mod suites;
pub mod symmetry;

pub use crate::scalar::{parse_rational, rat, C64, CRat, Rat, SpinParameter};
