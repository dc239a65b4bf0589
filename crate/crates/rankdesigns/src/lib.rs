//! Exact-arithmetic toolkit for linear rank-metric codes over `F_q^{n x m}`
//! and the subspace designs held by their codeword supports.
//!
//! The crate computes rank weight distributions (by exhaustive enumeration and
//! through the rank-metric MacWilliams identities), duals, punctured and
//! shortened codes, checks the hypotheses of the rank-metric Assmus-Mattson
//! theorem, extracts the resulting designs over `F_q`, and verifies every
//! extracted design independently by brute force.
//!
//! See the `examples/` directory for one runnable example per capability, and
//! the `rankdesigns` binary for the file-based command line interface.

pub mod am;
pub mod cli;
pub mod codes;
pub mod designs;
pub mod fixtures;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod qcomb;

pub use gf::{ExtElem, ExtField, Field, FiniteField, FqElem};
pub use linalg::{basis_change_matrix, FqMatrix, Subspace};
pub use qcomb::{q_binomial, BigCount};
