//! Supersymmetric LLT polynomials computed three ways (ribbon super tableaux,
//! integrable lattice models and Fock-space vertex operators), together with
//! exhaustive checkers for the Yang-Baxter equation and Cauchy identities.

pub mod cauchy;
pub mod cli;
pub mod error;
pub mod fock;
pub mod lattice;
pub mod poly;
pub mod rmatrix;
pub mod shapes;
pub mod suites;
pub mod tableaux;

pub use error::{Error, Result};
pub use poly::{MPoly, Monomial, VarId};
pub use shapes::{Partition, SkewShape};
