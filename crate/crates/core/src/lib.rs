//! Exact Choquet-theoretic workbench for function spaces on finite compact sets.

pub mod boundary;
pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod gallery;
pub mod hustad;
pub mod interval;
pub mod linalg;
pub mod lp;
pub mod phases;
pub mod polytope;
pub mod report;
pub mod representation;
pub mod scalar;
pub mod settings;
pub mod suite;
pub mod space;
pub mod verdict;

pub use error::{Error, Result};
pub use scalar::{Field, Rational, Scalar};
pub use space::{FunctionSpace, Functional, Measure};
pub use verdict::{Status, Verdict, Witness};
