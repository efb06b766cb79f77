//! Exact construction and verification of BFV differential graded Poisson
//! algebras for coisotropic zero sections of polynomial Poisson bundles.

pub mod algebra;
pub mod axioms;
pub mod bfv;
pub mod bracket;
pub mod connection;
pub mod error;
pub mod invariance;
pub mod linalg;
pub mod linfty;
pub mod sampling;
pub mod serial;
pub mod transfer;

pub use algebra::{parse_element, Element, Gen, Rational, Roster};
pub use error::{Error, Result};
