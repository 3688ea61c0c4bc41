//! Exact Hochschild and Tate-Hochschild (co)homology of finite-dimensional
//! Frobenius algebras given by structure constants.

pub mod error;
pub mod exactla;
mod par;

pub use error::{Error, ErrorKind, Result};
pub mod algebra;
pub mod bimod;
pub mod corpus;
pub mod complex;
pub mod freemod;
pub mod barres;
pub mod tate;
pub mod products;
