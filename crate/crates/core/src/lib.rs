//! Exact computations with integral group rings of finite abelian groups,
//! their finite modules and lattices, and the admissible-class monoid.

pub mod abelian;
pub mod arith;
pub mod cli;
pub mod error;
pub mod galois;
pub mod grouprings;
pub mod intmat;
pub mod lattices;
pub mod modules;
pub mod monoid;
pub mod spectrum;

pub use error::{Error, Result};
