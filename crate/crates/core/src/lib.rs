//! Numerical and exact tools for Eisenstein series on modular curves, their
//! completed L-functions, Rogers-Zudilin style integral transforms and the
//! regulator pairing formula for products of two Eisenstein series.

pub mod bernoulli;
pub mod cli;
pub mod cyclotomic;
pub mod eisenstein;
pub mod error;
pub mod frac;
pub mod gamma;
pub mod lattice;
pub mod lfunc;
pub mod quad;
pub mod regulator;
pub mod qseries;
pub mod rz;
pub mod suites;
pub mod value;
pub mod zeta;

pub use error::{Error, Result};
pub use frac::{FractionModOne, Rational};
pub use value::ComplexValue;
