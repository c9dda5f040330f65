pub mod error;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod kernel;
pub mod staircase;
pub mod fit;
pub mod ops;
pub mod tables;
pub mod coefficients;
