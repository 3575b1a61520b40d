pub mod algebra;
pub mod curve;
pub mod error;
pub mod field;
pub mod ladder;
pub mod matrix;
pub mod presentation;
pub mod rep;
pub mod skewpoly;
pub mod spec;
pub mod symmetry;

pub use error::{Error, Result};
pub use field::{Field, FieldDesc, Scalar};
