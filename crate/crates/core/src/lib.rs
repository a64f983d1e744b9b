//! Exact algebraic Nahm transform for parabolic Higgs bundles on the
//! projective line.

pub mod algebra;
pub mod birational;
pub mod error;
pub mod higgs;
pub mod model;
pub mod moduli;
pub mod parse;
pub mod spectral;
pub mod transform;

pub use error::{NahmError, Result};
