//! Exact arithmetic over `Q(i)`: scalars, polynomials, rational functions,
//! bihomogeneous forms, determinants and root finding.

pub mod binary;
pub mod biweighted;
pub mod det;
pub mod gauss;
pub mod linalg;
pub mod mpoly;
pub mod point;
pub mod ratfunc;
pub mod rfpoly;
pub mod roots;
pub mod upoly;

pub use binary::BinaryForm;
pub use biweighted::{Axis, BiWeightedPoly, ChartSubstitution, Divisor, U, V, X, Y};
pub use det::{bareiss_det, char_poly_bareiss, char_poly_rf, char_poly_upoly, det_rf, det_rfpoly, ExactRing};
pub use gauss::{rat, GaussRat};
pub use linalg::{Mat, Vector};
pub use mpoly::MPoly;
pub use point::P1Point;
pub use ratfunc::RatFunc;
pub use rfpoly::RfPoly;
pub use roots::roots_in_field;
pub use upoly::UPoly;
