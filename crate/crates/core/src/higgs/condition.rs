use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::linalg::{is_subspace, span_dim};
use crate::algebra::{GaussRat, P1Point, Vector};
use crate::error::{NahmError, Result};

use super::singular::coefficient_matrix;
use super::HiggsBundle;

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionWitness {
    pub point: GaussRat,
    pub holds: bool,
    pub lowest_weight: BigRational,
    /// `im R^r`, where `R` is the polar part.
    pub stable_image: Vec<Vector>,
    /// `F_1`, the part of the fiber with positive weight.
    pub positive_part: Vec<Vector>,
    pub message: String,
}

/// At every polar point: a positive lowest weight forces the polar part to
/// be invertible, and a zero lowest weight forces the positive-weight part
/// of the filtration to be the stable image of the polar part.
pub fn check_condition_main(h: &HiggsBundle) -> Result<(bool, Vec<ConditionWitness>)> {
    let n = h.rank;
    let mut out = Vec::new();
    for (p, np) in &h.polar.points {
        let loc = P1Point::Finite(p.clone());
        let pp = h
            .parabolic_at(&loc)
            .ok_or_else(|| NahmError::Input(format!("missing parabolic structure at {}", loc)))?;
        let r = coefficient_matrix(&h.theta, &loc, -(*np as i64));
        let stable = r.pow(n as u32).column_space();
        let lowest = pp.weights.first().cloned().unwrap_or_else(BigRational::zero);
        let positive: Vec<Vector> = if lowest.is_zero() { pp.step(1).to_vec() } else { pp.step(0).to_vec() };
        let (holds, message) = if !lowest.is_zero() {
            let kernel = n - stable.len();
            if kernel == 0 {
                (true, format!("lowest weight {} > 0 and the polar part is invertible", lowest))
            } else {
                (false, format!("lowest weight {} > 0 but the polar part has a {}-dimensional kernel", lowest, kernel))
            }
        } else {
            let equal = span_dim(n, &positive) == stable.len() && is_subspace(n, &stable, &positive);
            if equal {
                (true, "positive-weight part equals the stable image of the polar part".to_string())
            } else {
                (
                    false,
                    format!(
                        "positive-weight part has dimension {} but the stable image of the polar part has dimension {}{}",
                        span_dim(n, &positive),
                        stable.len(),
                        if span_dim(n, &positive) == stable.len() { " and they differ" } else { "" }
                    ),
                )
            }
        };
        out.push(ConditionWitness {
            point: p.clone(),
            holds,
            lowest_weight: lowest,
            stable_image: stable,
            positive_part: positive,
            message,
        });
    }
    Ok((out.iter().all(|w| w.holds), out))
}
