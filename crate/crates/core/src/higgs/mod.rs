//! Parabolic Higgs bundles on the projective line.

mod condition;
mod ledger;
mod singular;
mod validate;

pub use condition::{check_condition_main, ConditionWitness};
pub use ledger::{
    add_divisor, delete_divisor, ledger_of_e_d, ledger_of_e_p, parabolic_degree, parabolic_euler_char, LedgerEntry,
    Site, WeightLedger,
};
pub use singular::{eigenvalues, generalized_eigenspace, is_semisimple, singularity_data, InfinityBlock, PoleData, SingularityTable};
pub use validate::{validate, ValidationReport};

use num_rational::BigRational;

use crate::algebra::{GaussRat, Mat, P1Point, RatFunc, UPoly, Vector};

/// Finite polar points `p` with multiplicities `n_p`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolarDivisor {
    pub points: Vec<(GaussRat, u32)>,
}

impl PolarDivisor {
    pub fn new(points: Vec<(GaussRat, u32)>) -> Self {
        PolarDivisor { points }
    }

    pub fn degree(&self) -> u32 {
        self.points.iter().map(|(_, n)| n).sum()
    }

    pub fn multiplicity(&self, p: &GaussRat) -> u32 {
        self.points.iter().find(|(q, _)| q == p).map(|(_, n)| *n).unwrap_or(0)
    }

    /// `s_P(z) = prod (z - p)^{n_p}`.
    pub fn section(&self) -> UPoly {
        self.points.iter().fold(UPoly::one(), |acc, (p, n)| &acc * &UPoly::linear_root(p).pow(*n))
    }
}

/// Filtration `E_p = F_0 ⊋ F_1 ⊋ ... ⊋ F_{k-1} ⊋ 0` with weight `weights[j]`
/// on the jump `F_j / F_{j+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParabolicPoint {
    pub location: P1Point,
    pub filtration: Vec<Vec<Vector>>,
    pub weights: Vec<BigRational>,
}

impl ParabolicPoint {
    /// Trivial filtration with a single weight.
    pub fn trivial(location: P1Point, rank: usize, weight: BigRational) -> Self {
        let basis = Mat::identity(rank).columns();
        ParabolicPoint { location, filtration: vec![basis], weights: vec![weight] }
    }

    /// Dimension of each graded piece.
    pub fn multiplicities(&self, rank: usize) -> Vec<usize> {
        let dims: Vec<usize> = self.filtration.iter().map(|f| crate::algebra::linalg::span_dim(rank, f)).collect();
        (0..dims.len()).map(|j| dims[j] - dims.get(j + 1).copied().unwrap_or(0)).collect()
    }

    /// The subspace `F_j` (empty past the end).
    pub fn step(&self, j: usize) -> &[Vector] {
        self.filtration.get(j).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Weight of a vector: the weight of the deepest step containing it.
    pub fn weight_of(&self, rank: usize, v: &[crate::algebra::GaussRat]) -> Option<BigRational> {
        let mut w = None;
        for (j, f) in self.filtration.iter().enumerate() {
            if crate::algebra::linalg::contains(rank, f, v) {
                w = Some(self.weights[j].clone());
            }
        }
        w
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HiggsBundle {
    pub rank: usize,
    /// Splitting type `E = ⊕ O(d_i)`.
    pub twist_type: Vec<i64>,
    /// Matrix of `θ` on the affine chart in the global frame.
    pub theta: Vec<Vec<RatFunc>>,
    pub polar: PolarDivisor,
    pub parabolic: Vec<ParabolicPoint>,
}

impl HiggsBundle {
    pub fn degree(&self) -> i64 {
        self.twist_type.iter().sum()
    }

    pub fn parabolic_at(&self, p: &P1Point) -> Option<&ParabolicPoint> {
        self.parabolic.iter().find(|q| &q.location == p)
    }

    /// `θ` in the frame `z^{d_i} e_i`, which is regular at infinity.
    pub fn theta_at_infinity_frame(&self) -> Vec<Vec<RatFunc>> {
        let z = RatFunc::var();
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| &self.theta[i][j] * &z.pow((self.twist_type[j] - self.twist_type[i]) as i32))
                    .collect()
            })
            .collect()
    }

    /// `(E, θ) -> (E, c θ(a z))` style transforms used by the involution check:
    /// returns the bundle with Higgs field `-θ(-z)`, polar points and
    /// parabolic data relocated by `z -> -z`.
    pub fn reflected_negated(&self) -> HiggsBundle {
        let mz = RatFunc::var().scale(&GaussRat::from_int(-1));
        let theta = self.theta.iter().map(|row| row.iter().map(|f| -&f.compose(&mz)).collect()).collect();
        HiggsBundle {
            rank: self.rank,
            twist_type: self.twist_type.clone(),
            theta,
            polar: PolarDivisor::new(self.polar.points.iter().map(|(p, n)| (-p, *n)).collect()),
            parabolic: self
                .parabolic
                .iter()
                .map(|pp| {
                    let mut pp = ParabolicPoint { location: pp.location.negated(), ..pp.clone() };
                    if pp.location.is_infinite() {
                        // the frame z^{d_i} e_i picks up (-1)^{d_i}
                        let sign: Vec<GaussRat> =
                            self.twist_type.iter().map(|d| GaussRat::from_int(if d % 2 == 0 { 1 } else { -1 })).collect();
                        for step in pp.filtration.iter_mut() {
                            for v in step.iter_mut() {
                                for (x, s) in v.iter_mut().zip(&sign) {
                                    *x = &*x * s;
                                }
                            }
                        }
                    }
                    pp
                })
                .collect(),
        }
    }

    /// Conjugates `θ` by a constant invertible matrix and moves the filtrations along.
    pub fn gauge(&self, g: &Mat) -> Option<HiggsBundle> {
        let ginv = g.inverse()?;
        let n = self.rank;
        let mut theta = vec![vec![RatFunc::zero(); n]; n];
        for (i, row) in theta.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                let mut acc = RatFunc::zero();
                for k in 0..n {
                    for l in 0..n {
                        let c = g.get(i, k) * ginv.get(l, j);
                        if !c.is_zero() {
                            acc = &acc + &self.theta[k][l].scale(&c);
                        }
                    }
                }
                *entry = acc;
            }
        }
        let parabolic = self
            .parabolic
            .iter()
            .map(|pp| ParabolicPoint {
                location: pp.location.clone(),
                filtration: pp.filtration.iter().map(|f| f.iter().map(|v| g.apply(v)).collect()).collect(),
                weights: pp.weights.clone(),
            })
            .collect();
        Some(HiggsBundle { theta, parabolic, ..self.clone() })
    }
}
