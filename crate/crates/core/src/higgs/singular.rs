use crate::algebra::{roots_in_field, GaussRat, Mat, P1Point, Vector};
use crate::error::{NahmError, Result};

use super::HiggsBundle;

/// Most singular coefficient of `θ` at a finite polar point.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleData {
    pub point: GaussRat,
    pub order: u32,
    /// Coefficient of `(z - p)^{-order}`; the residue when `order = 1`.
    pub leading: Mat,
    pub eigenvalues: Vec<(GaussRat, usize)>,
    pub rank: usize,
    pub nilpotent: bool,
    pub semisimple: bool,
}

/// Generalized eigenspace of the leading term at infinity, with the
/// compressed first-order term `B_l = P_l B |_{V_l}`.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinityBlock {
    pub eigenvalue: GaussRat,
    pub multiplicity: usize,
    pub basis: Vec<Vector>,
    pub complement: Vec<Vector>,
    pub first_order: Mat,
    pub first_order_eigenvalues: Vec<(GaussRat, usize)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityTable {
    pub poles: Vec<PoleData>,
    /// `A = θ(∞)` in the frame regular at infinity.
    pub leading_at_infinity: Mat,
    /// Coefficient `B` of `1/z` at infinity.
    pub first_order_at_infinity: Mat,
    pub blocks: Vec<InfinityBlock>,
}

impl SingularityTable {
    pub fn pole(&self, p: &GaussRat) -> Option<&PoleData> {
        self.poles.iter().find(|d| &d.point == p)
    }

    pub fn block(&self, xi: &GaussRat) -> Option<&InfinityBlock> {
        self.blocks.iter().find(|b| &b.eigenvalue == xi)
    }
}

/// Eigenvalues in `Q(i)` with algebraic multiplicity.
pub fn eigenvalues(m: &Mat, what: &str) -> Result<Vec<(GaussRat, usize)>> {
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    let (roots, rest) = roots_in_field(&m.char_poly());
    if rest.degree().unwrap_or(0) > 0 {
        return Err(NahmError::Representability(format!(
            "eigenvalues of {} are roots of {} (not in Q(i))",
            what,
            rest.render("t")
        )));
    }
    Ok(roots)
}

pub fn is_semisimple(m: &Mat, eig: &[(GaussRat, usize)]) -> bool {
    let n = m.rows();
    eig.iter().all(|(l, k)| n - m.sub(&Mat::identity(n).scale(l)).rank() == *k)
}

/// Coefficient matrix of `(t)^k` in the Laurent expansions of the entries.
pub(crate) fn coefficient_matrix(theta: &[Vec<crate::algebra::RatFunc>], p: &P1Point, k: i64) -> Mat {
    Mat::from_rows(theta.iter().map(|row| row.iter().map(|f| f.laurent(p, k, 1).remove(0)).collect()).collect())
}

/// `(ker (A - λ)^m, im (A - λ)^m)`.
pub fn generalized_eigenspace(a: &Mat, lambda: &GaussRat, mult: usize) -> (Vec<Vector>, Vec<Vector>) {
    let n = a.rows();
    let shifted = a.sub(&Mat::identity(n).scale(lambda)).pow(mult as u32);
    (shifted.kernel(), shifted.column_space())
}

pub fn singularity_data(h: &HiggsBundle) -> Result<SingularityTable> {
    let mut poles = Vec::new();
    for (p, order) in &h.polar.points {
        let leading = coefficient_matrix(&h.theta, &P1Point::Finite(p.clone()), -(*order as i64));
        let eig = eigenvalues(&leading, &format!("the polar part at z = {}", p))?;
        let nilpotent = eig.iter().all(|(l, _)| l.is_zero());
        poles.push(PoleData {
            point: p.clone(),
            order: *order,
            rank: leading.rank(),
            semisimple: is_semisimple(&leading, &eig),
            nilpotent: nilpotent && !leading.is_zero(),
            eigenvalues: eig,
            leading,
        });
    }
    let at_inf = h.theta_at_infinity_frame();
    let a = coefficient_matrix(&at_inf, &P1Point::Infinity, 0);
    let b = coefficient_matrix(&at_inf, &P1Point::Infinity, 1);
    let mut blocks = Vec::new();
    for (xi, m) in eigenvalues(&a, "the leading term at infinity")? {
        let (basis, complement) = generalized_eigenspace(&a, &xi, m);
        debug_assert_eq!(basis.len(), m);
        let first_order = b.restrict(&basis, &complement);
        let fe = eigenvalues(&first_order, &format!("the first-order term at infinity on the block ξ = {}", xi))?;
        blocks.push(InfinityBlock {
            eigenvalue: xi,
            multiplicity: m,
            basis,
            complement,
            first_order,
            first_order_eigenvalues: fe,
        });
    }
    Ok(SingularityTable { poles, leading_at_infinity: a, first_order_at_infinity: b, blocks })
}
