//! Spectral curves of a Higgs bundle and the data they determine on the dual line.

use std::fmt;

use crate::algebra::{
    char_poly_rf, Axis, BiWeightedPoly, BinaryForm, GaussRat, Mat, MPoly, P1Point, RatFunc, RfPoly, UPoly, U, V, X, Y,
};
use crate::error::{NahmError, Result};
use crate::higgs::HiggsBundle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Surface {
    /// The ruled surface `P(O + O(-P))`, fiber twisted by `P`.
    Standard,
    /// `P^1 x P^1`.
    Product,
    /// An intermediate chart reached by elementary transformations.
    Chart(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralCurve {
    pub poly: BiWeightedPoly,
    pub surface: Surface,
}

impl SpectralCurve {
    pub fn new(poly: BiWeightedPoly, surface: Surface) -> Result<Self> {
        Ok(SpectralCurve { poly: poly.normalize()?, surface })
    }

    pub fn fiber_degree(&self) -> u32 {
        self.poly.fiber_degree()
    }

    pub fn render(&self) -> String {
        self.poly.render()
    }
}

impl fmt::Display for SpectralCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// `det(ξ - θ(z))` over `Q(i)(z)`.
pub fn characteristic_polynomial(h: &HiggsBundle) -> Result<RfPoly> {
    Ok(char_poly_rf(&h.theta)?)
}

/// `c * p` as a form of the given degree in `u, v`; `p` must clear the poles of `c`.
fn homogenize(c: &RatFunc, p: &UPoly, degree: u32, what: &str) -> Result<BinaryForm> {
    let q = p
        .div_exact(c.den())
        .ok_or_else(|| NahmError::Inconsistency(format!("{} has poles after clearing the polar divisor", what)))?;
    let p = c.num() * &q;
    if !p.is_zero() && p.deg_i() > degree as i64 {
        return Err(NahmError::Inconsistency(format!("{} has degree {} > {}", what, p.deg_i(), degree)));
    }
    Ok(BinaryForm::new(p, degree))
}

fn fiber_monomial(k: u32, r: u32) -> MPoly {
    let mut e = vec![0; 4];
    e[X] = k;
    e[Y] = r - k;
    MPoly::monomial(4, e, GaussRat::one())
}

/// `Σ^P = (det(x Id - y θ))` on the standard surface.
pub fn standard_curve(h: &HiggsBundle) -> Result<SpectralCurve> {
    standard_curve_from(h, &characteristic_polynomial(h)?)
}

/// [`standard_curve`] from a known characteristic polynomial.
pub fn standard_curve_from(h: &HiggsBundle, cp: &RfPoly) -> Result<SpectralCurve> {
    let r = h.rank as u32;
    let dp = h.polar.degree();
    let sp = h.polar.section();
    let mut poly = MPoly::zero(4);
    for k in 0..=r {
        let form = homogenize(&cp.coeff(k as usize), &sp.pow(r - k), (r - k) * dp, "a characteristic coefficient")?;
        poly = &poly + &(&form.to_mpoly(4, U, V) * &fiber_monomial(k, r));
    }
    SpectralCurve::new(BiWeightedPoly::new(poly, Axis::Source, h.polar.points.clone())?, Surface::Standard)
}

/// The naive curve on the product surface together with the base content
/// that was stripped from `det(s_P x - y θ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaiveCurve {
    pub curve: SpectralCurve,
    pub content: BinaryForm,
}

pub fn naive_curve_with_content(h: &HiggsBundle) -> Result<NaiveCurve> {
    naive_curve_from(h, &characteristic_polynomial(h)?)
}

/// [`naive_curve_with_content`] from a known characteristic polynomial.
pub fn naive_curve_from(h: &HiggsBundle, cp: &RfPoly) -> Result<NaiveCurve> {
    let r = h.rank as u32;
    let dp = h.polar.degree();
    let spr = h.polar.section().pow(r);
    let mut forms = Vec::new();
    for k in 0..=r {
        forms.push(homogenize(&cp.coeff(k as usize), &spr, r * dp, "a characteristic coefficient")?);
    }
    let content = forms.iter().fold(BinaryForm::zero(0), |g, f| BinaryForm::gcd(&g, f));
    let mut poly = MPoly::zero(4);
    for (k, f) in forms.iter().enumerate() {
        let q = f.div_exact(&content).ok_or_else(|| NahmError::Inconsistency("content does not divide".into()))?;
        poly = &poly + &(&q.to_mpoly(4, U, V) * &fiber_monomial(k as u32, r));
    }
    let curve = SpectralCurve::new(BiWeightedPoly::new(poly, Axis::Source, vec![])?, Surface::Product)?;
    Ok(NaiveCurve { curve, content })
}

pub fn naive_curve(h: &HiggsBundle) -> Result<SpectralCurve> {
    Ok(naive_curve_with_content(h)?.curve)
}

/// Points of the dual line over which the curve meets the fiber at infinity
/// of the base, with multiplicities in that fiber.
pub fn dual_divisor(c: &SpectralCurve) -> Result<Vec<(GaussRat, u32)>> {
    if c.surface != Surface::Product {
        return Err(NahmError::Input("dual divisor is read on the product surface".into()));
    }
    let form = c.poly.fiber_form(&P1Point::Infinity);
    let (roots, rest) = form.roots();
    if rest.degree().unwrap_or(0) > 0 {
        return Err(NahmError::Representability(format!(
            "dual polar point outside Q(i): roots of {}",
            rest.render("ξ")
        )));
    }
    Ok(roots
        .into_iter()
        .filter_map(|(p, m)| match p {
            P1Point::Finite(x) => Some((x, m)),
            P1Point::Infinity => None,
        })
        .collect())
}

/// Lower block-triangular Toeplitz matrix of the principal part at `p`;
/// its rank is the length of `(L + θL)/L` for the standard lattice `L`.
pub fn principal_part_matrix(h: &HiggsBundle, p: &GaussRat, order: u32) -> Mat {
    let n = h.rank;
    let m = order as usize;
    let loc = P1Point::Finite(p.clone());
    let coeffs: Vec<Vec<Vec<GaussRat>>> =
        h.theta.iter().map(|row| row.iter().map(|f| f.laurent(&loc, -(order as i64), m)).collect()).collect();
    let mut t = Mat::zeros(n * m, n * m);
    for bi in 0..m {
        for bj in 0..=bi {
            // coefficient of t^{-(order - (bi - bj))}
            let idx = bi - bj;
            for i in 0..n {
                for j in 0..n {
                    t.set(bi * n + i, bj * n + j, coeffs[i][j][idx].clone());
                }
            }
        }
    }
    t
}

/// Rank of the transform computed from the polar parts, checked against the
/// degree of the naive curve over the dual line.
pub fn transformed_rank(h: &HiggsBundle) -> Result<usize> {
    transformed_rank_with(h, &naive_curve(h)?)
}

/// [`transformed_rank`] against a known naive curve.
pub fn transformed_rank_with(h: &HiggsBundle, naive: &SpectralCurve) -> Result<usize> {
    let from_poles: usize = h.polar.points.iter().map(|(p, n)| principal_part_matrix(h, p, *n).rank()).sum();
    let from_curve = naive.poly.base_degree() as usize;
    if from_poles != from_curve {
        return Err(NahmError::Inconsistency(format!(
            "transformed rank {} from the polar parts but {} from the spectral curve",
            from_poles, from_curve
        )));
    }
    Ok(from_poles)
}

fn rf_gcd(a: &RfPoly, b: &RfPoly) -> RfPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.divrem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// True when the characteristic polynomial has a repeated factor.
pub fn is_non_reduced(h: &HiggsBundle) -> Result<bool> {
    Ok(has_repeated_factor(&characteristic_polynomial(h)?))
}

/// True when `cp` has a repeated factor over `Q(i)(z)`.
pub fn has_repeated_factor(cp: &RfPoly) -> bool {
    // a squarefree specialization settles it without the gcd over Q(i)(z)
    for k in 0..12i64 {
        let z = GaussRat::from_ints(k / 2 + 2, if k % 2 == 0 { 1 } else { -1 } * (k / 3 + 1));
        let vals: Option<Vec<GaussRat>> = cp.coeffs().iter().map(|c| c.eval(&z)).collect();
        let Some(vals) = vals else { continue };
        let p = UPoly::new(vals);
        if p.degree() == cp.degree() && UPoly::gcd(&p, &p.derivative()).degree() == Some(0) {
            return false;
        }
    }
    let d = RfPoly::new(cp.coeffs().iter().enumerate().skip(1).map(|(k, c)| c.scale(&GaussRat::from_int(k as i64))).collect());
    rf_gcd(cp, &d).degree().unwrap_or(0) > 0
}

/// The affine equation in `(z, ξ)` as a polynomial in `ξ` over `Q(i)(z)`, made monic.
pub fn monic_affine(c: &BiWeightedPoly) -> RfPoly {
    let (fx, fy) = c.axis().fiber();
    let (ba, bb) = c.axis().base();
    // z = base ratio, w = fiber ratio
    let one = MPoly::one(2);
    let mut images = vec![MPoly::zero(2); 4];
    images[ba] = MPoly::var(2, 0);
    images[bb] = one.clone();
    images[fx] = MPoly::var(2, 1);
    images[fy] = one;
    let aff = c.poly().substitute(&images);
    RfPoly::from_mpoly(&aff, &UPoly::one()).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::higgs::PolarDivisor;

    fn bundle(theta: Vec<Vec<&str>>, polar: Vec<(i64, u32)>) -> HiggsBundle {
        let r = theta.len();
        HiggsBundle {
            rank: r,
            twist_type: vec![0; r],
            theta: theta
                .into_iter()
                .map(|row| row.into_iter().map(|s| crate::parse::parse_ratfunc(s).unwrap()).collect())
                .collect(),
            polar: PolarDivisor::new(polar.into_iter().map(|(p, n)| (GaussRat::from_int(p), n)).collect()),
            parabolic: vec![],
        }
    }

    #[test]
    fn nilpotent_example_curves() {
        let h = bundle(vec![vec!["1/z", "1"], vec!["-1", "-1/z"]], vec![(0, 1)]);
        assert_eq!(standard_curve(&h).unwrap().render(), "x^2 + u^2*y^2 - v^2*y^2");
        let n = naive_curve_with_content(&h).unwrap();
        assert_eq!(n.curve.render(), "u^2*x^2 + u^2*y^2 - v^2*y^2");
        assert_eq!(dual_divisor(&n.curve).unwrap(), vec![(-GaussRat::i(), 1), (GaussRat::i(), 1)]);
        assert_eq!(transformed_rank(&h).unwrap(), 2);
    }

    #[test]
    fn diagonal_rank_one() {
        let h = bundle(vec![vec!["1/z"]], vec![(0, 1)]);
        assert_eq!(naive_curve(&h).unwrap().render(), "u*x - v*y");
        let h = bundle(vec![vec!["1/z", "0", "0"], vec!["0", "2/z", "0"], vec!["0", "0", "3"]], vec![(0, 1)]);
        assert_eq!(transformed_rank(&h).unwrap(), 2);
    }
}
