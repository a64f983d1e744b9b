//! Bihomogeneous polynomials on ruled surfaces over a projective line.
//!
//! The four variables are fixed: `u, v` are homogeneous coordinates on the
//! base line `P^1` (affine `z = u/v`), `x, y` on the dual line (affine
//! `xi = x/y`). An [`Axis`] says which pair plays the role of the base of
//! the ruled surface; the other pair is the fiber, whose first variable is
//! the section twisted by the divisor `fiber_twist`.

use std::cmp::Ordering;
use std::fmt;

use super::binary::BinaryForm;
use super::gauss::GaussRat;
use super::mpoly::MPoly;
use super::point::P1Point;
use crate::error::AlgebraError;

pub const U: usize = 0;
pub const V: usize = 1;
pub const X: usize = 2;
pub const Y: usize = 3;
pub const NAMES: [&str; 4] = ["u", "v", "x", "y"];

/// Effective divisor on a line: finite points with multiplicities, sorted.
pub type Divisor = Vec<(GaussRat, u32)>;

pub fn divisor_degree(d: &Divisor) -> u32 {
    d.iter().map(|(_, m)| m).sum()
}

pub fn canonical_divisor(mut d: Divisor) -> Divisor {
    d.retain(|(_, m)| *m > 0);
    d.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let mut out: Divisor = Vec::new();
    for (p, m) in d {
        match out.last_mut() {
            Some((q, k)) if *q == p => *k += m,
            _ => out.push((p, m)),
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Axis {
    /// Base `(u:v)`, fiber `(x:y)`.
    Source,
    /// Base `(x:y)`, fiber `(u:v)`.
    Dual,
}

impl Axis {
    /// `(first, second)` base variables; the base point `(a:b)` has affine value `a/b`.
    pub fn base(self) -> (usize, usize) {
        match self {
            Axis::Source => (U, V),
            Axis::Dual => (X, Y),
        }
    }

    /// `(twisted, untwisted)` fiber variables.
    pub fn fiber(self) -> (usize, usize) {
        match self {
            Axis::Source => (X, Y),
            Axis::Dual => (U, V),
        }
    }

    pub fn swap(self) -> Axis {
        match self {
            Axis::Source => Axis::Dual,
            Axis::Dual => Axis::Source,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::Source => "source",
            Axis::Dual => "dual",
        }
    }
}

/// Linear form vanishing at a base point: `a - p b`, or `b` at infinity.
pub fn point_form(axis: Axis, p: &P1Point) -> MPoly {
    let (a, b) = axis.base();
    BinaryForm::linear(p).to_mpoly(4, a, b)
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BiWeightedPoly {
    poly: MPoly,
    axis: Axis,
    fiber_degree: u32,
    base_degree: u32,
    fiber_twist: Divisor,
}

impl BiWeightedPoly {
    /// Builds and checks the bidegree invariant.
    pub fn new(poly: MPoly, axis: Axis, fiber_twist: Divisor) -> Result<Self, AlgebraError> {
        if poly.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        assert_eq!(poly.nvars(), 4);
        let fiber_twist = canonical_divisor(fiber_twist);
        let tdeg = divisor_degree(&fiber_twist);
        let (ba, bb) = axis.base();
        let (fx, fy) = axis.fiber();
        let mut degs: Option<(u32, u32)> = None;
        for (e, _) in poly.terms() {
            let fd = e[fx] + e[fy];
            let bd = e[ba] + e[bb] + e[fx] * tdeg;
            match degs {
                None => degs = Some((fd, bd)),
                Some(d) if d == (fd, bd) => {}
                Some(d) => {
                    return Err(AlgebraError::Twist(format!(
                        "monomial degrees (fiber {}, base {}) differ from (fiber {}, base {})",
                        fd, bd, d.0, d.1
                    )))
                }
            }
        }
        let (fiber_degree, base_degree) = degs.expect("nonzero");
        Ok(BiWeightedPoly { poly, axis, fiber_degree, base_degree, fiber_twist })
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn fiber_degree(&self) -> u32 {
        self.fiber_degree
    }

    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    pub fn fiber_twist(&self) -> &Divisor {
        &self.fiber_twist
    }

    pub fn twist_degree(&self) -> u32 {
        divisor_degree(&self.fiber_twist)
    }

    pub fn is_product(&self) -> bool {
        self.fiber_twist.is_empty()
    }

    /// Same polynomial read with the other pair of variables as base; only
    /// meaningful on the product surface.
    pub fn reinterpret(&self, axis: Axis) -> Result<Self, AlgebraError> {
        if !self.is_product() && axis != self.axis {
            return Err(AlgebraError::Twist("cannot swap the projections of a twisted surface".into()));
        }
        BiWeightedPoly::new(self.poly.clone(), axis, self.fiber_twist.clone())
    }

    /// Scales so that the smallest monomial in the global order has coefficient 1.
    pub fn normalize(&self) -> Result<Self, AlgebraError> {
        let (_, c) = self
            .poly
            .terms()
            .min_by(|a, b| monomial_order(a.0, b.0))
            .ok_or(AlgebraError::ZeroPolynomial)?;
        let inv = c.inv().expect("nonzero");
        Ok(BiWeightedPoly { poly: self.poly.scale(&inv), ..self.clone() })
    }

    /// Applies a chart substitution: formal substitution, then normalize.
    pub fn substitute(&self, s: &ChartSubstitution) -> Result<Self, AlgebraError> {
        let p = self.poly.substitute(&s.images);
        let twist = apply_twist_delta(&self.fiber_twist, &s.twist_delta)?;
        BiWeightedPoly::new(p, s.axis.unwrap_or(self.axis), twist)?.normalize()
    }

    /// Divides out the largest power of `form` dividing the polynomial.
    pub fn strip_factor(&self, form: &MPoly) -> (Self, u32) {
        let mut p = self.poly.clone();
        let mut k = 0;
        while let Some(q) = p.div_exact(form) {
            if q.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        let out = BiWeightedPoly::new(p, self.axis, self.fiber_twist.clone()).expect("quotient of a valid form");
        (out, k)
    }

    /// Restriction to the fiber over a base point: a binary form in the fiber variables.
    pub fn fiber_form(&self, p: &P1Point) -> BinaryForm {
        let (ba, bb) = self.axis.base();
        let (fx, fy) = self.axis.fiber();
        let (a, b) = p.homogeneous();
        let q = self.poly.eval_var(ba, &a).eval_var(bb, &b);
        BinaryForm::from_mpoly(&q, fx, fy, self.fiber_degree).expect("fiber restriction is a form")
    }

    /// Restriction to a fiber point `(c:d)`, as a form in the base variables.
    pub fn base_form(&self, q: &P1Point) -> Option<BinaryForm> {
        let (ba, bb) = self.axis.base();
        let (fx, fy) = self.axis.fiber();
        let (c, d) = q.homogeneous();
        let r = self.poly.eval_var(fx, &c).eval_var(fy, &d);
        if r.is_zero() {
            return Some(BinaryForm::zero(0));
        }
        let deg = r.total_degree()?;
        BinaryForm::from_mpoly(&r, ba, bb, deg)
    }

    /// Coefficient of `xf^c yf^(d-c)` as a form in the base variables.
    pub fn fiber_coefficient(&self, c: u32) -> BinaryForm {
        let (ba, bb) = self.axis.base();
        let (fx, fy) = self.axis.fiber();
        let q = self.poly.coeff_of(fx, c).coeff_of(fy, self.fiber_degree - c);
        let deg = self.base_degree - c * self.twist_degree();
        BinaryForm::from_mpoly(&q, ba, bb, deg).expect("coefficient is a base form")
    }

    /// Dehomogenized equation: `u = z, v = 1, x = xi, y = 1`, in `(z, xi)`.
    pub fn affine(&self) -> MPoly {
        let one = MPoly::one(2);
        self.poly.substitute(&[MPoly::var(2, 0), one.clone(), MPoly::var(2, 1), one])
    }

    pub fn render(&self) -> String {
        self.poly.render_with(&NAMES, monomial_order)
    }
}

/// The global monomial order: graded, ties broken lexicographically with
/// `u < v < x < y` (so `y` is compared first).
pub fn monomial_order(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

fn apply_twist_delta(t: &Divisor, delta: &[(GaussRat, i32)]) -> Result<Divisor, AlgebraError> {
    let mut out: Vec<(GaussRat, i64)> = t.iter().map(|(p, m)| (p.clone(), *m as i64)).collect();
    for (p, d) in delta {
        match out.iter_mut().find(|(q, _)| q == p) {
            Some((_, m)) => *m += *d as i64,
            None => out.push((p.clone(), *d as i64)),
        }
    }
    if let Some((p, m)) = out.iter().find(|(_, m)| *m < 0) {
        return Err(AlgebraError::Twist(format!("twist at {} would become {}", p, m)));
    }
    Ok(canonical_divisor(out.into_iter().map(|(p, m)| (p, m as u32)).collect()))
}

impl fmt::Display for BiWeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Images of `u, v, x, y` plus the twist change they induce.
#[derive(Clone, Debug)]
pub struct ChartSubstitution {
    pub images: Vec<MPoly>,
    pub twist_delta: Vec<(GaussRat, i32)>,
    /// New base axis, if the substitution changes it.
    pub axis: Option<Axis>,
    pub exceptional_factors: Vec<(MPoly, String)>,
}

impl ChartSubstitution {
    pub fn identity() -> Self {
        ChartSubstitution {
            images: (0..4).map(|i| MPoly::var(4, i)).collect(),
            twist_delta: Vec::new(),
            axis: None,
            exceptional_factors: Vec::new(),
        }
    }

    pub fn with_image(mut self, var: usize, image: MPoly) -> Self {
        self.images[var] = image;
        self
    }

    /// `self` followed by `next`: the composite substitutes `next`'s images into ours.
    pub fn then(&self, next: &ChartSubstitution) -> ChartSubstitution {
        let mut delta = self.twist_delta.clone();
        delta.extend(next.twist_delta.iter().cloned());
        let mut ex = self.exceptional_factors.clone();
        ex.extend(next.exceptional_factors.iter().cloned());
        ChartSubstitution {
            images: self.images.iter().map(|p| p.substitute(&next.images)).collect(),
            twist_delta: delta,
            axis: next.axis.or(self.axis),
            exceptional_factors: ex,
        }
    }

    /// Checks that the Jacobian of the substitution is nonzero at a sample point.
    pub fn invertible_at_sample(&self) -> bool {
        let pt: Vec<GaussRat> = [3, 5, 7, 11].iter().map(|&k| GaussRat::frac(k, 13)).collect();
        let jac: Vec<Vec<GaussRat>> =
            self.images.iter().map(|p| (0..4).map(|j| p.partial(j).eval(&pt)).collect()).collect();
        !super::linalg::Mat::from_rows(jac).det().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize) -> MPoly {
        MPoly::var(4, i)
    }

    #[test]
    fn normalize_examples() {
        let x = var(X);
        let y = var(Y);
        let p = &(&x.pow(2) - &y.pow(2)).scale(&GaussRat::from_int(2)) + &MPoly::zero(4);
        let b = BiWeightedPoly::new(p, Axis::Source, vec![]).unwrap().normalize().unwrap();
        assert_eq!(b.render(), "x^2 - y^2");
        let q = (&x - &y.scale(&GaussRat::i())).scale(&GaussRat::i());
        let b = BiWeightedPoly::new(q, Axis::Source, vec![]).unwrap().normalize().unwrap();
        assert_eq!(b.render(), "x - i*y");
        assert_eq!(b.normalize().unwrap(), b);
    }

    #[test]
    fn rejects_inconsistent_degrees() {
        let p = &var(X) + &(&var(Y) * &var(U));
        assert!(BiWeightedPoly::new(p, Axis::Source, vec![]).is_err());
        let p = &var(X) + &(&var(Y) * &var(U));
        assert!(BiWeightedPoly::new(p, Axis::Source, vec![(GaussRat::zero(), 1)]).is_ok());
    }
}
