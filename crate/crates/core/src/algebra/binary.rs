//! Binary forms `f(a, b)` stored through their dehomogenization `f(a, 1)`.

use std::fmt;

use super::gauss::GaussRat;
use super::mpoly::MPoly;
use super::point::P1Point;
use super::roots::roots_in_field;
use super::upoly::UPoly;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryForm {
    deh: UPoly,
    degree: u32,
}

impl BinaryForm {
    pub fn new(deh: UPoly, degree: u32) -> Self {
        assert!(deh.is_zero() || deh.deg_i() <= degree as i64, "form degree too small");
        BinaryForm { deh, degree }
    }

    pub fn zero(degree: u32) -> Self {
        BinaryForm { deh: UPoly::zero(), degree }
    }

    pub fn one() -> Self {
        BinaryForm { deh: UPoly::one(), degree: 0 }
    }

    /// `a - p b` for finite `p`, `b` for the point at infinity.
    pub fn linear(p: &P1Point) -> Self {
        match p {
            P1Point::Finite(c) => BinaryForm { deh: UPoly::linear_root(c), degree: 1 },
            P1Point::Infinity => BinaryForm { deh: UPoly::one(), degree: 1 },
        }
    }

    pub fn from_coeffs(cs: Vec<GaussRat>, degree: u32) -> Self {
        Self::new(UPoly::new(cs), degree)
    }

    /// Reads a form in variables `a`, `b` of an `MPoly`; `None` if other
    /// variables occur or the polynomial is not homogeneous of `degree`.
    pub fn from_mpoly(p: &MPoly, a: usize, b: usize, degree: u32) -> Option<Self> {
        let mut cs = vec![GaussRat::zero(); degree as usize + 1];
        for (e, c) in p.terms() {
            if e.iter().enumerate().any(|(i, &k)| i != a && i != b && k != 0) || e[a] + e[b] != degree {
                return None;
            }
            cs[e[a] as usize] = c.clone();
        }
        Some(Self::from_coeffs(cs, degree))
    }

    pub fn to_mpoly(&self, nvars: usize, a: usize, b: usize) -> MPoly {
        MPoly::from_terms(
            nvars,
            self.deh.coeffs().iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[a] = k as u32;
                e[b] = self.degree - k as u32;
                (e, c.clone())
            }),
        )
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dehomogenized(&self) -> &UPoly {
        &self.deh
    }

    /// Coefficient of `a^k b^(d-k)`.
    pub fn coeff(&self, k: u32) -> GaussRat {
        self.deh.coeff(k as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.deh.is_zero()
    }

    /// Multiplicity of the root at `b = 0` (the point at infinity).
    pub fn order_at_infinity(&self) -> u32 {
        self.degree - self.deh.deg_i().max(0) as u32
    }

    pub fn eval(&self, a: &GaussRat, b: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (k, c) in self.deh.coeffs().iter().enumerate() {
            acc += &(&(c * &a.pow(k as u32)) * &b.pow(self.degree - k as u32));
        }
        acc
    }

    pub fn eval_point(&self, p: &P1Point) -> GaussRat {
        let (a, b) = p.homogeneous();
        self.eval(&a, &b)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        BinaryForm { deh: self.deh.scale(c), degree: self.degree }
    }

    pub fn monic(&self) -> Self {
        BinaryForm { deh: self.deh.monic(), degree: self.degree }
    }

    pub fn mul(&self, o: &BinaryForm) -> Self {
        BinaryForm { deh: &self.deh * &o.deh, degree: self.degree + o.degree }
    }

    pub fn add(&self, o: &BinaryForm) -> Self {
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        BinaryForm { deh: &self.deh + &o.deh, degree: self.degree }
    }

    pub fn sub(&self, o: &BinaryForm) -> Self {
        self.add(&o.scale(&GaussRat::from_int(-1)))
    }

    pub fn pow(&self, e: u32) -> Self {
        BinaryForm { deh: self.deh.pow(e), degree: self.degree * e }
    }

    /// Multiplies by `b^k`.
    pub fn raise(&self, k: u32) -> Self {
        BinaryForm { deh: self.deh.clone(), degree: self.degree + k }
    }

    /// Monic gcd (zero forms are ignored).
    pub fn gcd(x: &BinaryForm, y: &BinaryForm) -> BinaryForm {
        if x.is_zero() {
            return y.monic();
        }
        if y.is_zero() {
            return x.monic();
        }
        let g = UPoly::gcd(&x.deh, &y.deh);
        let inf = x.order_at_infinity().min(y.order_at_infinity());
        let d = g.deg_i() as u32 + inf;
        BinaryForm { deh: g, degree: d }
    }

    pub fn div_exact(&self, d: &BinaryForm) -> Option<BinaryForm> {
        if d.degree > self.degree || d.order_at_infinity() > self.order_at_infinity() && !self.is_zero() {
            return None;
        }
        let q = self.deh.div_exact(&d.deh)?;
        Some(BinaryForm { deh: q, degree: self.degree - d.degree })
    }

    /// Roots in `P^1(Q(i))` with multiplicities, plus the part without roots.
    pub fn roots(&self) -> (Vec<(P1Point, u32)>, UPoly) {
        let (rs, rem) = roots_in_field(&self.deh);
        let mut out: Vec<(P1Point, u32)> = rs.into_iter().map(|(r, m)| (P1Point::Finite(r), m as u32)).collect();
        let inf = self.order_at_infinity();
        if inf > 0 {
            out.push((P1Point::Infinity, inf));
        }
        (out, rem)
    }

    pub fn render(&self, a: &str, b: &str) -> String {
        self.to_mpoly(2, 0, 1).render_with(&[a, b], |x, y| y[0].cmp(&x[0]))
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("s", "t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_tracks_infinity() {
        // a*b and b^2
        let f = BinaryForm::from_coeffs(vec![GaussRat::zero(), GaussRat::one()], 2);
        let g = BinaryForm::from_coeffs(vec![GaussRat::one()], 2);
        let h = BinaryForm::gcd(&f, &g);
        assert_eq!(h, BinaryForm::linear(&P1Point::Infinity));
        assert_eq!(f.div_exact(&h).unwrap(), BinaryForm::linear(&P1Point::zero()));
    }

    #[test]
    fn roots_include_infinity() {
        let f = BinaryForm::from_coeffs(vec![GaussRat::from_int(1), GaussRat::zero(), GaussRat::from_int(1)], 3);
        let (rs, rem) = f.roots();
        assert!(rem.is_one());
        assert_eq!(rs.len(), 3);
        assert!(rs.contains(&(P1Point::Infinity, 1)));
    }
}
