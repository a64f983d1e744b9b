//! Rational functions of one variable over `Q(i)` in canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::gauss::GaussRat;
use super::point::P1Point;
use super::upoly::UPoly;

/// `num / den` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = UPoly::gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides");
        let den = den.div_exact(&g).expect("gcd divides");
        let lc = den.lc().inv().expect("nonzero");
        RatFunc { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc { num: p, den: UPoly::one() }
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::from_poly(UPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(UPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn var() -> Self {
        Self::from_poly(UPoly::var())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| RatFunc::new(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        RatFunc { num: self.num.pow(e as u32), den: self.den.pow(e as u32) }
    }

    pub fn eval(&self, x: &GaussRat) -> Option<GaussRat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| &self.num.eval(x) / &d)
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.deg_i() - self.den.deg_i())
    }

    /// Order of vanishing at a point (negative for poles); `None` for zero.
    pub fn valuation(&self, p: &P1Point) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(match p {
            P1Point::Infinity => self.den.deg_i() - self.num.deg_i(),
            P1Point::Finite(a) => {
                let vn = self.num.taylor_shift(a).valuation().unwrap_or(0) as i64;
                let vd = self.den.taylor_shift(a).valuation().unwrap_or(0) as i64;
                vn - vd
            }
        })
    }

    /// Laurent coefficients at `p` in the local coordinate (`z - p`, or `1/z`
    /// at infinity): returns coefficients of `t^start, ..., t^(start+n-1)`.
    pub fn laurent(&self, p: &P1Point, start: i64, n: usize) -> Vec<GaussRat> {
        if self.is_zero() {
            return vec![GaussRat::zero(); n];
        }
        let (num, den, offset) = match p {
            P1Point::Finite(a) => (self.num.taylor_shift(a), self.den.taylor_shift(a), 0i64),
            P1Point::Infinity => {
                let (dn, dd) = (self.num.deg_i() as usize, self.den.deg_i() as usize);
                (self.num.reverse(dn), self.den.reverse(dd), dd as i64 - dn as i64)
            }
        };
        let vn = num.valuation().unwrap_or(0);
        let vd = den.valuation().unwrap_or(0);
        let num = UPoly::new(num.coeffs()[vn..].to_vec());
        let den = UPoly::new(den.coeffs()[vd..].to_vec());
        let v = offset + vn as i64 - vd as i64;
        let need = start + n as i64 - v;
        let series = if need > 0 { series_div(&num, &den, need as usize) } else { Vec::new() };
        (0..n as i64)
            .map(|k| {
                let idx = start + k - v;
                if idx < 0 {
                    GaussRat::zero()
                } else {
                    series.get(idx as usize).cloned().unwrap_or_default()
                }
            })
            .collect()
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }

    /// `self(a z + b)` style substitution by a rational function.
    pub fn compose(&self, q: &RatFunc) -> Self {
        let eval = |p: &UPoly| {
            let mut acc = RatFunc::zero();
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * q) + &RatFunc::constant(c.clone());
            }
            acc
        };
        &eval(&self.num) / &eval(&self.den)
    }

    pub fn render(&self, var: &str) -> String {
        if self.den.is_one() {
            return self.num.render(var);
        }
        let n = self.num.render(var);
        let n = if self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || n.chars().skip(1).any(|c| matches!(c, '+' | '-' | ' ' | '/')) {
            format!("({})", n)
        } else {
            n
        };
        let d = self.den.render(var);
        let d = if d.contains([' ', '*', '^']) { format!("({})", d) } else { d };
        format!("{}/{}", n, d)
    }
}

/// Power-series quotient `n / d` to `terms` coefficients; requires `d(0) != 0`.
pub fn series_div(n: &UPoly, d: &UPoly, terms: usize) -> Vec<GaussRat> {
    let d0 = d.coeff(0).inv().expect("series denominator must be a unit");
    let mut out: Vec<GaussRat> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = n.coeff(k);
        for j in 1..=k {
            let dj = d.coeff(j);
            if !dj.is_zero() {
                acc -= &(&dj * &out[k - j]);
            }
        }
        out.push(&acc * &d0);
    }
    out
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("z"))
    }
}

impl From<UPoly> for RatFunc {
    fn from(p: UPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "rational function division by zero");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RatFunc {
        RatFunc::var()
    }

    #[test]
    fn canonical_form() {
        let f = RatFunc::new(UPoly::from_ints(&[-2, 0, 2]), UPoly::from_ints(&[2, 2]));
        assert_eq!(f.num(), &UPoly::from_ints(&[-1, 1]));
        assert!(f.den().is_one());
        let g = &z().inv().unwrap() + &RatFunc::one();
        assert_eq!(g.render("z"), "(z + 1)/z");
        let h = RatFunc::new(UPoly::constant(GaussRat::from_ints(-4, -2)), UPoly::from_ints(&[1, 1]));
        assert_eq!(h.render("z"), "(-4-2*i)/(z + 1)");
        assert_eq!(RatFunc::new(UPoly::from_ints(&[-1]), UPoly::from_ints(&[0, 1])).render("z"), "-1/z");
        assert_eq!(RatFunc::new(UPoly::from_ints(&[0, -1]), UPoly::from_ints(&[1, 0, 1])).render("ξ"), "-ξ/(ξ^2 + 1)");
    }

    #[test]
    fn laurent_expansions() {
        // 1/(z(z-1)) at 0: -1/z - 1 - z - ...
        let f = RatFunc::new(UPoly::one(), UPoly::from_ints(&[0, -1, 1]));
        let c = f.laurent(&P1Point::Finite(GaussRat::zero()), -1, 3);
        assert_eq!(c, vec![GaussRat::from_int(-1); 3]);
        // z/(z+1) at infinity: 1 - w + w^2
        let g = RatFunc::new(UPoly::var(), UPoly::from_ints(&[1, 1]));
        let c = g.laurent(&P1Point::Infinity, 0, 3);
        assert_eq!(c, vec![GaussRat::from_int(1), GaussRat::from_int(-1), GaussRat::from_int(1)]);
        assert_eq!(g.valuation(&P1Point::Infinity), Some(0));
        assert_eq!(f.valuation(&P1Point::Infinity), Some(2));
    }
}
