//! Polynomials in one formal variable with coefficients in `Q(i)(z)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gauss::GaussRat;
use super::mpoly::MPoly;
use super::ratfunc::RatFunc;
use super::upoly::UPoly;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RfPoly {
    coeffs: Vec<RatFunc>,
}

impl RfPoly {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RfPoly { coeffs }
    }

    pub fn zero() -> Self {
        RfPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::new(vec![c])
    }

    /// The formal variable.
    pub fn var() -> Self {
        Self::new(vec![RatFunc::zero(), RatFunc::one()])
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> RatFunc {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(inv) => self.scale(&inv),
            None => Self::zero(),
        }
    }

    /// Substitutes the formal variable by `c * var`.
    pub fn rescale_var(&self, c: &GaussRat) -> Self {
        let mut pw = GaussRat::one();
        let mut out = Vec::new();
        for a in &self.coeffs {
            out.push(a.scale(&pw));
            pw = &pw * c;
        }
        Self::new(out)
    }

    pub fn divrem(&self, d: &RfPoly) -> (RfPoly, RfPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().inv().expect("nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![RatFunc::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &(&c * dc);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    /// Common denominator of all coefficients (monic).
    pub fn common_denominator(&self) -> UPoly {
        self.coeffs.iter().fold(UPoly::one(), |acc, c| UPoly::lcm(&acc, c.den()))
    }

    /// Polynomial in `(z, var)` as a two-variable `MPoly` after multiplying by `d`.
    pub fn to_mpoly_scaled(&self, d: &UPoly) -> MPoly {
        let mut out = MPoly::zero(2);
        for (k, c) in self.coeffs.iter().enumerate() {
            let n = (&RatFunc::from_poly(d.clone()) * c).num().clone();
            for (j, a) in n.coeffs().iter().enumerate() {
                out.add_term(vec![j as u32, k as u32], a);
            }
        }
        out
    }

    /// Inverse of [`to_mpoly_scaled`]: `p / d`.
    pub fn from_mpoly(p: &MPoly, d: &UPoly) -> Self {
        let deg = p.degree_in(1).unwrap_or(0) as usize;
        let mut cs = vec![UPoly::zero(); deg + 1];
        for (e, c) in p.terms() {
            let k = e[1] as usize;
            cs[k] = &cs[k] + &UPoly::monomial(c.clone(), e[0] as usize);
        }
        Self::new(cs.into_iter().map(|n| RatFunc::new(n, d.clone())).collect())
    }

    pub fn render(&self, var: &str, zvar: &str) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, k),
            };
            let cs = c.render(zvar);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains([' ']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let mag = if mag.contains(' ') { format!("({})", mag) } else { mag };
            let body = match (mono.is_empty(), mag.as_str()) {
                (true, _) => mag.clone(),
                (false, "1") => mono.clone(),
                (false, _) => format!("{}*{}", mag, mono),
            };
            if parts.is_empty() {
                parts.push(if neg { format!("-{}", body) } else { body });
            } else {
                parts.push(format!("{} {}", if neg { "-" } else { "+" }, body));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for RfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("xi", "z"))
    }
}

impl<'a> Add<&'a RfPoly> for &'a RfPoly {
    type Output = RfPoly;
    fn add(self, o: &RfPoly) -> RfPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RfPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a RfPoly> for &'a RfPoly {
    type Output = RfPoly;
    fn sub(self, o: &RfPoly) -> RfPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RfPoly> for &'a RfPoly {
    type Output = RfPoly;
    fn mul(self, o: &RfPoly) -> RfPoly {
        if self.is_zero() || o.is_zero() {
            return RfPoly::zero();
        }
        let mut v = vec![RatFunc::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        RfPoly::new(v)
    }
}

impl Neg for &RfPoly {
    type Output = RfPoly;
    fn neg(self) -> RfPoly {
        RfPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
