//! Fraction-free determinants.

use super::gauss::GaussRat;
use super::mpoly::MPoly;
use super::ratfunc::RatFunc;
use super::rfpoly::RfPoly;
use super::upoly::UPoly;
use crate::error::AlgebraError;

/// Commutative ring with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

macro_rules! exact_ring_impl {
    ($t:ty, $zero:expr, $one:expr, $div:expr) => {
        impl ExactRing for $t {
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn zero_like(&self) -> Self {
                ($zero)(self)
            }
            fn one_like(&self) -> Self {
                ($one)(self)
            }
            fn add(&self, o: &Self) -> Self {
                self + o
            }
            fn sub(&self, o: &Self) -> Self {
                self - o
            }
            fn mul(&self, o: &Self) -> Self {
                self * o
            }
            fn neg(&self) -> Self {
                -self
            }
            fn div_exact(&self, o: &Self) -> Option<Self> {
                ($div)(self, o)
            }
        }
    };
}

exact_ring_impl!(GaussRat, |_: &GaussRat| GaussRat::zero(), |_: &GaussRat| GaussRat::one(), |a: &GaussRat, b: &GaussRat| {
    b.inv().map(|i| a * &i)
});
exact_ring_impl!(UPoly, |_: &UPoly| UPoly::zero(), |_: &UPoly| UPoly::one(), |a: &UPoly, b: &UPoly| a.div_exact(b));
exact_ring_impl!(MPoly, |p: &MPoly| MPoly::zero(p.nvars()), |p: &MPoly| MPoly::one(p.nvars()), |a: &MPoly, b: &MPoly| a
    .div_exact(b));
exact_ring_impl!(RatFunc, |_: &RatFunc| RatFunc::zero(), |_: &RatFunc| RatFunc::one(), |a: &RatFunc, b: &RatFunc| {
    (!b.is_zero()).then(|| a / b)
});

fn check_square<R>(m: &[Vec<R>]) -> Result<usize, AlgebraError> {
    let n = m.len();
    if n == 0 {
        return Err(AlgebraError::Dimension("determinant of an empty matrix".into()));
    }
    if m.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::Dimension(format!("matrix is not square ({} rows)", n)));
    }
    Ok(n)
}

/// Bareiss fraction-free elimination.
pub fn bareiss_det<R: ExactRing>(m: &[Vec<R>]) -> Result<R, AlgebraError> {
    let n = check_square(m)?;
    let mut a: Vec<Vec<R>> = m.to_vec();
    let one = a[0][0].one_like();
    let mut prev = one.clone();
    let mut sign = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return Ok(one.zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev).ok_or_else(|| AlgebraError::Internal("Bareiss division not exact".into()))?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { d.neg() } else { d })
}

/// Determinant of a matrix of rational functions: clear row denominators,
/// eliminate over `Q(i)[z]`, divide back.
pub fn det_rf(m: &[Vec<RatFunc>]) -> Result<RatFunc, AlgebraError> {
    check_square(m)?;
    let mut den = UPoly::one();
    let rows: Vec<Vec<UPoly>> = m
        .iter()
        .map(|row| {
            let d = row.iter().fold(UPoly::one(), |acc, c| UPoly::lcm(&acc, c.den()));
            den = &den * &d;
            row.iter().map(|c| (&RatFunc::from_poly(d.clone()) * c).num().clone()).collect()
        })
        .collect();
    let n = bareiss_det(&rows)?;
    Ok(RatFunc::new(n, den))
}

/// Determinant of a matrix with entries polynomial in a formal variable over `Q(i)(z)`.
pub fn det_rfpoly(m: &[Vec<RfPoly>]) -> Result<RfPoly, AlgebraError> {
    check_square(m)?;
    let mut den = UPoly::one();
    let rows: Vec<Vec<MPoly>> = m
        .iter()
        .map(|row| {
            let d = row.iter().fold(UPoly::one(), |acc, c| UPoly::lcm(&acc, &c.common_denominator()));
            den = &den * &d;
            row.iter().map(|c| c.to_mpoly_scaled(&d)).collect()
        })
        .collect();
    let n = bareiss_det(&rows)?;
    Ok(RfPoly::from_mpoly(&n, &den))
}

/// Coefficients `c_0 = 1, c_1, ..., c_n` of `det(x Id - m)` for a matrix of
/// polynomials, by the Faddeev-LeVerrier recursion.
pub fn char_poly_upoly(m: &[Vec<UPoly>]) -> Result<Vec<UPoly>, AlgebraError> {
    let n = check_square(m)?;
    let mul = |a: &[Vec<UPoly>], b: &[Vec<UPoly>]| -> Vec<Vec<UPoly>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(UPoly::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j]))).collect())
            .collect()
    };
    let mut c = vec![UPoly::one()];
    let mut mk: Vec<Vec<UPoly>> = (0..n).map(|i| (0..n).map(|j| if i == j { UPoly::one() } else { UPoly::zero() }).collect()).collect();
    for k in 1..=n {
        let am = mul(m, &mk);
        let tr = (0..n).fold(UPoly::zero(), |acc, i| &acc + &am[i][i]);
        let ck = tr.scale(&GaussRat::frac(-1, k as i64));
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] = &row[i] + &ck;
        }
        c.push(ck);
    }
    Ok(c)
}

/// `det(xi * Id - m)`, from the characteristic polynomial of `D m` with
/// `D` the common denominator.
pub fn char_poly_rf(m: &[Vec<RatFunc>]) -> Result<RfPoly, AlgebraError> {
    let n = check_square(m)?;
    let mut den = UPoly::one();
    for c in m.iter().flatten() {
        if c.den().deg_i() > 0 && !den.rem(c.den()).is_zero() {
            den = UPoly::lcm(&den, c.den());
        }
    }
    let cleared: Vec<Vec<UPoly>> = m
        .iter()
        .map(|row| row.iter().map(|c| c.num() * &den.div_exact(c.den()).expect("the lcm is a multiple")).collect())
        .collect();
    let c = char_poly_upoly(&cleared)?;
    let mut coeffs = vec![RatFunc::zero(); n + 1];
    for (k, ck) in c.into_iter().enumerate() {
        coeffs[n - k] = RatFunc::new(ck, den.pow(k as u32));
    }
    Ok(RfPoly::new(coeffs))
}

/// `det(xi * Id - m)` by Bareiss elimination over `Q(i)(z)[xi]`.
pub fn char_poly_bareiss(m: &[Vec<RatFunc>]) -> Result<RfPoly, AlgebraError> {
    let n = check_square(m)?;
    let rows: Vec<Vec<RfPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = RfPoly::constant(-&m[i][j]);
                    if i == j {
                        &RfPoly::var() + &c
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    det_rfpoly(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_rf_of_nilpotent_example() {
        // det [[xi - 1/z, -1], [1, xi + 1/z]] = xi^2 - 1/z^2 + 1
        let zi = RatFunc::var().inv().unwrap();
        let xi = RfPoly::var();
        let m = vec![
            vec![&xi - &RfPoly::constant(zi.clone()), RfPoly::constant(RatFunc::constant(GaussRat::from_int(-1)))],
            vec![RfPoly::constant(RatFunc::one()), &xi + &RfPoly::constant(zi.clone())],
        ];
        let d = det_rfpoly(&m).unwrap();
        let expect = RfPoly::new(vec![&RatFunc::one() - &zi.pow(2), RatFunc::zero(), RatFunc::one()]);
        assert_eq!(d, expect);
    }

    #[test]
    fn identity_and_shape_errors() {
        let id: Vec<Vec<RatFunc>> =
            (0..3).map(|i| (0..3).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()).collect();
        assert_eq!(det_rf(&id).unwrap(), RatFunc::one());
        let bad = vec![vec![RatFunc::one(), RatFunc::one()]];
        assert!(det_rf(&bad).is_err());
    }

    #[test]
    fn char_poly_routes_agree() {
        let z = RatFunc::var();
        let zi = z.inv().unwrap();
        let c = |a: i64, b: i64| RatFunc::constant(GaussRat::from_ints(a, b));
        let m = vec![
            vec![&zi + &c(1, 0), c(0, 1), &z * &c(2, 0)],
            vec![c(-1, 0), &zi.pow(2) + &c(0, -1), c(3, 0)],
            vec![&(&z + &c(1, 0)).inv().unwrap() * &c(1, 1), c(0, 0), c(5, 0)],
        ];
        assert_eq!(char_poly_rf(&m).unwrap(), char_poly_bareiss(&m).unwrap());
    }
}
