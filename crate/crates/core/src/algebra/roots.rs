//! Roots of univariate polynomials that lie in `Q(i)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::gauss::GaussRat;
use super::upoly::UPoly;

/// All roots of `p` in `Q(i)` with multiplicities, and the monic cofactor
/// collecting the factors without roots in `Q(i)`.
pub fn roots_in_field(p: &UPoly) -> (Vec<(GaussRat, usize)>, UPoly) {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut roots: Vec<(GaussRat, usize)> = Vec::new();
    let mut remainder = UPoly::one();
    let v = p.valuation().unwrap_or(0);
    if v > 0 {
        roots.push((GaussRat::zero(), v));
    }
    let core = UPoly::new(p.coeffs()[v..].to_vec());
    for (f, k) in core.squarefree_decomposition() {
        let (rs, rest) = squarefree_roots(&f);
        for r in rs {
            roots.push((r, k));
        }
        remainder = &remainder * &rest.pow(k as u32);
    }
    roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    (roots, remainder.monic())
}

/// Roots of a square-free polynomial and the remaining cofactor.
fn squarefree_roots(f: &UPoly) -> (Vec<GaussRat>, UPoly) {
    let mut f = f.monic();
    let mut found = Vec::new();
    loop {
        match f.degree() {
            None | Some(0) => return (found, UPoly::one()),
            Some(1) => {
                found.push(-&f.coeff(0));
                return (found, UPoly::one());
            }
            Some(2) => {
                let (b, c) = (f.coeff(1), f.coeff(0));
                let disc = &(&b * &b) - &(&c * &GaussRat::from_int(4));
                return match disc.sqrt() {
                    Some(s) => {
                        let half = GaussRat::frac(1, 2);
                        found.push(&(&(-&b) + &s) * &half);
                        found.push(&(&(-&b) - &s) * &half);
                        (found, UPoly::one())
                    }
                    None => (found, f),
                };
            }
            Some(_) => match numeric_candidate(&f) {
                Some(r) => {
                    f = f.div_exact(&UPoly::linear_root(&r)).expect("verified root");
                    found.push(r);
                }
                None => return (found, f),
            },
        }
    }
}

/// Scales to Gaussian-integer coefficients `c_n z^n + ... + c_0`.
fn integral_coefficients(f: &UPoly) -> Vec<(BigInt, BigInt)> {
    let l = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom_lcm()));
    let lq = BigRational::from_integer(l);
    f.coeffs()
        .iter()
        .map(|c| {
            let s = c.scale(&lq);
            (s.re().to_integer(), s.im().to_integer())
        })
        .collect()
}

/// Locates one root in `Q(i)` by numerical approximation followed by exact
/// verification: any such root has the form `g / c_n` with `g` a Gaussian integer.
fn numeric_candidate(f: &UPoly) -> Option<GaussRat> {
    let ints = integral_coefficients(f);
    let lead = ints.last().cloned()?;
    let lead_c = GaussRat::new(BigRational::from_integer(lead.0.clone()), BigRational::from_integer(lead.1.clone()));
    let approx = approximate_roots(f)?;
    for a in approx {
        let lc = Complex64::new(lead.0.to_f64()?, lead.1.to_f64()?);
        let scaled = lc * a;
        for (dr, di) in [(0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            let g = GaussRat::from_ints((scaled.re.round() + dr) as i64, (scaled.im.round() + di) as i64);
            let cand = &g / &lead_c;
            if f.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
        for den in 1..=12i64 {
            let g = GaussRat::from_ints((a.re * den as f64).round() as i64, (a.im * den as f64).round() as i64);
            let cand = &g / &GaussRat::from_int(den);
            if f.eval(&cand).is_zero() {
                return Some(cand);
            }
        }
    }
    None
}

/// Aberth iteration on the complex coefficients.
fn approximate_roots(f: &UPoly) -> Option<Vec<Complex64>> {
    let cs: Vec<Complex64> = f.monic().coeffs().iter().map(|c| c.to_complex()).collect();
    if cs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return None;
    }
    let n = cs.len() - 1;
    let bound = 1.0 + cs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for c in cs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(bound * 0.5, ang)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval(zs[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (zs[i] - zs[j])).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.re.is_finite() && step.im.is_finite() {
                zs[i] -= step;
                max_step = max_step.max(step.norm());
            }
        }
        if max_step < 1e-14 * bound {
            break;
        }
    }
    Some(zs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reassemble(p: &UPoly) -> UPoly {
        let (rs, rem) = roots_in_field(p);
        let mut acc = rem;
        for (r, m) in rs {
            acc = &acc * &UPoly::linear_root(&r).pow(m as u32);
        }
        acc.scale(&p.lc())
    }

    #[test]
    fn quadratic_cases() {
        let (rs, rem) = roots_in_field(&UPoly::from_ints(&[1, 0, 1]));
        assert_eq!(rs, vec![(-GaussRat::i(), 1), (GaussRat::i(), 1)]);
        assert!(rem.is_one());
        let (rs, rem) = roots_in_field(&UPoly::from_ints(&[-2, 0, 1]));
        assert!(rs.is_empty());
        assert_eq!(rem, UPoly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn higher_degree_with_multiplicity() {
        let r1 = GaussRat::new(super::super::gauss::rat(2, 3), super::super::gauss::rat(-1, 2));
        let p = &(&UPoly::linear_root(&r1).pow(2) * &UPoly::from_ints(&[-2, 0, 1])) * &UPoly::from_ints(&[5, 1]);
        let p = &p * &UPoly::from_ints(&[0, 1]);
        let (rs, rem) = roots_in_field(&p);
        assert_eq!(rs.len(), 3);
        assert!(rs.contains(&(r1.clone(), 2)));
        assert_eq!(rem, UPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(reassemble(&p), p);
    }
}
