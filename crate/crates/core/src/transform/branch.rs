//! Branches of a plane curve germ from its Newton polygon.

use num_integer::Integer;

use crate::algebra::{roots_in_field, GaussRat, MPoly, UPoly};
use crate::error::{NahmError, Result};

/// A branch `s = τ^e_src`, `t = c τ^e_dual + …` through the origin, labelled
/// by `κ = c^e_src`, which does not depend on the choice of `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub e_src: u32,
    pub e_dual: u32,
    pub kappa: GaussRat,
}

impl Branch {
    /// The same branch with the roles of `s` and `t` exchanged and the new
    /// fiber coordinate negated.
    pub fn swapped(&self) -> Branch {
        let sign = if self.e_dual.is_multiple_of(2) { GaussRat::one() } else { -GaussRat::one() };
        let inv = self.kappa.inv().expect("branch labels are nonzero");
        Branch { e_src: self.e_dual, e_dual: self.e_src, kappa: &sign * &inv }
    }
}

fn t_order(f: &MPoly) -> Option<u32> {
    f.terms().filter(|(e, _)| e[0] == 0).map(|(e, _)| e[1]).min()
}

fn s_order(f: &MPoly) -> Option<u32> {
    f.terms().filter(|(e, _)| e[1] == 0).map(|(e, _)| e[0]).min()
}

/// Lower convex hull of the support between the two axes, as vertices
/// ordered by increasing `s`-exponent.
fn newton_vertices(f: &MPoly, j0: u32, i0: u32) -> Vec<(u32, u32)> {
    let mut pts: Vec<(u32, u32)> = f.terms().map(|(e, _)| (e[0], e[1])).filter(|&(i, j)| i <= i0 && j <= j0).collect();
    pts.sort();
    let mut hull: Vec<(u32, u32)> = vec![(0, j0)];
    loop {
        let (ci, cj) = *hull.last().unwrap();
        if cj == 0 {
            break;
        }
        // steepest descent: minimize slope (j - cj)/(i - ci) over points to the right and below
        let mut best: Option<(u32, u32)> = None;
        for &(i, j) in &pts {
            if i <= ci || j >= cj {
                continue;
            }
            best = match best {
                None => Some((i, j)),
                Some((bi, bj)) => {
                    // compare (cj - j)/(i - ci) against (cj - bj)/(bi - ci): keep the larger drop rate
                    let lhs = (cj - j) as i64 * (bi - ci) as i64;
                    let rhs = (cj - bj) as i64 * (i - ci) as i64;
                    if lhs > rhs || (lhs == rhs && i > bi) {
                        Some((i, j))
                    } else {
                        Some((bi, bj))
                    }
                }
            };
        }
        hull.push(best.expect("the point (i0, 0) is always available"));
    }
    hull
}

/// Branches of `f(s, t) = 0` through the origin. `f` must vanish there and
/// contain neither `s = 0` nor `t = 0` as a component.
pub fn branches(f: &MPoly) -> Result<Vec<Branch>> {
    if f.is_zero() {
        return Err(NahmError::Inconsistency("branch analysis of the zero polynomial".into()));
    }
    let j0 = t_order(f).ok_or_else(|| NahmError::Unsupported("the curve contains the fiber through the point".into()))?;
    let i0 = s_order(f).ok_or_else(|| {
        NahmError::Unsupported("the curve contains the constant section through the point (a constant eigenvalue)".into())
    })?;
    if j0 == 0 || i0 == 0 {
        return Ok(Vec::new());
    }
    let hull = newton_vertices(f, j0, i0);
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let ((i1, j1), (i2, j2)) = (w[0], w[1]);
        let g = (j1 - j2).gcd(&(i2 - i1));
        let (a, b) = ((j1 - j2) / g, (i2 - i1) / g);
        // Φ(ρ) = Σ_k coef(i1 + k b, j1 - k a) ρ^{g - k}
        let mut cs = vec![GaussRat::zero(); g as usize + 1];
        for k in 0..=g {
            cs[(g - k) as usize] = f.coeff(&[i1 + k * b, j1 - k * a]);
        }
        let phi = UPoly::new(cs);
        let (roots, rest) = roots_in_field(&phi);
        if rest.degree().unwrap_or(0) > 0 {
            return Err(NahmError::Representability(format!(
                "branch coefficients outside Q(i): roots of {}",
                rest.render("ρ")
            )));
        }
        for (rho, mu) in roots {
            if mu == 1 {
                out.push(Branch { e_src: a, e_dual: b, kappa: rho });
            } else if a == 1 {
                out.extend(refine(f, &rho, b)?);
            } else {
                return Err(NahmError::Unsupported(format!(
                    "a repeated ramified branch direction (ramification {}, coefficient {})",
                    a, rho
                )));
            }
        }
    }
    let (se, de): (u32, u32) = (out.iter().map(|b| b.e_src).sum(), out.iter().map(|b| b.e_dual).sum());
    if se != j0 || de != i0 {
        return Err(NahmError::Inconsistency(format!(
            "branch orders ({}, {}) do not match the intersections ({}, {}) with the axes",
            se, de, j0, i0
        )));
    }
    Ok(out)
}

/// Substitutes `t = s^b (ρ + t1)` and analyses the remaining sheets.
fn refine(f: &MPoly, rho: &GaussRat, b: u32) -> Result<Vec<Branch>> {
    let s = MPoly::var(2, 0);
    let t1 = MPoly::var(2, 1);
    let image = &s.pow(b) * &(&t1 + &MPoly::constant(2, rho.clone()));
    let g = f.substitute(&[s.clone(), image]);
    let low = g.terms().map(|(e, _)| e[0]).min().unwrap_or(0);
    let mut g = g.div_exact(&s.pow(low)).expect("power of s divides");
    let mut out = Vec::new();
    // t = ρ s^b exactly is a component
    while t_order(&g).is_some() && s_order(&g).is_none() {
        out.push(Branch { e_src: 1, e_dual: b, kappa: rho.clone() });
        g = g.div_exact(&t1).expect("t1 divides");
    }
    for sub in branches(&g)? {
        out.push(Branch { e_src: sub.e_src, e_dual: b * sub.e_src, kappa: rho.pow(sub.e_src) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn br(text: &str) -> Vec<Branch> {
        let mut v = branches(&parse_poly(text, &["s", "t"]).unwrap()).unwrap();
        v.sort_by(|a, b| (a.e_src, a.e_dual).cmp(&(b.e_src, b.e_dual)).then(a.kappa.canonical_cmp(&b.kappa)));
        v
    }

    #[test]
    fn node_and_cusp() {
        let node = br("t^2 - s^2");
        assert_eq!(node.len(), 2);
        assert!(node.iter().all(|b| b.e_src == 1 && b.e_dual == 1));
        let cusp = br("t^2 - s^3");
        assert_eq!(cusp, vec![Branch { e_src: 2, e_dual: 3, kappa: GaussRat::one() }]);
        let flat = br("s - t^3");
        assert_eq!(flat, vec![Branch { e_src: 3, e_dual: 1, kappa: GaussRat::one() }]);
    }

    #[test]
    fn tangent_branches_are_separated() {
        // t = s + s^2 and t = s - s^2 share their first term
        let f = parse_poly("(t - s - s^2)*(t - s + s^2)", &["s", "t"]).unwrap();
        let v = branches(&f).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|b| b.e_src == 1 && b.e_dual == 1 && b.kappa.is_one()));
    }

    #[test]
    fn swapping_twice_negates_both_fibers() {
        let b = Branch { e_src: 2, e_dual: 3, kappa: GaussRat::from_ints(1, 2) };
        let back = b.swapped().swapped();
        assert_eq!((back.e_src, back.e_dual), (2, 3));
        assert_eq!(back.kappa, -&b.kappa);
        let even = Branch { e_src: 1, e_dual: 1, kappa: GaussRat::from_ints(1, 2) };
        assert_eq!(even.swapped().swapped(), even);
    }
}
