use num_traits::{One, Signed};

use crate::algebra::linalg::{is_subspace, span_dim};
use crate::algebra::{P1Point, UPoly};

use super::singular::{coefficient_matrix, eigenvalues, is_semisimple};
use super::HiggsBundle;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

pub fn validate(h: &HiggsBundle) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let n = h.rank;
    if n == 0 {
        rep.errors.push("rank must be at least 1".into());
        return rep;
    }
    if h.twist_type.len() != n {
        rep.errors.push(format!("twistType has {} entries, expected {}", h.twist_type.len(), n));
        return rep;
    }
    if h.theta.len() != n || h.theta.iter().any(|row| row.len() != n) {
        rep.errors.push(format!("theta must be a {}x{} matrix", n, n));
        return rep;
    }
    for (k, (p, m)) in h.polar.points.iter().enumerate() {
        if *m == 0 {
            rep.errors.push(format!("polar point {} has multiplicity 0", p));
        }
        if h.polar.points[..k].iter().any(|(q, _)| q == p) {
            rep.errors.push(format!("polar point {} listed twice", p));
        }
    }

    check_poles(h, &mut rep);
    if !rep.errors.is_empty() {
        return rep;
    }
    check_parabolic(h, &mut rep);
    if !rep.errors.is_empty() {
        return rep;
    }
    genericity_warnings(h, &mut rep);
    rep
}

fn check_poles(h: &HiggsBundle, rep: &mut ValidationReport) {
    let n = h.rank;
    for i in 0..n {
        for j in 0..n {
            let f = &h.theta[i][j];
            if f.is_zero() {
                continue;
            }
            let mut rest = f.den().clone();
            for (p, np) in &h.polar.points {
                let ord = -f.valuation(&P1Point::Finite(p.clone())).unwrap_or(0);
                if ord > *np as i64 {
                    rep.errors.push(format!(
                        "theta[{}][{}] has a pole of order {} at z = {}, more than n_p = {}",
                        i, j, ord, p, np
                    ));
                }
                if ord > 0 {
                    rest = rest.div_exact(&UPoly::linear_root(p).pow(ord as u32)).unwrap_or(rest);
                }
            }
            if rest.degree().unwrap_or(0) > 0 {
                rep.errors.push(format!(
                    "theta[{}][{}] has poles outside the polar divisor (denominator factor {})",
                    i,
                    j,
                    rest.render("z")
                ));
            }
            let allowed = h.twist_type[i] - h.twist_type[j];
            if let Some(d) = f.degree() {
                if d > allowed {
                    rep.errors.push(format!(
                        "theta[{}][{}] is not regular at infinity: degree {} exceeds d_{} - d_{} = {}",
                        i, j, d, i, j, allowed
                    ));
                }
            }
        }
    }
}

fn check_parabolic(h: &HiggsBundle, rep: &mut ValidationReport) {
    let n = h.rank;
    let mut expected: Vec<P1Point> = h.polar.points.iter().map(|(p, _)| P1Point::Finite(p.clone())).collect();
    expected.push(P1Point::Infinity);
    for loc in &expected {
        let count = h.parabolic.iter().filter(|pp| &pp.location == loc).count();
        if count == 0 {
            rep.errors.push(format!("missing parabolic structure at {}", loc));
        } else if count > 1 {
            rep.errors.push(format!("parabolic structure at {} given {} times", loc, count));
        }
    }
    for pp in &h.parabolic {
        if !expected.contains(&pp.location) {
            rep.errors.push(format!("parabolic structure at {} which is not in P + ∞", pp.location));
            continue;
        }
        let at = &pp.location;
        if pp.filtration.is_empty() {
            rep.errors.push(format!("empty filtration at {}", at));
            continue;
        }
        if pp.weights.len() != pp.filtration.len() {
            rep.errors.push(format!(
                "filtration at {} has {} steps but {} weights",
                at,
                pp.filtration.len(),
                pp.weights.len()
            ));
        }
        if pp.filtration.iter().flatten().any(|v| v.len() != n) {
            rep.errors.push(format!("filtration vectors at {} must have length {}", at, n));
            continue;
        }
        let dims: Vec<usize> = pp.filtration.iter().map(|f| span_dim(n, f)).collect();
        if dims[0] != n {
            rep.errors.push(format!("first filtration step at {} must be the whole fiber", at));
        }
        for k in 1..dims.len() {
            if dims[k] >= dims[k - 1] || !is_subspace(n, &pp.filtration[k], &pp.filtration[k - 1]) {
                rep.errors.push(format!("filtration at {} is not strictly decreasing at step {}", at, k));
            }
        }
        if dims.last() == Some(&0) {
            rep.errors.push(format!("last filtration step at {} is zero", at));
        }
        for (k, w) in pp.weights.iter().enumerate() {
            if w.is_negative() || *w >= num_rational::BigRational::one() {
                rep.errors.push(format!("weight {} at {} outside [0, 1)", w, at));
            }
            if k > 0 && *w <= pp.weights[k - 1] {
                rep.errors.push(format!("weights at {} must be strictly increasing", at));
            }
        }
        let m = match &pp.location {
            P1Point::Infinity => coefficient_matrix(&h.theta_at_infinity_frame(), &P1Point::Infinity, 0),
            P1Point::Finite(p) => {
                let np = h.polar.multiplicity(p);
                coefficient_matrix(&h.theta, &P1Point::Finite(p.clone()), -(np as i64))
            }
        };
        for (k, f) in pp.filtration.iter().enumerate() {
            let image: Vec<_> = f.iter().map(|v| m.apply(v)).collect();
            if !is_subspace(n, &image, f) {
                rep.errors.push(format!("filtration step {} at {} is not preserved by the polar part of theta", k, at));
            }
        }
    }
}

fn genericity_warnings(h: &HiggsBundle, rep: &mut ValidationReport) {
    for (p, np) in &h.polar.points {
        let r = coefficient_matrix(&h.theta, &P1Point::Finite(p.clone()), -(*np as i64));
        match eigenvalues(&r, "") {
            Err(_) => rep.warnings.push(format!("eigenvalues of the polar part at z = {} are not in Q(i)", p)),
            Ok(eig) => {
                if !r.is_zero() && eig.iter().all(|(l, _)| l.is_zero()) {
                    rep.warnings.push(format!("polar part at z = {} is nilpotent", p));
                } else if eig.iter().any(|(l, k)| !l.is_zero() && *k > 1) {
                    rep.warnings.push(format!("polar part at z = {} has repeated nonzero eigenvalues", p));
                }
                if !is_semisimple(&r, &eig) {
                    rep.warnings.push(format!("polar part at z = {} is not semisimple", p));
                }
            }
        }
    }
    let at_inf = h.theta_at_infinity_frame();
    let a = coefficient_matrix(&at_inf, &P1Point::Infinity, 0);
    let b = coefficient_matrix(&at_inf, &P1Point::Infinity, 1);
    match eigenvalues(&a, "") {
        Err(_) => rep.warnings.push("eigenvalues of the leading term at infinity are not in Q(i)".into()),
        Ok(eig) => {
            if eig.iter().any(|(_, k)| *k > 1) {
                rep.warnings.push("leading term at infinity has repeated eigenvalues".into());
            }
            if !is_semisimple(&a, &eig) {
                rep.warnings.push("leading term at infinity is not semisimple".into());
            }
            let mut all_zero = true;
            for (xi, m) in &eig {
                let (basis, complement) = super::singular::generalized_eigenspace(&a, xi, *m);
                let bl = b.restrict(&basis, &complement);
                if !bl.is_zero() {
                    all_zero = false;
                }
                if let Ok(fe) = eigenvalues(&bl, "") {
                    if *m > 1 && fe.iter().any(|(_, k)| *k > 1) {
                        rep.warnings.push(format!("first-order term on the block ξ = {} has repeated eigenvalues", xi));
                    }
                }
            }
            if all_zero {
                rep.warnings.push("first-order term B∞ vanishes on every eigenspace of the leading term".into());
            }
        }
    }
}
