#![allow(dead_code)]

use nahm_core::algebra::{GaussRat, Mat, P1Point, RatFunc, UPoly, Vector};
use nahm_core::higgs::{HiggsBundle, ParabolicPoint, PolarDivisor};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_gauss(rng: &mut ChaCha8Rng, bound: i64) -> GaussRat {
    GaussRat::from_ints(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// Distinct nonzero Gaussian integers.
pub fn distinct_gauss(rng: &mut ChaCha8Rng, n: usize, bound: i64, nonzero: bool) -> Vec<GaussRat> {
    let mut out: Vec<GaussRat> = Vec::new();
    while out.len() < n {
        let g = small_gauss(rng, bound);
        if (nonzero && g.is_zero()) || out.contains(&g) {
            continue;
        }
        out.push(g);
    }
    out
}

/// A random matrix with determinant ±1: a product of elementary matrices.
pub fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let mut m = Mat::identity(n);
    if n == 1 {
        return m;
    }
    for _ in 0..n + 1 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = GaussRat::from_ints(rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        let mut e = Mat::identity(n);
        e.set(i, j, c);
        m = m.mul(&e);
    }
    m
}

pub fn weight(rng: &mut ChaCha8Rng, positive: bool) -> BigRational {
    let d: i64 = rng.gen_range(2..=12);
    let n: i64 = if positive { rng.gen_range(1..d) } else { rng.gen_range(0..d) };
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Filtration by spans of eigen-columns: `F_j` holds the columns whose
/// weight is at least the `j`-th distinct weight.
pub fn filtration(location: P1Point, cols: &[Vector], weights: &[BigRational]) -> ParabolicPoint {
    let mut ws = weights.to_vec();
    ws.sort();
    ws.dedup();
    let filtration = ws
        .iter()
        .map(|w| cols.iter().zip(weights).filter(|(_, a)| *a >= w).map(|(v, _)| v.clone()).collect())
        .collect();
    ParabolicPoint { location, filtration, weights: ws }
}

/// True when `det(θ(z) - ξ)` vanishes at several sample points for some
/// eigenvalue `ξ` of the leading term: `θ` then has the constant eigenvalue `ξ`.
fn has_constant_eigenvalue(theta: &[Vec<RatFunc>], xi: &[GaussRat]) -> bool {
    let samples = [GaussRat::from_ints(7, 3), GaussRat::from_ints(-5, 11), GaussRat::from_ints(13, -2)];
    xi.iter().any(|x| {
        samples.iter().all(|z| {
            let rows: Vec<Vec<GaussRat>> = theta
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, f)| {
                    let v = f.eval(z).expect("samples avoid the poles");
                    if i == j { &v - x } else { v }
                }).collect())
                .collect();
            Mat::from_rows(rows).det().is_zero()
        })
    })
}

/// A random bundle with simple poles: `θ = A + Σ R_j/(z - p_j)` on a
/// balanced bundle, residues with distinct nonzero eigenvalues, leading
/// term with distinct eigenvalues, weights compatible with the polar
/// weight condition.
pub fn random_admissible(rng: &mut ChaCha8Rng) -> HiggsBundle {
    loop {
        if let Some(h) = try_random_admissible(rng) {
            return h;
        }
    }
}

fn try_random_admissible(rng: &mut ChaCha8Rng) -> Option<HiggsBundle> {
    let r = rng.gen_range(1..=4usize);
    let k = rng.gen_range(1..=3usize);
    let points = distinct_gauss(rng, k, 2, false);
    let q = unimodular(rng, r);
    let qi = q.inverse().unwrap();
    let xi = distinct_gauss(rng, r, 3, false);
    let a = q.mul(&Mat::diag(&xi)).mul(&qi);
    let mut theta: Vec<Vec<RatFunc>> =
        (0..r).map(|i| (0..r).map(|j| RatFunc::constant(a.get(i, j).clone())).collect()).collect();
    let mut parabolic = Vec::new();
    for p in &points {
        let rho = rng.gen_range(1..=r);
        let lambdas = distinct_gauss(rng, rho, 3, true);
        let mut diag = lambdas.clone();
        diag.resize(r, GaussRat::zero());
        let pm = unimodular(rng, r);
        let res = pm.mul(&Mat::diag(&diag)).mul(&pm.inverse().unwrap());
        let den = RatFunc::new(UPoly::one(), UPoly::linear_root(p));
        for i in 0..r {
            for j in 0..r {
                let c = res.get(i, j);
                if !c.is_zero() {
                    theta[i][j] = &theta[i][j] + &den.scale(c);
                }
            }
        }
        let cols = pm.columns();
        let ws: Vec<BigRational> = (0..r).map(|i| if i < rho { weight(rng, true) } else { BigRational::from_integer(0.into()) }).collect();
        parabolic.push(filtration(P1Point::Finite(p.clone()), &cols, &ws));
    }
    if has_constant_eigenvalue(&theta, &xi) {
        return None;
    }
    let ws: Vec<BigRational> = (0..r).map(|_| weight(rng, false)).collect();
    parabolic.push(filtration(P1Point::Infinity, &q.columns(), &ws));
    let d = rng.gen_range(-1..=1i64);
    let mut order: Vec<usize> = (0..parabolic.len()).collect();
    order.shuffle(rng);
    Some(HiggsBundle {
        rank: r,
        twist_type: vec![d; r],
        theta,
        polar: PolarDivisor::new(points.into_iter().map(|p| (p, 1)).collect()),
        parabolic: order.into_iter().map(|i| parabolic[i].clone()).collect(),
    })
}
