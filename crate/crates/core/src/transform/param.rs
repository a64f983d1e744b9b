//! Rational parametrizations of spectral curves on `P^1 x P^1` and the
//! transformed Higgs field they give when the transformed bundle is trivial.

use crate::algebra::{BiWeightedPoly, BinaryForm, GaussRat, Mat, MPoly, RatFunc, UPoly, U, V, X, Y};
use crate::error::{NahmError, Result};
use crate::parse::parse_poly;

/// `(u, v, x, y)` as binary forms in `(s, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalParam {
    pub images: [MPoly; 4],
}

impl RationalParam {
    pub fn parse(u: &str, v: &str, x: &str, y: &str) -> Result<Self> {
        let p = |text: &str| parse_poly(text, &["s", "t"]).map_err(NahmError::from);
        Ok(RationalParam { images: [p(u)?, p(v)?, p(x)?, p(y)?] })
    }

    pub fn render(&self) -> [String; 4] {
        let r = |m: &MPoly| m.render(&["s", "t"]);
        [r(&self.images[U]), r(&self.images[V]), r(&self.images[X]), r(&self.images[Y])]
    }

    fn degree(&self, a: usize, b: usize) -> Option<u32> {
        let da = self.images[a].total_degree();
        let db = self.images[b].total_degree();
        match (da, db) {
            (Some(x), Some(y)) if x == y => Some(x),
            (Some(x), None) | (None, Some(x)) => Some(x),
            _ => None,
        }
    }

    /// Checks that the parametrization lands on `curve` and is birational
    /// onto it: the two projections have the degrees of the curve.
    pub fn check(&self, curve: &BiWeightedPoly) -> Result<()> {
        if !curve.is_product() {
            return Err(NahmError::Input("parametrizations are given for the curve on P^1 x P^1".into()));
        }
        for (k, m) in self.images.iter().enumerate() {
            if m.nvars() != 2 || m.terms().any(|(e, _)| Some(e[0] + e[1]) != m.total_degree()) {
                return Err(NahmError::Input(format!("parametrization entry {} is not a binary form in s, t", k)));
            }
        }
        if !curve.poly().substitute(&self.images).is_zero() {
            return Err(NahmError::Input("the parametrization does not satisfy the spectral curve".into()));
        }
        let r = curve.fiber_degree();
        let rhat = curve.base_degree();
        let (db, df) = (self.degree(U, V), self.degree(X, Y));
        if db != Some(r) || df != Some(rhat) {
            return Err(NahmError::Input(format!(
                "parametrization has degrees ({:?}, {:?}) but a birational one needs ({}, {})",
                db, df, r, rhat
            )));
        }
        if !coprime(&self.images[U], &self.images[V]) || !coprime(&self.images[X], &self.images[Y]) {
            return Err(NahmError::Input("parametrization has common factors".into()));
        }
        Ok(())
    }
}

fn as_form(m: &MPoly) -> BinaryForm {
    if m.is_zero() {
        return BinaryForm::zero(0);
    }
    BinaryForm::from_mpoly(m, 0, 1, m.total_degree().unwrap()).expect("binary form")
}

fn coprime(a: &MPoly, b: &MPoly) -> bool {
    BinaryForm::gcd(&as_form(a), &as_form(b)).degree() == 0
}

/// Divides every form by their common factor.
fn reduce(forms: &mut [&mut MPoly]) {
    let g = forms.iter().fold(BinaryForm::zero(0), |g, f| BinaryForm::gcd(&g, &as_form(f)));
    if g.degree() == 0 {
        return;
    }
    let gm = g.to_mpoly(2, 0, 1);
    for f in forms.iter_mut() {
        if !f.is_zero() {
            **f = f.div_exact(&gm).expect("common factor divides");
        }
    }
}

fn compose(f: &BinaryForm, a: &MPoly, b: &MPoly) -> MPoly {
    f.to_mpoly(2, 0, 1).substitute(&[a.clone(), b.clone()])
}

/// Finds a parametrization when one of the projections has degree at most 2.
pub fn parametrize(curve: &BiWeightedPoly) -> Option<RationalParam> {
    if !curve.is_product() {
        return None;
    }
    let r = curve.fiber_degree();
    let rhat = curve.base_degree();
    let src = curve.reinterpret(crate::algebra::Axis::Source).ok()?;
    let dual = curve.reinterpret(crate::algebra::Axis::Dual).ok()?;
    let p = if rhat == 1 {
        linear(&dual, [X, Y, U, V])
    } else if r == 1 {
        linear(&src, [U, V, X, Y])
    } else if r == 2 {
        conic(&src, [U, V, X, Y])
    } else if rhat == 2 {
        conic(&dual, [X, Y, U, V])
    } else {
        None
    }?;
    p.check(curve).ok()?;
    Some(p)
}

/// `A(base) f0 + B(base) f1 = 0` with the base as parameter line.
fn linear(c: &BiWeightedPoly, vars: [usize; 4]) -> Option<RationalParam> {
    let [b0, b1, f0, f1] = vars;
    let a = c.fiber_coefficient(1);
    let b = c.fiber_coefficient(0);
    let (s, t) = (MPoly::var(2, 0), MPoly::var(2, 1));
    let mut x = -&compose(&b, &s, &t);
    let mut y = compose(&a, &s, &t);
    reduce(&mut [&mut x, &mut y]);
    let mut images: [MPoly; 4] = std::array::from_fn(|_| MPoly::zero(2));
    images[b0] = s;
    images[b1] = t;
    images[f0] = x;
    images[f1] = y;
    Some(RationalParam { images })
}

fn square_split(delta: &BinaryForm) -> (BinaryForm, BinaryForm) {
    let deh = delta.dehomogenized();
    let at_inf = delta.degree() - deh.deg_i().max(0) as u32;
    let mut g = BinaryForm::new(UPoly::one(), at_inf / 2);
    for (f, k) in deh.squarefree_decomposition() {
        let d = f.deg_i() as u32;
        g = g.mul(&BinaryForm::new(f, d).pow((k / 2) as u32));
    }
    let rest = delta.div_exact(&g.pow(2)).expect("square part divides");
    (g, rest)
}

fn small_points() -> Vec<(GaussRat, GaussRat)> {
    let mut out = vec![(GaussRat::zero(), GaussRat::one()), (GaussRat::one(), GaussRat::zero())];
    for a in -3i64..=3 {
        for b in 1i64..=3 {
            out.push((GaussRat::from_int(a), GaussRat::from_int(b)));
            out.push((GaussRat::from_ints(0, a), GaussRat::from_int(b)));
        }
    }
    out
}

/// Quadratic in the fiber: a conic bundle over the base, rational when the
/// discriminant is a square times a quadratic form with a `Q(i)`-point.
fn conic(c: &BiWeightedPoly, vars: [usize; 4]) -> Option<RationalParam> {
    let [b0, b1, f0, f1] = vars;
    let a2 = c.fiber_coefficient(2);
    let a1 = c.fiber_coefficient(1);
    let a0 = c.fiber_coefficient(0);
    if a2.is_zero() || a0.is_zero() {
        return None;
    }
    let disc = a1.mul(&a1).sub(&a2.mul(&a0).scale(&GaussRat::from_int(4)));
    if disc.is_zero() {
        return None;
    }
    let (g, delta) = square_split(&disc);
    if delta.degree() != 2 {
        return None;
    }
    let (al, be, ga) = (delta.coeff(2), delta.coeff(1), delta.coeff(0));
    let (p0a, p0b, p0w) = small_points().into_iter().find_map(|(a, b)| {
        let w = delta.eval(&a, &b).sqrt()?;
        Some((a, b, w))
    })?;
    let (s, t) = (MPoly::var(2, 0), MPoly::var(2, 1));
    let k = |x: &GaussRat| MPoly::constant(2, x.clone());
    let (da, db, dw) = if !p0w.is_zero() {
        (s.clone(), t.clone(), MPoly::zero(2))
    } else {
        (&t * &k(&-&p0b), &t * &k(&p0a), s.clone())
    };
    let half = GaussRat::frac(1, 2);
    let qd = &(&dw * &dw) - &(&(&(&da * &da) * &k(&al)) + &(&(&(&da * &db) * &k(&be)) + &(&(&db * &db) * &k(&ga))));
    let bd = &(&dw * &k(&p0w))
        - &(&(&(&da * &k(&(&al * &p0a))) + &(&(&db * &k(&(&(&be * &half) * &p0a))) + &(&da * &k(&(&(&be * &half) * &p0b)))))
            + &(&db * &k(&(&ga * &p0b))));
    let two = k(&GaussRat::from_int(2));
    let mut ua = &(&qd * &k(&p0a)) - &(&(&two * &bd) * &da);
    let mut ub = &(&qd * &k(&p0b)) - &(&(&two * &bd) * &db);
    let mut uw = &(&qd * &k(&p0w)) - &(&(&two * &bd) * &dw);
    reduce(&mut [&mut ua, &mut ub, &mut uw]);
    let mut x = &(-&compose(&a1, &ua, &ub)) + &(&compose(&g, &ua, &ub) * &uw);
    let mut y = &two * &compose(&a2, &ua, &ub);
    reduce(&mut [&mut x, &mut y]);
    let mut images: [MPoly; 4] = std::array::from_fn(|_| MPoly::zero(2));
    images[b0] = ua;
    images[b1] = ub;
    images[f0] = x;
    images[f1] = y;
    Some(RationalParam { images })
}

/// The transformed Higgs field as a matrix of forms in `(x, y)` of degree
/// `deg P̂`, i.e. a map `O^r̂ -> O(P̂)^r̂`, in the basis `s^{r̂-1-k} t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructedMatrix {
    pub forms: Vec<Vec<MPoly>>,
    /// `θ̂(ξ) = forms(ξ, 1) / s_P̂(ξ)`.
    pub affine: Vec<Vec<RatFunc>>,
}

/// Solves `-û b = Σ M_{b'b}(x, y) b'` for the multiplication by the fiber
/// coordinate `û = u s_P̂(x, y) / v` on the curve; `None` when the
/// transformed bundle is not trivial in this presentation.
pub fn reconstruct_matrix(param: &RationalParam, dual_orders: &[(GaussRat, u32)], rank: usize) -> Option<ReconstructedMatrix> {
    let [u, v, x, y] = &param.images;
    let mut sp = MPoly::one(2);
    let mut sp_aff = UPoly::one();
    for (xi, n) in dual_orders {
        let lin = x - &(y * &MPoly::constant(2, xi.clone()));
        sp = &sp * &lin.pow(*n);
        sp_aff = &sp_aff * &UPoly::linear_root(xi).pow(*n);
    }
    let uhat = (u * &sp).div_exact(v)?;
    let du = uhat.total_degree()? as usize;
    if rank == 0 || !du.is_multiple_of(rank) {
        return None;
    }
    let m = du / rank;
    let big = m * rank + rank - 1;
    let st = |k: usize, n: usize| MPoly::monomial(2, vec![(n - k) as u32, k as u32], GaussRat::one());
    // products x^i y^{m-i} b' for the unknowns of one column
    let mut cols_products = Vec::new();
    for bp in 0..rank {
        for i in 0..=m {
            let mono = &(&x.pow(i as u32) * &y.pow((m - i) as u32)) * &st(bp, rank - 1);
            cols_products.push((bp, i, mono));
        }
    }
    let mut sys = Mat::zeros(big + 1, cols_products.len());
    for (c, (_, _, mono)) in cols_products.iter().enumerate() {
        for (e, coef) in mono.terms() {
            sys.set(e[1] as usize, c, coef.clone());
        }
    }
    let mut forms = vec![vec![MPoly::zero(4); rank]; rank];
    for b in 0..rank {
        let rhs_poly = -&(&uhat * &st(b, rank - 1));
        let mut rhs = vec![GaussRat::zero(); big + 1];
        for (e, coef) in rhs_poly.terms() {
            rhs[e[1] as usize] = coef.clone();
        }
        let sol = sys.solve(&rhs)?;
        for (c, (bp, i, _)) in cols_products.iter().enumerate() {
            if !sol[c].is_zero() {
                let mut e = vec![0u32; 4];
                e[X] = *i as u32;
                e[Y] = (m - i) as u32;
                forms[*bp][b].add_term(e, &sol[c]);
            }
        }
    }
    let den = RatFunc::from_poly(sp_aff);
    let affine = forms
        .iter()
        .map(|row| {
            row.iter()
                .map(|f| {
                    let num = f.substitute(&[MPoly::zero(1), MPoly::zero(1), MPoly::var(1, 0), MPoly::one(1)]);
                    &RatFunc::from_poly(num.to_upoly(0).unwrap_or_else(UPoly::zero)) / &den
                })
                .collect()
        })
        .collect();
    Some(ReconstructedMatrix { forms, affine })
}
