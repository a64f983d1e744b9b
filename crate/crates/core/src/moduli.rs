//! Dimension of the moduli spaces and a stability probe driven by the
//! factorization of the spectral curve.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::linalg::{intersection_dim, span_basis, span_dim};
use crate::algebra::{roots_in_field, Axis, BiWeightedPoly, GaussRat, MPoly, Mat, P1Point, RatFunc, UPoly, Vector, U, V, X, Y};
use crate::error::{NahmError, Result};
use crate::higgs::{parabolic_degree, singularity_data, validate, HiggsBundle, ParabolicPoint, PolarDivisor};
use crate::spectral::{principal_part_matrix, standard_curve};
use crate::transform::{branches, TransformedData};

/// Ranks of the polar parts of `θ` and of its transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityProfile {
    pub r: usize,
    pub residue_ranks: Vec<usize>,
    pub dual_residue_ranks: Vec<usize>,
}

impl SingularityProfile {
    pub fn new(r: usize, residue_ranks: Vec<usize>, dual_residue_ranks: Vec<usize>) -> Result<Self> {
        let p = SingularityProfile { r, residue_ranks, dual_residue_ranks };
        p.check()?;
        Ok(p)
    }

    pub fn dual_rank(&self) -> usize {
        self.residue_ranks.iter().sum()
    }

    fn check(&self) -> Result<()> {
        if self.r == 0 {
            return Err(NahmError::Input("the rank must be positive".into()));
        }
        if self.residue_ranks.iter().chain(&self.dual_residue_ranks).any(|&k| k == 0) {
            return Err(NahmError::Input("polar parts of rank zero are not singular points".into()));
        }
        if self.dual_rank() == 0 {
            return Err(NahmError::Input("the transformed rank is zero".into()));
        }
        let back: usize = self.dual_residue_ranks.iter().sum();
        if back != self.r {
            return Err(NahmError::Input(format!(
                "the dual polar ranks sum to {} but the rank is {}",
                back, self.r
            )));
        }
        Ok(())
    }

    pub fn swap(&self) -> SingularityProfile {
        SingularityProfile {
            r: self.dual_rank(),
            residue_ranks: self.dual_residue_ranks.clone(),
            dual_residue_ranks: self.residue_ranks.clone(),
        }
    }

    fn formula(&self) -> i64 {
        let r = self.r as i64;
        let rh = self.dual_rank() as i64;
        let sq = |v: &[usize]| v.iter().map(|&k| (k * k) as i64).sum::<i64>();
        2 * r * rh + 2 - r - rh - sq(&self.residue_ranks) - sq(&self.dual_residue_ranks)
    }
}

/// `2 r r̂ + 2 - r - r̂ - Σ rk² - Σ rk̂²`, checked against the swapped profile.
pub fn moduli_dimension(p: &SingularityProfile) -> Result<i64> {
    p.check()?;
    let d = p.formula();
    let s = p.swap();
    s.check()?;
    if s.formula() != d {
        return Err(NahmError::Inconsistency(format!(
            "dimension {} changes to {} when the roles of the two lines are exchanged",
            d,
            s.formula()
        )));
    }
    Ok(d)
}

/// Profile of a bundle and its transform; polar ranks are those of the
/// full principal parts.
pub fn profile_of(h: &HiggsBundle, t: &TransformedData) -> Result<SingularityProfile> {
    let residue_ranks = h.polar.points.iter().map(|(p, n)| principal_part_matrix(h, p, *n).rank()).collect();
    let dual = t.dual_polar.iter().map(|d| d.rank as usize).collect();
    SingularityProfile::new(h.rank, residue_ranks, dual)
}

/// A `θ`-invariant subbundle spanned by constant vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantSubbundle {
    pub basis: Vec<Vector>,
    pub degree: i64,
    pub parabolic_degree: BigRational,
}

impl InvariantSubbundle {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn slope(&self) -> BigRational {
        &self.parabolic_degree / BigRational::from_integer(BigInt::from(self.rank()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable { reason: String },
    /// A subbundle whose slope is at least that of the bundle.
    Unstable { witness: InvariantSubbundle, slope: BigRational },
    Undetermined { factors: Vec<String>, reason: String },
}

impl StabilityVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            StabilityVerdict::Stable { .. } => "stable",
            StabilityVerdict::Unstable { .. } => "unstable",
            StabilityVerdict::Undetermined { .. } => "undetermined",
        }
    }
}

/// Base points tried when looking for branch data and a split fiber: the
/// polar points first, then small Gaussian integers.
fn sample_shifts(h: &HiggsBundle) -> Vec<GaussRat> {
    let mut out: Vec<GaussRat> = h.polar.points.iter().map(|(p, _)| p.clone()).collect();
    for (a, b) in [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (2, 0), (-2, 0), (1, 1), (1, -1), (-1, 1), (-1, -1), (3, 0), (-3, 0), (0, 2), (0, -2), (2, 1), (1, 2), (5, 0), (7, 0)] {
        let p = GaussRat::from_ints(a, b);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// The curve in the chart around a base point, as a polynomial in
/// `(s, x)` with `s` the local base coordinate centered at the point.
fn local_chart(curve: &MPoly, base: &P1Point) -> MPoly {
    let one = MPoly::one(2);
    let s = MPoly::var(2, 0);
    let x = MPoly::var(2, 1);
    match base {
        P1Point::Infinity => curve.substitute(&[one.clone(), s, x, one]),
        P1Point::Finite(a) => curve.substitute(&[&s + &MPoly::constant(2, a.clone()), one.clone(), x, one]),
    }
}

/// Degrees that a factor may have, read off the ramification of the
/// branches over one base point.
fn branch_degrees(chart: &MPoly, r: usize) -> Option<Vec<bool>> {
    let fiber = chart.eval_var(0, &GaussRat::zero()).to_upoly(1)?;
    let (roots, rest) = roots_in_field(&fiber);
    if rest.degree().unwrap_or(0) > 0 {
        return None;
    }
    let mut sums = vec![false; r + 1];
    sums[0] = true;
    for (x0, _) in roots {
        let local = chart.substitute(&[MPoly::var(2, 0), &MPoly::var(2, 1) + &MPoly::constant(2, x0)]);
        for b in branches(&local).ok()? {
            let e = b.e_src as usize;
            for k in (e..=r).rev() {
                if sums[k - e] {
                    sums[k] = true;
                }
            }
        }
    }
    Some(sums)
}

/// Power series roots `x_i(s)` of a chart whose fiber over `s = 0` has `r`
/// distinct roots in `Q(i)`, to `n` terms.
fn lift_roots(chart: &MPoly, r: usize, n: usize) -> Option<Vec<Vec<GaussRat>>> {
    let fiber = chart.eval_var(0, &GaussRat::zero()).to_upoly(1)?;
    if fiber.degree() != Some(r) {
        return None;
    }
    let (roots, rest) = roots_in_field(&fiber);
    if rest.degree().unwrap_or(0) > 0 || roots.len() != r || roots.iter().any(|(_, m)| *m > 1) {
        return None;
    }
    let coeffs: Vec<UPoly> = (0..=r as u32).map(|k| chart.coeff_of(1, k).to_upoly(0).unwrap_or_else(UPoly::zero)).collect();
    let dfx = fiber.derivative();
    let eval = |xs: &[GaussRat], prec: usize| -> Vec<GaussRat> {
        let mut acc = vec![GaussRat::zero(); prec];
        for c in coeffs.iter().rev() {
            acc = series_mul(&acc, xs, prec);
            for (k, a) in acc.iter_mut().enumerate() {
                *a += &c.coeff(k);
            }
        }
        acc
    };
    let mut out = Vec::new();
    for (x0, _) in roots {
        let slope = dfx.eval(&x0).inv()?;
        let mut xs = vec![x0];
        for j in 1..n {
            xs.push(GaussRat::zero());
            let v = eval(&xs, j + 1);
            xs[j] = -(&v[j] * &slope);
        }
        out.push(xs);
    }
    Some(out)
}

fn series_mul(a: &[GaussRat], b: &[GaussRat], prec: usize) -> Vec<GaussRat> {
    let mut out = vec![GaussRat::zero(); prec];
    for (i, x) in a.iter().enumerate().take(prec) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// Subsets of `0..n` of size `k` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// A monic factor of the chart from the series roots in `pick`, if the
/// truncated product respects the degree bound `deg c_k <= k m` and divides.
fn candidate(chart: &MPoly, roots: &[Vec<GaussRat>], pick: &[usize], m: usize) -> Option<(MPoly, MPoly)> {
    let d = pick.len();
    let prec = d * m + 1;
    // product of (x - x_i(s)), as a list of x-coefficients (highest first)
    let mut prod: Vec<Vec<GaussRat>> = vec![{
        let mut one = vec![GaussRat::zero(); prec];
        one[0] = GaussRat::one();
        one
    }];
    for &i in pick {
        let root: Vec<GaussRat> = roots[i].iter().take(prec).cloned().collect();
        let mut next = vec![vec![GaussRat::zero(); prec]; prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            for t in 0..prec {
                next[k][t] += &c[t];
            }
            let shifted = series_mul(c, &root, prec);
            for t in 0..prec {
                next[k + 1][t] -= &shifted[t];
            }
        }
        prod = next;
    }
    let mut g = MPoly::zero(2);
    for (k, c) in prod.iter().enumerate() {
        for (t, a) in c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if t > k * m {
                return None;
            }
            g.add_term(vec![t as u32, (d - k) as u32], a);
        }
    }
    let h = chart.div_exact(&g)?;
    Some((g, h))
}

/// Monic irreducible factors of a chart polynomial of `x`-degree `r`, or
/// `None` when the search cannot certify a complete factorization.
fn factor_chart(chart: &MPoly, r: usize, m: usize, shifts: &[GaussRat]) -> Option<Vec<MPoly>> {
    if r <= 1 {
        return Some(vec![chart.clone()]);
    }
    // the chart is centered at the current base point; degree constraints
    // come from the branches here and after recentering at a few others
    let mut allowed = vec![true; r + 1];
    let mut split_at: Option<GaussRat> = None;
    for a in shifts {
        let c = chart.substitute(&[&MPoly::var(2, 0) + &MPoly::constant(2, a.clone()), MPoly::var(2, 1)]);
        if let Some(s) = branch_degrees(&c, r) {
            for k in 0..=r {
                allowed[k] &= s[k];
            }
        }
        if split_at.is_none() && lift_roots(&c, r, 1).is_some() {
            split_at = Some(a.clone());
        }
    }
    if (1..r).all(|k| !allowed[k]) {
        return Some(vec![chart.clone()]);
    }
    let a = split_at?;
    let shift = |p: &MPoly, by: &GaussRat| p.substitute(&[&MPoly::var(2, 0) + &MPoly::constant(2, by.clone()), MPoly::var(2, 1)]);
    let c = shift(chart, &a);
    let roots = lift_roots(&c, r, (r / 2) * m + 1)?;
    for d in 1..=r / 2 {
        if !allowed[d] {
            continue;
        }
        for pick in subsets(r, d) {
            if let Some((g, h)) = candidate(&c, &roots, &pick, m) {
                let back = -&a;
                let mut out = factor_chart(&shift(&g, &back), d, m, shifts)?;
                out.extend(factor_chart(&shift(&h, &back), r - d, m, shifts)?);
                return Some(out);
            }
        }
    }
    Some(vec![chart.clone()])
}

/// A chart factor of `x`-degree `d` as a form on the standard surface.
fn homogenize(f: &MPoly, base: &P1Point, m: usize) -> Option<MPoly> {
    let d = f.degree_in(1)? as usize;
    let mut out = MPoly::zero(4);
    for (e, c) in f.terms() {
        let (a, b) = (e[0] as usize, e[1] as usize);
        let k = d - b;
        if a > k * m {
            return None;
        }
        let mut exps = vec![0u32; 4];
        match base {
            P1Point::Infinity => {
                exps[V] = a as u32;
                exps[U] = (k * m - a) as u32;
            }
            P1Point::Finite(_) => {
                exps[U] = a as u32;
                exps[V] = (k * m - a) as u32;
            }
        }
        exps[X] = b as u32;
        exps[Y] = k as u32;
        out.add_term(exps, c);
    }
    Some(out)
}

/// Irreducible factors of the standard spectral curve over `Q(i)`, as
/// forms on the standard surface.
pub fn factor_spectral_curve(h: &HiggsBundle) -> Result<Option<Vec<BiWeightedPoly>>> {
    let curve = standard_curve(h)?;
    let m = h.polar.degree() as usize;
    let finite = sample_shifts(h);
    let near_infinity: Vec<GaussRat> = finite.iter().filter(|p| !h.polar.points.iter().any(|(q, _)| q == *p)).cloned().collect();
    let origin = P1Point::Finite(GaussRat::zero());
    for (base, shifts) in [(origin, finite), (P1Point::Infinity, near_infinity)] {
        let chart = local_chart(curve.poly.poly(), &base);
        let Some(parts) = factor_chart(&chart, h.rank, m, &shifts) else { continue };
        let mut out = Vec::new();
        for p in parts {
            let form = homogenize(&p, &base, m)
                .ok_or_else(|| NahmError::Inconsistency("a factor of the spectral curve breaks the degree bound".into()))?;
            out.push(BiWeightedPoly::new(form, Axis::Source, h.polar.points.clone())?.normalize()?);
        }
        return Ok(Some(out));
    }
    Ok(None)
}

fn theta_at(h: &HiggsBundle, z: &GaussRat) -> Option<Mat> {
    let rows: Option<Vec<Vec<GaussRat>>> = h.theta.iter().map(|row| row.iter().map(|f| f.eval(z)).collect()).collect();
    Some(Mat::from_rows(rows?))
}

/// `g(z0, s_P(z0) θ(z0))` for a factor `g` of the standard curve.
fn factor_at(h: &HiggsBundle, g: &BiWeightedPoly, z: &GaussRat) -> Option<Mat> {
    let sp = h.polar.section().eval(z);
    if sp.is_zero() {
        return None;
    }
    let t = theta_at(h, z)?.scale(&sp);
    let one = MPoly::one(1);
    let form = g.poly().substitute(&[MPoly::constant(1, z.clone()), one.clone(), MPoly::var(1, 0), one]).to_upoly(0)?;
    let n = h.rank;
    let mut acc = Mat::zeros(n, n);
    for c in form.coeffs().iter().rev() {
        acc = acc.mul(&t).add(&Mat::identity(n).scale(c));
    }
    Some(acc)
}

fn same_span(n: usize, a: &[Vector], b: &[Vector]) -> bool {
    span_dim(n, a) == span_dim(n, b) && intersection_dim(n, a, b) == span_dim(n, a)
}

/// Constant subspace `ker g(θ)` when it is independent of the base point and
/// invariant under `θ(z)` for all `z`.
fn constant_kernel(h: &HiggsBundle, g: &BiWeightedPoly) -> Option<Vec<Vector>> {
    let n = h.rank;
    let mut found: Option<Vec<Vector>> = None;
    let mut samples = 0;
    for k in 2..40i64 {
        let z = GaussRat::from_ints(k, k % 3 - 1);
        let Some(m) = factor_at(h, g, &z) else { continue };
        let ker = m.kernel();
        match &found {
            None => found = Some(ker),
            Some(prev) if same_span(n, prev, &ker) => {}
            Some(_) => return None,
        }
        samples += 1;
        if samples == 3 {
            break;
        }
    }
    let w = span_basis(n, &found?);
    if w.len() != g.fiber_degree() as usize {
        return None;
    }
    // annihilator rows c with c·w = 0
    let ann = Mat::from_rows(w.clone()).kernel();
    for v in &w {
        for c in &ann {
            let mut acc = RatFunc::zero();
            for i in 0..n {
                for j in 0..n {
                    if c[i].is_zero() || v[j].is_zero() {
                        continue;
                    }
                    acc = &acc + &h.theta[i][j].scale(&(&c[i] * &v[j]));
                }
            }
            if !acc.is_zero() {
                return None;
            }
        }
    }
    Some(w)
}

/// Degree of the saturation of a constant subspace of `⊕ O(d_i)` and its
/// fiber at infinity in the frame `z^{d_i} e_i`.
fn constant_subspace_degree(h: &HiggsBundle, w: &[Vector]) -> (i64, Vec<Vector>) {
    let n = h.rank;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (h.twist_type[i], i));
    let permuted: Vec<Vec<GaussRat>> = w.iter().map(|v| order.iter().map(|&i| v[i].clone()).collect()).collect();
    let (red, pivots) = Mat::from_rows(permuted).rref();
    let mut degree = 0;
    let mut fiber = Vec::new();
    for (row, &p) in pivots.iter().enumerate() {
        let d = h.twist_type[order[p]];
        degree += d;
        let mut v = vec![GaussRat::zero(); n];
        for (col, &i) in order.iter().enumerate() {
            if h.twist_type[i] == d {
                v[i] = red.get(row, col).clone();
            }
        }
        fiber.push(v);
    }
    (degree, fiber)
}

fn induced_weight(pp: &ParabolicPoint, n: usize, w: &[Vector]) -> BigRational {
    let mut total = BigRational::zero();
    for (j, a) in pp.weights.iter().enumerate() {
        let here = intersection_dim(n, w, pp.step(j));
        let next = intersection_dim(n, w, pp.step(j + 1));
        total += a * BigRational::from_integer(BigInt::from((here - next) as i64));
    }
    total
}

pub fn invariant_subbundle(h: &HiggsBundle, w: Vec<Vector>) -> InvariantSubbundle {
    let n = h.rank;
    let (degree, at_infinity) = constant_subspace_degree(h, &w);
    let mut pd = BigRational::from_integer(BigInt::from(degree));
    for pp in &h.parabolic {
        let fiber = if pp.location == P1Point::Infinity { &at_infinity } else { &w };
        pd += induced_weight(pp, n, fiber);
    }
    InvariantSubbundle { basis: w, degree, parabolic_degree: pd }
}

/// Probe of parabolic stability. An irreducible spectral curve certifies
/// stability; a reducible one is examined through constant invariant
/// subspaces cut out by its factors.
pub fn stability_probe(h: &HiggsBundle) -> Result<StabilityVerdict> {
    let rep = validate(h);
    if !rep.ok() {
        return Err(NahmError::Input(rep.errors.join("; ")));
    }
    singularity_data(h)?;
    let mu = parabolic_degree(h) / BigRational::from_integer(BigInt::from(h.rank as i64));
    let Some(factors) = factor_spectral_curve(h)? else {
        return Ok(StabilityVerdict::Undetermined {
            factors: vec![standard_curve(h)?.render()],
            reason: "no base point with a split fiber over Q(i) was found".into(),
        });
    };
    if factors.len() == 1 {
        return Ok(StabilityVerdict::Stable { reason: "the spectral curve is irreducible over Q(i)".into() });
    }
    let rendered: Vec<String> = factors.iter().map(|f| f.render()).collect();
    let mut pieces = Vec::new();
    for g in &factors {
        pieces.push(constant_kernel(h, g));
    }
    let known: Vec<&Vec<Vector>> = pieces.iter().flatten().collect();
    let n = h.rank;
    let mut best: Option<InvariantSubbundle> = None;
    for k in 1..=known.len() {
        for pick in subsets(known.len(), k) {
            let w: Vec<Vector> = pick.iter().flat_map(|&i| known[i].iter().cloned()).collect();
            let w = span_basis(n, &w);
            if w.len() == n {
                continue;
            }
            let sub = invariant_subbundle(h, w);
            if sub.slope() >= mu && best.as_ref().is_none_or(|b| sub.slope() > b.slope()) {
                best = Some(sub);
            }
        }
    }
    if let Some(witness) = best {
        let slope = witness.slope();
        return Ok(StabilityVerdict::Unstable { witness, slope });
    }
    let total: Vec<Vector> = known.iter().flat_map(|w| w.iter().cloned()).collect();
    let distinct = (0..factors.len()).all(|i| (0..i).all(|j| factors[i] != factors[j]));
    if known.len() == factors.len() && span_dim(n, &total) == n && distinct {
        return Ok(StabilityVerdict::Stable {
            reason: "θ splits along the spectral factors and every invariant sum has smaller slope".into(),
        });
    }
    Ok(StabilityVerdict::Undetermined {
        factors: rendered,
        reason: "the spectral curve is reducible and θ does not split along constant subspaces".into(),
    })
}

/// The transformed bundle assembled from the reconstructed matrix and the
/// dual weights, when every dual weight sits on an identifiable line.
pub fn reassemble(t: &TransformedData) -> Option<HiggsBundle> {
    let m = t.matrix.as_ref()?;
    let r = t.rank;
    let polar = PolarDivisor::new(t.dual_polar.iter().map(|d| (d.point.clone(), d.order)).collect());
    let mut h = HiggsBundle { rank: r, twist_type: vec![0; r], theta: m.affine.clone(), polar, parabolic: Vec::new() };
    let sing = singularity_data(&h).ok()?;
    let mut sites: Vec<P1Point> = Vec::new();
    for e in &t.side.dual.entries {
        if !sites.contains(&e.point) {
            sites.push(e.point.clone());
        }
    }
    for site in sites {
        let entries: Vec<_> = t.side.dual.entries.iter().filter(|e| e.point == site).collect();
        let mut weights: Vec<BigRational> = entries.iter().map(|e| e.weight.clone()).collect();
        weights.sort();
        weights.dedup();
        if weights.len() == 1 {
            h.parabolic.push(ParabolicPoint::trivial(site, r, weights[0].clone()));
            continue;
        }
        let mut lines: Vec<(BigRational, Vector)> = Vec::new();
        for e in &entries {
            if e.multiplicity != 1 {
                return None;
            }
            let label = e.label.as_ref()?;
            let line = match &site {
                P1Point::Finite(p) => {
                    let pole = sing.pole(p)?;
                    if pole.order != 1 {
                        return None;
                    }
                    let ker = pole.leading.sub(&Mat::identity(r).scale(label)).kernel();
                    if ker.len() != 1 {
                        return None;
                    }
                    ker[0].clone()
                }
                P1Point::Infinity => {
                    let block = sing.block(e.block.as_ref()?)?;
                    if block.basis.len() == 1 {
                        block.basis[0].clone()
                    } else {
                        let k = block.basis.len();
                        let ker = block.first_order.sub(&Mat::identity(k).scale(label)).kernel();
                        if ker.len() != 1 {
                            return None;
                        }
                        let mut v = vec![GaussRat::zero(); r];
                        for (c, b) in ker[0].iter().zip(&block.basis) {
                            for i in 0..r {
                                v[i] += &(c * &b[i]);
                            }
                        }
                        v
                    }
                }
            };
            lines.push((e.weight.clone(), line));
        }
        let all: Vec<Vector> = lines.iter().map(|(_, v)| v.clone()).collect();
        if span_dim(r, &all) != r {
            return None;
        }
        let filtration = weights
            .iter()
            .map(|w| lines.iter().filter(|(a, _)| a >= w).map(|(_, v)| v.clone()).collect())
            .collect();
        h.parabolic.push(ParabolicPoint { location: site, filtration, weights });
    }
    if !validate(&h).ok() {
        return None;
    }
    Some(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_examples() {
        let p = SingularityProfile::new(2, vec![2], vec![1, 1]).unwrap();
        assert_eq!(moduli_dimension(&p).unwrap(), 0);
        let q = SingularityProfile::new(2, vec![1, 1], vec![1, 1]).unwrap();
        assert_eq!(moduli_dimension(&q).unwrap(), 2);
    }

    #[test]
    fn inconsistent_profile() {
        assert!(SingularityProfile::new(3, vec![2], vec![1, 1]).is_err());
        assert!(SingularityProfile::new(2, vec![0, 2], vec![1, 1]).is_err());
    }

    #[test]
    fn subsets_count() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn series_roots_of_a_circle() {
        // x^2 = 1 - s^2: x = ±(1 - s^2/2 - s^4/8 ...)
        let f = crate::parse::parse_poly("x^2 + s^2 - 1", &["s", "x"]).unwrap();
        let roots = lift_roots(&f, 2, 5).unwrap();
        let plus = roots.iter().find(|r| r[0].is_one()).unwrap();
        assert_eq!(plus[2], GaussRat::frac(-1, 2));
        assert_eq!(plus[4], GaussRat::frac(-1, 8));
        assert!(plus[1].is_zero() && plus[3].is_zero());
    }
}
