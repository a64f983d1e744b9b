//! The algebraic Nahm transform: spectral data of `(E, θ)` to spectral data
//! of the transformed bundle on the dual line, with its parabolic weights.

pub mod branch;
pub mod param;
pub mod side;

use num_rational::BigRational;

use crate::algebra::{char_poly_rf, Axis, BiWeightedPoly, GaussRat, MPoly, P1Point, RatFunc, RfPoly};
use crate::birational::curves_agree_in_z;
use crate::error::{NahmError, Result};
use crate::higgs::{
    check_condition_main, ledger_of_e_p, parabolic_degree, parabolic_euler_char, singularity_data, validate, HiggsBundle,
    WeightLedger,
};
use crate::spectral::{
    characteristic_polynomial, has_repeated_factor, monic_affine, naive_curve_from, standard_curve, standard_curve_from,
    transformed_rank_with, SpectralCurve, Surface,
};

pub use branch::{branches, Branch};
pub use param::{parametrize, reconstruct_matrix, RationalParam, ReconstructedMatrix};
pub use side::{normalize_entries, side_of_bundle, transform_side, BranchRecord, LedgerChain, Side, SideEntry, SideTransform};

/// The naive curve read over the dual line with the new fiber coordinate
/// negated: `det(w - θ̂(ξ))` cleared of denominators, on `P^1 x P^1`.
pub fn transform_char_poly(naive: &SpectralCurve) -> Result<SpectralCurve> {
    if naive.surface != Surface::Product {
        return Err(NahmError::Input("the transformed characteristic polynomial is read on P^1 x P^1".into()));
    }
    let b = naive.poly.reinterpret(naive.poly.axis().swap())?;
    let (fx, _) = b.axis().fiber();
    let mut images: Vec<MPoly> = (0..4).map(|i| MPoly::var(4, i)).collect();
    images[fx] = -&images[fx];
    let poly = BiWeightedPoly::new(b.poly().substitute(&images), b.axis(), vec![])?;
    SpectralCurve::new(poly, Surface::Product)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPolarPoint {
    pub point: GaussRat,
    /// Rank of the transformed polar part.
    pub rank: u32,
    /// Pole order of the eigenvalues of the transformed field.
    pub order: u32,
    pub residue_eigenvalues: Vec<GaussRat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualInfinityBlock {
    /// Eigenvalue of the transformed leading term at infinity.
    pub eigenvalue: GaussRat,
    pub multiplicity: u32,
    pub first_order: Vec<GaussRat>,
}

#[derive(Clone, Debug, Default)]
pub struct TransformOptions {
    pub param: Option<RationalParam>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformedData {
    pub source_rank: usize,
    pub rank: usize,
    pub standard: SpectralCurve,
    pub naive: SpectralCurve,
    pub dual_polar: Vec<DualPolarPoint>,
    pub leading_at_infinity: Vec<DualInfinityBlock>,
    /// Transformed standard curve on the dual side.
    pub char_poly: SpectralCurve,
    /// `det(w - θ̂(ξ))` on `P^1 x P^1` over the dual line.
    pub char_poly_product: SpectralCurve,
    /// The same, monic in `w` over `Q(i)(ξ)`.
    pub char_poly_affine: RfPoly,
    pub ledger: WeightLedger,
    pub dual_degree: i64,
    /// `(par deg E, parχ of the dual ledger)`.
    pub degree_check: (BigRational, BigRational),
    pub param: Option<RationalParam>,
    pub matrix: Option<ReconstructedMatrix>,
    pub source_side: Side,
    pub side: SideTransform,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

fn neg_all(v: impl IntoIterator<Item = GaussRat>) -> Vec<GaussRat> {
    v.into_iter().map(|x| -x).collect()
}

fn expand(eig: &[(GaussRat, usize)]) -> Vec<GaussRat> {
    eig.iter().flat_map(|(l, m)| std::iter::repeat_n(l.clone(), *m)).collect()
}

/// Checks the input and its polar weight condition.
pub fn admissible(h: &HiggsBundle) -> Result<Vec<String>> {
    let rep = validate(h);
    if !rep.ok() {
        return Err(NahmError::Input(rep.errors.join("; ")));
    }
    let (ok, witnesses) = check_condition_main(h)?;
    if !ok {
        let w = witnesses.iter().find(|w| !w.holds).expect("a failing witness");
        return Err(NahmError::Condition(format!("polar weight condition fails at z = {}: {}", w.point, w.message)));
    }
    Ok(rep.warnings)
}

pub fn nahm_transform(h: &HiggsBundle, opts: &TransformOptions) -> Result<TransformedData> {
    let mut warnings = admissible(h)?;
    let cp = characteristic_polynomial(h)?;
    if has_repeated_factor(&cp) {
        warnings.push("the characteristic polynomial has a repeated factor; the spectral curve is non-reduced".into());
    }
    let sing = singularity_data(h)?;
    let standard = standard_curve_from(h, &cp)?;
    let naive = naive_curve_from(h, &cp)?.curve;
    if !curves_agree_in_z(&standard, &naive)? {
        return Err(NahmError::Inconsistency(
            "the standard and naive spectral curves differ on the common blow-up".into(),
        ));
    }
    for block in &sing.blocks {
        if naive.poly.base_form(&P1Point::Finite(block.eigenvalue.clone())).is_some_and(|f| f.is_zero()) {
            return Err(NahmError::Unsupported(format!(
                "θ has the constant eigenvalue {}: the spectral curve contains a fiber of the dual line",
                block.eigenvalue
            )));
        }
    }
    let rank = transformed_rank_with(h, &naive)?;
    let source_side = side_of_bundle(h, &sing, &standard)?;
    let st = transform_side(&source_side)?;
    if st.dual_rank != rank || st.naive.poly != naive.poly {
        return Err(NahmError::Inconsistency(format!(
            "the side transform gives rank {} where the polar parts give {}",
            st.dual_rank, rank
        )));
    }

    let mut dual_polar = Vec::new();
    for ((xi, a), (_, n)) in st.dual_points.iter().zip(&st.dual_orders) {
        let block = sing
            .block(xi)
            .ok_or_else(|| NahmError::Inconsistency(format!("dual point {} is not an eigenvalue at infinity", xi)))?;
        if block.multiplicity as u32 != *a {
            return Err(NahmError::Inconsistency(format!(
                "eigenvalue {} at infinity has multiplicity {} but the curve meets the fiber {} times there",
                xi, block.multiplicity, a
            )));
        }
        let mut res = neg_all(expand(&block.first_order_eigenvalues));
        res.resize(rank, GaussRat::zero());
        dual_polar.push(DualPolarPoint { point: xi.clone(), rank: *a, order: *n, residue_eigenvalues: res });
    }
    let mut leading_at_infinity = Vec::new();
    for pole in &sing.poles {
        let mult: u32 = st
            .branches
            .iter()
            .filter(|rc| rc.base == P1Point::Finite(pole.point.clone()))
            .map(|rc| rc.branch.e_dual)
            .sum();
        let mut fo = neg_all(expand(&pole.eigenvalues).into_iter().filter(|l| !l.is_zero()));
        fo.resize(mult as usize, GaussRat::zero());
        leading_at_infinity.push(DualInfinityBlock { eigenvalue: -&pole.point, multiplicity: mult, first_order: fo });
    }

    let char_poly_product = transform_char_poly(&naive)?;
    let char_poly_affine = monic_affine(&char_poly_product.poly);
    let mut notes = Vec::new();
    for rc in st.branches.iter().filter(|rc| rc.extrapolated) {
        notes.push(format!(
            "extrapolated: branch at ({}, {}) ramified ({}, {}) over both lines",
            rc.base, rc.fiber, rc.branch.e_src, rc.branch.e_dual
        ));
    }

    let param = match &opts.param {
        Some(p) => {
            p.check(&naive.poly)?;
            Some(p.clone())
        }
        None => parametrize(&naive.poly),
    };
    let matrix = match &param {
        Some(p) => reconstruct_matrix(p, &st.dual_orders, rank),
        None => None,
    };
    if let Some(m) = &matrix {
        let cp = char_poly_rf(&m.affine)?;
        if cp != char_poly_affine {
            return Err(NahmError::Inconsistency(format!(
                "reconstructed matrix has characteristic polynomial {} but the transformed curve gives {}",
                cp.render("w", "ξ"),
                char_poly_affine.render("w", "ξ")
            )));
        }
    } else if param.is_some() {
        notes.push("the transformed bundle is not trivial in this presentation; no matrix reconstructed".into());
    }

    let ledger = st.ledgers.dual.clone();
    let degree_check = (parabolic_degree(h), parabolic_euler_char(&ledger));
    Ok(TransformedData {
        source_rank: h.rank,
        rank,
        standard,
        naive,
        dual_polar,
        leading_at_infinity,
        char_poly: st.dual.standard.clone(),
        char_poly_product,
        char_poly_affine,
        dual_degree: ledger.base_chi,
        ledger,
        degree_check,
        param,
        matrix,
        source_side,
        side: st,
        warnings,
        notes,
    })
}

/// Dual ledger of [`nahm_transform`] with the notes on extrapolated branches.
pub fn weight_transfer(h: &HiggsBundle) -> Result<(WeightLedger, Vec<String>)> {
    let t = nahm_transform(h, &TransformOptions::default())?;
    Ok((t.ledger, t.notes))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionReport {
    pub char_poly_match: bool,
    pub entries_match: bool,
    pub ledger_match: bool,
    pub degree_match: bool,
    pub twice: SpectralCurve,
    pub expected: SpectralCurve,
    pub twice_entries: Vec<SideEntry>,
    pub expected_entries: Vec<SideEntry>,
}

impl InvolutionReport {
    pub fn holds(&self) -> bool {
        self.char_poly_match && self.entries_match && self.ledger_match && self.degree_match
    }
}

/// Transforms twice at the level of spectral curves and labelled weights
/// and compares with `(E, -θ(-z))` pulled back by `z -> -z`.
pub fn double_transform_check(h: &HiggsBundle) -> Result<InvolutionReport> {
    involution_report(h, &nahm_transform(h, &TransformOptions::default())?)
}

/// [`double_transform_check`] from an existing transform of `h`.
pub fn involution_report(h: &HiggsBundle, once: &TransformedData) -> Result<InvolutionReport> {
    let twice = transform_side(&once.side.dual)?;
    let expected = h.reflected_negated();
    let exp_sing = singularity_data(&expected)?;
    let exp_std = standard_curve(&expected)?;
    let exp_side = side_of_bundle(&expected, &exp_sing, &exp_std)?;
    let exp_t = transform_side(&exp_side)?;
    let expected_entries = exp_t.resolved_source(&exp_side);
    let twice_entries = twice.dual.normalized_entries();
    debug_assert_eq!(twice.dual.axis, Axis::Source);
    Ok(InvolutionReport {
        char_poly_match: twice.dual.standard.poly == exp_std.poly,
        entries_match: twice_entries == expected_entries,
        ledger_match: twice.ledgers.dual.multiset() == ledger_of_e_p(&expected).multiset(),
        degree_match: twice.dual.degree == expected.degree(),
        twice: twice.dual.standard.clone(),
        expected: exp_std,
        twice_entries,
        expected_entries,
    })
}

/// Affine `θ̂` entries rendered in `ξ`.
pub fn render_matrix(m: &[Vec<RatFunc>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(|f| f.render("ξ")).collect()).collect()
}
