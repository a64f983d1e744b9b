//! One side of the transform: a spectral curve on its standard surface with
//! weights attached to eigenvalue labels. Transforming a side only uses the
//! curve and the labels, so the output can be transformed again.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::linalg::intersection_dim;
use crate::algebra::{Axis, BiWeightedPoly, GaussRat, Mat, MPoly, P1Point, Vector};
use crate::birational::{local_equation, meets_section, transform_at_divisor, elementary_transform, ChiLedger, Direction};
use crate::error::{NahmError, Result};
use crate::higgs::{
    add_divisor, delete_divisor, parabolic_euler_char, HiggsBundle, LedgerEntry, ParabolicPoint, SingularityTable, Site,
    WeightLedger,
};
use crate::spectral::{dual_divisor, SpectralCurve, Surface};

use super::branch::{branches, Branch};

/// Weight carried by part of a parabolic fiber.
///
/// At infinity `block` is the eigenvalue of the leading term and `label` an
/// eigenvalue of the first-order term on that block. At a polar point
/// `label` is an eigenvalue of the leading polar coefficient. Unlabelled
/// entries share whatever the labelled ones leave over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideEntry {
    pub point: P1Point,
    pub block: Option<GaussRat>,
    pub label: Option<GaussRat>,
    pub weight: BigRational,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub axis: Axis,
    pub rank: usize,
    /// Curve on the standard surface; its fiber twist is the polar divisor.
    pub standard: SpectralCurve,
    pub entries: Vec<SideEntry>,
    pub degree: i64,
}

pub(crate) fn base_site(axis: Axis, p: &P1Point) -> Site {
    match axis {
        Axis::Source => Site::Source(p.clone()),
        Axis::Dual => Site::Dual(p.clone()),
    }
}

fn q(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Side {
    pub fn polar(&self) -> &[(GaussRat, u32)] {
        self.standard.poly.fiber_twist()
    }

    pub fn order_at(&self, p: &GaussRat) -> u32 {
        self.polar().iter().find(|(x, _)| x == p).map(|(_, n)| *n).unwrap_or(0)
    }

    pub fn ledger(&self) -> WeightLedger {
        let entries = self
            .entries
            .iter()
            .map(|e| LedgerEntry {
                site: base_site(self.axis, &e.point),
                weight: e.weight.clone(),
                multiplicity: e.multiplicity,
                deletable: e.weight.is_zero(),
            })
            .collect();
        WeightLedger::new(self.degree, entries)
    }

    /// Entries merged by `(point, block, label, weight)` and sorted.
    pub fn normalized_entries(&self) -> Vec<SideEntry> {
        normalize_entries(&self.entries)
    }
}

pub fn normalize_entries(entries: &[SideEntry]) -> Vec<SideEntry> {
    let key = |e: &SideEntry| {
        (
            e.point.clone(),
            e.block.as_ref().map(|b| b.to_string()),
            e.label.as_ref().map(|b| b.to_string()),
            e.weight.clone(),
        )
    };
    let mut sorted: Vec<SideEntry> = entries.iter().filter(|e| e.multiplicity > 0).cloned().collect();
    sorted.sort_by_key(key);
    let mut out: Vec<SideEntry> = Vec::new();
    for e in sorted {
        match out.last_mut() {
            Some(last) if key(last) == key(&e) => last.multiplicity += e.multiplicity,
            _ => out.push(e),
        }
    }
    out
}

/// Label a branch carries when it is of the simple type at its point:
/// `(1, 1)` at infinity, `(1, n)` at a polar point of order `n`.
pub fn simple_label(point: &P1Point, order: u32, b: &Branch) -> Option<GaussRat> {
    match point {
        P1Point::Infinity => (b.e_src == 1 && b.e_dual == 1).then(|| b.kappa.clone()),
        P1Point::Finite(_) => (b.e_src == 1 && b.e_dual == order).then(|| b.kappa.inv().expect("nonzero label")),
    }
}

// ---------------------------------------------------------------------------
// Side of a Higgs bundle

struct Piece {
    block: Option<GaussRat>,
    label: Option<GaussRat>,
    space: Vec<Vector>,
}

fn lift(basis: &[Vector], coords: &[GaussRat], n: usize) -> Vector {
    let mut v = vec![GaussRat::zero(); n];
    for (b, c) in basis.iter().zip(coords) {
        for i in 0..n {
            v[i] += &(&b[i] * c);
        }
    }
    v
}

/// Eigenlines of simple eigenvalues (nonzero ones only if `skip_zero`),
/// then the sum of the remaining generalized eigenspaces.
fn pieces_of(m: &Mat, eig: &[(GaussRat, usize)], basis: &[Vector], n: usize, skip_zero: bool, block: Option<GaussRat>) -> Vec<Piece> {
    let k = m.rows();
    let mut out = Vec::new();
    let mut rest = Vec::new();
    for (l, mult) in eig {
        let shifted = m.sub(&Mat::identity(k).scale(l));
        if *mult == 1 && !(skip_zero && l.is_zero()) {
            let line = shifted.kernel();
            out.push(Piece { block: block.clone(), label: Some(l.clone()), space: vec![lift(basis, &line[0], n)] });
        } else {
            for v in shifted.pow(*mult as u32).kernel() {
                rest.push(lift(basis, &v, n));
            }
        }
    }
    if !rest.is_empty() {
        out.push(Piece { block, label: None, space: rest });
    }
    out
}

fn entries_from_pieces(n: usize, pp: &ParabolicPoint, pieces: Vec<Piece>) -> Result<Vec<SideEntry>> {
    let steps = pp.filtration.len();
    let dims: Vec<Vec<usize>> = pieces
        .iter()
        .map(|pc| (0..=steps).map(|k| if k == steps { 0 } else { intersection_dim(n, &pc.space, pp.step(k)) }).collect())
        .collect();
    for k in 0..steps {
        let total: usize = dims.iter().map(|d| d[k]).sum();
        let whole = crate::algebra::linalg::span_dim(n, pp.step(k));
        if total != whole {
            return Err(NahmError::Ambiguous(format!(
                "the filtration at {} is not split along the eigenspaces of the polar data (step {}): \
                 nested filtrations inside a single eigenspace cannot be assigned to branches",
                pp.location, k
            )));
        }
    }
    let mut out = Vec::new();
    for (pc, d) in pieces.into_iter().zip(dims) {
        for k in 0..steps {
            let m = d[k] - d[k + 1];
            if m > 0 {
                out.push(SideEntry {
                    point: pp.location.clone(),
                    block: pc.block.clone(),
                    label: pc.label.clone(),
                    weight: pp.weights[k].clone(),
                    multiplicity: m as u32,
                });
            }
        }
    }
    Ok(out)
}

/// Labels the parabolic weights of `h` by the eigenvalues of its polar data.
pub fn side_of_bundle(h: &HiggsBundle, sing: &SingularityTable, standard: &SpectralCurve) -> Result<Side> {
    let n = h.rank;
    let mut entries = Vec::new();
    for pp in &h.parabolic {
        let pieces = match &pp.location {
            P1Point::Infinity => {
                let mut all = Vec::new();
                for b in &sing.blocks {
                    all.extend(pieces_of(
                        &b.first_order,
                        &b.first_order_eigenvalues,
                        &b.basis,
                        n,
                        false,
                        Some(b.eigenvalue.clone()),
                    ));
                }
                all
            }
            P1Point::Finite(p) => {
                let pole = sing.pole(p).ok_or_else(|| NahmError::Input(format!("no polar data at {}", p)))?;
                let id: Vec<Vector> = Mat::identity(n).columns();
                pieces_of(&pole.leading, &pole.eigenvalues, &id, n, true, None)
            }
        };
        entries.extend(entries_from_pieces(n, pp, pieces)?);
    }
    Ok(Side { axis: Axis::Source, rank: n, standard: standard.clone(), entries, degree: h.degree() })
}

// ---------------------------------------------------------------------------
// Transforming a side

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchRecord {
    pub base: P1Point,
    pub fiber: P1Point,
    pub branch: Branch,
    pub weight: BigRational,
    pub dual_weight: BigRational,
    /// True when the branch is ramified over both lines, where the weight
    /// rule is extrapolated rather than derived.
    pub extrapolated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerChain {
    pub source: WeightLedger,
    pub lifted: WeightLedger,
    pub deleted: WeightLedger,
    pub reread: WeightLedger,
    pub added: WeightLedger,
    pub dual: WeightLedger,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideTransform {
    pub naive: SpectralCurve,
    pub down_chi: ChiLedger,
    /// Points over which the curve meets the fiber at infinity, with the
    /// fiber multiplicity there.
    pub dual_points: Vec<(GaussRat, u32)>,
    /// Number of up transformations needed at each dual point.
    pub dual_orders: Vec<(GaussRat, u32)>,
    pub dual_rank: usize,
    pub branches: Vec<BranchRecord>,
    /// Zero-weight length off the polar section over each polar point.
    pub finite: Vec<(GaussRat, u32)>,
    /// Zero-weight length added over each dual point.
    pub fills: Vec<(GaussRat, u32)>,
    pub ledgers: LedgerChain,
    pub up_chi: ChiLedger,
    pub dual: Side,
}

impl SideTransform {
    /// The source entries resolved to branches: one entry per branch with
    /// the label the branch geometry assigns, plus the off-section zeros.
    pub fn resolved_source(&self, side: &Side) -> Vec<SideEntry> {
        let mut out = Vec::new();
        for rec in &self.branches {
            let order = rec.base.finite().map(|p| side.order_at(p)).unwrap_or(0);
            out.push(SideEntry {
                point: rec.base.clone(),
                block: if rec.base.is_infinite() { rec.fiber.finite().cloned() } else { None },
                label: simple_label(&rec.base, order, &rec.branch),
                weight: rec.weight.clone(),
                multiplicity: rec.branch.e_src,
            });
        }
        for (p, m) in &self.finite {
            out.push(SideEntry {
                point: P1Point::Finite(p.clone()),
                block: None,
                label: None,
                weight: BigRational::zero(),
                multiplicity: *m,
            });
        }
        normalize_entries(&out)
    }
}

fn negate_fiber(c: &BiWeightedPoly) -> Result<BiWeightedPoly> {
    let (fx, _) = c.axis().fiber();
    let mut images: Vec<MPoly> = (0..4).map(|i| MPoly::var(4, i)).collect();
    images[fx] = -&images[fx];
    Ok(BiWeightedPoly::new(c.poly().substitute(&images), c.axis(), c.fiber_twist().clone())?.normalize()?)
}

/// Assigns weights to the branches through one parabolic fiber.
fn assign(
    where_: &str,
    entries: &[&SideEntry],
    found: &[(P1Point, Branch)],
    finite: u32,
    label_of: impl Fn(&Branch) -> Option<GaussRat>,
) -> Result<Vec<(P1Point, Branch, BigRational)>> {
    let mut used = vec![false; entries.len()];
    let mut out = Vec::new();
    let mut open = Vec::new();
    for (fiber, b) in found {
        let hit = label_of(b).and_then(|l| {
            entries
                .iter()
                .enumerate()
                .position(|(i, e)| !used[i] && e.multiplicity == 1 && e.label.as_ref() == Some(&l))
        });
        match hit {
            Some(i) => {
                used[i] = true;
                out.push((fiber.clone(), b.clone(), entries[i].weight.clone()));
            }
            None => open.push((fiber.clone(), b.clone())),
        }
    }
    let mut pool: Vec<(BigRational, u32)> = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        if used[i] {
            continue;
        }
        match pool.iter_mut().find(|(w, _)| *w == e.weight) {
            Some(slot) => slot.1 += e.multiplicity,
            None => pool.push((e.weight.clone(), e.multiplicity)),
        }
    }
    let have: u32 = pool.iter().map(|(_, m)| m).sum();
    let need: u32 = open.iter().map(|(_, b)| b.e_src).sum::<u32>() + finite;
    if have != need {
        return Err(NahmError::Inconsistency(format!(
            "at {}: the parabolic fiber has length {} left for {} on the spectral curve",
            where_, have, need
        )));
    }
    if finite > 0 {
        let zero = pool.iter_mut().find(|(w, _)| w.is_zero());
        match zero {
            Some(slot) if slot.1 >= finite => slot.1 -= finite,
            _ => {
                return Err(NahmError::Condition(format!(
                    "at {}: the spectral curve has {} point(s) off the polar section, which need weight 0",
                    where_, finite
                )))
            }
        }
    }
    pool.retain(|(_, m)| *m > 0);
    if open.is_empty() {
        return Ok(out);
    }
    if pool.len() == 1 {
        let w = pool[0].0.clone();
        out.extend(open.into_iter().map(|(f, b)| (f, b, w.clone())));
        return Ok(out);
    }
    // distinct weights on unlabelled branches: only resolvable by length
    let mut sizes: Vec<u32> = open.iter().map(|(_, b)| b.e_src).collect();
    sizes.sort();
    let distinct = sizes.windows(2).all(|w| w[0] != w[1]);
    let mut pool_sizes: Vec<u32> = pool.iter().map(|(_, m)| *m).collect();
    pool_sizes.sort();
    if distinct && sizes == pool_sizes {
        for (f, b) in open {
            let w = pool.iter().find(|(_, m)| *m == b.e_src).unwrap().0.clone();
            out.push((f, b, w));
        }
        return Ok(out);
    }
    Err(NahmError::Ambiguous(format!(
        "at {}: weights {} cannot be matched to {} unlabelled branch(es) of ramification {:?}",
        where_,
        pool.iter().map(|(w, m)| format!("{}^{}", w, m)).collect::<Vec<_>>().join(", "),
        open.len(),
        open.iter().map(|(_, b)| b.e_src).collect::<Vec<_>>()
    )))
}

const MAX_UP: u32 = 64;

pub fn transform_side(side: &Side) -> Result<SideTransform> {
    let a = side.axis;
    let b_axis = a.swap();
    let polar: Vec<(GaussRat, u32)> = side.polar().to_vec();
    let (naive, down_chi) = transform_at_divisor(&side.standard, a, &polar, Direction::Down)?;
    if !naive.poly.is_product() {
        return Err(NahmError::Inconsistency("down transformations did not reach the product surface".into()));
    }
    let naive = SpectralCurve { poly: naive.poly, surface: Surface::Product };
    let dual_points = dual_divisor(&naive)?;
    let dual_rank = naive.poly.base_degree() as usize;
    let r = side.rank as u32;

    // branches through the parabolic fibers
    let mut records = Vec::new();
    let mut finite = Vec::new();
    let mut lifted_entries = Vec::new();
    let mut index = 0usize;
    let mut push = |records: &mut Vec<BranchRecord>, lifted: &mut Vec<LedgerEntry>, base: &P1Point, fiber: P1Point, b: Branch, w: BigRational| -> Result<()> {
        let dual_weight = &w * q(b.e_src) / q(b.e_dual);
        if dual_weight >= BigRational::one() {
            return Err(NahmError::WeightOverflow(format!(
                "branch through ({}, {}) with ramification ({}, {}) sends weight {} to {} >= 1",
                base, fiber, b.e_src, b.e_dual, w, dual_weight
            )));
        }
        lifted.push(LedgerEntry {
            site: Site::Branch { base: base.clone(), fiber: fiber.clone(), index },
            weight: w.clone(),
            multiplicity: b.e_src,
            deletable: false,
        });
        index += 1;
        records.push(BranchRecord {
            base: base.clone(),
            fiber,
            extrapolated: b.e_src > 1 && b.e_dual > 1,
            branch: b,
            weight: w,
            dual_weight,
        });
        Ok(())
    };

    let at_inf: Vec<&SideEntry> = side.entries.iter().filter(|e| e.point.is_infinite()).collect();
    for e in &at_inf {
        match &e.block {
            Some(x) if dual_points.iter().any(|(p, _)| p == x) => {}
            _ => {
                return Err(NahmError::Inconsistency(format!(
                    "weight at infinity on block {:?} which the spectral curve does not meet",
                    e.block.as_ref().map(|b| b.to_string())
                )))
            }
        }
    }
    for (xi, mult) in &dual_points {
        let fiber = P1Point::Finite(xi.clone());
        let f = local_equation(&naive.poly, &P1Point::Infinity, &fiber);
        let found: Vec<(P1Point, Branch)> = branches(&f)?.into_iter().map(|b| (fiber.clone(), b)).collect();
        let e_src: u32 = found.iter().map(|(_, b)| b.e_src).sum();
        if e_src != *mult {
            return Err(NahmError::Inconsistency(format!(
                "branches at (∞, {}) cover {} sheets but the fiber multiplicity is {}",
                xi, e_src, mult
            )));
        }
        let here: Vec<&SideEntry> = at_inf.iter().copied().filter(|e| e.block.as_ref() == Some(xi)).collect();
        let where_ = format!("infinity, block {}", xi);
        for (fib, b, w) in assign(&where_, &here, &found, 0, |b| simple_label(&P1Point::Infinity, 0, b))? {
            push(&mut records, &mut lifted_entries, &P1Point::Infinity, fib, b, w)?;
        }
    }
    for (p, n) in &polar {
        let base = P1Point::Finite(p.clone());
        let f = local_equation(&naive.poly, &base, &P1Point::Infinity);
        let found: Vec<(P1Point, Branch)> = branches(&f)?.into_iter().map(|b| (P1Point::Infinity, b)).collect();
        let e_src: u32 = found.iter().map(|(_, b)| b.e_src).sum();
        let off = r.checked_sub(e_src).ok_or_else(|| NahmError::Inconsistency(format!("too many sheets over {}", p)))?;
        let here: Vec<&SideEntry> = side.entries.iter().filter(|e| e.point == base).collect();
        let where_ = format!("polar point {}", p);
        for (fib, b, w) in assign(&where_, &here, &found, off, |b| simple_label(&base, *n, b))? {
            push(&mut records, &mut lifted_entries, &base, fib, b, w)?;
        }
        if off > 0 {
            finite.push((p.clone(), off));
            lifted_entries.push(LedgerEntry {
                site: Site::Away { axis: a, point: base.clone() },
                weight: BigRational::zero(),
                multiplicity: off,
                deletable: true,
            });
        }
    }
    let stray: Vec<&SideEntry> = side
        .entries
        .iter()
        .filter(|e| match &e.point {
            P1Point::Infinity => false,
            P1Point::Finite(p) => !polar.iter().any(|(x, _)| x == p),
        })
        .collect();
    if let Some(e) = stray.first() {
        return Err(NahmError::Inconsistency(format!("weight at {} which is not a polar point", e.point)));
    }

    // ledger chain
    let source = side.ledger();
    let lifted = WeightLedger::new(side.degree, lifted_entries);
    if parabolic_euler_char(&lifted) != parabolic_euler_char(&source) {
        return Err(NahmError::Inconsistency("lifting the weights to the branches changed the parabolic χ".into()));
    }
    let away: Vec<(Site, u32)> =
        finite.iter().map(|(p, m)| (Site::Away { axis: a, point: P1Point::Finite(p.clone()) }, *m)).collect();
    let deleted = delete_divisor(&lifted, &away)?;
    let mut reread = deleted.clone();
    for e in reread.entries.iter_mut() {
        if let Site::Branch { index, .. } = &e.site {
            let rec = &records[*index];
            e.weight = rec.dual_weight.clone();
            e.multiplicity = rec.branch.e_dual;
        }
    }
    let mut fills = Vec::new();
    for (xi, _) in &dual_points {
        let here: u32 =
            records.iter().filter(|rc| rc.fiber == P1Point::Finite(xi.clone())).map(|rc| rc.branch.e_dual).sum();
        let fill = (dual_rank as u32).checked_sub(here).ok_or_else(|| {
            NahmError::Inconsistency(format!("branches over the dual point {} exceed the transformed rank", xi))
        })?;
        fills.push((xi.clone(), fill));
    }
    let at_dual_inf: u32 = records.iter().filter(|rc| rc.fiber.is_infinite()).map(|rc| rc.branch.e_dual).sum();
    if at_dual_inf != dual_rank as u32 {
        return Err(NahmError::Inconsistency(format!(
            "polar branches cover {} sheets over the dual infinity but the transformed rank is {}",
            at_dual_inf, dual_rank
        )));
    }
    let add: Vec<(Site, u32)> =
        fills.iter().map(|(x, m)| (Site::Away { axis: b_axis, point: P1Point::Finite(x.clone()) }, *m)).collect();
    let added = add_divisor(&reread, &add)?;
    let dual_ledger = added.relocate(|s| match s {
        Site::Branch { fiber, .. } => base_site(b_axis, fiber),
        Site::Away { point, .. } => base_site(b_axis, point),
        other => other.clone(),
    });

    // transformed standard curve
    let mut cur = SpectralCurve { poly: naive.poly.reinterpret(b_axis)?, surface: Surface::Product };
    let mut up_chi = ChiLedger::of(&cur.poly);
    let mut dual_orders = Vec::new();
    for (xi, _) in &dual_points {
        let at = P1Point::Finite(xi.clone());
        let mut count = 0;
        while meets_section(&cur, &at, Direction::Up) {
            if count == MAX_UP {
                return Err(NahmError::Unsupported(format!("more than {} up transformations needed at {}", MAX_UP, xi)));
            }
            let step = elementary_transform(&cur, b_axis, &at, Direction::Up)?;
            up_chi.blown_up.push(step.blown_up);
            up_chi.contracted.push(step.contracted);
            cur = step.curve;
            count += 1;
        }
        dual_orders.push((xi.clone(), count));
    }
    let standard = SpectralCurve { poly: negate_fiber(&cur.poly)?, surface: Surface::Standard };
    let order_of = |x: &GaussRat| dual_orders.iter().find(|(p, _)| p == x).map(|(_, n)| *n).unwrap_or(0);

    // dual entries
    let mut entries = Vec::new();
    for rec in &records {
        let seen = rec.branch.swapped();
        let (point, block, label) = match &rec.fiber {
            P1Point::Infinity => {
                let block = rec.base.finite().map(|p| -p);
                (P1Point::Infinity, block, simple_label(&P1Point::Infinity, 0, &seen))
            }
            P1Point::Finite(xi) => {
                let at = rec.fiber.clone();
                let label = simple_label(&at, order_of(xi), &seen);
                (at, None, label)
            }
        };
        entries.push(SideEntry { point, block, label, weight: rec.dual_weight.clone(), multiplicity: seen.e_src });
    }
    for (xi, m) in &fills {
        if *m > 0 {
            entries.push(SideEntry {
                point: P1Point::Finite(xi.clone()),
                block: None,
                label: None,
                weight: BigRational::zero(),
                multiplicity: *m,
            });
        }
    }
    let dual = Side { axis: b_axis, rank: dual_rank, standard, entries, degree: dual_ledger.base_chi };
    if dual.ledger().multiset() != dual_ledger.multiset() {
        return Err(NahmError::Inconsistency("the dual ledger does not match the transferred weights".into()));
    }
    Ok(SideTransform {
        naive,
        down_chi,
        dual_points,
        dual_orders,
        dual_rank,
        branches: records,
        finite,
        fills,
        ledgers: LedgerChain { source, lifted, deleted, reread, added, dual: dual_ledger },
        up_chi,
        dual,
    })
}
