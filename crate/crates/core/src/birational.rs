//! Blow-ups at linear centers and elementary transformations of ruled surfaces.

use crate::algebra::biweighted::point_form;
use crate::algebra::{Axis, BiWeightedPoly, ChartSubstitution, GaussRat, MPoly, P1Point};
use crate::error::{NahmError, Result};
use crate::spectral::{SpectralCurve, Surface};

/// Length-`n` subscheme with ideal `(s^n, t)` at `(base, fiber)`, where `s`
/// is the local base coordinate and `t = 0` is the constant section through
/// the fiber point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCenter {
    pub axis: Axis,
    pub base: P1Point,
    pub fiber: P1Point,
    pub length: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Blow up where the curve meets the section `fy = 0`; the twist grows.
    Up,
    /// Blow up on the section `fx = 0`; the twist drops.
    Down,
}

/// Local equation at `(base, fiber)` in coordinates `(s, t)`; `1/z` is used
/// at infinity.
pub fn local_equation(c: &BiWeightedPoly, base: &P1Point, fiber: &P1Point) -> MPoly {
    let (ba, bb) = c.axis().base();
    let (fx, fy) = c.axis().fiber();
    let s = MPoly::var(2, 0);
    let t = MPoly::var(2, 1);
    let one = MPoly::one(2);
    let mut images = vec![MPoly::zero(2); 4];
    match base {
        P1Point::Finite(p) => {
            images[ba] = &s + &MPoly::constant(2, p.clone());
            images[bb] = one.clone();
        }
        P1Point::Infinity => {
            images[ba] = one.clone();
            images[bb] = s;
        }
    }
    match fiber {
        P1Point::Finite(q) => {
            images[fx] = &t + &MPoly::constant(2, q.clone());
            images[fy] = one;
        }
        P1Point::Infinity => {
            images[fx] = one;
            images[fy] = t;
        }
    }
    c.poly().substitute(&images)
}

/// Lowest total degree of a local equation at the origin.
pub fn local_multiplicity(f: &MPoly) -> u32 {
    f.min_total_degree().unwrap_or(0)
}

pub fn multiplicity_at(c: &SpectralCurve, base: &P1Point, fiber: &P1Point) -> u32 {
    local_multiplicity(&local_equation(&c.poly, base, fiber))
}

/// Proper transform in the chart of an iterated blow-up that follows the
/// section `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalBlowup {
    pub chart: MPoly,
    pub multiplicities: Vec<u32>,
}

pub fn proper_transform_local(f: &MPoly, n: u32) -> LocalBlowup {
    let s = MPoly::var(2, 0);
    let st = &s * &MPoly::var(2, 1);
    let mut g = f.clone();
    let mut ms = Vec::new();
    for _ in 0..n {
        let m = local_multiplicity(&g);
        let h = g.substitute(&[s.clone(), st.clone()]);
        g = h.div_exact(&s.pow(m)).expect("multiplicity power divides");
        ms.push(m);
    }
    LocalBlowup { chart: g, multiplicities: ms }
}

/// Pushes a local proper transform back down: `s^{Σm} g(s, t/s^n)` with the
/// powers of `s` cleared; `None` if a pole along the exceptional divisor remains.
pub fn push_down_local(b: &LocalBlowup) -> Option<MPoly> {
    let n = b.multiplicities.len() as u32;
    let total: u32 = b.multiplicities.iter().sum();
    let mut out = MPoly::zero(2);
    for (e, c) in b.chart.terms() {
        // s^{e0} (t / s^n)^{e1} * s^{total}
        let se = e[0] as i64 - (n * e[1]) as i64 + total as i64;
        if se < 0 {
            return None;
        }
        out.add_term(vec![se as u32, e[1]], c);
    }
    Some(out)
}

/// Order along the last exceptional divisor of the total transform, read
/// off one substitution `t -> s^n t`.
pub fn total_transform_order(f: &MPoly, n: u32) -> u32 {
    let s = MPoly::var(2, 0);
    let sn_t = &s.pow(n) * &MPoly::var(2, 1);
    let g = f.substitute(&[s, sn_t]);
    g.terms().map(|(e, _)| e[0]).min().unwrap_or(0)
}

/// Arithmetic genus of a curve of fiber degree `d` and base degree `B` on the
/// Hirzebruch surface with twist degree `τ`:
/// `2 p_a - 2 = -τ d (d-2) + d (B - 2 - τ) + B (d - 2)`.
pub fn arithmetic_genus(c: &BiWeightedPoly) -> i64 {
    let d = c.fiber_degree() as i64;
    let b = c.base_degree() as i64;
    let t = c.twist_degree() as i64;
    (-t * d * (d - 2) + d * (b - 2 - t) + b * (d - 2) + 2) / 2
}

/// `χ(O_C)` corrected by the points blown up and the fibers contracted on
/// the way to the current model; invariant under proper transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiLedger {
    pub chi: i64,
    pub blown_up: Vec<u32>,
    pub contracted: Vec<u32>,
}

impl ChiLedger {
    pub fn of(c: &BiWeightedPoly) -> Self {
        ChiLedger { chi: 1 - arithmetic_genus(c), blown_up: Vec::new(), contracted: Vec::new() }
    }

    pub fn value(&self) -> i64 {
        let b: i64 = self.blown_up.iter().map(|&m| (m as i64) * (m as i64 - 1) / 2).sum();
        let k: i64 = self.contracted.iter().map(|&m| (m as i64) * (m as i64 - 1) / 2).sum();
        self.chi - b + k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryStep {
    pub curve: SpectralCurve,
    /// Multiplicity of the blown-up point, i.e. the stripped power.
    pub blown_up: u32,
    /// Intersection of the curve with the contracted fiber.
    pub contracted: u32,
}

fn surface_for(poly: &BiWeightedPoly, label: impl FnOnce() -> String) -> Surface {
    if poly.is_product() {
        Surface::Product
    } else {
        Surface::Chart(label())
    }
}

/// True when the curve passes through the point of the section `fy = 0`
/// (or `fx = 0` for [`Direction::Down`]) over `base`.
pub fn meets_section(c: &SpectralCurve, base: &P1Point, dir: Direction) -> bool {
    let form = c.poly.fiber_form(base);
    let d = c.poly.fiber_degree();
    match dir {
        Direction::Up => form.coeff(d).is_zero(),
        Direction::Down => form.coeff(0).is_zero(),
    }
}

/// One elementary transformation over a finite base point of `axis`.
pub fn elementary_transform(c: &SpectralCurve, axis: Axis, base: &P1Point, dir: Direction) -> Result<ElementaryStep> {
    let b = match base {
        P1Point::Finite(b) => b.clone(),
        P1Point::Infinity => {
            return Err(NahmError::Unsupported("elementary transformations over infinity are not tracked".into()))
        }
    };
    let poly = if c.poly.axis() == axis { c.poly.clone() } else { c.poly.reinterpret(axis)? };
    let (fx, fy) = axis.fiber();
    let sb = point_form(axis, base);
    let (var, delta) = match dir {
        Direction::Up => (fy, 1),
        Direction::Down => {
            let here = poly.fiber_twist().iter().find(|(p, _)| *p == b).map(|(_, m)| *m).unwrap_or(0);
            if here == 0 {
                return Err(NahmError::Input(format!(
                    "down transformation at {} needs a positive twist there (the surface has none)",
                    b
                )));
            }
            (fx, -1)
        }
    };
    let image = &MPoly::var(4, var) * &sb;
    let mut sub = ChartSubstitution::identity().with_image(var, image);
    sub.twist_delta = vec![(b.clone(), delta)];
    sub.exceptional_factors = vec![(sb.clone(), format!("E({})", b))];
    let raw = poly.substitute(&sub)?;
    let (stripped, m) = raw.strip_factor(&sb);
    let d = stripped.fiber_degree();
    let stripped = stripped.normalize()?;
    let label = format!("{} twist {:?}", axis.name(), stripped.fiber_twist().iter().map(|(p, k)| format!("{}:{}", p, k)).collect::<Vec<_>>());
    let surface = surface_for(&stripped, || label);
    Ok(ElementaryStep { curve: SpectralCurve { poly: stripped, surface }, blown_up: m, contracted: d - m })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupResult {
    pub local: LocalBlowup,
    /// The same proper transform on a ruled surface, when the center lies
    /// on one of the two coordinate sections.
    pub global: Option<SpectralCurve>,
    pub chi: ChiLedger,
}

/// Iterated blow-up at a linear center. Centers on `fy = 0` are realized
/// globally by up transformations, centers on `fx = 0` by down
/// transformations when the twist allows.
pub fn proper_transform_blowup(c: &SpectralCurve, center: &LinearCenter) -> Result<BlowupResult> {
    if c.poly.axis() != center.axis && !c.poly.is_product() {
        return Err(NahmError::Input("center is not linear in the declared chart: axis mismatch".into()));
    }
    let poly = if c.poly.axis() == center.axis { c.poly.clone() } else { c.poly.reinterpret(center.axis)? };
    let f = local_equation(&poly, &center.base, &center.fiber);
    let local = proper_transform_local(&f, center.length);
    let mut chi = ChiLedger::of(&poly);
    let dir = match (&center.fiber, &center.base) {
        (_, P1Point::Infinity) => None,
        (P1Point::Infinity, _) => Some(Direction::Up),
        (P1Point::Finite(q), _) if q.is_zero() => {
            let here = poly
                .fiber_twist()
                .iter()
                .find(|(p, _)| Some(p) == center.base.finite())
                .map(|(_, m)| *m)
                .unwrap_or(0);
            (here >= center.length).then_some(Direction::Down)
        }
        _ => None,
    };
    let mut global = None;
    if let Some(dir) = dir {
        let mut cur = SpectralCurve { poly: poly.clone(), surface: c.surface.clone() };
        for _ in 0..center.length {
            let step = elementary_transform(&cur, center.axis, &center.base, dir)?;
            chi.blown_up.push(step.blown_up);
            chi.contracted.push(step.contracted);
            cur = step.curve;
        }
        if chi.blown_up != local.multiplicities {
            return Err(NahmError::Inconsistency(format!(
                "blow-up multiplicities {:?} from the global chart but {:?} locally",
                chi.blown_up, local.multiplicities
            )));
        }
        global = Some(cur);
    } else {
        chi.blown_up = local.multiplicities.clone();
    }
    Ok(BlowupResult { local, global, chi })
}

/// Applies `n_p` transformations in the given direction at every polar point.
pub fn transform_at_divisor(
    c: &SpectralCurve,
    axis: Axis,
    divisor: &[(GaussRat, u32)],
    dir: Direction,
) -> Result<(SpectralCurve, ChiLedger)> {
    let mut cur = c.clone();
    let mut chi = ChiLedger::of(&c.poly);
    for (p, n) in divisor {
        for _ in 0..*n {
            let step = elementary_transform(&cur, axis, &P1Point::Finite(p.clone()), dir)?;
            chi.blown_up.push(step.blown_up);
            chi.contracted.push(step.contracted);
            cur = step.curve;
        }
    }
    Ok((cur, chi))
}

/// Compares the standard and naive curves on the common resolution: the
/// standard curve blown up along the zero section over `P` must give the
/// naive curve, and the naive curve blown up along the infinity section
/// over `P` must give the standard curve.
pub fn curves_agree_in_z(standard: &SpectralCurve, naive: &SpectralCurve) -> Result<bool> {
    let divisor = standard.poly.fiber_twist().clone();
    let (down, _) = transform_at_divisor(standard, Axis::Source, &divisor, Direction::Down)?;
    let (up, _) = transform_at_divisor(naive, Axis::Source, &divisor, Direction::Up)?;
    Ok(down.poly == naive.poly && up.poly == standard.poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn curve(text: &str, twist: Vec<(i64, u32)>) -> SpectralCurve {
        let p = parse_poly(text, &crate::algebra::biweighted::NAMES).unwrap();
        let twist = twist.into_iter().map(|(p, m)| (GaussRat::from_int(p), m)).collect();
        let poly = BiWeightedPoly::new(p, Axis::Source, twist).unwrap();
        let surface = if poly.is_product() { Surface::Product } else { Surface::Standard };
        SpectralCurve::new(poly, surface).unwrap()
    }

    #[test]
    fn node_multiplicity() {
        let c = curve("x^2*u^2 - y^2*v^2 + y^2*u^2", vec![]);
        assert_eq!(multiplicity_at(&c, &P1Point::zero(), &P1Point::Infinity), 2);
        assert_eq!(multiplicity_at(&c, &P1Point::Finite(GaussRat::one()), &P1Point::zero()), 1);
        assert_eq!(multiplicity_at(&c, &P1Point::Finite(GaussRat::from_int(2)), &P1Point::zero()), 0);
    }

    #[test]
    fn up_then_down_is_identity() {
        let c = curve("x^2*u^2 - y^2*v^2 + y^2*u^2", vec![]);
        let up = elementary_transform(&c, Axis::Source, &P1Point::zero(), Direction::Up).unwrap();
        assert_eq!(up.blown_up, 2);
        let down = elementary_transform(&up.curve, Axis::Source, &P1Point::zero(), Direction::Down).unwrap();
        assert_eq!(down.curve.poly, c.poly);
    }

    #[test]
    fn local_push_down_round_trip() {
        let f = parse_poly("t^2 - s^3 + s*t", &["s", "t"]).unwrap();
        let b = proper_transform_local(&f, 2);
        assert_eq!(push_down_local(&b), Some(f.clone()));
        assert_eq!(total_transform_order(&f, 2), b.multiplicities.iter().sum::<u32>());
    }
}
