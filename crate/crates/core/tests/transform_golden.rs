use nahm_core::algebra::{Axis, GaussRat, MPoly, P1Point, RatFunc, RfPoly, UPoly, U, V, X, Y};
use nahm_core::birational::{
    curves_agree_in_z, elementary_transform, multiplicity_at, proper_transform_blowup, transform_at_divisor,
    Direction, LinearCenter,
};
use nahm_core::higgs::{parabolic_degree, HiggsBundle, Site};
use nahm_core::model::gallery;
use nahm_core::spectral::{naive_curve, standard_curve, SpectralCurve};
use nahm_core::transform::{double_transform_check, nahm_transform, TransformOptions};

fn example(name: &str) -> HiggsBundle {
    gallery(name).unwrap().to_bundle().unwrap()
}

fn higher_pole(r: u32) -> HiggsBundle {
    example(&format!("higher-pole-r{}", r))
}

/// Pulls a curve back along `(u, v, x, y) = images` in `Q(i)[s, t]`.
fn pull_back(c: &SpectralCurve, images: [MPoly; 4]) -> MPoly {
    let mut v = vec![MPoly::zero(2); 4];
    for (i, p) in images.into_iter().enumerate() {
        v[[U, V, X, Y][i]] = p;
    }
    c.poly.poly().substitute(&v)
}

fn st(a: i64, b: i64, s: u32, t: u32) -> MPoly {
    MPoly::monomial(2, vec![s, t], GaussRat::from_ints(a, b))
}

#[test]
fn nilpotent_curves_and_parametrization() {
    let h = example("nilpotent");
    let standard = standard_curve(&h).unwrap();
    let naive = naive_curve(&h).unwrap();
    assert_eq!(standard.render(), "x^2 + u^2*y^2 - v^2*y^2");
    assert_eq!(naive.render(), "u^2*x^2 + u^2*y^2 - v^2*y^2");
    // u = 2st, v = s^2 + t^2, x = s^2 - t^2, y = 1 on the standard curve
    let two_st = st(2, 0, 1, 1);
    let s2_plus_t2 = &st(1, 0, 2, 0) + &st(1, 0, 0, 2);
    let s2_minus_t2 = &st(1, 0, 2, 0) - &st(1, 0, 0, 2);
    assert!(pull_back(&standard, [two_st.clone(), s2_plus_t2.clone(), s2_minus_t2.clone(), MPoly::one(2)]).is_zero());
    // y = 2st on the naive curve
    assert!(pull_back(&naive, [two_st.clone(), s2_plus_t2, s2_minus_t2, two_st]).is_zero());
    // node at (0, ∞)
    assert_eq!(multiplicity_at(&naive, &P1Point::zero(), &P1Point::Infinity), 2);
}

#[test]
fn nilpotent_up_transforms_over_the_dual_points() {
    let h = example("nilpotent");
    let naive = naive_curve(&h).unwrap();
    let d = vec![(GaussRat::i(), 1), (-GaussRat::i(), 1)];
    let (c, _) = transform_at_divisor(&naive, Axis::Dual, &d, Direction::Up).unwrap();
    // u_2 = 2st(s^2 + t^2), v_2 = 1 over x = s^2 - t^2, y = 2st
    let u2 = &st(2, 0, 3, 1) + &st(2, 0, 1, 3);
    let x = &st(1, 0, 2, 0) - &st(1, 0, 0, 2);
    assert!(pull_back(&c, [u2, MPoly::one(2), x, st(2, 0, 1, 1)]).is_zero());
}

#[test]
fn nilpotent_transform_matrix_and_weights() {
    let h = example("nilpotent");
    let t = nahm_transform(&h, &TransformOptions::default()).unwrap();
    let m = t.matrix.as_ref().expect("a trivial transformed bundle");
    let c = RatFunc::new(UPoly::from_ints(&[-1]), UPoly::from_ints(&[1, 0, 1]));
    let xi = RatFunc::var();
    assert_eq!(m.affine[0][0], &c * &xi);
    assert_eq!(m.affine[0][1], c);
    assert_eq!(m.affine[1][0], c);
    assert_eq!(m.affine[1][1], (&c * &xi).scale(&GaussRat::from_int(-1)));
    assert_eq!(t.char_poly_affine.render("w", "ξ"), "w^2 + (-1/(ξ^2 + 1))");
    // weight 1/5 on the i-eigenline at infinity halves over ξ = i
    let at = |p: P1Point| -> Vec<_> {
        t.ledger.multiset().into_iter().filter(|(s, _, _)| *s == Site::Dual(p.clone())).map(|(_, w, m)| (w.to_string(), m)).collect()
    };
    assert_eq!(at(P1Point::Finite(GaussRat::i())), vec![("1/14".to_string(), 2)]);
    assert_eq!(at(P1Point::Finite(-GaussRat::i())), vec![("1/10".to_string(), 2)]);
    assert_eq!(at(P1Point::Infinity), vec![("1/4".to_string(), 1), ("1/3".to_string(), 1)]);
    assert_eq!(parabolic_degree(&h), t.degree_check.1);
}

#[test]
fn higher_pole_curves() {
    for r in 2..=5u32 {
        let h = higher_pole(r);
        let standard = standard_curve(&h).unwrap();
        let naive = naive_curve(&h).unwrap();
        let u_pow = if r == 2 { "u".to_string() } else { format!("u^{}", r - 1) };
        assert_eq!(standard.render(), format!("x^{} - {}*v*y^{}", r, u_pow, r));
        assert_eq!(naive.render(), format!("u*x^{} - v*y^{}", r, r));
        assert!(curves_agree_in_z(&standard, &naive).unwrap());
        if r > 2 {
            assert!(multiplicity_at(&standard, &P1Point::zero(), &P1Point::zero()) > 1);
        }
    }
}

#[test]
fn higher_pole_up_transforms_at_the_dual_origin() {
    for r in 2..=5u32 {
        let naive = naive_curve(&higher_pole(r)).unwrap();
        let (c, chi) = transform_at_divisor(&naive, Axis::Dual, &[(GaussRat::zero(), r)], Direction::Up).unwrap();
        assert_eq!(c.render(), format!("u - v*y^{}", r));
        assert_eq!(chi.blown_up, vec![1; r as usize]);
    }
}

#[test]
fn higher_pole_transform() {
    for r in 2..=5u32 {
        let h = higher_pole(r);
        let t = nahm_transform(&h, &TransformOptions::default()).unwrap();
        let expected = RfPoly::new(vec![
            RatFunc::new(UPoly::one(), UPoly::monomial(GaussRat::one(), r as usize)),
            RatFunc::one(),
        ]);
        assert_eq!(t.char_poly_affine, expected, "r = {}", r);
        assert_eq!(t.rank, 1);
        assert_eq!(t.dual_polar.len(), 1);
        assert_eq!(t.dual_polar[0].order, r);
        let weights: Vec<(String, String, u32)> =
            t.ledger.multiset().into_iter().map(|(s, w, m)| (s.to_string(), w.to_string(), m)).collect();
        assert_eq!(weights, vec![("ξ=0".into(), "1/2".into(), 1), ("ξ=inf".into(), "0".into(), 1)]);
        assert!(double_transform_check(&h).unwrap().holds());
    }
}

#[test]
fn perturbed_naive_curve_disagrees() {
    let h = example("nilpotent");
    let standard = standard_curve(&h).unwrap();
    let naive = naive_curve(&h).unwrap();
    let bump = MPoly::monomial(4, vec![1, 1, 0, 2], GaussRat::one());
    let poly = nahm_core::algebra::BiWeightedPoly::new(naive.poly.poly() + &bump, Axis::Source, vec![]).unwrap();
    let perturbed = SpectralCurve::new(poly, naive.surface.clone()).unwrap();
    assert!(!curves_agree_in_z(&standard, &perturbed).unwrap());
}

#[test]
fn blowing_up_off_the_curve_changes_nothing() {
    let naive = naive_curve(&example("nilpotent")).unwrap();
    let center = LinearCenter { axis: Axis::Source, base: P1Point::Finite(GaussRat::from_int(3)), fiber: P1Point::Infinity, length: 2 };
    let res = proper_transform_blowup(&naive, &center).unwrap();
    assert_eq!(res.local.multiplicities, vec![0, 0]);
    let back = elementary_transform(&res.global.unwrap(), Axis::Source, &P1Point::Finite(GaussRat::from_int(3)), Direction::Down)
        .unwrap();
    let again = elementary_transform(&back.curve, Axis::Source, &P1Point::Finite(GaussRat::from_int(3)), Direction::Down).unwrap();
    assert_eq!(again.curve.poly, naive.poly);
}

#[test]
fn split_example_transforms() {
    let h = example("split-unstable");
    let t = nahm_transform(&h, &TransformOptions::default()).unwrap();
    assert_eq!(t.rank, 2);
    assert_eq!(t.degree_check.0, t.degree_check.1);
    assert!(double_transform_check(&h).unwrap().holds());
}
