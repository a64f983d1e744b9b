mod common;

use common::*;
use nahm_core::algebra::{
    det_rf, rat, Axis, BiWeightedPoly, GaussRat, MPoly, P1Point, RatFunc, UPoly,
};
use nahm_core::birational::{elementary_transform, Direction};
use nahm_core::higgs::{add_divisor, delete_divisor, parabolic_degree, parabolic_euler_char, LedgerEntry, Site, WeightLedger};
use nahm_core::moduli::{moduli_dimension, SingularityProfile};
use nahm_core::parse::{parse_ratfunc, parse_scalar};
use nahm_core::spectral::{SpectralCurve, Surface};
use nahm_core::transform::{involution_report, nahm_transform, TransformOptions};
use proptest::prelude::*;

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-12i64..=12, 1i64..=6, -12i64..=12, 1i64..=6).prop_map(|(a, b, c, d)| GaussRat::new(rat(a, b), rat(c, d)))
}

fn upoly(max_len: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(gauss(), 0..=max_len).prop_map(UPoly::new)
}

fn nonzero_upoly(max_len: usize) -> impl Strategy<Value = UPoly> {
    upoly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (upoly(3), nonzero_upoly(3)).prop_map(|(n, d)| RatFunc::new(n, d))
}

fn mpoly2() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), gauss()), 0..5)
        .prop_map(|ts| MPoly::from_terms(2, ts.into_iter().map(|((a, b), c)| (vec![a, b], c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_field_laws(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn division_with_remainder(a in upoly(6), d in nonzero_upoly(4)) {
        let (q, r) = a.divrem(&d);
        prop_assert_eq!(&(&q * &d) + &r, a.clone());
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn gcd_divides_both(a in nonzero_upoly(4), b in nonzero_upoly(4), c in nonzero_upoly(3)) {
        let (x, y) = (&a * &c, &b * &c);
        let g = UPoly::gcd(&x, &y);
        prop_assert!(x.rem(&g).is_zero());
        prop_assert!(y.rem(&g).is_zero());
        prop_assert!(g.rem(&c.monic()).is_zero());
    }

    #[test]
    fn rational_functions_render_and_parse(f in ratfunc(), g in ratfunc()) {
        prop_assert_eq!(parse_ratfunc(&f.render("z")).unwrap(), f.clone());
        if !g.is_zero() {
            prop_assert_eq!(&(&f * &g) * &g.inv().unwrap(), f);
        }
    }

    #[test]
    fn substitution_is_multiplicative(p in mpoly2(), q in mpoly2(), a in gauss(), b in gauss()) {
        let s = MPoly::var(2, 0);
        let t = MPoly::var(2, 1);
        let images = vec![&s + &MPoly::constant(2, a), &(&s * &t) + &MPoly::constant(2, b)];
        prop_assert_eq!((&p * &q).substitute(&images), &p.substitute(&images) * &q.substitute(&images));
        if !q.is_zero() {
            prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in prop::collection::vec(ratfunc(), 4), b in prop::collection::vec(ratfunc(), 4)) {
        let m = vec![vec![a[0].clone(), a[1].clone()], vec![a[2].clone(), a[3].clone()]];
        let n = vec![vec![b[0].clone(), b[1].clone()], vec![b[2].clone(), b[3].clone()]];
        let prod: Vec<Vec<RatFunc>> = (0..2)
            .map(|i| (0..2).map(|j| &(&m[i][0] * &n[0][j]) + &(&m[i][1] * &n[1][j])).collect())
            .collect();
        prop_assert_eq!(det_rf(&prod).unwrap(), &det_rf(&m).unwrap() * &det_rf(&n).unwrap());
    }

    #[test]
    fn ledger_add_then_delete(
        base in -4i64..=4,
        ws in prop::collection::vec((0i64..4, 1i64..8, 1u32..3), 0..5),
        extra in prop::collection::vec((-3i64..=3, 1u32..4), 1..4),
    ) {
        let entries: Vec<LedgerEntry> = ws
            .iter()
            .enumerate()
            .map(|(k, (n, d, m))| LedgerEntry::new(Site::Source(P1Point::Finite(GaussRat::from_int(10 + k as i64))), rat(*n % *d, *d), *m))
            .collect();
        let l = WeightLedger::new(base, entries);
        let mut e: Vec<(Site, u32)> = Vec::new();
        for (p, m) in extra {
            let site = Site::Dual(P1Point::Finite(GaussRat::from_int(p)));
            if e.iter().all(|(s, _)| *s != site) {
                e.push((site, m));
            }
        }
        let added = add_divisor(&l, &e).unwrap();
        prop_assert_eq!(parabolic_euler_char(&added), parabolic_euler_char(&l));
        prop_assert_eq!(delete_divisor(&added, &e).unwrap(), l);
    }

    #[test]
    fn moduli_dimension_is_swap_symmetric(
        r in prop::collection::vec(1usize..4, 1..4),
        rh in prop::collection::vec(1usize..4, 1..4),
    ) {
        let p = SingularityProfile::new(rh.iter().sum(), r.clone(), rh.clone()).unwrap();
        prop_assert_eq!(moduli_dimension(&p).unwrap(), moduli_dimension(&p.swap()).unwrap());
    }

    #[test]
    fn up_then_down_is_the_identity(
        coeffs in prop::collection::vec(gauss(), 9),
        b in -2i64..=2,
    ) {
        // a curve of bidegree (2, 2) on P^1 x P^1
        let mut poly = MPoly::zero(4);
        let mut k = 0;
        for i in 0..=2u32 {
            for j in 0..=2u32 {
                poly.add_term(vec![i, 2 - i, j, 2 - j], &coeffs[k]);
                k += 1;
            }
        }
        prop_assume!(poly.degree_in(2) == Some(2) && poly.min_degree_in(2) == Some(0));
        prop_assume!(poly.degree_in(0) == Some(2) && poly.min_degree_in(0) == Some(0));
        let Ok(bw) = BiWeightedPoly::new(poly, Axis::Source, vec![]) else { return Ok(()) };
        let c = SpectralCurve::new(bw, Surface::Product).unwrap();
        let base = P1Point::Finite(GaussRat::from_int(b));
        let up = elementary_transform(&c, Axis::Source, &base, Direction::Up).unwrap();
        let down = elementary_transform(&up.curve, Axis::Source, &base, Direction::Down).unwrap();
        prop_assert_eq!(down.curve.poly, c.poly);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_transforms_preserve_degree_and_invert(seed in 1_000u64..1_000_000) {
        let h = random_admissible(&mut rng(seed));
        let t = nahm_transform(&h, &TransformOptions::default()).unwrap();
        prop_assert_eq!(parabolic_degree(&h), parabolic_euler_char(&t.ledger));
        prop_assert!(involution_report(&h, &t).unwrap().holds());
    }
}
