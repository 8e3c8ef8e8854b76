//! Algebraic laws of the kernel on random small polynomials over Q(√5).

use coxinv::algebra::{rat, Basis, DenomBasis, Golden, LocPoly, Poly, Ring, VarRing};
use proptest::prelude::*;

fn ring() -> Ring {
    VarRing::of(&["x", "y", "z"])
}

fn golden() -> impl Strategy<Value = Golden> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3).prop_map(|(a, da, b, db)| Golden::new(rat(a, da), rat(b, db)))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=3, 0u32..=3, 0u32..=2), golden()), 0..6).prop_map(|terms| {
        let r = ring();
        terms.into_iter().fold(Poly::zero(&r), |acc, ((a, b, c), k)| &acc + &Poly::monomial(&r, &[a, b, c], k))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn point() -> impl Strategy<Value = Vec<Golden>> {
    prop::collection::vec(golden(), 3)
}

fn basis() -> Basis {
    let r = ring();
    let x = Poly::var_at(&r, 0);
    let b = &(&x * &x) + &Poly::constant(&r, Golden::from_int(3));
    DenomBasis::new(&r, vec![x, b]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(&ring()), a.clone());
    }

    #[test]
    fn conjugation_is_a_ring_homomorphism(a in poly(), b in poly()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn exact_division_recovers_factor(a in poly(), b in nonzero_poly()) {
        let q = (&a * &b).div_exact(&b).unwrap().unwrap();
        prop_assert_eq!(q, a);
    }

    #[test]
    fn product_rule(a in poly(), b in poly(), i in 0usize..3) {
        let lhs = (&a * &b).diff(i);
        let rhs = &(&a.diff(i) * &b) + &(&a * &b.diff(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_rule(a in poly(), g in prop::collection::vec(poly(), 3), i in 0usize..3) {
        let lhs = a.compose(&g).unwrap().diff(i);
        let rhs = (0..3).fold(Poly::zero(&ring()), |acc, k| {
            &acc + &(&a.diff(k).compose(&g).unwrap() * &g[k].diff(i))
        });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), pt in point()) {
        prop_assert_eq!((&a * &b).eval(&pt), &a.eval(&pt) * &b.eval(&pt));
        prop_assert_eq!((&a + &b).eval(&pt), &a.eval(&pt) + &b.eval(&pt));
        let conj_pt: Vec<Golden> = pt.iter().map(Golden::conj).collect();
        prop_assert_eq!(a.conj().eval(&conj_pt), a.eval(&pt).conj());
    }

    #[test]
    fn local_representation_is_canonical(a in poly(), e0 in 0u32..3, e1 in 0u32..3) {
        let bs = basis();
        let b = &bs.elems()[1];
        let direct = LocPoly::new(a.clone(), &bs, vec![e0, e1]).unwrap();
        let padded = LocPoly::new(&a * b, &bs, vec![e0, e1 + 1]).unwrap();
        prop_assert_eq!(&direct, &padded);
        let x = LocPoly::from_poly(bs.elems()[0].clone(), &bs);
        let round = direct.try_mul(&x).unwrap().try_mul(&x.try_inverse().unwrap()).unwrap();
        prop_assert_eq!(round, direct);
    }

    #[test]
    fn canonical_text_round_trips(a in poly()) {
        let back = coxinv::algebra::text::parse_poly(&a.canonical(), &ring()).unwrap();
        prop_assert_eq!(back, a);
    }
}
