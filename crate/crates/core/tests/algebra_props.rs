use feigin_core::ar::canonical_structures;
use feigin_core::cartan::RootDatum;
use feigin_core::coeff::{q_binomial, QScalar};
use feigin_core::freealg::FreeAlg;
use feigin_core::hall::Hall;
use feigin_core::maps::MapContext;
use feigin_core::qpoly::{braid_iso, QPoly};
use feigin_core::repfq::RepCategory;
use feigin_core::sparse::tensor_of;
use proptest::prelude::*;

fn scalar(q: u32, a: (i64, i64), b: (i64, i64)) -> QScalar {
    QScalar::from_ratio(a.0, a.1, q) + QScalar::from_ratio(b.0, b.1, q) * QScalar::v(q)
}

fn small_ratio() -> impl Strategy<Value = (i64, i64)> {
    (-20i64..=20, 1i64..=9)
}

fn any_scalar() -> impl Strategy<Value = (u32, QScalar, QScalar, QScalar)> {
    (
        prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9]),
        prop::array::uniform6(small_ratio()),
    )
        .prop_map(|(q, r)| {
            (
                q,
                scalar(q, r[0], r[1]),
                scalar(q, r[2], r[3]),
                scalar(q, r[4], r[5]),
            )
        })
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalars_form_a_field((q, a, b, c) in any_scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        let v = QScalar::v(q);
        prop_assert_eq!(&v * &v, QScalar::from_int(q as i64, q));
    }

    #[test]
    fn gaussian_binomials_satisfy_pascal(q in prop::sample::select(vec![2u32, 3, 4]), n in 1u32..9, k in 1u32..9, weight in 1u32..4) {
        prop_assume!(k < n);
        let lhs = q_binomial(n, k, weight, q).unwrap();
        let vq = QScalar::v_pow(q, weight as i64);
        let left = q_binomial(n - 1, k - 1, weight, q).unwrap();
        let right = q_binomial(n - 1, k, weight, q).unwrap();
        let inv = vq.inv().unwrap();
        let mut pow_a = QScalar::one(q);
        let mut pow_b = QScalar::one(q);
        for _ in 0..k {
            pow_a = &pow_a * &vq;
        }
        for _ in 0..(n - k) {
            pow_b = &pow_b * &inv;
        }
        prop_assert_eq!(lhs, &(&pow_b * &left) + &(&pow_a * &right));
    }

    #[test]
    fn shuffle_is_adjoint_to_coproduct(name in prop::sample::select(vec!["a2", "b2", "a3"]), u1 in word(3, 3), u2 in word(3, 3), perm in any::<prop::sample::Index>()) {
        let rd = RootDatum::preset(name).unwrap();
        let u1: Vec<usize> = u1.into_iter().map(|i| i % rd.n).collect();
        let u2: Vec<usize> = u2.into_iter().map(|i| i % rd.n).collect();
        let fa = FreeAlg::new(&rd, 3);
        let sh = fa.shuffle_words(&u1, &u2).unwrap();
        let mut x: Vec<usize> = u1.iter().chain(&u2).copied().collect();
        let len = x.len();
        if len > 1 {
            x.rotate_left(perm.index(len));
        }
        let x = fa.word(&x);
        let y = tensor_of(&fa.word(&u1), &fa.word(&u2));
        prop_assert_eq!(fa.pairing(&sh, &x), fa.tensor_pairing(&y, &fa.comul(&x)));
    }

    #[test]
    fn free_coproduct_is_multiplicative(u1 in word(2, 3), u2 in word(2, 3)) {
        let rd = RootDatum::preset("b2").unwrap();
        let fa = FreeAlg::new(&rd, 2);
        let x = fa.word(&u1);
        let y = fa.word(&u2);
        prop_assert_eq!(fa.comul(&fa.product(&x, &y)), fa.tensor_mul(&fa.comul(&x), &fa.comul(&y)));
    }

    #[test]
    fn quantum_polynomials_associate(a in prop::collection::vec(0u32..3, 6), b in prop::collection::vec(0u32..3, 6), c in prop::collection::vec(0u32..3, 6)) {
        let rd = RootDatum::preset("a3").unwrap();
        let cat = RepCategory::new(&rd, 2).unwrap();
        let w0 = canonical_structures(&cat).unwrap().w0;
        let p = QPoly::new(&rd, 2, &w0).unwrap();
        let (x, y, z) = (p.monomial(&a, false), p.monomial(&b, false), p.monomial(&c, false));
        let left = p.mul(&p.mul(&x, &y).unwrap(), &z).unwrap();
        let right = p.mul(&x, &p.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dual_coproduct_transposes_product(a in prop::collection::vec(0u32..3, 4), b in prop::collection::vec(0u32..3, 4)) {
        let rd = RootDatum::preset("b2").unwrap();
        let word = vec![0, 1, 0, 1];
        let p = QPoly::new(&rd, 3, &word).unwrap();
        let (c, coeff) = p.mul_monomials(&a, &b);
        prop_assert_eq!(p.dual_comul_monomial(&c).coeff(&(a, b)), coeff);
    }
}

/// Positions `k` where the letters of `w` at `k, k+1` are orthogonal.
fn orthogonal_slots(rd: &RootDatum, w: &[usize]) -> Vec<usize> {
    (0..w.len() - 1)
        .filter(|&k| rd.sym_simple(w[k], w[k + 1]) == 0)
        .collect()
}

#[test]
fn braid_isomorphism_round_trips_and_respects_products() {
    let rd = RootDatum::preset("a3").unwrap();
    let w1 = vec![0, 2, 1, 0, 2, 1];
    let slots = orthogonal_slots(&rd, &w1);
    assert!(!slots.is_empty());
    let k = slots[0];
    let mut w2 = w1.clone();
    w2.swap(k, k + 1);
    let p1 = QPoly::new(&rd, 2, &w1).unwrap();
    let p2 = QPoly::new(&rd, 2, &w2).unwrap();
    for (a, b) in [
        ([1, 0, 2, 0, 1, 0], [0, 1, 1, 0, 0, 2]),
        ([2, 1, 0, 1, 0, 1], [1, 1, 1, 1, 1, 1]),
    ] {
        let x = p1.monomial(&a, false);
        let y = p1.monomial(&b, false);
        let there = braid_iso(&rd, &w1, &w2, &x).unwrap();
        assert_eq!(braid_iso(&rd, &w2, &w1, &there).unwrap(), x);
        let xy = p1.mul(&x, &y).unwrap();
        let mapped = p2
            .mul(&there, &braid_iso(&rd, &w1, &w2, &y).unwrap())
            .unwrap();
        assert_eq!(braid_iso(&rd, &w1, &w2, &xy).unwrap(), mapped);
    }
    let bad = (0..w1.len() - 1).find(|k| !slots.contains(k)).unwrap();
    let mut w3 = w1.clone();
    w3.swap(bad, bad + 1);
    assert!(braid_iso(&rd, &w1, &w3, &p1.one()).is_err());
}

#[test]
fn hall_composition_commutes_with_braid_isomorphism() {
    let rd = RootDatum::preset("a3").unwrap();
    let cat = RepCategory::new(&rd, 2).unwrap();
    let w1 = vec![0, 2, 1, 0, 2, 1];
    let k = orthogonal_slots(&rd, &w1)[0];
    let mut w2 = w1.clone();
    w2.swap(k, k + 1);
    let c1 = MapContext::new(&cat, w1.clone()).unwrap();
    let c2 = MapContext::new(&cat, w2.clone()).unwrap();
    let p1 = c1.qpoly();
    for a in [[1, 1, 0, 0, 0, 0], [0, 1, 1, 1, 0, 0], [1, 0, 1, 0, 1, 1]] {
        let x = p1.monomial(&a, true);
        let y = braid_iso(&rd, &w1, &w2, &x).unwrap();
        assert_eq!(c1.phi_compose_t(&x).unwrap(), c2.phi_compose_t(&y).unwrap());
    }
}

#[test]
fn hall_product_associates_on_small_classes() {
    let rd = RootDatum::preset("a3").unwrap();
    let cat = RepCategory::new(&rd, 2).unwrap();
    let hall = Hall::new(&cat);
    let basis: Vec<_> = (0..cat.nu())
        .map(|k| hall.basis(&cat.indec_class(k)))
        .collect();
    for x in &basis {
        for y in &basis {
            for z in basis.iter().take(3) {
                let left = hall.mul(&hall.mul(x, y).unwrap(), z).unwrap();
                let right = hall.mul(x, &hall.mul(y, z).unwrap()).unwrap();
                assert_eq!(left, right);
            }
        }
    }
}

#[test]
fn euler_form_matches_hom_minus_ext() {
    for name in ["a3", "b2", "g2"] {
        let rd = RootDatum::preset(name).unwrap();
        let cat = RepCategory::new(&rd, 2).unwrap();
        for m in 0..cat.nu() {
            for n in 0..cat.nu() {
                let (cm, cn) = (cat.indec_class(m), cat.indec_class(n));
                let hom = cat.hom_classes(&cm, &cn) as i64;
                let ext = cat.ext_classes(&cm, &cn) as i64;
                assert_eq!(
                    hom - ext,
                    cat.euler(&cat.dim_of(&cm), &cat.dim_of(&cn)),
                    "{name} {m} {n}"
                );
                assert!(
                    hom == 0 || ext == 0,
                    "{name}: indecomposables have Hom or Ext, not both"
                );
            }
        }
    }
}
