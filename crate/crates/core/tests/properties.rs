use padic_codes::census::exponent_vectors;
use padic_codes::code::{CyclicCode, CyclicRing, DEFAULT_BUDGET};
use padic_codes::poly::{mul_mod_xn, Poly};
use proptest::prelude::*;

/// Lengths whose cyclotomic factorization stays small enough to enumerate.
const SHAPES: [(usize, u64); 6] = [(7, 2), (9, 2), (5, 3), (8, 3), (4, 5), (15, 2)];

fn ring_and_exps() -> impl Strategy<Value = (CyclicRing, Vec<u32>)> {
    (0..SHAPES.len(), 1u32..4).prop_flat_map(|(i, a)| {
        let (n, p) = SHAPES[i];
        let ring = CyclicRing::new(n, p, a, false).unwrap();
        let count = ring.factor_count();
        (Just(ring), proptest::collection::vec(0..=a, count))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_an_involution_with_complementary_type((ring, exps) in ring_and_exps()) {
        let c = CyclicCode::from_exponents(&ring, &exps).unwrap();
        let d = c.dual().unwrap();
        prop_assert_eq!(d.dual().unwrap(), c.clone());
        prop_assert_eq!(d.type_profile(), c.type_profile().complement());
        prop_assert!(c.verify_dual(&d).unwrap());
    }

    #[test]
    fn generators_recover_the_code((ring, exps) in ring_and_exps()) {
        let c = CyclicCode::from_exponents(&ring, &exps).unwrap();
        prop_assert_eq!(CyclicCode::canonicalize(&ring, &[c.principal_generator()]).unwrap(), c.clone());
        prop_assert_eq!(CyclicCode::canonicalize(&ring, &c.generator_rows()).unwrap(), c.clone());
        prop_assert_eq!(c.generator_matrix().unwrap().span_size_exp(), c.size_exp());
    }

    #[test]
    fn membership_is_closed_under_shift_and_scaling((ring, exps) in ring_and_exps(), s in 0usize..16, k in 0u64..9) {
        let c = CyclicCode::from_exponents(&ring, &exps).unwrap();
        let g = c.principal_generator();
        let w = g.shift(s % ring.n()).rem_xn(ring.n()).scale_int(k);
        prop_assert!(c.contains(&w).unwrap());
        let x = Poly::x(ring.zq());
        prop_assert!(c.contains(&mul_mod_xn(&w, &x, ring.n()).unwrap()).unwrap());
    }

    #[test]
    fn projection_keeps_exponents_below_the_new_precision((ring, exps) in ring_and_exps()) {
        let c = CyclicCode::from_exponents(&ring, &exps).unwrap();
        for prec in 1..=ring.prec() {
            let low = c.reduce_to(prec).unwrap();
            let want: Vec<u32> = exps.iter().map(|&m| m.min(prec)).collect();
            prop_assert_eq!(low.exponents(), want.as_slice());
        }
    }
}

#[test]
fn containment_matches_exponent_order() {
    let ring = CyclicRing::new(7, 2, 2, false).unwrap();
    let codes: Vec<CyclicCode> = exponent_vectors(2, 3)
        .iter()
        .map(|e| CyclicCode::from_exponents(&ring, e).unwrap())
        .collect();
    for a in &codes {
        let ga = a.generator_matrix().unwrap();
        for b in &codes {
            let gb = b.generator_matrix().unwrap();
            assert_eq!(a.contains_code(b), ga.contains_span(&gb));
        }
    }
}

#[test]
fn hamming_distance_respects_singleton() {
    let ring = CyclicRing::new(7, 2, 2, false).unwrap();
    for e in exponent_vectors(2, 3) {
        let c = CyclicCode::from_exponents(&ring, &e).unwrap();
        if let Some(d) = c.distances(DEFAULT_BUDGET).unwrap().hamming {
            // |C| <= q^(n - d + 1)
            assert!(c.size_exp() <= 2 * (7 - d as u64 + 1));
        }
    }
}
