use drw_core::ring::{CommRing, Integers};
use drw_core::{FiniteField, ScalarRing, WittRing, WittVec, Zq};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-20i64..20, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ghost_map_is_a_ring_homomorphism(p in prop::sample::select(vec![2u64, 3, 5]), x in small_vec(3), y in small_vec(3)) {
        let w = WittRing::new(Integers, p);
        let x = WittVec { coords: x.into_iter().map(BigInt::from).collect() };
        let y = WittVec { coords: y.into_iter().map(BigInt::from).collect() };
        let (gx, gy) = (w.ghost(&x), w.ghost(&y));
        let s = w.ghost(&w.add(&x, &y).unwrap());
        let m = w.ghost(&w.mul(&x, &y).unwrap());
        for i in 0..3 {
            prop_assert_eq!(&s[i], &(&gx[i] + &gy[i]));
            prop_assert_eq!(&m[i], &(&gx[i] * &gy[i]));
        }
    }

    #[test]
    fn fast_path_matches_witt_polynomials(p in prop::sample::select(vec![2u32, 3]), a in 1u32..=2, seed in any::<u64>()) {
        let f = FiniteField::of(p, a);
        let q = f.q();
        let n = 3usize;
        let w = WittRing::new(f.clone(), p as u64);
        let zq = Zq::new(f.clone());
        let pick = |s: u64| (0..n).map(|i| f.from_index((s >> (8 * i)) % q)).collect::<Vec<_>>();
        let (xc, yc) = (pick(seed), pick(seed.rotate_left(29)));
        let (x, y) = (w.from_coords(xc.clone()), w.from_coords(yc.clone()));
        let (zx, zy) = (zq.from_witt_coords(&xc), zq.from_witt_coords(&yc));
        prop_assert_eq!(w.add(&x, &y).unwrap().coords, zq.witt_coords(&zq.add(&zx, &zy), n as u32));
        prop_assert_eq!(w.mul(&x, &y).unwrap().coords, zq.witt_coords(&zq.mul(&zx, &zy), n as u32));
        prop_assert_eq!(w.neg(&x).coords, zq.witt_coords(&zq.neg(&zx), n as u32));
    }

    #[test]
    fn fv_is_p_and_v_is_projection_formula(p in prop::sample::select(vec![2u32, 3, 5]), x in 0i64..1000, y in 0i64..1000) {
        let zq = Zq::new(FiniteField::of(p, 1));
        let s = ScalarRing::new(zq.clone());
        let (x, y) = (s.from_int(3, x).unwrap(), s.from_int(3, y).unwrap());
        let fv = s.frobenius(&s.verschiebung(&x));
        prop_assert_eq!(fv, s.mul(&x, &s.from_int(3, p as i64).unwrap()).unwrap());
        // V(x)·y = V(x·F y)
        let lhs = s.mul(&s.verschiebung(&x), &y).unwrap();
        let rhs = s.verschiebung(&s.mul(&x, &s.frobenius(&y)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn teichmuller_is_multiplicative_over_polynomial_rings() {
    let f = FiniteField::of(3, 1);
    let r = drw_core::LaurentRing::new(f.clone(), vec![drw_core::VarDecl::poly("x"), drw_core::VarDecl::laurent("y")]);
    let w = WittRing::new(r.clone(), 3);
    let a = r.add(&r.variable(0), &r.one());
    let b = r.mul(&r.variable(1), &r.variable(1));
    let lhs = w.mul(&w.teichmuller(&a, 3), &w.teichmuller(&b, 3)).unwrap();
    assert_eq!(lhs, w.teichmuller(&r.mul(&a, &b), 3));
    let x = w.teichmuller(&a, 3);
    assert_eq!(w.add(&x, &w.zero(3)).unwrap(), x);
    assert_eq!(w.add(&x, &w.neg(&x)).unwrap(), w.zero(3));
}
