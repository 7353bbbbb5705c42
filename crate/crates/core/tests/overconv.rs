use drw_core::drw_terms::{Exp, Weight};
use drw_core::overconv::{
    affine_families, check_certificate, classify_fixed, frobenius_terms, geometric_inverse, is_frobenius_fixed,
    one_minus_prf, tight_certificate, transport_check, FamilyShape, FixedClass, TermFamily, Q,
};
use drw_core::{Drw, PrimePower, RingSpec, VarDecl};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn torus(p: u32, a: u32, d: usize) -> Drw {
    let vars = ["x", "y"][..d].iter().map(|v| VarDecl::laurent(v)).collect();
    Drw::new(RingSpec::new(PrimePower::new(p, a).unwrap(), vars).unwrap())
}

#[test]
fn fixed_points_are_dlog_products_with_prime_field_coefficients() {
    for (p, a) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        for d in 1..=2 {
            let drw = torus(p, a, d);
            let zq = drw.zq();
            let n = 2;
            let gen = zq.field().from_index(if a > 1 { p as u64 } else { 1 });
            let coeffs = [zq.one(), zq.from_int(2), zq.teichmuller(&gen)];
            for key in drw.all_keys(2, n) {
                for c in &coeffs {
                    let c = zq.mul_p_pow(c, drw.min_coeff_ord(&key));
                    let w = drw.from_terms(n, key.degree(), vec![(key.clone(), c)]).unwrap();
                    if w.is_zero() {
                        continue;
                    }
                    let log_fixed = classify_fixed(&drw, &w).unwrap() == FixedClass::LogFixed;
                    assert_eq!(log_fixed, is_frobenius_fixed(&drw, &w).unwrap(), "p={p} a={a} {key:?}");
                }
            }
        }
    }
}

#[test]
fn geometric_series_inverts_one_minus_prf() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for p in [2u32, 3, 5] {
        let drw = torus(p, 1, 2);
        let zq = drw.zq();
        for n in 1..=3 {
            let keys = drw.all_keys(2, n);
            for _ in 0..15 {
                let degree = rng.gen_range(0..=2);
                let pool: Vec<_> = keys.iter().filter(|k| k.degree() == degree).collect();
                let terms = (0..3)
                    .map(|_| {
                        let k = pool[rng.gen_range(0..pool.len())].clone();
                        let c = zq.mul_p_pow(&zq.from_int(rng.gen_range(1..40)), drw.min_coeff_ord(&k));
                        (k, c)
                    })
                    .collect();
                let w = drw.from_terms(n, degree, terms).unwrap();
                for r in 1..=2 {
                    let inv = geometric_inverse(&drw, &w, r).unwrap();
                    assert_eq!(one_minus_prf(&drw, &inv, r).unwrap(), w);
                    assert_eq!(geometric_inverse(&drw, &one_minus_prf(&drw, &w, r).unwrap(), r).unwrap(), w);
                }
            }
        }
    }
}

#[test]
fn certificates_transport_with_both_constants_scaled() {
    for p in [2u32, 3, 5] {
        let drw = Drw::new(
            RingSpec::new(PrimePower::new(p, 1).unwrap(), vec![VarDecl::laurent("x"), VarDecl::poly("y")]).unwrap(),
        );
        let fams = affine_families(&drw, 200);
        assert_eq!(fams.len(), 200);
        let rep = transport_check(&drw, &fams).unwrap();
        assert!(rep.unsound_scaled.is_empty(), "{:?}", rep.unsound_scaled);
        assert!(rep.lost_violations.is_empty());
    }
}

#[test]
fn keeping_c1_fixed_fails_on_teichmuller_powers() {
    // e_m = p^m·[x]^{p^m}: |k| = p^m, ord = m, tight certificate (1, 2) for p = 2.
    let drw = torus(2, 1, 1);
    let fam = TermFamily {
        k0: Weight(vec![Exp::int(1)]),
        k1: Weight(vec![Exp::int(0)]),
        geometric: 1,
        o0: 0,
        o1: 1,
        shape: FamilyShape::Function,
        start: 0,
        end: 2,
    };
    let terms = fam.terms(&drw).unwrap();
    let cert = tight_certificate(&drw, &terms, Q::from_integer(1)).unwrap();
    assert_eq!(cert.c2, Q::from_integer(2));
    let image = frobenius_terms(&drw, &terms).unwrap();
    let moved = drw_core::overconv::frobenius_certificate(cert, 2);
    // F(e_2) has |k| = 8 and ord 2, above 1·2 + 4.
    assert_eq!(check_certificate(&drw, &image, moved), Some(2));
}
