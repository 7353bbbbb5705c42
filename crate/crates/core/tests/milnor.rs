use drw_core::milnor::{FunctionField, KValue, MilnorSymbol, Place, RationalFunction};
use drw_core::FiniteField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(k: &FunctionField, rng: &mut ChaCha8Rng, max_deg: usize) -> drw_core::UPoly {
    let f = k.field();
    loop {
        let d = rng.gen_range(0..=max_deg);
        let c = (0..=d).map(|_| f.from_index(rng.gen_range(0..f.q()))).collect();
        let p = k.ring.from_coeffs(c);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_rf(k: &FunctionField, rng: &mut ChaCha8Rng, max_deg: usize) -> RationalFunction {
    let n = random_poly(k, rng, max_deg);
    let d = random_poly(k, rng, max_deg);
    k.make(n, d).unwrap()
}

fn fields() -> Vec<FiniteField> {
    vec![FiniteField::of(2, 1), FiniteField::of(3, 1), FiniteField::of(2, 2), FiniteField::of(5, 1)]
}

/// Closed two-entry formula ∂_v{f,g} = (−1)^{ab} ū^{−b} w̄^{a}, f = uπ^a, g = wπ^b.
fn closed_tame(k: &FunctionField, f: &RationalFunction, g: &RationalFunction, v: &Place) -> drw_core::UPoly {
    let kv = k.residue_field(v);
    let (a, u) = k.split(f, v).unwrap();
    let (b, w) = k.split(g, v).unwrap();
    let sign = if (a * b) % 2 == 0 { kv.one() } else { kv.constant(k.field().from_int(-1)) };
    kv.mul(&sign, &kv.mul(&kv.pow_i(&u, -b), &kv.pow_i(&w, a)))
}

#[test]
fn weil_reciprocity_on_random_symbols() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in fields() {
        let k = FunctionField::new(f.clone());
        for _ in 0..75 {
            let s = MilnorSymbol::single(vec![random_rf(&k, &mut rng, 5), random_rf(&k, &mut rng, 5)]);
            assert_eq!(k.reciprocity_product(&s).unwrap(), f.one());
        }
    }
}

#[test]
fn expansion_matches_closed_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in fields() {
        let k = FunctionField::new(f);
        for _ in 0..40 {
            let a = random_rf(&k, &mut rng, 4);
            let b = random_rf(&k, &mut rng, 4);
            let s = MilnorSymbol::single(vec![a.clone(), b.clone()]);
            for v in k.symbol_support(&s).unwrap() {
                let expected = closed_tame(&k, &a, &b, &v);
                assert_eq!(k.residue(&s, &v).unwrap(), KValue::Unit(expected));
            }
        }
    }
}

#[test]
fn bilinearity_and_steinberg() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for fld in fields() {
        let k = FunctionField::new(fld);
        for _ in 0..30 {
            let f = random_rf(&k, &mut rng, 3);
            let g = random_rf(&k, &mut rng, 3);
            let h = random_rf(&k, &mut rng, 3);
            let fg = MilnorSymbol::single(vec![k.mul(&f, &g), h.clone()]);
            let sum = MilnorSymbol::single(vec![f.clone(), h.clone()])
                .add(&MilnorSymbol::single(vec![g.clone(), h.clone()]))
                .unwrap();
            for v in k.symbol_support(&fg).unwrap().into_iter().chain(k.symbol_support(&sum).unwrap()) {
                assert_eq!(k.residue(&fg, &v).unwrap(), k.residue(&sum, &v).unwrap());
            }
            let om = k.one_minus(&f);
            if k.is_zero(&om) {
                continue;
            }
            let st = MilnorSymbol::single(vec![f.clone(), om]);
            for v in k.symbol_support(&st).unwrap() {
                assert!(k.residue(&st, &v).unwrap().is_trivial());
            }
        }
    }
}

#[test]
fn higher_degree_residues_vanish_in_finite_fields() {
    let k = FunctionField::new(FiniteField::of(3, 1));
    let r = &k.ring;
    let s = MilnorSymbol::single(vec![k.t(), k.from_poly(r.from_ints(&[1, 1])), k.from_int(2)]);
    for v in k.symbol_support(&s).unwrap() {
        assert_eq!(k.residue(&s, &v).unwrap(), KValue::Zero);
    }
}

#[test]
fn divisor_total_degree_is_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for fld in fields() {
        let k = FunctionField::new(fld);
        for _ in 0..40 {
            let f = random_rf(&k, &mut rng, 5);
            let total: i64 = k.divisor(&f).unwrap().iter().map(|(v, n)| v.degree() as i64 * n).sum();
            assert_eq!(total, 0);
        }
    }
}

#[test]
fn factorization_multiplies_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for fld in fields() {
        let k = FunctionField::new(fld);
        for _ in 0..40 {
            let f = random_poly(&k, &mut rng, 8);
            let fz = k.ring.factor(&f).unwrap();
            assert_eq!(k.ring.expand(&fz), f);
            assert!(fz.factors.iter().all(|(g, _)| k.ring.is_irreducible(g)));
        }
    }
}
