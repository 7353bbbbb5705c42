use drw_core::drw_rewrite::{DRWExpr, Engine, Strategy};
use drw_core::ring::CommRing;
use drw_core::{DRWElement, Drw, LPoly, PrimePower, RingSpec, VarDecl};
use proptest::prelude::*;

fn engine(p: u32, vars: Vec<VarDecl>) -> Engine {
    Engine::new(Drw::new(RingSpec::new(PrimePower::new(p, 1).unwrap(), vars).unwrap()))
}

fn xy(p: u32, laurent: bool) -> Engine {
    let x = if laurent { VarDecl::laurent("x") } else { VarDecl::poly("x") };
    engine(p, vec![x, VarDecl::poly("y")])
}

/// Element built from up to three keys of a fixed degree chosen by `picks`.
fn element(e: &Engine, degree: usize, n: u32, picks: &[(usize, i64)]) -> DRWElement {
    let drw = &e.drw;
    let zq = drw.zq();
    let keys: Vec<_> = drw.all_keys(2, n).into_iter().filter(|k| k.degree() == degree).collect();
    let terms = picks
        .iter()
        .map(|&(i, c)| {
            let k = keys[i % keys.len()].clone();
            let c = zq.mul_p_pow(&zq.from_int(c), drw.min_coeff_ord(&k));
            (k, c)
        })
        .collect();
    drw.from_terms(n, degree, terms).unwrap()
}

fn picks() -> impl proptest::strategy::Strategy<Value = Vec<(usize, i64)>> {
    proptest::collection::vec((0usize..10_000, 1i64..30), 1..4)
}

fn setup() -> impl proptest::strategy::Strategy<Value = (u32, bool, usize, u32)> {
    (prop::sample::select(vec![2u32, 3, 5]), any::<bool>(), 0usize..=1, 2u32..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fv_is_multiplication_by_p((p, l, q, n) in setup(), pk in picks()) {
        let e = xy(p, l);
        let x = element(&e, q, n, &pk);
        let fv = e.drw.frobenius(&e.drw.verschiebung(&x).unwrap()).unwrap();
        prop_assert_eq!(fv, e.drw.mul_int(&x, p as i64));
    }

    #[test]
    fn d_squares_to_zero((p, l, q, n) in setup(), pk in picks()) {
        let e = xy(p, l);
        let x = element(&e, q, n, &pk);
        let dd = e.drw.differential(&e.drw.differential(&x).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn frobenius_and_verschiebung_twist_d((p, l, q, n) in setup(), pk in picks()) {
        let e = xy(p, l);
        let drw = &e.drw;
        let x = element(&e, q, n, &pk);
        let dx = drw.differential(&x).unwrap();
        // F d V = d
        let fdv = drw.frobenius(&drw.differential(&drw.verschiebung(&x).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(&fdv, &dx);
        // d F = p F d
        let df = drw.differential(&drw.frobenius(&x).unwrap()).unwrap();
        prop_assert_eq!(df, drw.mul_int(&drw.frobenius(&dx).unwrap(), p as i64));
        // V d = p d V
        let vd = drw.verschiebung(&dx).unwrap();
        let dv = drw.differential(&drw.verschiebung(&x).unwrap()).unwrap();
        prop_assert_eq!(vd, drw.mul_int(&dv, p as i64));
    }

    #[test]
    fn restriction_commutes_with_operators((p, l, q, n) in setup(), pk in picks()) {
        let e = xy(p, l);
        let drw = &e.drw;
        let x = element(&e, q, n, &pk);
        let rx = drw.restrict(&x, n - 1).unwrap();
        prop_assert_eq!(drw.restrict(&drw.frobenius(&x).unwrap(), n - 2).unwrap(), drw.frobenius(&rx).unwrap());
        prop_assert_eq!(drw.restrict(&drw.verschiebung(&x).unwrap(), n).unwrap(), drw.verschiebung(&rx).unwrap());
        prop_assert_eq!(drw.restrict(&drw.differential(&x).unwrap(), n - 1).unwrap(), drw.differential(&rx).unwrap());
    }

    #[test]
    fn projection_formula((p, l, q, n) in setup(), pk in picks(), pk2 in picks()) {
        let e = xy(p, l);
        let drw = &e.drw;
        let x = element(&e, q, n - 1, &pk);
        let y = element(&e, 0, n, &pk2);
        let lhs = e.product(&drw.verschiebung(&x).unwrap(), &y).unwrap();
        let rhs = drw.verschiebung(&e.product(&x, &drw.frobenius(&y).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn closed_forms_agree_with_the_expression_engine((p, l, q, n) in setup(), pk in picks()) {
        let e = xy(p, l);
        let drw = &e.drw;
        let x = element(&e, q, n, &pk);
        prop_assume!(!x.is_zero());
        let mut parts = Vec::new();
        for b in drw.basics(&x) {
            parts.push(e.expr_of_basic(&b.key, &b.xi.value).unwrap());
        }
        let ex = DRWExpr::Add(parts);
        prop_assert_eq!(e.normalize(&ex, n).unwrap(), x.clone());
        prop_assert_eq!(e.normalize(&DRWExpr::f(ex.clone()), n - 1).unwrap(), drw.frobenius(&x).unwrap());
        prop_assert_eq!(e.normalize(&DRWExpr::v(ex.clone()), n + 1).unwrap(), drw.verschiebung(&x).unwrap());
        prop_assert_eq!(e.normalize(&DRWExpr::d(ex), n).unwrap(), drw.differential(&x).unwrap());
    }
}

fn poly(e: &Engine, terms: &[(i64, i64, i64)]) -> LPoly {
    let r = &e.poly;
    let f = &r.field;
    let mut out = r.zero();
    for &(c, i, j) in terms {
        out = r.add(&out, &r.monomial(f.from_int(c), vec![i, j]).unwrap());
    }
    out
}

#[test]
fn steinberg_relation_in_two_variables() {
    for p in [2u32, 3, 5] {
        let e = xy(p, false);
        let one = poly(&e, &[(1, 0, 0)]);
        let family = [
            poly(&e, &[(1, 1, 0)]),
            poly(&e, &[(1, 1, 1)]),
            poly(&e, &[(1, 1, 0), (1, 0, 1)]),
            poly(&e, &[(1, 2, 0)]),
            poly(&e, &[(1, 2, 0), (1, 0, 1)]),
        ];
        for f in &family {
            let g = e.poly.sub(&one, f);
            let expr = DRWExpr::mul(DRWExpr::d(DRWExpr::Teich(f.clone())), DRWExpr::d(DRWExpr::Teich(g)));
            for n in 1..=2 {
                let w = e.normalize(&expr, n).unwrap();
                assert!(w.is_zero(), "p={p} f={} n={n}", e.poly.format(f));
            }
        }
    }
}

#[test]
fn teichmuller_differential_under_frobenius() {
    for p in [2u32, 3] {
        let e = xy(p, true);
        let f = poly(&e, &[(1, 1, 1), (1, 0, 1), (2, -1, 0)]);
        let lhs = DRWExpr::f(DRWExpr::d(DRWExpr::Teich(f.clone())));
        let fp = e.poly.pow(&f, (p - 1) as u64);
        let rhs = DRWExpr::mul(DRWExpr::Teich(fp), DRWExpr::d(DRWExpr::Teich(f)));
        for n in 1..=3 {
            assert_eq!(e.normalize(&lhs, n).unwrap(), e.normalize(&rhs, n).unwrap());
        }
    }
}

#[test]
fn strategies_are_confluent() {
    let e = xy(3, true);
    let x = DRWExpr::Teich(poly(&e, &[(1, 1, 0), (1, 0, 1)]));
    let y = DRWExpr::Teich(poly(&e, &[(2, -1, 1)]));
    let exprs = [
        DRWExpr::f(DRWExpr::mul(DRWExpr::v(x.clone()), DRWExpr::d(y.clone()))),
        DRWExpr::v(DRWExpr::mul(DRWExpr::f(DRWExpr::d(x.clone())), y.clone())),
        DRWExpr::d(DRWExpr::v(DRWExpr::mul(x.clone(), DRWExpr::v(y.clone())))),
        DRWExpr::mul(DRWExpr::Dlog(poly(&e, &[(1, 1, 0)])), DRWExpr::f(DRWExpr::d(DRWExpr::v(y)))),
    ];
    for ex in &exprs {
        for n in 1..=3 {
            assert_eq!(
                e.normalize_with(ex, n, Strategy::Innermost).unwrap(),
                e.normalize_with(ex, n, Strategy::Outermost).unwrap()
            );
        }
    }
}
