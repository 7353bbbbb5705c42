use drw_core::drw_rewrite::{DRWExpr, Engine};
use drw_core::transfer::{expr_of_element, extend_variables, map_leaves, ConstantFieldExtension, QuadraticExtension};
use drw_core::{DRWElement, Drw, LPoly, PrimePower, RingSpec, VarDecl};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn engine(p: u32, a: u32, vars: Vec<VarDecl>) -> Engine {
    Engine::new(Drw::new(RingSpec::new(PrimePower::new(p, a).unwrap(), vars).unwrap()))
}

fn random_element(e: &Engine, rng: &mut ChaCha8Rng, degree: usize, n: u32) -> DRWElement {
    let drw = &e.drw;
    let zq = drw.zq();
    let keys: Vec<_> = drw.all_keys(2, n).into_iter().filter(|k| k.degree() == degree && k.k.u() < n).collect();
    let mut terms = Vec::new();
    for _ in 0..3 {
        let k = keys[rng.gen_range(0..keys.len())].clone();
        let c = zq.mul_p_pow(&zq.from_int(rng.gen_range(1..50)), drw.min_coeff_ord(&k));
        terms.push((k, c));
    }
    drw.from_terms(n, degree, terms).unwrap()
}

/// B-expressions over 𝔽_p[x^{±1}][y]/(y² − x) realized in 𝔽_p[y^{±1}] via x = y².
fn to_y_ring(g: &LPoly) -> LPoly {
    let mut out = g.clone();
    out.terms = g.terms.iter().map(|(e, c)| (vec![2 * e[0] + e[1]], *c)).collect();
    out
}

fn a_to_y(g: &LPoly) -> LPoly {
    let mut out = g.clone();
    out.terms = g.terms.iter().map(|(e, c)| (vec![2 * e[0]], *c)).collect();
    out
}

#[test]
fn quadratic_model_agrees_with_square_root_ring() {
    for p in [3u32, 5] {
        let base = engine(p, 1, vec![VarDecl::laurent("x")]);
        let u = base.poly.variable(0);
        let q = QuadraticExtension::new(base, u).unwrap();
        let oracle = engine(p, 1, vec![VarDecl::laurent("y")]);
        let b = &q.b_ring;
        let one = b.field.one();
        let mono = |i: i64, j: i64| DRWExpr::Teich(b.monomial(one, vec![i, j]).unwrap());
        let y = mono(0, 1);
        let exprs = vec![
            y.clone(),
            DRWExpr::d(y.clone()),
            DRWExpr::f(y.clone()),
            DRWExpr::v(y.clone()),
            DRWExpr::mul(mono(1, 1), DRWExpr::d(mono(-1, 0))),
            DRWExpr::d(DRWExpr::v(mono(1, 1))),
            DRWExpr::f(DRWExpr::d(DRWExpr::v(y.clone()))),
            DRWExpr::mul(DRWExpr::v(y.clone()), DRWExpr::v(mono(2, 1))),
            DRWExpr::Dlog(mono_poly(b, 1, 3)),
            DRWExpr::mul(DRWExpr::Dlog(mono_poly(b, 0, 1)), mono(0, 3)),
        ];
        for n in 1..=3u32 {
            for e in &exprs {
                let w = q.eval(e, n).unwrap();
                // ω₀ + ω₁[y] pushed into the oracle ring
                let e0 = map_leaves(&expr_of_element(&q.base, &w.c0).unwrap(), &a_to_y, &|c| c);
                let e1 = map_leaves(&expr_of_element(&q.base, &w.c1).unwrap(), &a_to_y, &|c| c);
                let yy = DRWExpr::Teich(oracle.poly.variable(0));
                let mut parts = Vec::new();
                if !e0.is_zero_sum() {
                    parts.push(e0);
                }
                if !e1.is_zero_sum() {
                    parts.push(DRWExpr::mul(e1, yy));
                }
                let direct = oracle.normalize(&map_leaves(e, &to_y_ring, &|c| c), n);
                let direct = direct.unwrap_or_else(|err| panic!("direct p={p} n={n} {e:?}: {err}"));
                let deg = e.degree().unwrap();
                let via = if parts.is_empty() {
                    oracle.drw.zero(n, deg)
                } else {
                    oracle.normalize(&DRWExpr::Add(parts), n).unwrap()
                };
                assert_eq!(via, direct, "p={p} n={n} e={e:?}");
            }
        }
    }
}

fn mono_poly(b: &drw_core::LaurentRing, i: i64, j: i64) -> LPoly {
    b.monomial(b.field.one(), vec![i, j]).unwrap()
}

#[test]
fn norm_after_inclusion_is_multiplication_by_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let base = engine(3, 1, vec![VarDecl::laurent("x"), VarDecl::poly("z")]);
    let u = base.poly.variable(0);
    let q = QuadraticExtension::new(base.clone(), u).unwrap();
    let c = ConstantFieldExtension::new(base.clone(), 2).unwrap();
    for i in 0..100 {
        let n = 1 + (i % 3) as u32;
        let deg = (i / 3) % 3;
        let w = random_element(&base, &mut rng, deg, n);
        assert_eq!(q.norm(&q.include(&w)).unwrap(), base.drw.mul_int(&w, 2));
        assert_eq!(c.norm(&c.include(&w).unwrap()).unwrap(), base.drw.mul_int(&w, 2));
    }
}

#[test]
fn decomposition_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let base = engine(3, 1, vec![VarDecl::laurent("x")]);
    let u = base.poly.variable(0);
    let q = QuadraticExtension::new(base.clone(), u).unwrap();
    for i in 0..30 {
        let n = 1 + (i % 3) as u32;
        let deg = (i / 3) % 2;
        let parts = vec![random_element(&base, &mut rng, deg, n), random_element(&base, &mut rng, deg, n)];
        let w = q.recompose(&parts).unwrap();
        assert_eq!(q.decompose(&w), parts);
    }
    let c = ConstantFieldExtension::new(base.clone(), 3).unwrap();
    for i in 0..30 {
        let n = 1 + (i % 3) as u32;
        let parts: Vec<_> = (0..3).map(|_| random_element(&base, &mut rng, 1, n)).collect();
        let w = c.recompose(&parts).unwrap();
        assert_eq!(c.decompose(&w).unwrap(), parts);
        // the Galois average is A-side
        let avg = c.include(&c.norm(&w).unwrap()).unwrap();
        let d = c.decompose(&avg).unwrap();
        assert!(d[1..].iter().all(|x| x.is_zero()));
    }
}

#[test]
fn galois_action_fixes_the_base_and_agrees_on_expressions() {
    let base = engine(2, 1, vec![VarDecl::poly("x")]);
    let c = ConstantFieldExtension::new(base.clone(), 3).unwrap();
    let f = c.ext.poly.field.clone();
    let theta = c.ext.poly.monomial(f.theta(), vec![1]).unwrap();
    let e = DRWExpr::mul(DRWExpr::v(DRWExpr::Teich(theta)), DRWExpr::d(DRWExpr::Teich(c.ext.poly.variable(0))));
    let w = c.ext.normalize(&e, 3).unwrap();
    for g in 0..3 {
        assert_eq!(c.act(g, &w).unwrap(), c.ext.normalize(&c.act_expr(g, &e), 3).unwrap());
    }
    let x = c.include(&base.normalize(&DRWExpr::d(DRWExpr::Teich(base.poly.variable(0))), 2).unwrap()).unwrap();
    assert_eq!(c.act(1, &x).unwrap(), x);
}

#[test]
fn norm_commutes_with_adding_a_variable() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = engine(5, 1, vec![VarDecl::laurent("x")]);
    let a2 = engine(5, 1, vec![VarDecl::laurent("x"), VarDecl::poly("z")]);
    let q = QuadraticExtension::new(a.clone(), a.poly.variable(0)).unwrap();
    let q2 = QuadraticExtension::new(a2.clone(), a2.poly.variable(0)).unwrap();
    for i in 0..20 {
        let n = 1 + (i % 2) as u32;
        let parts = vec![random_element(&a, &mut rng, 1, n), random_element(&a, &mut rng, 1, n)];
        let w = q.recompose(&parts).unwrap();
        let pushed: Vec<_> = q.decompose(&w).iter().map(|x| extend_variables(&a.drw, &a2.drw, x).unwrap()).collect();
        let w2 = q2.recompose(&pushed).unwrap();
        let lhs = q2.norm(&w2).unwrap();
        let rhs = extend_variables(&a.drw, &a2.drw, &q.norm(&w).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
