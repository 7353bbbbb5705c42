//! Fixtures shared by the benchmarks.

use drw_core::drw_rewrite::{DRWExpr, Engine};
use drw_core::ring::CommRing;
use drw_core::{DRWElement, Drw, PrimePower, RingSpec, VarDecl};

/// 𝔽_p[x^{±1}, y].
pub fn plane(p: u32) -> Engine {
    let spec = RingSpec::new(PrimePower::new(p, 1).unwrap(), vec![VarDecl::laurent("x"), VarDecl::poly("y")]).unwrap();
    Engine::new(Drw::new(spec))
}

/// F(V[x+y]·d[x^{-1}y]) + dV[xy^2].
pub fn sample_expr(e: &Engine) -> DRWExpr {
    let r = &e.poly;
    let one = r.field.one();
    let m = |i, j| r.monomial(one, vec![i, j]).unwrap();
    let x_plus_y = r.add(&m(1, 0), &m(0, 1));
    DRWExpr::Add(vec![
        DRWExpr::f(DRWExpr::mul(DRWExpr::v(DRWExpr::Teich(x_plus_y)), DRWExpr::d(DRWExpr::Teich(m(-1, 1))))),
        DRWExpr::d(DRWExpr::v(DRWExpr::Teich(m(1, 2)))),
    ])
}

/// Sum of every degree-one basic with |k| ≤ 2 at level n.
pub fn dense_element(drw: &Drw, n: u32) -> DRWElement {
    let zq = drw.zq();
    let terms = drw
        .all_keys(2, n)
        .into_iter()
        .filter(|k| k.degree() == 1)
        .map(|k| {
            let c = zq.mul_p_pow(&zq.one(), drw.min_coeff_ord(&k));
            (k, c)
        })
        .collect();
    drw.from_terms(n, 1, terms).unwrap()
}
