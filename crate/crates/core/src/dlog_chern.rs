//! dlog from Milnor symbols to W_nΩ, the two-chart Čech model of ℙ¹ and
//! first Chern classes of O(m) in Milnor K-theory and in W_nΩ.

use std::collections::BTreeMap;

use crate::drw_rewrite::{DRWExpr, Engine};
use crate::drw_terms::{DRWElement, Drw, Partition, RingSpec, TermKey, Weight};
use crate::error::{Error, Result};
use crate::ff::PrimePower;
use crate::milnor::{ChowClass, ChowGroup, Cochain, Curve, FunctionField, KValue, MilnorSymbol};
use crate::poly::{LPoly, VarDecl};

/// dlog{a₁,…,a_m} = dlog[a₁]⋯dlog[a_m], extended additively.
pub fn dlog_symbol(engine: &Engine, s: &MilnorSymbol<LPoly>, n: u32) -> Result<DRWElement> {
    let zq = engine.drw.zq();
    let mut parts = Vec::new();
    for (c, entries) in &s.terms {
        if entries.len() != s.degree {
            return Err(Error::DegreeMismatch(entries.len(), s.degree));
        }
        for a in entries {
            if engine.poly.unit_monomial(a).is_none() {
                return Err(Error::Domain(format!("{} is not a unit", engine.poly.format(a))));
            }
        }
        let factors = entries.iter().map(|a| DRWExpr::Dlog(a.clone())).collect();
        let prod = DRWExpr::product(DRWExpr::Scalar(zq.one()), factors);
        parts.push(DRWExpr::mul(DRWExpr::Scalar(zq.from_int(*c)), prod));
    }
    if parts.is_empty() {
        return Ok(engine.drw.zero(n, s.degree));
    }
    engine.normalize(&DRWExpr::Add(parts), n)
}

/// O(m) on ℙ¹ with transition u₀₁ = t^m on 𝔾_m = U₀ ∩ U₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineBundleP1 {
    pub m: i64,
}

impl LineBundleP1 {
    pub fn new(m: i64) -> Self {
        LineBundleP1 { m }
    }

    pub fn tensor(&self, other: &LineBundleP1) -> LineBundleP1 {
        LineBundleP1 { m: self.m + other.m }
    }

    pub fn dual(&self) -> LineBundleP1 {
        LineBundleP1 { m: -self.m }
    }
}

/// A class in H²(ℙ¹, W_nΩ^•) represented by η ∈ W_nΩ¹(𝔾_m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechClassP1 {
    pub level: u32,
    pub eta: DRWElement,
}

/// Engines for U₀ = Spec 𝔽_q[t], U₁ = Spec 𝔽_q[s] and U₀₁ = Spec 𝔽_q[t,1/t].
#[derive(Clone, Debug)]
pub struct P1Cech {
    pub u0: Engine,
    pub u1: Engine,
    pub u01: Engine,
    pub function_field: FunctionField,
}

fn map_leaves(e: &DRWExpr, f: &dyn Fn(&LPoly) -> LPoly) -> DRWExpr {
    match e {
        DRWExpr::Scalar(c) => DRWExpr::Scalar(*c),
        DRWExpr::Teich(g) => DRWExpr::Teich(f(g)),
        DRWExpr::Dlog(g) => DRWExpr::Dlog(f(g)),
        DRWExpr::F(x) => DRWExpr::f(map_leaves(x, f)),
        DRWExpr::V(x) => DRWExpr::v(map_leaves(x, f)),
        DRWExpr::D(x) => DRWExpr::d(map_leaves(x, f)),
        DRWExpr::Add(xs) => DRWExpr::Add(xs.iter().map(|x| map_leaves(x, f)).collect()),
        DRWExpr::Mul(a, b) => DRWExpr::mul(map_leaves(a, f), map_leaves(b, f)),
    }
}

fn invert_variable(g: &LPoly) -> LPoly {
    let mut out = g.clone();
    out.terms = g.terms.iter().map(|(e, c)| (e.iter().map(|k| -k).collect(), *c)).collect();
    out
}

impl P1Cech {
    pub fn new(pp: PrimePower) -> Result<P1Cech> {
        let engine = |v: VarDecl| -> Result<Engine> { Ok(Engine::new(Drw::new(RingSpec::new(pp, vec![v])?))) };
        let u01 = engine(VarDecl::laurent("t"))?;
        let function_field = FunctionField::new(u01.drw.ring.field());
        Ok(P1Cech { u0: engine(VarDecl::poly("t"))?, u1: engine(VarDecl::poly("s"))?, u01, function_field })
    }

    pub fn p(&self) -> u64 {
        self.u01.drw.p()
    }

    pub fn cocycle(&self, l: &LineBundleP1) -> LPoly {
        let f = self.u01.drw.ring.field();
        self.u01.poly.monomial(f.one(), vec![l.m]).expect("t is invertible on the overlap")
    }

    /// Reads m from a unit c·t^m of 𝔽_q[t,1/t].
    pub fn bundle_of_cocycle(&self, u: &LPoly) -> Result<LineBundleP1> {
        let (_, e) = self
            .u01
            .poly
            .unit_monomial(u)
            .ok_or_else(|| Error::Domain("transition function is not a unit of F_q[t,1/t]".into()))?;
        Ok(LineBundleP1 { m: e[0] })
    }

    fn transport(&self, from: &Engine, w: &DRWElement, subst: &dyn Fn(&LPoly) -> LPoly) -> Result<DRWElement> {
        if w.ring != from.drw.ring {
            return Err(Error::RingMismatch);
        }
        let mut parts = Vec::new();
        for (key, xi) in &w.terms {
            parts.push(map_leaves(&from.expr_of_basic(key, xi)?, subst));
        }
        if parts.is_empty() {
            return Ok(self.u01.drw.zero(w.level, w.degree));
        }
        self.u01.normalize(&DRWExpr::Add(parts), w.level)
    }

    /// U₁ → U₀₁ along [s] ↦ [t]^{-1}.
    pub fn chart_transfer(&self, w: &DRWElement) -> Result<DRWElement> {
        self.transport(&self.u1, w, &invert_variable)
    }

    /// U₀ → U₀₁, the localization t ↦ t.
    pub fn restrict_u0(&self, w: &DRWElement) -> Result<DRWElement> {
        self.transport(&self.u0, w, &|g: &LPoly| g.clone())
    }

    /// δ(ω₀, ω₁, f) = ω₁|₀₁ − ω₀|₀₁ + d f in W_nΩ¹(U₀₁).
    pub fn coboundary(&self, w0: &DRWElement, w1: &DRWElement, f: &DRWElement) -> Result<DRWElement> {
        let drw = &self.u01.drw;
        let a = self.chart_transfer(w1)?;
        let b = self.restrict_u0(w0)?;
        drw.add(&drw.sub(&a, &b)?, &drw.differential(f)?)
    }

    /// c₁ in A¹(ℙ¹; K^M, 1): the divisor of the section equal to u₀₁ on U₀
    /// and 1 on U₁.
    pub fn c1_milnor(&self, l: &LineBundleP1) -> Result<ChowClass> {
        let k = &self.function_field;
        let section = k.pow_i(&k.t(), l.m)?;
        let div = k.gersten_differential(Curve::A1, &MilnorSymbol::single(vec![section]))?;
        let values: BTreeMap<_, _> = div.values.into_iter().collect::<BTreeMap<_, KValue>>();
        let g = ChowGroup::new(k, Curve::P1, 1, 1)?;
        g.class_of_cochain(k, &Cochain { degree: 0, values })
    }

    /// c₁ in H²(ℙ¹, W_nΩ^•): η = dlog[u₀₁].
    pub fn c1_overconvergent(&self, l: &LineBundleP1, n: u32) -> Result<CechClassP1> {
        let eta = dlog_symbol(&self.u01, &MilnorSymbol::single(vec![self.cocycle(l)]), n)?;
        Ok(CechClassP1 { level: n, eta })
    }

    fn dlog_t_key(&self) -> TermKey {
        TermKey { k: Weight::zero(1), part: Partition::trivial(vec![]), z: 1 }
    }

    /// Coefficient of the weight-0 term dlog[t], in ℤ/p^n.
    pub fn pairing(&self, c: &CechClassP1) -> Result<u64> {
        let zq = self.u01.drw.zq();
        if c.eta.degree != 1 || c.eta.ring != self.u01.drw.ring {
            return Err(Error::InvalidForm("expected a degree-1 form on the overlap".into()));
        }
        let x = c.eta.terms.get(&self.dlog_t_key()).copied().unwrap_or_else(|| zq.zero());
        let x = zq.truncate(&x, c.level);
        zq.as_integer(&x).ok_or_else(|| Error::Domain("dlog[t] coefficient outside W(F_p)".into()))
    }

    /// Basic elements of one chart (unit or minimal coefficient) of the
    /// given degree and weight bound.
    pub fn basis_elements(&self, e: &Engine, degree: usize, bound: i64, n: u32) -> Result<Vec<DRWElement>> {
        let drw = &e.drw;
        let zq = drw.zq();
        let mut out = Vec::new();
        for key in drw.all_keys(bound, n) {
            if key.degree() != degree || key.k.u() >= n {
                continue;
            }
            let xi = zq.mul_p_pow(&zq.one(), drw.min_coeff_ord(&key));
            let el = drw.basic(xi, key, n)?;
            if !el.is_zero() {
                out.push(el);
            }
        }
        Ok(out)
    }

    /// Pairing values of δ on basic cochains of weight ≤ bound; returns
    /// the first nonzero one found.
    pub fn coboundary_counterexample(&self, bound: i64, n: u32) -> Result<Option<(String, u64)>> {
        let zero = |e: &Engine, d| e.drw.zero(n, d);
        let cases = [
            (&self.u0, 1usize, "omega0"),
            (&self.u1, 1, "omega1"),
            (&self.u01, 0, "f"),
        ];
        for (e, deg, slot) in cases {
            for b in self.basis_elements(e, deg, bound, n)? {
                let (w0, w1, f) = match slot {
                    "omega0" => (b.clone(), zero(&self.u1, 1), zero(&self.u01, 0)),
                    "omega1" => (zero(&self.u0, 1), b.clone(), zero(&self.u01, 0)),
                    _ => (zero(&self.u0, 1), zero(&self.u1, 1), b.clone()),
                };
                let eta = self.coboundary(&w0, &w1, &f)?;
                let v = self.pairing(&CechClassP1 { level: n, eta })?;
                if v != 0 {
                    return Ok(Some((format!("{slot}: {:?}", b.terms.keys().next()), v)));
                }
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chern_classes_agree_on_line_bundles() {
        for p in [2, 3, 5] {
            let c = P1Cech::new(PrimePower::new(p, 1).unwrap()).unwrap();
            let pn = (p as i64).pow(2);
            for m in -6..=6 {
                let l = LineBundleP1::new(m);
                let milnor = c.c1_milnor(&l).unwrap();
                assert_eq!(milnor.value, crate::milnor::ClassValue::Int(m));
                let eta = c.c1_overconvergent(&l, 2).unwrap();
                assert_eq!(c.pairing(&eta).unwrap() as i64, m.rem_euclid(pn));
            }
        }
    }

    #[test]
    fn chart_transfer_of_s_is_inverse_t() {
        let c = P1Cech::new(PrimePower::new(3, 1).unwrap()).unwrap();
        let f = c.u1.drw.ring.field();
        let s = c.u1.normalize(&DRWExpr::Teich(c.u1.poly.variable(0)), 2).unwrap();
        let img = c.chart_transfer(&s).unwrap();
        let t_inv = DRWExpr::Teich(c.u01.poly.monomial(f.one(), vec![-1]).unwrap());
        assert_eq!(img, c.u01.normalize(&t_inv, 2).unwrap());
    }

    #[test]
    fn non_unit_entries_are_rejected() {
        let c = P1Cech::new(PrimePower::new(2, 1).unwrap()).unwrap();
        let r = &c.u01.poly;
        let one_plus_t = crate::ring::CommRing::add(r, &r.constant(r.field.one()), &r.variable(0));
        let s = MilnorSymbol::single(vec![one_plus_t]);
        assert!(dlog_symbol(&c.u01, &s, 1).is_err());
    }
}
