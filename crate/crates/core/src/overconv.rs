//! Gauss norms, growth certificates for term families, F_m, (1 − p^rF)^{-1}
//! and Frobenius fixed points over 𝔾_m^d.

use num_rational::Ratio;

use crate::drw_terms::basis::{shape, Partition, Shape};
use crate::drw_terms::{DRWElement, Drw, TermKey, Weight};
use crate::error::{Error, Result};

pub type Q = Ratio<i64>;

/// Radius parameter ε > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussParams {
    pub eps: Q,
}

impl GaussParams {
    pub fn new(eps: Q) -> Result<Self> {
        if eps <= Q::from_integer(0) {
            return Err(Error::Domain("ε must be positive".into()));
        }
        Ok(GaussParams { eps })
    }
}

/// γ_ε(ω) = min over terms of ord_V ξ − ε|k|; None stands for +∞.
pub fn gauss_norm(drw: &Drw, w: &DRWElement, g: GaussParams) -> Option<Q> {
    let zq = drw.zq();
    w.terms
        .iter()
        .map(|(key, c)| Q::from_integer(zq.ord_p(c) as i64) - g.eps * key.k.size(drw.p()))
        .min()
}

/// |k| ≤ C₁·ord ξ + C₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthCertificate {
    pub c1: Q,
    pub c2: Q,
}

impl GrowthCertificate {
    pub fn new(c1: Q, c2: Q) -> Result<Self> {
        if c1 <= Q::from_integer(0) {
            return Err(Error::Domain("C₁ must be positive".into()));
        }
        Ok(GrowthCertificate { c1, c2 })
    }

    /// Bound side of the inequality for a term with the given ord.
    pub fn bound(&self, ord: i64) -> Q {
        self.c1 * Q::from_integer(ord) + self.c2
    }
}

/// (C₁, C₂) ↦ (C₁, pC₂).
pub fn frobenius_certificate(cert: GrowthCertificate, p: u64) -> GrowthCertificate {
    GrowthCertificate { c1: cert.c1, c2: cert.c2 * Q::from_integer(p as i64) }
}

/// Where the family's differential sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyShape {
    /// Degree 0: the whole support in I₀.
    Function,
    /// Degree 1 with I₀ = ∅ and a single interval.
    Exact,
}

/// Basic differentials e_m, m in [start, end], with weight
/// p^{g·m}·(k₀ + m·k₁) and coefficient p^{o₀ + m·o₁}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermFamily {
    pub k0: Weight,
    pub k1: Weight,
    pub geometric: u32,
    pub o0: i64,
    pub o1: i64,
    pub shape: FamilyShape,
    pub start: u32,
    pub end: u32,
}

/// One member of a family: its key and the p-adic order of its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTerm {
    pub m: u32,
    pub key: TermKey,
    pub ord: i64,
}

impl TermFamily {
    pub fn weight_at(&self, p: u64, m: u32) -> Weight {
        let mut k = self.k0.clone();
        for _ in 0..m {
            k = k.add(p, &self.k1);
        }
        for _ in 0..self.geometric * m {
            k = k.mul_p(p);
        }
        k
    }

    pub fn term(&self, drw: &Drw, m: u32) -> Result<FamilyTerm> {
        let p = drw.p();
        let k = self.weight_at(p, m);
        let order = k.ordered_support(p);
        let part = match self.shape {
            FamilyShape::Function => Partition::trivial(order),
            FamilyShape::Exact => {
                if order.is_empty() {
                    return Err(Error::Domain(format!("exact family member {m} has zero weight")));
                }
                Partition { i0: vec![], intervals: vec![order] }
            }
        };
        let key = TermKey { k, part, z: 0 };
        drw.check_key(&key)?;
        let ord = self.o0 + self.o1 * m as i64;
        if ord < drw.min_coeff_ord(&key) as i64 {
            return Err(Error::InvalidForm(format!("family member {m} has coefficient outside V^u W(k)")));
        }
        Ok(FamilyTerm { m, key, ord })
    }

    pub fn terms(&self, drw: &Drw) -> Result<Vec<FamilyTerm>> {
        (self.start..=self.end).map(|m| self.term(drw, m)).collect()
    }
}

/// F applied to each member, through the closed-form action on a basic
/// differential at a level high enough to keep the coefficient.
pub fn frobenius_terms(drw: &Drw, terms: &[FamilyTerm]) -> Result<Vec<FamilyTerm>> {
    let zq = drw.zq();
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let level = t.ord as u32 + 2;
        let xi = zq.mul_p_pow(&zq.one(), t.ord as u32);
        let e = drw.basic(xi, t.key.clone(), level)?;
        let fe = drw.frobenius(&e)?;
        let (key, c) = fe.terms.iter().next().ok_or_else(|| Error::Domain("F killed a family member".into()))?;
        out.push(FamilyTerm { m: t.m, key: key.clone(), ord: zq.ord_p(c) as i64 });
    }
    Ok(out)
}

/// First member violating |k| ≤ C₁·ord + C₂, if any.
pub fn check_certificate(drw: &Drw, terms: &[FamilyTerm], cert: GrowthCertificate) -> Option<u32> {
    terms.iter().find(|t| t.key.k.size(drw.p()) > cert.bound(t.ord)).map(|t| t.m)
}

/// Members strictly violating the inequality.
pub fn violations(drw: &Drw, terms: &[FamilyTerm], cert: GrowthCertificate) -> Vec<u32> {
    terms.iter().filter(|t| t.key.k.size(drw.p()) > cert.bound(t.ord)).map(|t| t.m).collect()
}

/// Σ_{i<n} (p^rF)^i ω, the inverse of 1 − p^rF at level n.
pub fn geometric_inverse(drw: &Drw, w: &DRWElement, r: u32) -> Result<DRWElement> {
    if r == 0 {
        return Err(Error::Domain("1 − F is not inverted by the geometric series; need r ≥ 1".into()));
    }
    let mut acc = w.clone();
    let mut cur = w.clone();
    for _ in 1..w.level {
        cur = drw.p_power_frobenius(&cur, r)?;
        acc = drw.add(&acc, &cur)?;
    }
    Ok(acc)
}

/// 1 − p^rF at the same level.
pub fn one_minus_prf(drw: &Drw, w: &DRWElement, r: u32) -> Result<DRWElement> {
    drw.sub(w, &drw.p_power_frobenius(w, r)?)
}

/// F_m = p^{i−m}·F in degree i ≥ m.
pub fn f_m_operator(drw: &Drw, w: &DRWElement, m: usize) -> Result<DRWElement> {
    if w.degree < m {
        return Err(Error::Domain(format!("F_{m} is defined in degrees ≥ {m}")));
    }
    let f = drw.frobenius(w)?;
    Ok(drw.mul_int(&f, (drw.p() as i64).pow((w.degree - m) as u32)))
}

/// Smallest C₂ ≥ 0 making `terms` satisfy the inequality for the given C₁.
pub fn tight_certificate(drw: &Drw, terms: &[FamilyTerm], c1: Q) -> Result<GrowthCertificate> {
    let c2 = terms
        .iter()
        .map(|t| t.key.k.size(drw.p()) - c1 * Q::from_integer(t.ord))
        .fold(Q::from_integer(0), |a, b| a.max(b));
    GrowthCertificate::new(c1, c2)
}

/// The first `count` function-shaped families over small weights, in a
/// fixed enumeration order.
pub fn affine_families(drw: &Drw, count: usize) -> Vec<TermFamily> {
    let mut out = Vec::new();
    let bases = drw.weights(2, 2);
    let steps = drw.weights(1, 1);
    for g in 0..=1 {
        for o1 in 0..=1 {
            for k1 in &steps {
                for k0 in &bases {
                    for o0 in 0..=2 {
                        if out.len() == count {
                            return out;
                        }
                        let fam = TermFamily {
                            k0: k0.clone(),
                            k1: k1.clone(),
                            geometric: g,
                            o0,
                            o1,
                            shape: FamilyShape::Function,
                            start: 0,
                            end: 3,
                        };
                        if fam.terms(drw).is_ok() {
                            out.push(fam);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Outcome of pushing growth certificates through F.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransportReport {
    pub families: usize,
    /// (family index, member) where F(e_m) breaks (C₁, pC₂).
    pub unsound: Vec<(usize, u32)>,
    /// (family index, member) where F(e_m) breaks (pC₁, pC₂).
    pub unsound_scaled: Vec<(usize, u32)>,
    /// Families with a violation of (C₁, C₂) whose image satisfies it again.
    pub lost_violations: Vec<usize>,
}

/// For each family: the tight certificate with C₁ = 1 is transported to
/// the image under F; a second certificate with C₂ = 0 tests that strict
/// violations survive F with the same constants.
pub fn transport_check(drw: &Drw, families: &[TermFamily]) -> Result<TransportReport> {
    let p = Q::from_integer(drw.p() as i64);
    let one = Q::from_integer(1);
    let mut rep = TransportReport { families: families.len(), ..Default::default() };
    for (i, fam) in families.iter().enumerate() {
        let terms = fam.terms(drw)?;
        let image = frobenius_terms(drw, &terms)?;
        let cert = tight_certificate(drw, &terms, one)?;
        let moved = frobenius_certificate(cert, drw.p());
        rep.unsound.extend(violations(drw, &image, moved).into_iter().map(|m| (i, m)));
        let scaled = GrowthCertificate { c1: cert.c1 * p, c2: cert.c2 * p };
        rep.unsound_scaled.extend(violations(drw, &image, scaled).into_iter().map(|m| (i, m)));
        let strict = GrowthCertificate::new(one, Q::from_integer(0))?;
        let before = violations(drw, &terms, strict);
        let after = violations(drw, &image, strict);
        if before.iter().any(|m| !after.contains(m)) {
            rep.lost_violations.push(i);
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedClass {
    LogFixed,
    NotFixed(TermKey),
}

/// log-fixed iff every term is a W(𝔽_p)-multiple of a dlog monomial
/// product (weight zero).
pub fn classify_fixed(drw: &Drw, w: &DRWElement) -> Result<FixedClass> {
    if drw.ring.vars.iter().any(|v| !v.laurent) {
        return Err(Error::Domain("fixed-point classification needs a fully Laurent ring".into()));
    }
    let zq = drw.zq();
    for (key, c) in &w.terms {
        let prime_field_coeff = zq.truncate(&zq.sigma(c), w.level) == *c;
        if !key.k.is_zero() || !prime_field_coeff {
            return Ok(FixedClass::NotFixed(key.clone()));
        }
    }
    Ok(FixedClass::LogFixed)
}

/// F(ω) = ω, with F the same-level action; a type-2 term is never fixed.
pub fn is_frobenius_fixed(drw: &Drw, w: &DRWElement) -> Result<bool> {
    if w.terms.keys().any(|k| shape(&k.k, &k.part) == Shape::Two) {
        return Ok(false);
    }
    let f = drw.frobenius_same_level(w)?;
    Ok(f.terms == w.terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drw_terms::{Exp, RingSpec};
    use crate::ff::PrimePower;
    use crate::poly::VarDecl;

    fn gm(p: u32) -> Drw {
        Drw::new(RingSpec::new(PrimePower::new(p, 1).unwrap(), vec![VarDecl::laurent("x")]).unwrap())
    }

    #[test]
    fn geometric_inverse_of_dlog() {
        let d = gm(2);
        let key = TermKey { k: Weight::zero(1), part: Partition::trivial(vec![]), z: 1 };
        let w = d.basic(d.zq().one(), key, 2).unwrap();
        let inv = geometric_inverse(&d, &w, 1).unwrap();
        assert_eq!(inv, d.mul_int(&w, 3));
        assert_eq!(one_minus_prf(&d, &inv, 1).unwrap(), w);
        assert!(geometric_inverse(&d, &w, 0).is_err());
    }

    #[test]
    fn gauss_norm_of_a_v_squared_term() {
        let d = gm(3);
        let key = TermKey { k: Weight(vec![Exp::new(3, 3, 2)]), part: Partition::trivial(vec![0]), z: 0 };
        let w = d.basic(d.zq().from_int(9), key, 3).unwrap();
        let g = gauss_norm(&d, &w, GaussParams::new(Q::new(1, 2)).unwrap());
        // ord 2, |k| = 3/9
        assert_eq!(g, Some(Q::new(11, 6)));
        assert_eq!(gauss_norm(&d, &d.zero(3, 0), GaussParams::new(Q::new(1, 2)).unwrap()), None);
    }

    #[test]
    fn dlog_is_fixed_and_v_is_not() {
        let d = gm(5);
        let key = TermKey { k: Weight::zero(1), part: Partition::trivial(vec![]), z: 1 };
        let w = d.basic(d.zq().from_int(3), key, 2).unwrap();
        assert_eq!(classify_fixed(&d, &w).unwrap(), FixedClass::LogFixed);
        assert!(is_frobenius_fixed(&d, &w).unwrap());
        let vkey = TermKey { k: Weight(vec![Exp { num: 1, den: 1 }]), part: Partition::trivial(vec![0]), z: 0 };
        let v = d.basic(d.zq().from_int(5), vkey, 2).unwrap();
        assert!(matches!(classify_fixed(&d, &v).unwrap(), FixedClass::NotFixed(_)));
        assert!(!is_frobenius_fixed(&d, &v).unwrap());
    }
}
