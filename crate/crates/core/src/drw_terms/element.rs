//! Finite sums of basic Witt differentials at a fixed level, with the
//! closed-form actions of F, V, d, scalars and restriction.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::basis::{mask_vars, shape, type_tag, Partition, Shape, TypeTag};
use super::weight::Weight;
use crate::error::{Error, Result};
use crate::ff::{FiniteField, PrimePower};
use crate::poly::{LaurentRing, VarDecl};
use crate::witt::{ScalarRing, WittScalar, Zq, ZqElem};

/// 𝔽_q[x_1, …, x_d] with some variables inverted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub pp: PrimePower,
    pub vars: Vec<VarDecl>,
}

impl RingSpec {
    pub fn new(pp: PrimePower, vars: Vec<VarDecl>) -> Result<Self> {
        if vars.len() > 16 {
            return Err(Error::Domain("at most 16 variables".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::Domain(format!("duplicate variable {}", v.name)));
            }
        }
        Ok(RingSpec { pp, vars })
    }

    pub fn p(&self) -> u64 {
        self.pp.p as u64
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn has_laurent(&self) -> bool {
        self.vars.iter().any(|v| v.laurent)
    }

    pub fn laurent_mask(&self) -> u32 {
        self.vars.iter().enumerate().filter(|(_, v)| v.laurent).fold(0, |m, (j, _)| m | (1 << j))
    }

    pub fn field(&self) -> FiniteField {
        FiniteField::new(self.pp)
    }

    pub fn poly_ring(&self) -> LaurentRing {
        LaurentRing::new(self.field(), self.vars.clone())
    }
}

/// Index of a basic Witt differential within its level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub k: Weight,
    pub part: Partition,
    /// dlog factors on zero-weight Laurent variables.
    pub z: u32,
}

impl TermKey {
    pub fn degree(&self) -> usize {
        self.part.len() + self.z.count_ones() as usize
    }
}

/// e(ξ, k, 𝒫, Z') with its type tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicWittDifferential {
    pub xi: WittScalar,
    pub key: TermKey,
    pub tag: TypeTag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DRWElement {
    pub ring: Arc<RingSpec>,
    pub level: u32,
    pub degree: usize,
    pub terms: BTreeMap<TermKey, ZqElem>,
    /// Set when produced by the same-level Frobenius convenience mode.
    pub same_level: bool,
}

impl DRWElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Working context: one ring, one coefficient precision.
#[derive(Clone, Debug)]
pub struct Drw {
    pub ring: Arc<RingSpec>,
    pub scalars: ScalarRing,
}

impl Drw {
    pub fn new(ring: RingSpec) -> Self {
        let zq = Zq::new(ring.field());
        Drw { ring: Arc::new(ring), scalars: ScalarRing::new(zq) }
    }

    pub fn zq(&self) -> &Zq {
        &self.scalars.zq
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    pub fn zero(&self, level: u32, degree: usize) -> DRWElement {
        DRWElement { ring: self.ring.clone(), level, degree, terms: BTreeMap::new(), same_level: false }
    }

    /// Checks that the key is a well-formed basic differential index.
    pub fn check_key(&self, key: &TermKey) -> Result<()> {
        let p = self.p();
        let d = self.ring.nvars();
        if key.k.nvars() != d {
            return Err(Error::RingMismatch);
        }
        let lm = self.ring.laurent_mask();
        for j in key.k.negatives() {
            if lm & (1 << j) == 0 {
                return Err(Error::InvalidForm(format!("negative weight on {}", self.ring.vars[j].name)));
            }
        }
        for j in mask_vars(key.z) {
            if j >= d || lm & (1 << j) == 0 || !key.k.0[j].is_zero() {
                return Err(Error::InvalidForm("dlog factor must be on a zero-weight Laurent variable".into()));
            }
        }
        if key.part.intervals.iter().any(|i| i.is_empty()) {
            return Err(Error::InvalidForm("empty differential interval".into()));
        }
        if key.part.flat() != key.k.ordered_support(p) {
            return Err(Error::InvalidForm("partition does not match the ordered support".into()));
        }
        Ok(())
    }

    /// Minimal ord_p of a coefficient for this key.
    pub fn min_coeff_ord(&self, key: &TermKey) -> u32 {
        match shape(&key.k, &key.part) {
            Shape::One | Shape::Two => key.k.u(),
            Shape::Three => 0,
        }
    }

    pub fn tag(&self, key: &TermKey) -> TypeTag {
        type_tag(self.ring.has_laurent(), &key.k, &key.part, key.z)
    }

    fn insert(&self, el: &mut DRWElement, key: TermKey, c: ZqElem) -> Result<()> {
        let zq = self.zq();
        let c = zq.truncate(&c, el.level);
        if zq.is_zero(&c) {
            return Ok(());
        }
        let need = self.min_coeff_ord(&key);
        if zq.ord_p(&c) < need {
            return Err(Error::InvalidForm(format!("coefficient not in V^{need}W(k)")));
        }
        let new = match el.terms.get(&key) {
            Some(old) => zq.truncate(&zq.add(old, &c), el.level),
            None => c,
        };
        if zq.is_zero(&new) {
            el.terms.remove(&key);
        } else {
            el.terms.insert(key, new);
        }
        Ok(())
    }

    /// Single basic Witt differential e(ξ, k, 𝒫, Z') at level n.
    pub fn basic(&self, xi: ZqElem, key: TermKey, level: u32) -> Result<DRWElement> {
        self.check_key(&key)?;
        if level > self.zq().precision() {
            return Err(Error::Precision { have: self.zq().precision(), need: level });
        }
        let mut el = self.zero(level, key.degree());
        self.insert(&mut el, key, xi)?;
        Ok(el)
    }

    /// Builds an element from (key, coefficient) pairs; like terms merge.
    pub fn from_terms(&self, level: u32, degree: usize, terms: Vec<(TermKey, ZqElem)>) -> Result<DRWElement> {
        let mut el = self.zero(level, degree);
        for (key, c) in terms {
            self.check_key(&key)?;
            if key.degree() != degree {
                return Err(Error::DegreeMismatch(key.degree(), degree));
            }
            self.insert(&mut el, key, c)?;
        }
        Ok(el)
    }

    pub fn basics(&self, el: &DRWElement) -> Vec<BasicWittDifferential> {
        el.terms
            .iter()
            .map(|(key, c)| BasicWittDifferential {
                xi: WittScalar { level: el.level, value: *c },
                key: key.clone(),
                tag: self.tag(key),
            })
            .collect()
    }

    fn same_shape(&self, a: &DRWElement, b: &DRWElement) -> Result<()> {
        if a.ring != b.ring || a.ring != self.ring {
            return Err(Error::RingMismatch);
        }
        if a.level != b.level {
            return Err(Error::LevelMismatch(a.level, b.level));
        }
        if a.degree != b.degree {
            return Err(Error::DegreeMismatch(a.degree, b.degree));
        }
        Ok(())
    }

    pub fn add(&self, a: &DRWElement, b: &DRWElement) -> Result<DRWElement> {
        self.same_shape(a, b)?;
        let mut out = a.clone();
        out.same_level = a.same_level || b.same_level;
        for (k, c) in &b.terms {
            self.insert(&mut out, k.clone(), *c)?;
        }
        Ok(out)
    }

    pub fn neg(&self, a: &DRWElement) -> DRWElement {
        self.mul_int(a, -1)
    }

    pub fn sub(&self, a: &DRWElement, b: &DRWElement) -> Result<DRWElement> {
        self.add(a, &self.neg(b))
    }

    pub fn mul_int(&self, a: &DRWElement, m: i64) -> DRWElement {
        self.map_coeffs(a, a.level, |c| self.zq().mul_int(c, m))
    }

    fn map_coeffs(&self, a: &DRWElement, level: u32, f: impl Fn(&ZqElem) -> ZqElem) -> DRWElement {
        let mut out = DRWElement { level, terms: BTreeMap::new(), ..a.clone() };
        for (k, c) in &a.terms {
            self.insert(&mut out, k.clone(), f(c)).expect("coefficient ideal is preserved");
        }
        out
    }

    /// α·ω for α ∈ W(𝔽_q); α must be known to at least the level of ω.
    pub fn scalar_mul(&self, alpha: &WittScalar, a: &DRWElement) -> Result<DRWElement> {
        if alpha.level < a.level {
            return Err(Error::LevelMismatch(alpha.level, a.level));
        }
        Ok(self.map_coeffs(a, a.level, |c| self.zq().mul(&alpha.value, c)))
    }

    /// R_{n,m}.
    pub fn restrict(&self, a: &DRWElement, m: u32) -> Result<DRWElement> {
        if m > a.level {
            return Err(Error::LevelMismatch(m, a.level));
        }
        Ok(self.map_coeffs(a, m, |c| *c))
    }

    /// F: W_{n}Ω → W_{n-1}Ω.
    pub fn frobenius(&self, a: &DRWElement) -> Result<DRWElement> {
        if a.level == 0 {
            return Err(Error::Domain("Frobenius needs level ≥ 1".into()));
        }
        self.frobenius_to(a, a.level - 1, 0)
    }

    /// F at the same level; defined only on terms of types 1 and 3.
    pub fn frobenius_same_level(&self, a: &DRWElement) -> Result<DRWElement> {
        if let Some(k) = a.terms.keys().find(|k| shape(&k.k, &k.part) == Shape::Two) {
            return Err(Error::Domain(format!(
                "same-level Frobenius is undefined on the type-2 term at weight {:?}",
                k.k
            )));
        }
        let mut out = self.frobenius_to(a, a.level, 0)?;
        out.same_level = true;
        Ok(out)
    }

    /// p^r·F at the same level (r ≥ 1).
    pub fn p_power_frobenius(&self, a: &DRWElement, r: u32) -> Result<DRWElement> {
        if r == 0 {
            return Err(Error::Domain("p^r·F needs r ≥ 1 at a fixed level".into()));
        }
        self.frobenius_to(a, a.level, r)
    }

    fn frobenius_to(&self, a: &DRWElement, level: u32, r: u32) -> Result<DRWElement> {
        let zq = self.zq();
        let p = self.p();
        let mut out = DRWElement { level, terms: BTreeMap::new(), same_level: false, ..a.clone() };
        for (key, c) in &a.terms {
            let s = zq.sigma(c);
            let nc = match shape(&key.k, &key.part) {
                Shape::One | Shape::Three => zq.mul_p_pow(&s, r),
                Shape::Two => {
                    if r >= 1 {
                        zq.mul_p_pow(&s, r - 1)
                    } else {
                        zq.div_p_pow(&s, 1).map_err(|_| Error::NotVDivisible)?
                    }
                }
            };
            let nk = TermKey { k: key.k.mul_p(p), part: key.part.clone(), z: key.z };
            self.insert(&mut out, nk, nc)?;
        }
        Ok(out)
    }

    /// V: W_nΩ → W_{n+1}Ω.
    pub fn verschiebung(&self, a: &DRWElement) -> Result<DRWElement> {
        let zq = self.zq();
        let p = self.p();
        let level = a.level + 1;
        if level > zq.precision() {
            return Err(Error::Precision { have: zq.precision(), need: level });
        }
        let mut out = DRWElement { level, terms: BTreeMap::new(), ..a.clone() };
        for (key, c) in &a.terms {
            let nk = TermKey { k: key.k.div_p(p), part: key.part.clone(), z: key.z };
            let vx = zq.verschiebung(c);
            let keeps = !key.part.i0.is_empty() || nk.k.is_integral();
            let nc = if keeps { vx } else { zq.mul_int(&vx, p as i64) };
            self.insert(&mut out, nk, nc)?;
        }
        Ok(out)
    }

    /// d: W_nΩ^q → W_nΩ^{q+1}.
    pub fn differential(&self, a: &DRWElement) -> Result<DRWElement> {
        let zq = self.zq();
        let p = self.p();
        let mut out = DRWElement { degree: a.degree + 1, terms: BTreeMap::new(), ..a.clone() };
        for (key, c) in &a.terms {
            if key.part.i0.is_empty() {
                continue;
            }
            let mut intervals = vec![key.part.i0.clone()];
            intervals.extend(key.part.intervals.iter().cloned());
            let nk = TermKey { k: key.k.clone(), part: Partition { i0: vec![], intervals }, z: key.z };
            let nc = if key.k.is_integral() {
                let v = key.k.min_ord(p, &key.part.i0);
                zq.mul_p_pow(c, v as u32)
            } else {
                *c
            };
            self.insert(&mut out, nk, nc)?;
        }
        Ok(out)
    }

    /// Partitions of the support of k with ℓ differential intervals.
    pub fn partitions(&self, k: &Weight, ell: usize) -> Vec<Partition> {
        Partition::enumerate(&k.ordered_support(self.p()), ell)
    }

    /// Every key of degree q at weight k.
    pub fn keys_at(&self, k: &Weight, q: usize) -> Vec<TermKey> {
        let lm = self.ring.laurent_mask();
        let zero_laurent: Vec<usize> =
            (0..self.ring.nvars()).filter(|&j| lm & (1 << j) != 0 && k.0[j].is_zero()).collect();
        let mut out = Vec::new();
        for zm in 0u32..(1 << zero_laurent.len()) {
            let z = zero_laurent.iter().enumerate().filter(|(i, _)| zm & (1 << i) != 0).fold(0, |m, (_, &j)| m | (1 << j));
            let nz = (z as u32).count_ones() as usize;
            if nz > q {
                continue;
            }
            for part in self.partitions(k, q - nz) {
                out.push(TermKey { k: k.clone(), part, z });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drw_terms::weight::Exp;

    fn ctx(p: u32, laurent: bool) -> Drw {
        let v = if laurent { VarDecl::laurent("x") } else { VarDecl::poly("x") };
        Drw::new(RingSpec::new(PrimePower::new(p, 1).unwrap(), vec![v, VarDecl::poly("y")]).unwrap())
    }

    #[test]
    fn fv_is_p_on_a_fractional_term() {
        let d = ctx(2, false);
        let k = Weight(vec![Exp { num: 1, den: 1 }, Exp::int(1)]);
        let part = d.partitions(&k, 1).into_iter().find(|p| p.i0.is_empty()).unwrap();
        let key = TermKey { k, part, z: 0 };
        let e = d.basic(d.zq().from_int(2), key, 3).unwrap();
        let fv = d.frobenius(&d.verschiebung(&e).unwrap()).unwrap();
        assert_eq!(fv, d.mul_int(&e, 2));
    }

    #[test]
    fn differential_squares_to_zero() {
        let d = ctx(3, true);
        let k = Weight(vec![Exp::int(-3), Exp::int(1)]);
        for key in d.keys_at(&k, 0) {
            let e = d.basic(d.zq().one(), key, 2).unwrap();
            let dd = d.differential(&d.differential(&e).unwrap()).unwrap();
            assert!(dd.is_zero());
        }
    }

    #[test]
    fn rejects_bad_coefficient() {
        let d = ctx(2, false);
        let k = Weight(vec![Exp { num: 1, den: 1 }, Exp::ZERO]);
        let key = TermKey { k, part: Partition { i0: vec![0], intervals: vec![] }, z: 0 };
        assert!(matches!(d.basic(d.zq().one(), key, 2), Err(Error::InvalidForm(_))));
    }
}
