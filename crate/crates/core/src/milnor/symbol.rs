//! Milnor symbols, tame residues and normal forms in K^M_*(κ) for finite κ.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::{FunctionField, Place, RationalFunction, ResidueField};
use crate::error::{Error, Result};
use crate::ff::FqElem;
use crate::poly::UPoly;

/// Formal ℤ-combination of symbols {a₁,…,a_m} of a fixed degree m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorSymbol<E> {
    pub degree: usize,
    pub terms: Vec<(i64, Vec<E>)>,
}

pub type FunctionSymbol = MilnorSymbol<RationalFunction>;

impl<E: Clone> MilnorSymbol<E> {
    pub fn zero(degree: usize) -> Self {
        MilnorSymbol { degree, terms: Vec::new() }
    }

    pub fn single(entries: Vec<E>) -> Self {
        MilnorSymbol { degree: entries.len(), terms: vec![(1, entries)] }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(MilnorSymbol { degree: self.degree, terms })
    }

    pub fn scale(&self, c: i64) -> Self {
        MilnorSymbol {
            degree: self.degree,
            terms: self.terms.iter().filter(|_| c != 0).map(|(k, e)| (k * c, e.clone())).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    /// Product in K^M_*: concatenation of entries.
    pub fn product(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut e = x.clone();
                e.extend(y.iter().cloned());
                terms.push((a * b, e));
            }
        }
        MilnorSymbol { degree: self.degree + other.degree, terms }
    }
}

/// An element of K^M_m(κ) for a finite field κ, in normal form:
/// K₀ = ℤ, K₁ = κ^*, K_m = 0 for m ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KValue {
    Int(i64),
    Unit(UPoly),
    Zero,
}

impl KValue {
    pub fn is_trivial(&self) -> bool {
        match self {
            KValue::Int(n) => *n == 0,
            KValue::Unit(u) => u.degree() == 0 && u.coeff(0) == FqElem::ONE,
            KValue::Zero => true,
        }
    }
}

#[derive(Clone, Debug)]
enum Entry {
    Pi,
    Unit(UPoly),
}

impl FunctionField {
    fn check_entries(&self, s: &FunctionSymbol) -> Result<()> {
        for (_, e) in &s.terms {
            if e.len() != s.degree {
                return Err(Error::DegreeMismatch(e.len(), s.degree));
            }
            if e.iter().any(|f| self.is_zero(f)) {
                return Err(Error::Domain("symbol entry is zero".into()));
            }
        }
        Ok(())
    }

    /// ∂_v: K^M_m(𝔽_q(t)) → K^M_{m−1}(κ(v)), with ∂_v{π, u₂,…} = {ū₂,…}.
    /// Entries are split as u·π^n and the symbol expanded multilinearly;
    /// repeated π's are removed with {π,π} = {π,−1}.
    pub fn tame_symbol(&self, s: &FunctionSymbol, v: &Place) -> Result<MilnorSymbol<UPoly>> {
        self.check_entries(s)?;
        let m = s.degree;
        if m == 0 {
            return Err(Error::Domain("tame symbol of a degree-0 element".into()));
        }
        let kv = self.residue_field(v);
        let minus_one = kv.constant(self.field().from_int(-1));
        let mut out = MilnorSymbol::zero(m - 1);
        for (c, entries) in &s.terms {
            let parts = entries.iter().map(|f| self.split(f, v)).collect::<Result<Vec<_>>>()?;
            if parts.iter().all(|(n, _)| *n == 0) {
                continue;
            }
            for mask in 0u32..(1 << m) {
                let mut coef = *c;
                let mut es = Vec::with_capacity(m);
                for (i, (n, u)) in parts.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        coef *= n;
                        es.push(Entry::Pi);
                    } else {
                        es.push(Entry::Unit(u.clone()));
                    }
                }
                if coef == 0 {
                    continue;
                }
                // collapse π's pairwise
                loop {
                    let pis: Vec<usize> = es.iter().enumerate().filter(|(_, e)| matches!(e, Entry::Pi)).map(|(i, _)| i).collect();
                    if pis.len() < 2 {
                        break;
                    }
                    let (i, j) = (pis[0], pis[1]);
                    if (j - i - 1) % 2 == 1 {
                        coef = -coef;
                    }
                    es.remove(j);
                    es.insert(i + 1, Entry::Unit(minus_one.clone()));
                }
                let Some(i) = es.iter().position(|e| matches!(e, Entry::Pi)) else {
                    continue;
                };
                if i % 2 == 1 {
                    coef = -coef;
                }
                es.remove(i);
                let units = es
                    .into_iter()
                    .map(|e| match e {
                        Entry::Unit(u) => u,
                        Entry::Pi => unreachable!(),
                    })
                    .collect();
                out.terms.push((coef, units));
            }
        }
        Ok(out)
    }

    /// Normal form of ∂_v(s) in K^M_{m−1}(κ(v)).
    pub fn residue(&self, s: &FunctionSymbol, v: &Place) -> Result<KValue> {
        let r = self.tame_symbol(s, v)?;
        Ok(self.residue_field(v).normal_form(&r))
    }

    /// Places of ℙ¹ where some entry is not a unit.
    pub fn symbol_support(&self, s: &FunctionSymbol) -> Result<Vec<Place>> {
        let mut places = vec![Place::Infinity];
        for (_, e) in &s.terms {
            for f in e {
                places.extend(self.finite_support(f)?);
            }
        }
        places.sort();
        places.dedup();
        Ok(places)
    }

    /// Π_v N_{κ(v)/𝔽_q}(∂_v s) over all places of ℙ¹, s of degree 2.
    pub fn reciprocity_product(&self, s: &FunctionSymbol) -> Result<FqElem> {
        if s.degree != 2 {
            return Err(Error::DegreeMismatch(s.degree, 2));
        }
        let f = self.field();
        let mut acc = f.one();
        for v in self.symbol_support(s)? {
            if let KValue::Unit(u) = self.residue(s, &v)? {
                acc = f.mul(&acc, &self.residue_field(&v).norm(&u));
            }
        }
        Ok(acc)
    }

    /// Product Π f_i^{c_i} of a degree-1 symbol.
    pub fn collapse_k1(&self, s: &FunctionSymbol) -> Result<RationalFunction> {
        if s.degree != 1 {
            return Err(Error::DegreeMismatch(s.degree, 1));
        }
        self.check_entries(s)?;
        let mut acc = self.one();
        for (c, e) in &s.terms {
            acc = self.mul(&acc, &self.pow_i(&e[0], *c)?);
        }
        Ok(acc)
    }
}

/// Witness that {a,b} = 0 in K^M₂(κ): a = g^i, b = g^j, so {a,b} = ij{g,g};
/// {g,g} = {g,−1} has order ≤ 2, and for odd |κ| the Steinberg relation
/// {c, 1−c} = 0 with c = g^x, 1−c = g^y, x and y odd, gives xy{g,g} = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K2Certificate {
    pub generator: UPoly,
    pub i: BigUint,
    pub j: BigUint,
    pub steinberg: Option<(UPoly, BigUint, BigUint)>,
}

impl ResidueField {
    /// Smallest-index generator of κ^*.
    pub fn generator(&self) -> UPoly {
        let n = self.order() - 1u32;
        let primes = prime_factors(&n);
        self.elements()
            .filter(|a| !a.is_zero())
            .find(|a| primes.iter().all(|l| self.pow(a, &(&n / l)) != self.one()))
            .expect("cyclic group has a generator")
    }

    /// Discrete log by baby-step giant-step.
    pub fn log(&self, g: &UPoly, a: &UPoly) -> Option<BigUint> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let n = (self.order() - 1u32).to_u64()?;
        let m = (n as f64).sqrt().ceil() as u64 + 1;
        let mut table = HashMap::new();
        let mut cur = self.one();
        for j in 0..m {
            table.entry(cur.clone()).or_insert(j);
            cur = self.mul(&cur, g);
        }
        let step = self.pow_i(&self.pow(g, &BigUint::from(m)), -1);
        let mut y = a;
        for i in 0..=m {
            if let Some(j) = table.get(&y) {
                return Some(BigUint::from((i * m + j) % n));
            }
            y = self.mul(&y, &step);
        }
        None
    }

    pub fn k2_certificate(&self, a: &UPoly, b: &UPoly) -> Result<K2Certificate> {
        let g = self.generator();
        let i = self.log(&g, a).ok_or_else(|| Error::Domain("symbol entry is zero".into()))?;
        let j = self.log(&g, b).ok_or_else(|| Error::Domain("symbol entry is zero".into()))?;
        let n = self.order() - 1u32;
        let steinberg = if n.is_odd() {
            None
        } else {
            let mut found = None;
            let mut x = BigUint::one();
            while x < n {
                let c = self.pow(&g, &x);
                let d = self.reduce(&self.ring.sub(&self.one(), &c));
                if let Some(y) = self.log(&g, &d) {
                    if y.is_odd() {
                        found = Some((c, x.clone(), y));
                        break;
                    }
                }
                x += 2u32;
            }
            Some(found.ok_or_else(|| Error::Domain("no Steinberg witness".into()))?)
        };
        Ok(K2Certificate { generator: g, i, j, steinberg })
    }

    /// Checks a certificate against the field.
    pub fn verify_k2(&self, a: &UPoly, b: &UPoly, cert: &K2Certificate) -> bool {
        let g = &cert.generator;
        if self.pow(g, &cert.i) != self.reduce(a) || self.pow(g, &cert.j) != self.reduce(b) {
            return false;
        }
        match &cert.steinberg {
            // |κ| even: −1 = 1, so {g,g} = {g,1} = 0
            None => self.order().is_even(),
            Some((c, x, y)) => {
                x.is_odd()
                    && y.is_odd()
                    && self.pow(g, x) == *c
                    && self.pow(g, y) == self.reduce(&self.ring.sub(&self.one(), c))
            }
        }
    }

    /// Normal form of a symbol over κ.
    pub fn normal_form(&self, s: &MilnorSymbol<UPoly>) -> KValue {
        match s.degree {
            0 => KValue::Int(s.terms.iter().map(|(c, _)| c).sum()),
            1 => {
                let mut acc = self.one();
                for (c, e) in &s.terms {
                    acc = self.mul(&acc, &self.pow_i(&e[0], *c));
                }
                KValue::Unit(acc)
            }
            _ => {
                for (_, e) in &s.terms {
                    let cert = self.k2_certificate(&e[0], &e[1]).expect("nonzero entries");
                    debug_assert!(self.verify_k2(&e[0], &e[1], &cert));
                }
                KValue::Zero
            }
        }
    }

    pub fn format_value(&self, v: &KValue) -> String {
        match v {
            KValue::Int(n) => n.to_string(),
            KValue::Unit(u) => self.format(u),
            KValue::Zero => "0".into(),
        }
    }
}

fn prime_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1u32;
    }
    if n > BigUint::one() {
        out.push(n);
    }
    out
}

/// Residues at every place in the support, trivial values dropped.
pub fn residue_vector(k: &FunctionField, s: &FunctionSymbol) -> Result<BTreeMap<Place, KValue>> {
    let mut out = BTreeMap::new();
    for v in k.symbol_support(s)? {
        let r = k.residue(s, &v)?;
        if !r.is_trivial() {
            out.insert(v, r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FiniteField;

    #[test]
    fn residue_of_t_and_constant() {
        let k = FunctionField::new(FiniteField::of(5, 1));
        let s = MilnorSymbol::single(vec![k.t(), k.from_int(2)]);
        assert_eq!(k.residue(&s, &k.place_t()).unwrap(), KValue::Unit(k.ring.from_ints(&[2])));
        let tt = MilnorSymbol::single(vec![k.t(), k.t()]);
        assert_eq!(k.residue(&tt, &k.place_t()).unwrap(), KValue::Unit(k.ring.from_ints(&[-1])));
    }

    #[test]
    fn degree_one_residue_is_valuation() {
        let k = FunctionField::new(FiniteField::of(3, 1));
        let f = k.pow_i(&k.t(), 3).unwrap();
        let s = MilnorSymbol::single(vec![f]);
        assert_eq!(k.residue(&s, &k.place_t()).unwrap(), KValue::Int(3));
        assert_eq!(k.residue(&s, &Place::Infinity).unwrap(), KValue::Int(-3));
    }

    #[test]
    fn k2_of_finite_fields_vanishes_exhaustively() {
        for (p, a) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let k = FunctionField::new(FiniteField::of(p, a));
            let kv = k.residue_field(&Place::Infinity);
            for x in kv.elements().filter(|x| !x.is_zero()) {
                for y in kv.elements().filter(|y| !y.is_zero()) {
                    let c = kv.k2_certificate(&x, &y).unwrap();
                    assert!(kv.verify_k2(&x, &y, &c));
                }
            }
        }
    }
}
