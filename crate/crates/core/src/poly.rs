//! Polynomials over 𝔽_q: multivariate Laurent polynomials (for Witt vectors
//! over 𝔽_q[x_1^{±1}, …]) and dense univariate polynomials (for places of
//! 𝔽_q(t)).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ff::{FiniteField, FqElem};
use crate::ring::CommRing;

/// Variable declaration of a (Laurent) polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarDecl {
    pub name: String,
    pub laurent: bool,
}

impl VarDecl {
    pub fn poly(name: &str) -> Self {
        VarDecl { name: name.into(), laurent: false }
    }
    pub fn laurent(name: &str) -> Self {
        VarDecl { name: name.into(), laurent: true }
    }
}

/// 𝔽_q[x_1, …, x_d] with some variables inverted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentRing {
    pub field: FiniteField,
    pub vars: Vec<VarDecl>,
}

/// Sparse Laurent polynomial: exponent vector ↦ nonzero coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LPoly {
    pub terms: BTreeMap<Vec<i64>, FqElem>,
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LPoly{:?}", self.terms)
    }
}

impl LPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term, if this is c·x^e.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &FqElem)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }
}

impl LaurentRing {
    pub fn new(field: FiniteField, vars: Vec<VarDecl>) -> Self {
        LaurentRing { field, vars }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn is_laurent(&self, i: usize) -> bool {
        self.vars[i].laurent
    }

    pub fn check_exponents(&self, e: &[i64]) -> Result<()> {
        for (i, &k) in e.iter().enumerate() {
            if k < 0 && !self.vars[i].laurent {
                return Err(Error::Domain(format!(
                    "negative power of non-Laurent variable {}",
                    self.vars[i].name
                )));
            }
        }
        Ok(())
    }

    pub fn monomial(&self, c: FqElem, e: Vec<i64>) -> Result<LPoly> {
        self.check_exponents(&e)?;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Ok(LPoly { terms })
    }

    pub fn constant(&self, c: FqElem) -> LPoly {
        self.monomial(c, vec![0; self.nvars()]).expect("constant")
    }

    pub fn variable(&self, i: usize) -> LPoly {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(self.field.one(), e).expect("variable")
    }

    /// Laurent units are c·monomial; returns them as (c, exponents).
    pub fn unit_monomial(&self, f: &LPoly) -> Option<(FqElem, Vec<i64>)> {
        let (e, c) = f.as_monomial()?;
        if e.iter().enumerate().all(|(i, &k)| k == 0 || self.vars[i].laurent) {
            Some((*c, e.clone()))
        } else {
            None
        }
    }

    pub fn format(&self, f: &LPoly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &f.terms {
            let mut mono = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(self.vars[i].name.clone()),
                    _ => mono.push(format!("{}^{}", self.vars[i].name, k)),
                }
            }
            let cs = self.field.format(c);
            let s = if mono.is_empty() {
                cs
            } else if *c == self.field.one() {
                mono.join("*")
            } else {
                format!("{}*{}", cs, mono.join("*"))
            };
            parts.push(s);
        }
        parts.join("+")
    }
}

impl CommRing for LaurentRing {
    type El = LPoly;

    fn zero(&self) -> LPoly {
        LPoly::default()
    }
    fn one(&self) -> LPoly {
        self.constant(self.field.one())
    }
    fn add(&self, x: &LPoly, y: &LPoly) -> LPoly {
        let mut terms = x.terms.clone();
        for (e, c) in &y.terms {
            match terms.get_mut(e) {
                Some(v) => {
                    *v = self.field.add(v, c);
                    if v.is_zero() {
                        terms.remove(e);
                    }
                }
                None => {
                    terms.insert(e.clone(), *c);
                }
            }
        }
        LPoly { terms }
    }
    fn neg(&self, x: &LPoly) -> LPoly {
        LPoly {
            terms: x.terms.iter().map(|(e, c)| (e.clone(), self.field.neg(c))).collect(),
        }
    }
    fn mul(&self, x: &LPoly, y: &LPoly) -> LPoly {
        let mut terms: BTreeMap<Vec<i64>, FqElem> = BTreeMap::new();
        for (e1, c1) in &x.terms {
            for (e2, c2) in &y.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = self.field.mul(c1, c2);
                let v = terms.entry(e).or_insert(FqElem::ZERO);
                *v = self.field.add(v, &c);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LPoly { terms }
    }
    fn from_bigint(&self, n: &BigInt) -> LPoly {
        self.constant(self.field.from_bigint(n))
    }
    fn is_zero(&self, x: &LPoly) -> bool {
        x.is_zero()
    }
    fn char_p(&self) -> u64 {
        self.field.p() as u64
    }
    fn frobenius(&self, x: &LPoly, _p: u64) -> LPoly {
        let p = self.field.p() as i64;
        LPoly {
            terms: x
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|k| k * p).collect(), self.field.frobenius(c)))
                .collect(),
        }
    }
    fn pow(&self, x: &LPoly, mut e: u64) -> LPoly {
        // split off p-power factors: x^{p·m} = Frob(x)^m
        let p = self.field.p() as u64;
        let mut base = x.clone();
        while e > 0 && e % p == 0 {
            base = self.frobenius(&base, p);
            e /= p;
        }
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        r
    }
}

// ---------------------------------------------------------------------------
// Univariate polynomials

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UPoly(pub Vec<FqElem>);

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly{:?}", self.0)
    }
}

impl UPoly {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    /// Degree; -1 for zero.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }
    pub fn lead(&self) -> Option<&FqElem> {
        self.0.last()
    }
    pub fn coeff(&self, i: usize) -> FqElem {
        self.0.get(i).copied().unwrap_or(FqElem::ZERO)
    }
}

/// Arithmetic on univariate polynomials over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPolyRing {
    pub field: FiniteField,
}

impl UPolyRing {
    pub fn new(field: FiniteField) -> Self {
        UPolyRing { field }
    }

    pub fn from_coeffs(&self, mut c: Vec<FqElem>) -> UPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn from_ints(&self, c: &[i64]) -> UPoly {
        self.from_coeffs(c.iter().map(|&x| self.field.from_int(x)).collect())
    }

    pub fn zero(&self) -> UPoly {
        UPoly(vec![])
    }
    pub fn one(&self) -> UPoly {
        self.constant(self.field.one())
    }
    pub fn constant(&self, c: FqElem) -> UPoly {
        self.from_coeffs(vec![c])
    }
    /// The variable t.
    pub fn x(&self) -> UPoly {
        self.from_coeffs(vec![FqElem::ZERO, self.field.one()])
    }

    pub fn add(&self, a: &UPoly, b: &UPoly) -> UPoly {
        let n = a.0.len().max(b.0.len());
        self.from_coeffs((0..n).map(|i| self.field.add(&a.coeff(i), &b.coeff(i))).collect())
    }
    pub fn neg(&self, a: &UPoly) -> UPoly {
        UPoly(a.0.iter().map(|c| self.field.neg(c)).collect())
    }
    pub fn sub(&self, a: &UPoly, b: &UPoly) -> UPoly {
        self.add(a, &self.neg(b))
    }
    pub fn scale(&self, a: &UPoly, c: &FqElem) -> UPoly {
        self.from_coeffs(a.0.iter().map(|x| self.field.mul(x, c)).collect())
    }
    pub fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut r = vec![FqElem::ZERO; a.0.len() + b.0.len() - 1];
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                r[i + j] = self.field.add(&r[i + j], &self.field.mul(x, y));
            }
        }
        self.from_coeffs(r)
    }
    pub fn pow(&self, a: &UPoly, mut e: u64) -> UPoly {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn div_rem(&self, a: &UPoly, b: &UPoly) -> Result<(UPoly, UPoly)> {
        let lead = b.lead().ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
        let li = self.field.inv(lead).expect("nonzero lead");
        let mut r = a.0.clone();
        let db = b.0.len() - 1;
        if r.len() < b.0.len() {
            return Ok((self.zero(), a.clone()));
        }
        let mut q = vec![FqElem::ZERO; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = self.field.mul(&r[top], &li);
            if c.is_zero() {
                continue;
            }
            q[top - db] = c;
            for (i, bi) in b.0.iter().enumerate() {
                let idx = top - db + i;
                r[idx] = self.field.sub(&r[idx], &self.field.mul(&c, bi));
            }
        }
        r.truncate(db);
        Ok((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(&self, a: &UPoly, b: &UPoly) -> UPoly {
        self.div_rem(a, b).expect("nonzero divisor").1
    }

    pub fn monic(&self, a: &UPoly) -> UPoly {
        match a.lead() {
            None => a.clone(),
            Some(l) => self.scale(a, &self.field.inv(l).expect("nonzero")),
        }
    }

    pub fn gcd(&self, a: &UPoly, b: &UPoly) -> UPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Extended gcd: (g, s, t) with s a + t b = g monic.
    pub fn xgcd(&self, a: &UPoly, b: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lead() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = self.field.inv(l).expect("nonzero");
                (self.scale(&r0, &li), self.scale(&s0, &li), self.scale(&t0, &li))
            }
        }
    }

    pub fn derivative(&self, a: &UPoly) -> UPoly {
        self.from_coeffs(
            a.0.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.field.mul(c, &self.field.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, a: &UPoly, x: &FqElem) -> FqElem {
        let mut acc = FqElem::ZERO;
        for c in a.0.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x), c);
        }
        acc
    }

    pub fn mulmod(&self, a: &UPoly, b: &UPoly, m: &UPoly) -> UPoly {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &UPoly, e: &num_bigint::BigUint, m: &UPoly) -> UPoly {
        let mut r = self.rem(&self.one(), m);
        let mut b = self.rem(a, m);
        for i in 0..e.bits() {
            if e.bit(i) {
                r = self.mulmod(&r, &b, m);
            }
            b = self.mulmod(&b, &b, m);
        }
        r
    }

    /// Reverse of a polynomial of degree ≤ n: t^n a(1/t).
    pub fn reverse(&self, a: &UPoly, n: usize) -> UPoly {
        let mut c = a.0.clone();
        c.resize(n + 1, FqElem::ZERO);
        c.reverse();
        self.from_coeffs(c)
    }

    pub fn format(&self, a: &UPoly, var: &str) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in a.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = self.field.format(c);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(if i == 0 {
                cs
            } else if *c == self.field.one() {
                mono
            } else {
                format!("{cs}*{mono}")
            });
        }
        parts.join("+")
    }

    /// All monic polynomials of a given degree, in index order.
    pub fn monic_of_degree(&self, d: usize) -> impl Iterator<Item = UPoly> + '_ {
        let q = self.field.q();
        (0..q.pow(d as u32)).map(move |mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(self.field.from_index(idx % q));
                idx /= q;
            }
            c.push(self.field.one());
            UPoly(c)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let r = UPolyRing::new(FiniteField::of(3, 1));
        let a = r.from_ints(&[1, 2, 0, 1, 2]);
        let b = r.from_ints(&[2, 1, 1]);
        let (q, rem) = r.div_rem(&a, &b).unwrap();
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(rem.degree() < b.degree());
    }

    #[test]
    fn xgcd_bezout() {
        let r = UPolyRing::new(FiniteField::of(5, 1));
        let a = r.from_ints(&[1, 0, 1]);
        let b = r.from_ints(&[1, 1]);
        let (g, s, t) = r.xgcd(&a, &b);
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
        assert_eq!(g, r.one());
    }

    #[test]
    fn laurent_frobenius_power() {
        let ring = LaurentRing::new(FiniteField::of(3, 1), vec![VarDecl::laurent("x")]);
        let x = ring.variable(0);
        let f = ring.add(&x, &ring.one());
        let direct = (0..9).fold(ring.one(), |acc, _| ring.mul(&acc, &f));
        assert_eq!(ring.pow(&f, 9), direct);
    }
}
