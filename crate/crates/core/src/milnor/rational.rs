//! The rational function field 𝔽_q(t), its places and residue fields.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ff::{FiniteField, FqElem};
use crate::poly::{UPoly, UPolyRing};

/// num/den with den monic and gcd(num, den) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    pub num: UPoly,
    pub den: UPoly,
}

/// A closed point of ℙ¹ over 𝔽_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(UPoly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite(pi) => pi.degree() as u32,
            Place::Infinity => 1,
        }
    }
}

/// κ(v) = 𝔽_q[s]/(π); at ∞ the modulus is s in the flipped coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    pub ring: UPolyRing,
    pub modulus: UPoly,
}

impl ResidueField {
    pub fn degree(&self) -> u32 {
        self.modulus.degree() as u32
    }

    /// Order of κ(v).
    pub fn order(&self) -> BigUint {
        BigUint::from(self.ring.field.q()).pow(self.degree())
    }

    pub fn one(&self) -> UPoly {
        self.ring.one()
    }

    pub fn reduce(&self, a: &UPoly) -> UPoly {
        self.ring.rem(a, &self.modulus)
    }

    pub fn constant(&self, c: FqElem) -> UPoly {
        self.ring.constant(c)
    }

    pub fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        self.ring.mulmod(a, b, &self.modulus)
    }

    pub fn inv(&self, a: &UPoly) -> Option<UPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = self.ring.xgcd(&a, &self.modulus);
        (g == self.ring.one()).then(|| self.reduce(&s))
    }

    pub fn pow(&self, a: &UPoly, e: &BigUint) -> UPoly {
        self.ring.powmod(a, e, &self.modulus)
    }

    pub fn pow_i(&self, a: &UPoly, e: i64) -> UPoly {
        let b = if e < 0 { self.inv(a).expect("unit") } else { a.clone() };
        self.pow(&b, &BigUint::from(e.unsigned_abs()))
    }

    /// N_{κ(v)/𝔽_q}(a) = a^{(Q−1)/(q−1)}.
    pub fn norm(&self, a: &UPoly) -> FqElem {
        let q = BigUint::from(self.ring.field.q());
        let e = (self.order() - 1u32) / (q - 1u32);
        let n = self.pow(a, &e);
        debug_assert!(n.degree() <= 0);
        n.coeff(0)
    }

    /// Elements of κ(v) in index order (small fields only).
    pub fn elements(&self) -> impl Iterator<Item = UPoly> + '_ {
        let q = self.ring.field.q();
        let d = self.degree();
        (0..q.pow(d)).map(move |mut idx| {
            let mut c = Vec::with_capacity(d as usize);
            for _ in 0..d {
                c.push(self.ring.field.from_index(idx % q));
                idx /= q;
            }
            self.ring.from_coeffs(c)
        })
    }

    pub fn format(&self, a: &UPoly) -> String {
        self.ring.format(a, "s")
    }
}

/// 𝔽_q(t) with its place structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionField {
    pub ring: UPolyRing,
}

impl FunctionField {
    pub fn new(field: FiniteField) -> Self {
        FunctionField { ring: UPolyRing::new(field) }
    }

    pub fn field(&self) -> &FiniteField {
        &self.ring.field
    }

    pub fn make(&self, num: UPoly, den: UPoly) -> Result<RationalFunction> {
        let dl = *den.lead().ok_or_else(|| Error::Domain("zero denominator".into()))?;
        let g = self.ring.gcd(&num, &den);
        let r = &self.ring;
        let num = r.div_rem(&num, &g)?.0;
        let den = r.div_rem(&den, &g)?.0;
        let li = r.field.inv(den.lead().unwrap_or(&dl)).expect("nonzero");
        Ok(RationalFunction { num: r.scale(&num, &li), den: r.scale(&den, &li) })
    }

    pub fn from_poly(&self, f: UPoly) -> RationalFunction {
        RationalFunction { num: f, den: self.ring.one() }
    }

    pub fn constant(&self, c: FqElem) -> RationalFunction {
        self.from_poly(self.ring.constant(c))
    }

    pub fn from_int(&self, c: i64) -> RationalFunction {
        self.constant(self.ring.field.from_int(c))
    }

    pub fn one(&self) -> RationalFunction {
        self.from_poly(self.ring.one())
    }

    pub fn t(&self) -> RationalFunction {
        self.from_poly(self.ring.x())
    }

    pub fn is_zero(&self, f: &RationalFunction) -> bool {
        f.num.is_zero()
    }

    /// The constant value if f ∈ 𝔽_q.
    pub fn as_constant(&self, f: &RationalFunction) -> Option<FqElem> {
        (f.num.degree() <= 0 && f.den.degree() == 0).then(|| f.num.coeff(0))
    }

    pub fn add(&self, f: &RationalFunction, g: &RationalFunction) -> RationalFunction {
        let r = &self.ring;
        let num = r.add(&r.mul(&f.num, &g.den), &r.mul(&g.num, &f.den));
        self.make(num, r.mul(&f.den, &g.den)).expect("nonzero denominator")
    }

    pub fn neg(&self, f: &RationalFunction) -> RationalFunction {
        RationalFunction { num: self.ring.neg(&f.num), den: f.den.clone() }
    }

    pub fn sub(&self, f: &RationalFunction, g: &RationalFunction) -> RationalFunction {
        self.add(f, &self.neg(g))
    }

    pub fn mul(&self, f: &RationalFunction, g: &RationalFunction) -> RationalFunction {
        let r = &self.ring;
        self.make(r.mul(&f.num, &g.num), r.mul(&f.den, &g.den)).expect("nonzero denominator")
    }

    pub fn inv(&self, f: &RationalFunction) -> Result<RationalFunction> {
        if f.num.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        self.make(f.den.clone(), f.num.clone())
    }

    pub fn div(&self, f: &RationalFunction, g: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.mul(f, &self.inv(g)?))
    }

    pub fn pow_i(&self, f: &RationalFunction, e: i64) -> Result<RationalFunction> {
        let b = if e < 0 { self.inv(f)? } else { f.clone() };
        let r = &self.ring;
        let k = e.unsigned_abs();
        Ok(RationalFunction { num: r.pow(&b.num, k), den: r.pow(&b.den, k) })
    }

    /// 1 − f.
    pub fn one_minus(&self, f: &RationalFunction) -> RationalFunction {
        self.sub(&self.one(), f)
    }

    /// f(1/t).
    pub fn flip(&self, f: &RationalFunction) -> RationalFunction {
        let r = &self.ring;
        let (dn, dd) = (f.num.degree().max(0) as usize, f.den.degree() as usize);
        let num = r.reverse(&f.num, dn);
        let den = r.reverse(&f.den, dd);
        let tpow = |k: usize| r.pow(&r.x(), k as u64);
        self.make(r.mul(&num, &tpow(dd)), r.mul(&den, &tpow(dn))).expect("nonzero denominator")
    }

    pub fn place(&self, pi: UPoly) -> Result<Place> {
        if pi.lead() != Some(&self.ring.field.one()) {
            return Err(Error::Domain("place polynomial must be monic".into()));
        }
        if !self.ring.is_irreducible(&pi) {
            return Err(Error::Domain(format!("{} is not irreducible", self.ring.format(&pi, "t"))));
        }
        Ok(Place::Finite(pi))
    }

    pub fn place_t(&self) -> Place {
        Place::Finite(self.ring.x())
    }

    pub fn residue_field(&self, v: &Place) -> ResidueField {
        let modulus = match v {
            Place::Finite(pi) => pi.clone(),
            Place::Infinity => self.ring.x(),
        };
        ResidueField { ring: self.ring.clone(), modulus }
    }

    fn poly_val(&self, f: &UPoly, pi: &UPoly) -> (i64, UPoly) {
        let mut n = 0;
        let mut g = f.clone();
        loop {
            let (q, r) = self.ring.div_rem(&g, pi).expect("nonzero");
            if !r.is_zero() {
                return (n, g);
            }
            g = q;
            n += 1;
        }
    }

    /// (v(f), residue of f/π^{v(f)}) with π = 1/t at ∞.
    pub fn split(&self, f: &RationalFunction, v: &Place) -> Result<(i64, UPoly)> {
        if f.num.is_zero() {
            return Err(Error::Domain("valuation of zero".into()));
        }
        match v {
            Place::Infinity => self.split(&self.flip(f), &self.place_t()),
            Place::Finite(pi) => {
                let (a, un) = self.poly_val(&f.num, pi);
                let (b, ud) = self.poly_val(&f.den, pi);
                let k = self.residue_field(v);
                let u = k.mul(&un, &k.inv(&ud).expect("unit denominator"));
                Ok((a - b, u))
            }
        }
    }

    pub fn valuation(&self, f: &RationalFunction, v: &Place) -> Result<i64> {
        Ok(self.split(f, v)?.0)
    }

    /// Finite places where f has a zero or pole.
    pub fn finite_support(&self, f: &RationalFunction) -> Result<Vec<Place>> {
        let mut out = Vec::new();
        for g in [&f.num, &f.den] {
            if g.degree() > 0 {
                for (pi, _) in self.ring.factor(g)?.factors {
                    out.push(Place::Finite(pi));
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Divisor on ℙ¹, zero entries omitted.
    pub fn divisor(&self, f: &RationalFunction) -> Result<BTreeMap<Place, i64>> {
        if f.num.is_zero() {
            return Err(Error::Domain("divisor of zero".into()));
        }
        let mut out = BTreeMap::new();
        let r = &self.ring;
        for (pi, e) in r.factor(&f.num).map(|z| z.factors).unwrap_or_default() {
            *out.entry(Place::Finite(pi)).or_insert(0) += e as i64;
        }
        if f.den.degree() > 0 {
            for (pi, e) in r.factor(&f.den)?.factors {
                *out.entry(Place::Finite(pi)).or_insert(0) -= e as i64;
            }
        }
        out.insert(Place::Infinity, f.den.degree() - f.num.degree());
        out.retain(|_, n| *n != 0);
        Ok(out)
    }

    pub fn format(&self, f: &RationalFunction) -> String {
        let n = self.ring.format(&f.num, "t");
        if f.den == self.ring.one() {
            return n;
        }
        let wrap = |s: String, p: &UPoly| if p.0.iter().filter(|c| !c.is_zero()).count() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(n, &f.num), wrap(self.ring.format(&f.den, "t"), &f.den))
    }

    pub fn format_place(&self, v: &Place) -> String {
        match v {
            Place::Finite(pi) => self.ring.format(pi, "t"),
            Place::Infinity => "inf".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_examples() {
        let k = FunctionField::new(FiniteField::of(3, 1));
        let r = &k.ring;
        let f = k.make(r.from_ints(&[1, 0, 1]), r.x()).unwrap();
        let d = k.divisor(&f).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d[&Place::Finite(r.from_ints(&[1, 0, 1]))], 1);
        assert_eq!(d[&k.place_t()], -1);
        assert_eq!(d[&Place::Infinity], -1);
        let total: i64 = d.iter().map(|(v, n)| v.degree() as i64 * n).sum();
        assert_eq!(total, 0);
        assert!(k.divisor(&k.from_int(2)).unwrap().is_empty());
    }

    #[test]
    fn unit_part_at_infinity_is_leading_ratio() {
        let k = FunctionField::new(FiniteField::of(5, 1));
        let r = &k.ring;
        let f = k.make(r.from_ints(&[1, 2]), r.from_ints(&[3, 0, 1])).unwrap();
        let (v, u) = k.split(&f, &Place::Infinity).unwrap();
        assert_eq!(v, 1);
        assert_eq!(u, r.from_ints(&[2]));
    }

    #[test]
    fn norm_from_quadratic_place() {
        let k = FunctionField::new(FiniteField::of(3, 1));
        let r = &k.ring;
        let kv = k.residue_field(&k.place(r.from_ints(&[1, 0, 1])).unwrap());
        // s ∈ 𝔽_9 with s² = −1: N(s) = s·s³ = s⁴ = 1
        assert_eq!(kv.norm(&r.x()), k.field().one());
        assert_eq!(kv.norm(&r.from_ints(&[2])), k.field().one());
    }
}
