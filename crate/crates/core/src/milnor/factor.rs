//! Factorization of univariate polynomials over 𝔽_q: square-free
//! decomposition, distinct-degree splitting and a deterministic
//! equal-degree splitting.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ff::FqElem;
use crate::poly::{UPoly, UPolyRing};

/// f = unit · Π π_i^{e_i}, factors monic and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(UPoly, u32)>,
}

impl UPolyRing {
    fn pth_root_poly(&self, f: &UPoly) -> UPoly {
        let p = self.field.p() as usize;
        let c: Vec<FqElem> = (0..=f.degree() as usize / p)
            .map(|i| self.field.pth_root(&f.coeff(i * p)))
            .collect();
        self.from_coeffs(c)
    }

    /// Square-free parts: pairs (g, e) with f = Π g^e, g square-free.
    fn square_free(&self, f: &UPoly) -> Vec<(UPoly, u32)> {
        let p = self.field.p();
        let mut out = Vec::new();
        if f.degree() < 1 {
            return out;
        }
        let df = self.derivative(f);
        if df.is_zero() {
            for (g, e) in self.square_free(&self.pth_root_poly(f)) {
                out.push((g, e * p));
            }
            return out;
        }
        let c = self.gcd(f, &df);
        let mut w = self.div_rem(f, &c).expect("nonzero").0;
        let mut c = c;
        let mut i = 1;
        while w.degree() > 0 {
            let y = self.gcd(&w, &c);
            let z = self.div_rem(&w, &y).expect("nonzero").0;
            if z.degree() > 0 {
                out.push((self.monic(&z), i));
            }
            c = self.div_rem(&c, &y).expect("nonzero").0;
            w = y;
            i += 1;
        }
        if c.degree() > 0 {
            for (g, e) in self.square_free(&self.pth_root_poly(&c)) {
                out.push((g, e * p));
            }
        }
        out
    }

    /// Distinct-degree parts of a monic square-free f: (product, degree).
    fn distinct_degree(&self, f: &UPoly) -> Vec<(UPoly, usize)> {
        let q = BigUint::from(self.field.q());
        let mut out = Vec::new();
        let mut rest = f.clone();
        let mut h = self.rem(&self.x(), &rest);
        let mut d = 1;
        while rest.degree() >= 2 * d as i64 {
            h = self.powmod(&h, &q, &rest);
            let g = self.gcd(&self.sub(&h, &self.x()), &rest);
            if g.degree() > 0 {
                out.push((g.clone(), d));
                rest = self.div_rem(&rest, &g).expect("nonzero").0;
                h = self.rem(&h, &rest);
            }
            d += 1;
        }
        if rest.degree() > 0 {
            let deg = rest.degree() as usize;
            out.push((rest, deg));
        }
        out
    }

    /// Splits a product of distinct irreducibles of degree d.
    fn equal_degree(&self, f: &UPoly, d: usize) -> Vec<UPoly> {
        if f.degree() as usize == d {
            return vec![self.monic(f)];
        }
        let q = self.field.q();
        let qd = BigUint::from(q).pow(d as u32);
        let n = f.degree() as usize;
        // deterministic search over polynomials of degree < n in index order
        let mut idx: u64 = 1;
        loop {
            let mut a = Vec::with_capacity(n);
            let mut t = idx;
            for _ in 0..n {
                a.push(self.field.from_index(t % q));
                t /= q;
            }
            idx += 1;
            let a = self.from_coeffs(a);
            if a.degree() < 1 {
                continue;
            }
            let b = if self.field.p() == 2 {
                // trace map a + a^2 + … + a^{2^{k-1}} with 2^k = q^d
                let k = self.field.degree() as usize * d;
                let mut acc = self.zero();
                let mut cur = self.rem(&a, f);
                for _ in 0..k {
                    acc = self.add(&acc, &cur);
                    cur = self.mulmod(&cur, &cur, f);
                }
                acc
            } else {
                let e = (&qd - 1u32) / 2u32;
                self.sub(&self.powmod(&a, &e, f), &self.one())
            };
            let g = self.gcd(&b, f);
            if g.degree() > 0 && g.degree() < f.degree() {
                let h = self.div_rem(f, &g).expect("nonzero").0;
                let mut out = self.equal_degree(&g, d);
                out.extend(self.equal_degree(&h, d));
                return out;
            }
        }
    }

    pub fn factor(&self, f: &UPoly) -> Result<Factorization> {
        let unit = *f.lead().ok_or_else(|| Error::Domain("cannot factor the zero polynomial".into()))?;
        let g = self.monic(f);
        let mut factors: Vec<(UPoly, u32)> = Vec::new();
        for (sf, e) in self.square_free(&g) {
            for (part, d) in self.distinct_degree(&sf) {
                for pi in self.equal_degree(&part, d) {
                    factors.push((pi, e));
                }
            }
        }
        factors.sort();
        // merge repeated factors from different square-free layers
        let mut merged: Vec<(UPoly, u32)> = Vec::new();
        for (pi, e) in factors {
            match merged.last_mut() {
                Some((last, le)) if *last == pi => *le += e,
                _ => merged.push((pi, e)),
            }
        }
        Ok(Factorization { unit, factors: merged })
    }

    pub fn is_irreducible(&self, f: &UPoly) -> bool {
        if f.degree() < 1 {
            return false;
        }
        match self.factor(f) {
            Ok(fz) => fz.factors.len() == 1 && fz.factors[0].1 == 1,
            Err(_) => false,
        }
    }

    pub fn expand(&self, fz: &Factorization) -> UPoly {
        let mut acc = self.constant(fz.unit);
        for (pi, e) in &fz.factors {
            acc = self.mul(&acc, &self.pow(pi, *e as u64));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FiniteField;

    #[test]
    fn t_squared_plus_t_over_f2() {
        let r = UPolyRing::new(FiniteField::of(2, 1));
        let fz = r.factor(&r.from_ints(&[0, 1, 1])).unwrap();
        assert_eq!(fz.factors, vec![(r.from_ints(&[0, 1]), 1), (r.from_ints(&[1, 1]), 1)]);
    }

    #[test]
    fn t_q_minus_t_splits_into_all_linear_factors() {
        for (p, a) in [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2)] {
            let f = FiniteField::of(p, a);
            let r = UPolyRing::new(f.clone());
            let q = f.q() as usize;
            let mut c = vec![f.zero(); q + 1];
            c[q] = f.one();
            c[1] = f.neg(&f.one());
            let poly = r.from_coeffs(c);
            let fz = r.factor(&poly).unwrap();
            assert_eq!(fz.factors.len(), q);
            assert!(fz.factors.iter().all(|(g, e)| g.degree() == 1 && *e == 1));
            assert_eq!(r.expand(&fz), poly);
        }
    }

    #[test]
    fn powers_and_inseparable_parts() {
        let r = UPolyRing::new(FiniteField::of(3, 1));
        // (t+1)^3 (t^2+1)^2 t
        let a = r.pow(&r.from_ints(&[1, 1]), 3);
        let b = r.pow(&r.from_ints(&[1, 0, 1]), 2);
        let f = r.mul(&r.mul(&a, &b), &r.x());
        let fz = r.factor(&f).unwrap();
        assert_eq!(r.expand(&fz), f);
        assert_eq!(fz.factors.len(), 3);
    }
}
