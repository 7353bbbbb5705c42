//! Truncated p-typical Witt vectors over an arbitrary commutative ring,
//! computed through the universal polynomials.

use num_bigint::BigInt;

use super::universal::{universal, IntPoly};
use crate::error::{Error, Result};
use crate::ring::{CommRing, Integers};

/// Witt vector (x_0, …, x_{n-1}); the level is the length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittVec<E> {
    pub coords: Vec<E>,
}

impl<E> WittVec<E> {
    pub fn level(&self) -> usize {
        self.coords.len()
    }
}

/// W_n(R) for a fixed base ring R and prime p.
#[derive(Clone, Debug, PartialEq)]
pub struct WittRing<R: CommRing> {
    pub base: R,
    pub p: u64,
}

impl<R: CommRing> WittRing<R> {
    pub fn new(base: R, p: u64) -> Self {
        WittRing { base, p }
    }

    pub fn zero(&self, n: usize) -> WittVec<R::El> {
        WittVec { coords: vec![self.base.zero(); n] }
    }

    pub fn one(&self, n: usize) -> WittVec<R::El> {
        self.teichmuller(&self.base.one(), n)
    }

    pub fn teichmuller(&self, a: &R::El, n: usize) -> WittVec<R::El> {
        let mut coords = vec![self.base.zero(); n];
        if n > 0 {
            coords[0] = a.clone();
        }
        WittVec { coords }
    }

    pub fn from_coords(&self, coords: Vec<R::El>) -> WittVec<R::El> {
        WittVec { coords }
    }

    /// Index of the first nonzero coordinate, or the level if zero.
    pub fn ord_v(&self, x: &WittVec<R::El>) -> usize {
        x.coords.iter().position(|c| !self.base.is_zero(c)).unwrap_or(x.level())
    }

    fn check(&self, x: &WittVec<R::El>, y: &WittVec<R::El>) -> Result<usize> {
        if x.level() != y.level() {
            return Err(Error::LevelMismatch(x.level() as u32, y.level() as u32));
        }
        Ok(x.level())
    }

    fn reduced(&self) -> bool {
        self.base.char_p() == self.p
    }

    fn apply(&self, polys: &[IntPoly], levels: usize, x: &[R::El], y: &[R::El], n: usize) -> Vec<R::El> {
        let mut vals = Vec::with_capacity(2 * levels);
        for src in [x, y] {
            for i in 0..levels {
                vals.push(src.get(i).cloned().unwrap_or_else(|| self.base.zero()));
            }
        }
        polys[..n].iter().map(|f| f.eval(&self.base, &vals)).collect()
    }

    pub fn add(&self, x: &WittVec<R::El>, y: &WittVec<R::El>) -> Result<WittVec<R::El>> {
        let n = self.check(x, y)?;
        let u = universal(self.p, n);
        let polys = if self.reduced() { &u.sum_mod_p } else { &u.sum };
        Ok(WittVec { coords: self.apply(polys, u.levels, &x.coords, &y.coords, n) })
    }

    pub fn mul(&self, x: &WittVec<R::El>, y: &WittVec<R::El>) -> Result<WittVec<R::El>> {
        let n = self.check(x, y)?;
        let u = universal(self.p, n);
        let polys = if self.reduced() { &u.prod_mod_p } else { &u.prod };
        Ok(WittVec { coords: self.apply(polys, u.levels, &x.coords, &y.coords, n) })
    }

    pub fn neg(&self, x: &WittVec<R::El>) -> WittVec<R::El> {
        let n = x.level();
        if self.p != 2 {
            return WittVec { coords: x.coords.iter().map(|c| self.base.neg(c)).collect() };
        }
        let u = universal(self.p, n);
        let polys = if self.reduced() { &u.neg_mod_p } else { &u.neg };
        WittVec { coords: self.apply(polys, u.levels, &x.coords, &[], n) }
    }

    pub fn sub(&self, x: &WittVec<R::El>, y: &WittVec<R::El>) -> Result<WittVec<R::El>> {
        self.add(x, &self.neg(y))
    }

    /// Integer multiple m·x.
    pub fn mul_int(&self, x: &WittVec<R::El>, m: i64) -> WittVec<R::El> {
        let mut acc = self.zero(x.level());
        let mut base = if m < 0 { self.neg(x) } else { x.clone() };
        let mut k = m.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base).expect("same level");
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base).expect("same level");
            }
        }
        acc
    }

    /// V: shift right, truncated to the same level.
    pub fn verschiebung(&self, x: &WittVec<R::El>) -> WittVec<R::El> {
        let n = x.level();
        let mut coords = Vec::with_capacity(n);
        if n > 0 {
            coords.push(self.base.zero());
            coords.extend(x.coords[..n - 1].iter().cloned());
        }
        WittVec { coords }
    }

    /// V: shift right into level n + 1.
    pub fn verschiebung_up(&self, x: &WittVec<R::El>) -> WittVec<R::El> {
        let mut coords = vec![self.base.zero()];
        coords.extend(x.coords.iter().cloned());
        WittVec { coords }
    }

    /// R: truncation to level m ≤ n.
    pub fn restrict(&self, x: &WittVec<R::El>, m: usize) -> Result<WittVec<R::El>> {
        if m > x.level() {
            return Err(Error::LevelMismatch(m as u32, x.level() as u32));
        }
        Ok(WittVec { coords: x.coords[..m].to_vec() })
    }

    /// F in characteristic p: coordinatewise Frobenius, same level.
    pub fn frobenius(&self, x: &WittVec<R::El>) -> Result<WittVec<R::El>> {
        if !self.reduced() {
            return Err(Error::Domain("coordinatewise Frobenius needs characteristic p".into()));
        }
        Ok(WittVec { coords: x.coords.iter().map(|c| self.base.frobenius(c, self.p)).collect() })
    }
}

impl WittRing<Integers> {
    /// Ghost components w_i = Σ_{j≤i} p^j x_j^{p^{i-j}}.
    pub fn ghost(&self, x: &WittVec<BigInt>) -> Vec<BigInt> {
        let p = BigInt::from(self.p);
        (0..x.level())
            .map(|i| {
                (0..=i)
                    .map(|j| p.pow(j as u32) * x.coords[j].pow(self.p.pow((i - j) as u32) as u32))
                    .sum()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FiniteField;

    #[test]
    fn small_sums_over_prime_fields() {
        let f2 = FiniteField::of(2, 1);
        let w = WittRing::new(f2.clone(), 2);
        let one = w.one(2);
        assert_eq!(w.add(&one, &one).unwrap().coords, vec![f2.zero(), f2.one()]);

        let f3 = FiniteField::of(3, 1);
        let w3 = WittRing::new(f3.clone(), 3);
        let a = w3.teichmuller(&f3.one(), 2);
        let b = w3.teichmuller(&f3.from_int(2), 2);
        // [2] = -1 in W(𝔽_3), so [1] + [2] = 0
        assert_eq!(w3.add(&a, &b).unwrap(), w3.zero(2));
    }

    #[test]
    fn v1_squared_in_w3_f2() {
        let f2 = FiniteField::of(2, 1);
        let w = WittRing::new(f2.clone(), 2);
        let v1 = w.verschiebung(&w.one(3));
        let sq = w.mul(&v1, &v1).unwrap();
        assert_eq!(sq.coords, vec![f2.zero(), f2.zero(), f2.one()]);
    }

    #[test]
    fn ghost_of_shift() {
        let w = WittRing::new(Integers, 2);
        let x = w.from_coords(vec![BigInt::from(0), BigInt::from(1)]);
        assert_eq!(w.ghost(&x), vec![BigInt::from(0), BigInt::from(2)]);
    }

    #[test]
    fn level_mismatch_is_rejected() {
        let f = FiniteField::of(2, 1);
        let w = WittRing::new(f, 2);
        assert!(matches!(w.add(&w.one(2), &w.one(3)), Err(Error::LevelMismatch(2, 3))));
    }
}
