//! Elements of W_n(𝔽_q), stored as residues modulo p^n in ℤ_q.

use super::zq::{Zq, ZqElem};
use crate::error::{Error, Result};
use crate::ff::FqElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittScalar {
    pub level: u32,
    pub value: ZqElem,
}

/// Arithmetic for `WittScalar` over one coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarRing {
    pub zq: Zq,
}

impl ScalarRing {
    pub fn new(zq: Zq) -> Self {
        ScalarRing { zq }
    }

    fn check_level(&self, n: u32) -> Result<()> {
        if n > self.zq.precision() {
            return Err(Error::Precision { have: self.zq.precision(), need: n });
        }
        Ok(())
    }

    pub fn make(&self, level: u32, value: ZqElem) -> Result<WittScalar> {
        self.check_level(level)?;
        Ok(WittScalar { level, value: self.zq.truncate(&value, level) })
    }

    pub fn from_int(&self, level: u32, n: i64) -> Result<WittScalar> {
        self.make(level, self.zq.from_int(n))
    }

    pub fn from_coords(&self, coords: &[FqElem]) -> Result<WittScalar> {
        self.make(coords.len() as u32, self.zq.from_witt_coords(coords))
    }

    pub fn coords(&self, x: &WittScalar) -> Vec<FqElem> {
        self.zq.witt_coords(&x.value, x.level)
    }

    pub fn teichmuller(&self, level: u32, a: &FqElem) -> Result<WittScalar> {
        self.make(level, self.zq.teichmuller(a))
    }

    /// Index of the first nonzero Witt coordinate, or the level if zero.
    pub fn ord_v(&self, x: &WittScalar) -> u32 {
        self.zq.ord_p(&x.value).min(x.level)
    }

    fn same(&self, x: &WittScalar, y: &WittScalar) -> Result<u32> {
        if x.level != y.level {
            return Err(Error::LevelMismatch(x.level, y.level));
        }
        Ok(x.level)
    }

    pub fn add(&self, x: &WittScalar, y: &WittScalar) -> Result<WittScalar> {
        let n = self.same(x, y)?;
        self.make(n, self.zq.add(&x.value, &y.value))
    }

    pub fn sub(&self, x: &WittScalar, y: &WittScalar) -> Result<WittScalar> {
        let n = self.same(x, y)?;
        self.make(n, self.zq.sub(&x.value, &y.value))
    }

    pub fn neg(&self, x: &WittScalar) -> WittScalar {
        WittScalar { level: x.level, value: self.zq.truncate(&self.zq.neg(&x.value), x.level) }
    }

    pub fn mul(&self, x: &WittScalar, y: &WittScalar) -> Result<WittScalar> {
        let n = self.same(x, y)?;
        self.make(n, self.zq.mul(&x.value, &y.value))
    }

    /// F on W_n(𝔽_q); the base is perfect so the level is kept.
    pub fn frobenius(&self, x: &WittScalar) -> WittScalar {
        WittScalar { level: x.level, value: self.zq.sigma(&x.value) }
    }

    /// V, truncated to the same level.
    pub fn verschiebung(&self, x: &WittScalar) -> WittScalar {
        WittScalar { level: x.level, value: self.zq.truncate(&self.zq.verschiebung(&x.value), x.level) }
    }

    pub fn restrict(&self, x: &WittScalar, m: u32) -> Result<WittScalar> {
        if m > x.level {
            return Err(Error::LevelMismatch(m, x.level));
        }
        self.make(m, x.value)
    }

    pub fn format(&self, x: &WittScalar) -> String {
        let f = self.zq.field();
        let parts: Vec<String> = self.coords(x).iter().map(|c| f.format(c)).collect();
        format!("({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FiniteField;

    #[test]
    fn coords_round_trip_and_ord_v() {
        let s = ScalarRing::new(Zq::new(FiniteField::of(3, 2)));
        let f = s.zq.field().clone();
        let x = s.from_coords(&[f.zero(), f.theta(), f.one()]).unwrap();
        assert_eq!(s.coords(&x), vec![f.zero(), f.theta(), f.one()]);
        assert_eq!(s.ord_v(&x), 1);
        assert_eq!(s.ord_v(&s.verschiebung(&x)), 2);
    }
}
