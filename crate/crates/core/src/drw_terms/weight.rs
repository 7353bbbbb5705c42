//! Weights k ∈ ℤ[1/p]^d.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;

/// A value m/p^e with p ∤ m, or 0 stored as (0, 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exp {
    pub num: i64,
    pub den: u32,
}

pub(crate) fn vp(p: u64, mut m: i64) -> u32 {
    debug_assert!(m != 0);
    let mut v = 0;
    while m % p as i64 == 0 {
        m /= p as i64;
        v += 1;
    }
    v
}

impl Exp {
    pub const ZERO: Exp = Exp { num: 0, den: 0 };

    pub fn new(p: u64, mut num: i64, mut den: u32) -> Exp {
        if num == 0 {
            return Exp::ZERO;
        }
        while den > 0 && num % p as i64 == 0 {
            num /= p as i64;
            den -= 1;
        }
        Exp { num, den }
    }

    pub fn int(n: i64) -> Exp {
        Exp { num: n, den: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// p-adic valuation; None for zero.
    pub fn ord(&self, p: u64) -> Option<i64> {
        (self.num != 0).then(|| vp(p, self.num) as i64 - self.den as i64)
    }

    pub fn mul_p(&self, p: u64) -> Exp {
        if self.den > 0 {
            Exp { num: self.num, den: self.den - 1 }
        } else {
            Exp { num: self.num * p as i64, den: 0 }
        }
    }

    pub fn div_p(&self, p: u64) -> Exp {
        if self.num == 0 {
            return Exp::ZERO;
        }
        if self.num % p as i64 == 0 {
            Exp { num: self.num / p as i64, den: 0 }
        } else {
            Exp { num: self.num, den: self.den + 1 }
        }
    }

    pub fn add(&self, p: u64, o: &Exp) -> Exp {
        let d = self.den.max(o.den);
        let a = self.num * (p as i64).pow(d - self.den);
        let b = o.num * (p as i64).pow(d - o.den);
        Exp::new(p, a + b, d)
    }

    pub fn neg(&self) -> Exp {
        Exp { num: -self.num, den: self.den }
    }

    /// Value times p^s as an integer, when integral.
    pub fn scaled(&self, p: u64, s: i64) -> Option<i64> {
        let e = s - self.den as i64;
        if e >= 0 {
            Some(self.num * (p as i64).pow(e as u32))
        } else {
            let d = (p as i64).pow((-e) as u32);
            (self.num % d == 0).then(|| self.num / d)
        }
    }

    pub fn ratio(&self, p: u64) -> Ratio<i64> {
        Ratio::new(self.num, (p as i64).pow(self.den))
    }

    pub fn format(&self, p: u64) -> String {
        if self.den == 0 {
            self.num.to_string()
        } else {
            format!("{}/{}", self.num, (p as i64).pow(self.den))
        }
    }
}

/// One exponent per declared variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Exp>);

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if e.den == 0 {
                write!(f, "{}", e.num)?;
            } else {
                write!(f, "{}/p^{}", e.num, e.den)?;
            }
        }
        write!(f, "]")
    }
}

impl Weight {
    pub fn zero(d: usize) -> Weight {
        Weight(vec![Exp::ZERO; d])
    }

    pub fn from_ints(v: &[i64]) -> Weight {
        Weight(v.iter().map(|&n| Exp::int(n)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Exp::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&j| !self.0[j].is_zero()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|e| e.den == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|e| e.num >= 0)
    }

    pub fn negatives(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&j| self.0[j].num < 0).collect()
    }

    /// u(k): the largest denominator exponent.
    pub fn u(&self) -> u32 {
        self.0.iter().map(|e| e.den).max().unwrap_or(0)
    }

    /// Support ordered by increasing p-adic valuation, ties by index.
    pub fn ordered_support(&self, p: u64) -> Vec<usize> {
        let mut s = self.support();
        s.sort_by(|&a, &b| {
            let (oa, ob) = (self.0[a].ord(p).unwrap(), self.0[b].ord(p).unwrap());
            match oa.cmp(&ob) {
                Ordering::Equal => a.cmp(&b),
                o => o,
            }
        });
        s
    }

    /// min ord_p over a subset of the support.
    pub fn min_ord(&self, p: u64, idx: &[usize]) -> i64 {
        idx.iter().map(|&j| self.0[j].ord(p).expect("in support")).min().expect("nonempty")
    }

    /// |k| = Σ |k_j|.
    pub fn size(&self, p: u64) -> Ratio<i64> {
        self.0.iter().map(|e| e.ratio(p)).fold(Ratio::from_integer(0), |a, b| {
            a + if b < Ratio::from_integer(0) { -b } else { b }
        })
    }

    pub fn mul_p(&self, p: u64) -> Weight {
        Weight(self.0.iter().map(|e| e.mul_p(p)).collect())
    }

    pub fn div_p(&self, p: u64) -> Weight {
        Weight(self.0.iter().map(|e| e.div_p(p)).collect())
    }

    pub fn add(&self, p: u64, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a.add(p, b)).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(Exp::neg).collect())
    }

    /// Restriction to a subset of variables (others zeroed).
    pub fn restrict_to(&self, idx: &[usize]) -> Weight {
        let mut w = Weight::zero(self.nvars());
        for &j in idx {
            w.0[j] = self.0[j];
        }
        w
    }

    /// k·p^s as integers, when integral.
    pub fn scaled(&self, p: u64, s: i64) -> Option<Vec<i64>> {
        self.0.iter().map(|e| e.scaled(p, s)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_exponents() {
        assert_eq!(Exp::new(3, 9, 1), Exp::int(3));
        assert_eq!(Exp::new(3, 0, 4), Exp::ZERO);
        assert_eq!(Exp::int(2).div_p(2), Exp::int(1));
        assert_eq!(Exp::int(1).div_p(2), Exp { num: 1, den: 1 });
        assert_eq!(Exp { num: 1, den: 1 }.mul_p(2), Exp::int(1));
        assert_eq!(Exp { num: 3, den: 2 }.ord(2), Some(-2));
    }

    #[test]
    fn ordering_by_valuation() {
        let w = Weight(vec![Exp::int(2), Exp { num: 1, den: 1 }, Exp::int(1)]);
        assert_eq!(w.ordered_support(2), vec![1, 2, 0]);
        assert_eq!(w.u(), 1);
        assert_eq!(w.size(2), Ratio::new(7, 2));
    }
}
