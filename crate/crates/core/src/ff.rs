//! Finite fields 𝔽_q = 𝔽_p[θ]/(f) with f the least irreducible monic
//! polynomial of degree a (ordering: the integer Σ c_i p^i of its lower
//! coefficients).

use std::fmt;

use crate::error::{Error, Result};

/// Largest extension degree supported by [`FqElem`].
pub const MAX_DEGREE: usize = 8;

/// Default bound on q for user-facing field declarations.
pub const DEFAULT_Q_LIMIT: u64 = 32;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    pub p: u32,
    pub a: u32,
}

impl PrimePower {
    pub fn new(p: u32, a: u32) -> Result<Self> {
        Self::with_limit(p, a, DEFAULT_Q_LIMIT)
    }

    pub fn with_limit(p: u32, a: u32, limit: u64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if a == 0 || a as usize > MAX_DEGREE {
            return Err(Error::Domain(format!("extension degree {a} out of range 1..={MAX_DEGREE}")));
        }
        let q = (p as u64).checked_pow(a).unwrap_or(u64::MAX);
        if q > limit {
            return Err(Error::Domain(format!("q = {p}^{a} exceeds the configured limit {limit}")));
        }
        Ok(PrimePower { p, a })
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.a)
    }
}

/// Element of 𝔽_q as coefficients c_0 + c_1 θ + ... in 𝔽_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub(crate) [u32; MAX_DEGREE]);

impl FqElem {
    pub const ZERO: FqElem = FqElem([0; MAX_DEGREE]);
    pub const ONE: FqElem = {
        let mut c = [0; MAX_DEGREE];
        c[0] = 1;
        FqElem(c)
    };

    pub fn coeffs(&self) -> &[u32; MAX_DEGREE] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "Fq{:?}", &self.0[..=last])
    }
}

// ---- small dense polynomial helpers over 𝔽_p (coefficients low to high) ----

fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_inv(x: u32, p: u32) -> u32 {
    pow_mod(x as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn fp_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut r: Vec<u32> = r.into_iter().map(|x| x as u32).collect();
    fp_rem(&mut r, f, p);
    r
}

fn fp_rem(r: &mut Vec<u32>, f: &[u32], p: u32) {
    fp_trim(r);
    let df = f.len() - 1;
    let lead_inv = fp_inv(f[df], p);
    while r.len() > df {
        let top = r.len() - 1;
        let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            for (i, &fi) in f.iter().enumerate() {
                let idx = top - df + i;
                r[idx] = ((r[idx] as u64 + (p - c) as u64 * fi as u64) % p as u64) as u32;
            }
        }
        r.pop();
        fp_trim(r);
    }
}

fn fp_gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        fp_rem(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    // gcd(x^{p^i} - x, f) = 1 for i <= n/2
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=n / 2 {
        let mut acc = vec![1u32];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, f, p);
            }
            base = fp_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(&mut diff);
        let g = fp_gcd(f.to_vec(), diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Least irreducible monic polynomial of degree `a` over 𝔽_p, low-to-high.
pub fn least_irreducible(p: u32, a: u32) -> Vec<u32> {
    let count = (p as u64).pow(a);
    for idx in 0..count {
        let mut f = Vec::with_capacity(a as usize + 1);
        let mut t = idx;
        for _ in 0..a {
            f.push((t % p as u64) as u32);
            t /= p as u64;
        }
        f.push(1);
        if a > 1 && f[0] == 0 {
            continue;
        }
        if fp_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// The field 𝔽_q with a fixed defining polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    pp: PrimePower,
    modulus: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

impl FiniteField {
    pub fn new(pp: PrimePower) -> Self {
        let modulus = least_irreducible(pp.p, pp.a);
        FiniteField { pp, modulus }
    }

    /// Shorthand for tests and internal use; bypasses the q limit.
    pub fn of(p: u32, a: u32) -> Self {
        Self::new(PrimePower::with_limit(p, a, u64::MAX).expect("valid prime power"))
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }
    pub fn p(&self) -> u32 {
        self.pp.p
    }
    pub fn degree(&self) -> u32 {
        self.pp.a
    }
    pub fn q(&self) -> u64 {
        self.pp.q()
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }
    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        let mut e = FqElem::ZERO;
        e.0[0] = n.rem_euclid(self.pp.p as i64) as u32;
        e
    }

    /// The class of θ.
    pub fn theta(&self) -> FqElem {
        if self.pp.a == 1 {
            // θ is a root of x + c_0
            return self.neg(&self.from_int(self.modulus[0] as i64));
        }
        let mut e = FqElem::ZERO;
        e.0[1] = 1;
        e
    }

    pub fn from_coeffs(&self, c: &[u32]) -> FqElem {
        let mut v: Vec<u32> = c.iter().map(|&x| x % self.pp.p).collect();
        fp_rem(&mut v, &self.modulus, self.pp.p);
        let mut e = FqElem::ZERO;
        e.0[..v.len()].copy_from_slice(&v);
        e
    }

    /// Element with index `i` in 0..q (base-p digits are the coefficients).
    pub fn from_index(&self, mut i: u64) -> FqElem {
        let mut e = FqElem::ZERO;
        for k in 0..self.pp.a as usize {
            e.0[k] = (i % self.pp.p as u64) as u32;
            i /= self.pp.p as u64;
        }
        e
    }

    pub fn index(&self, x: &FqElem) -> u64 {
        let mut r = 0u64;
        for k in (0..self.pp.a as usize).rev() {
            r = r * self.pp.p as u64 + x.0[k] as u64;
        }
        r
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q()).map(move |i| self.from_index(i))
    }

    pub fn units(&self) -> impl Iterator<Item = FqElem> + '_ {
        (1..self.q()).map(move |i| self.from_index(i))
    }

    pub fn add(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let p = self.pp.p;
        let mut e = FqElem::ZERO;
        for k in 0..self.pp.a as usize {
            e.0[k] = (x.0[k] + y.0[k]) % p;
        }
        e
    }

    pub fn neg(&self, x: &FqElem) -> FqElem {
        let p = self.pp.p;
        let mut e = FqElem::ZERO;
        for k in 0..self.pp.a as usize {
            e.0[k] = (p - x.0[k]) % p;
        }
        e
    }

    pub fn sub(&self, x: &FqElem, y: &FqElem) -> FqElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let a = self.pp.a as usize;
        if a == 1 {
            let mut e = FqElem::ZERO;
            e.0[0] = (x.0[0] as u64 * y.0[0] as u64 % self.pp.p as u64) as u32;
            return e;
        }
        let v = fp_mulmod(&x.0[..a], &y.0[..a], &self.modulus, self.pp.p);
        let mut e = FqElem::ZERO;
        e.0[..v.len()].copy_from_slice(&v);
        e
    }

    pub fn pow(&self, x: &FqElem, mut e: u64) -> FqElem {
        let mut r = self.one();
        let mut b = *x;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Signed exponent; negative powers require a unit.
    pub fn pow_i(&self, x: &FqElem, e: i64) -> FqElem {
        if e >= 0 {
            self.pow(x, e as u64)
        } else {
            self.pow(&self.inv(x).expect("negative power of zero"), e.unsigned_abs())
        }
    }

    pub fn inv(&self, x: &FqElem) -> Option<FqElem> {
        if x.is_zero() {
            None
        } else {
            Some(self.pow(x, self.q() - 2))
        }
    }

    pub fn div(&self, x: &FqElem, y: &FqElem) -> Option<FqElem> {
        self.inv(y).map(|yi| self.mul(x, &yi))
    }

    /// Absolute Frobenius a ↦ a^p.
    pub fn frobenius(&self, x: &FqElem) -> FqElem {
        self.pow(x, self.pp.p as u64)
    }

    /// Inverse of the absolute Frobenius.
    pub fn pth_root(&self, x: &FqElem) -> FqElem {
        self.pow(x, self.q() / self.pp.p as u64)
    }

    /// Multiplicative order of a unit.
    pub fn order(&self, x: &FqElem) -> u64 {
        let n = self.q() - 1;
        let mut ord = n;
        for d in divisors(n) {
            if self.pow(x, d) == self.one() {
                ord = d;
                break;
            }
        }
        ord
    }

    /// Smallest-index generator of 𝔽_q^*.
    pub fn generator(&self) -> FqElem {
        self.units()
            .find(|u| self.order(u) == self.q() - 1)
            .expect("cyclic group has a generator")
    }

    /// Discrete logarithm with respect to [`Self::generator`]; brute force.
    pub fn log(&self, x: &FqElem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let g = self.generator();
        let mut acc = self.one();
        for i in 0..self.q() - 1 {
            if acc == *x {
                return Some(i);
            }
            acc = self.mul(&acc, &g);
        }
        None
    }

    pub fn is_square(&self, x: &FqElem) -> bool {
        if x.is_zero() || self.pp.p == 2 {
            return true;
        }
        self.pow(x, (self.q() - 1) / 2) == self.one()
    }

    pub fn format(&self, x: &FqElem) -> String {
        if self.pp.a == 1 {
            return x.0[0].to_string();
        }
        let mut parts = Vec::new();
        for k in (0..self.pp.a as usize).rev() {
            let c = x.0[k];
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "θ".to_string(),
                _ => format!("θ^{k}"),
            };
            parts.push(match (c, k) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_polynomials_are_least() {
        assert_eq!(least_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 3), vec![1, 1, 0, 1]);
    }

    #[test]
    fn field_axioms_small() {
        for (p, a) in [(2, 1), (2, 2), (3, 2), (5, 1), (2, 3)] {
            let f = FiniteField::of(p, a);
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(f.mul(&x, &y), f.mul(&y, &x));
                    assert_eq!(f.sub(&f.add(&x, &y), &y), x);
                }
                if !x.is_zero() {
                    assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
                }
                assert_eq!(f.pth_root(&f.frobenius(&x)), x);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PrimePower::new(4, 1).is_err());
        assert!(PrimePower::new(2, 6).is_err());
        assert!(PrimePower::new(3, 2).is_ok());
    }

    #[test]
    fn generator_and_log() {
        let f = FiniteField::of(3, 2);
        let g = f.generator();
        assert_eq!(f.order(&g), 8);
        for u in f.units() {
            assert_eq!(f.pow(&g, f.log(&u).unwrap()), u);
        }
    }
}
