//! W(𝔽_q) modulo a fixed power of p, as (ℤ/p^M)[θ]/(f̃) where f̃ is the
//! integer lift of the defining polynomial of 𝔽_q. For q = p this is the
//! ℤ/p^M fast path. The Witt Frobenius is the lift σ of x ↦ x^p.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{FiniteField, FqElem, MAX_DEGREE};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZqElem(pub(crate) [u64; MAX_DEGREE]);

impl ZqElem {
    pub const ZERO: ZqElem = ZqElem([0; MAX_DEGREE]);
}

impl fmt::Debug for ZqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "Zq{:?}", &self.0[..=last])
    }
}

/// Working context for W(𝔽_q)/p^M.
#[derive(Clone)]
pub struct Zq {
    field: FiniteField,
    p: u64,
    a: usize,
    prec: u32,
    modulus: u64,
    lift: Vec<u64>,
    sigma_theta: ZqElem,
    sigma_inv_theta: ZqElem,
}

impl fmt::Debug for Zq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({:?})/p^{}", self.field, self.prec)
    }
}

impl PartialEq for Zq {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.prec == other.prec
    }
}
impl Eq for Zq {}

/// Largest M with p^M < 2^62.
pub fn max_precision(p: u64) -> u32 {
    let mut m = 0;
    let mut acc: u128 = 1;
    while acc * (p as u128) < (1u128 << 62) {
        acc *= p as u128;
        m += 1;
    }
    m
}

impl Zq {
    pub fn new(field: FiniteField) -> Self {
        let p = field.p() as u64;
        Self::with_precision(field, max_precision(p))
    }

    pub fn with_precision(field: FiniteField, prec: u32) -> Self {
        let p = field.p() as u64;
        let a = field.degree() as usize;
        let modulus = p.pow(prec);
        let lift: Vec<u64> = field.modulus().iter().map(|&c| c as u64).collect();
        let mut zq = Zq {
            field,
            p,
            a,
            prec,
            modulus,
            lift,
            sigma_theta: ZqElem::ZERO,
            sigma_inv_theta: ZqElem::ZERO,
        };
        if a == 1 {
            zq.sigma_theta = zq.from_int(0);
            zq.sigma_inv_theta = zq.from_int(0);
        } else {
            let mut theta = ZqElem::ZERO;
            theta.0[1] = 1;
            // Newton iteration for the root of f̃ congruent to θ^p
            let mut y = zq.pow(&theta, p);
            for _ in 0..=prec {
                let fy = zq.eval_lift(&y);
                let dfy = zq.eval_lift_deriv(&y);
                let inv = zq.inv(&dfy).expect("f̃' is a unit at a simple root");
                y = zq.sub(&y, &zq.mul(&fy, &inv));
            }
            zq.sigma_theta = y;
            // σ^{-1} = σ^{a-1}
            let mut z = theta;
            for _ in 0..a - 1 {
                z = zq.sigma(&z);
            }
            zq.sigma_inv_theta = z;
        }
        zq
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.prec
    }
    pub fn degree(&self) -> usize {
        self.a
    }

    fn eval_lift(&self, y: &ZqElem) -> ZqElem {
        let mut acc = ZqElem::ZERO;
        for &c in self.lift.iter().rev() {
            acc = self.add(&self.mul(&acc, y), &self.from_int(c as i64));
        }
        acc
    }

    fn eval_lift_deriv(&self, y: &ZqElem) -> ZqElem {
        let mut acc = ZqElem::ZERO;
        for (i, &c) in self.lift.iter().enumerate().skip(1).rev() {
            acc = self.add(&self.mul(&acc, y), &self.from_int((c * i as u64) as i64));
        }
        acc
    }

    #[inline]
    fn mulmod(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.modulus as u128) as u64
    }

    pub fn zero(&self) -> ZqElem {
        ZqElem::ZERO
    }

    pub fn one(&self) -> ZqElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> ZqElem {
        let mut e = ZqElem::ZERO;
        e.0[0] = n.rem_euclid(self.modulus as i64) as u64;
        e
    }

    /// n/d for p ∤ d.
    pub fn from_ratio(&self, n: i64, d: i64) -> Result<ZqElem> {
        if d.rem_euclid(self.p as i64) == 0 {
            return Err(Error::Domain(format!("denominator {d} divisible by p")));
        }
        let di = self.inv(&self.from_int(d)).expect("unit");
        Ok(self.mul(&self.from_int(n), &di))
    }

    pub fn is_zero(&self, x: &ZqElem) -> bool {
        x.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        let mut e = ZqElem::ZERO;
        for k in 0..self.a {
            let s = x.0[k] + y.0[k];
            e.0[k] = if s >= self.modulus { s - self.modulus } else { s };
        }
        e
    }

    pub fn neg(&self, x: &ZqElem) -> ZqElem {
        let mut e = ZqElem::ZERO;
        for k in 0..self.a {
            e.0[k] = if x.0[k] == 0 { 0 } else { self.modulus - x.0[k] };
        }
        e
    }

    pub fn sub(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        let a = self.a;
        if a == 1 {
            let mut e = ZqElem::ZERO;
            e.0[0] = self.mulmod(x.0[0], y.0[0]);
            return e;
        }
        let mut r = [0u64; 2 * MAX_DEGREE];
        for i in 0..a {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..a {
                let t = self.mulmod(x.0[i], y.0[j]);
                let s = r[i + j] + t;
                r[i + j] = if s >= self.modulus { s - self.modulus } else { s };
            }
        }
        // reduce by the monic lift f̃ of degree a
        for top in (a..2 * a - 1).rev() {
            let c = r[top];
            if c == 0 {
                continue;
            }
            r[top] = 0;
            for i in 0..a {
                let t = self.mulmod(c, self.lift[i]);
                let idx = top - a + i;
                r[idx] = (r[idx] + self.modulus - t) % self.modulus;
            }
        }
        let mut e = ZqElem::ZERO;
        e.0[..a].copy_from_slice(&r[..a]);
        e
    }

    pub fn mul_int(&self, x: &ZqElem, n: i64) -> ZqElem {
        self.mul(x, &self.from_int(n))
    }

    pub fn pow(&self, x: &ZqElem, mut e: u64) -> ZqElem {
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

    /// Reduction to the residue field.
    pub fn residue(&self, x: &ZqElem) -> FqElem {
        let c: Vec<u32> = x.0[..self.a].iter().map(|&c| (c % self.p) as u32).collect();
        self.field.from_coeffs(&c)
    }

    /// Coordinate-wise lift with digits in 0..p (not multiplicative).
    pub fn lift_digits(&self, x: &FqElem) -> ZqElem {
        let mut e = ZqElem::ZERO;
        for k in 0..self.a {
            e.0[k] = x.0[k] as u64;
        }
        e
    }

    pub fn inv(&self, x: &ZqElem) -> Option<ZqElem> {
        let r = self.field.inv(&self.residue(x))?;
        let mut y = self.lift_digits(&r);
        let two = self.from_int(2);
        let mut good = 1u32;
        while good < self.prec {
            y = self.mul(&y, &self.sub(&two, &self.mul(x, &y)));
            good *= 2;
        }
        Some(y)
    }

    /// p-adic valuation; `precision()` for zero.
    pub fn ord_p(&self, x: &ZqElem) -> u32 {
        let mut best = self.prec;
        for k in 0..self.a {
            let mut c = x.0[k];
            if c == 0 {
                continue;
            }
            let mut v = 0;
            while c % self.p == 0 {
                c /= self.p;
                v += 1;
            }
            best = best.min(v);
        }
        best
    }

    /// Exact division by p^k. The result is known modulo p^{M-k}; the top
    /// digits are filled with zeros.
    pub fn div_p_pow(&self, x: &ZqElem, k: u32) -> Result<ZqElem> {
        if k == 0 {
            return Ok(*x);
        }
        if self.ord_p(x) < k {
            return Err(Error::NotVDivisible);
        }
        let pk = self.p.pow(k);
        let mut e = ZqElem::ZERO;
        for i in 0..self.a {
            e.0[i] = x.0[i] / pk;
        }
        Ok(e)
    }

    pub fn mul_p_pow(&self, x: &ZqElem, k: u32) -> ZqElem {
        if k >= self.prec {
            return ZqElem::ZERO;
        }
        self.mul_int(x, self.p.pow(k) as i64)
    }

    /// Reduction modulo p^n.
    pub fn truncate(&self, x: &ZqElem, n: u32) -> ZqElem {
        if n >= self.prec {
            return *x;
        }
        let pn = self.p.pow(n);
        let mut e = ZqElem::ZERO;
        for i in 0..self.a {
            e.0[i] = x.0[i] % pn;
        }
        e
    }

    fn apply_theta_image(&self, x: &ZqElem, img: &ZqElem) -> ZqElem {
        if self.a == 1 {
            return *x;
        }
        let mut acc = ZqElem::ZERO;
        for k in (0..self.a).rev() {
            acc = self.mul(&acc, img);
            let mut c = ZqElem::ZERO;
            c.0[0] = x.0[k];
            acc = self.add(&acc, &c);
        }
        acc
    }

    /// Witt vector Frobenius on W(𝔽_q).
    pub fn sigma(&self, x: &ZqElem) -> ZqElem {
        self.apply_theta_image(x, &self.sigma_theta)
    }

    pub fn sigma_inv(&self, x: &ZqElem) -> ZqElem {
        self.apply_theta_image(x, &self.sigma_inv_theta)
    }

    pub fn sigma_pow(&self, x: &ZqElem, k: i64) -> ZqElem {
        let a = self.a as i64;
        let k = k.rem_euclid(a);
        let mut y = *x;
        for _ in 0..k {
            y = self.sigma(&y);
        }
        y
    }

    /// Teichmüller representative [α].
    pub fn teichmuller(&self, alpha: &FqElem) -> ZqElem {
        let q = self.field.q();
        let mut y = self.lift_digits(alpha);
        for _ in 0..=self.prec {
            y = self.pow(&y, q);
        }
        y
    }

    /// V(x) = p σ^{-1}(x).
    pub fn verschiebung(&self, x: &ZqElem) -> ZqElem {
        self.mul_int(&self.sigma_inv(x), self.p as i64)
    }

    /// V^{-1}(x) = σ(x)/p, defined when p | x.
    pub fn v_inverse(&self, x: &ZqElem) -> Result<ZqElem> {
        self.div_p_pow(&self.sigma(x), 1)
    }

    /// Witt coordinates (x_0, …, x_{n-1}) of x modulo p^n.
    pub fn witt_coords(&self, x: &ZqElem, n: u32) -> Vec<FqElem> {
        let f = &self.field;
        let mut rest = self.truncate(x, n);
        let mut out = Vec::with_capacity(n as usize);
        for i in 0..n {
            let d = self.residue(&rest);
            // d = x_i^{p^{-i}}
            let mut xi = d;
            for _ in 0..i {
                xi = f.frobenius(&xi);
            }
            out.push(xi);
            let t = self.teichmuller(&d);
            rest = self.sub(&rest, &t);
            if i + 1 < n {
                rest = self.div_p_pow(&rest, 1).expect("digit removed");
            }
        }
        out
    }

    /// Σ p^i [x_i^{p^{-i}}].
    pub fn from_witt_coords(&self, coords: &[FqElem]) -> ZqElem {
        let f = &self.field;
        let mut acc = ZqElem::ZERO;
        for (i, c) in coords.iter().enumerate() {
            let mut r = *c;
            for _ in 0..i {
                r = f.pth_root(&r);
            }
            acc = self.add(&acc, &self.mul_p_pow(&self.teichmuller(&r), i as u32));
        }
        acc
    }

    /// The representative in [0, p^M) when x lies in W(𝔽_p).
    pub fn as_integer(&self, x: &ZqElem) -> Option<u64> {
        x.0[1..].iter().all(|&c| c == 0).then_some(x.0[0])
    }

    /// Coordinates in the basis 1, θ, …, θ^{a−1}, each in [0, p^M).
    pub fn theta_coords(&self, x: &ZqElem) -> Vec<u64> {
        x.0[..self.a].to_vec()
    }

    /// Σ c_j θ^j.
    pub fn from_theta_coords(&self, c: &[i64]) -> Result<ZqElem> {
        if c.len() > self.a {
            return Err(Error::Domain(format!("{} θ-coordinates for a degree-{} extension", c.len(), self.a)));
        }
        let mut e = ZqElem::ZERO;
        for (k, &v) in c.iter().enumerate() {
            e.0[k] = v.rem_euclid(self.modulus as i64) as u64;
        }
        Ok(e)
    }

    /// p^M.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn format(&self, x: &ZqElem) -> String {
        if self.a == 1 {
            return x.0[0].to_string();
        }
        let parts: Vec<String> = x.0[..self.a].iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_lifts_frobenius() {
        for (p, a) in [(2, 2), (3, 2), (2, 3), (5, 2)] {
            let f = FiniteField::of(p, a);
            let zq = Zq::new(f.clone());
            for x in f.elements() {
                let t = zq.teichmuller(&x);
                assert_eq!(zq.residue(&t), x);
                assert_eq!(zq.sigma(&t), zq.pow(&t, p as u64));
                assert_eq!(zq.sigma_inv(&zq.sigma(&t)), t);
            }
        }
    }

    #[test]
    fn witt_coordinates_round_trip() {
        let f = FiniteField::of(3, 2);
        let zq = Zq::new(f.clone());
        for i in 0..200u64 {
            let c = vec![f.from_index(i % 9), f.from_index((i / 9) % 9), f.from_index(i * 7 % 9)];
            let x = zq.from_witt_coords(&c);
            assert_eq!(zq.witt_coords(&x, 3), c);
        }
    }

    #[test]
    fn fv_is_p() {
        let zq = Zq::new(FiniteField::of(2, 2));
        let x = zq.add(&zq.teichmuller(&zq.field().theta()), &zq.from_int(5));
        let fv = zq.sigma(&zq.verschiebung(&x));
        assert_eq!(fv, zq.mul_int(&x, 2));
    }
}
