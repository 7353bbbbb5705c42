//! Universal Witt polynomials over ℤ, obtained by solving the ghost
//! equations w_i(S) = w_i(X) + w_i(Y), w_i(P) = w_i(X) w_i(Y),
//! w_i(N) = -w_i(X) with w_i(X) = Σ_{j≤i} p^j X_j^{p^{i-j}}.
//!
//! Variables are X_0..X_{n-1} followed by Y_0..Y_{n-1}.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ring::CommRing;

/// Sparse multivariate polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPoly {
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigInt::one());
        IntPoly { terms }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        IntPoly { terms }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        IntPoly { terms }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::default();
        }
        IntPoly {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut terms: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        IntPoly { terms }
    }

    pub fn pow(&self, mut e: u64, nvars: usize) -> IntPoly {
        let mut r = IntPoly::constant(nvars, BigInt::one());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Exact division of every coefficient by `d`.
    pub fn div_exact(&self, d: &BigInt) -> IntPoly {
        IntPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (q, r) = c.div_rem(d);
                    assert!(r.is_zero(), "ghost equation not integral");
                    (e.clone(), q)
                })
                .collect(),
        }
    }

    /// Coefficients reduced modulo m, zero terms dropped.
    pub fn reduce_mod(&self, m: u64) -> IntPoly {
        let m = BigInt::from(m);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let r = c.mod_floor(&m);
            if !r.is_zero() {
                terms.insert(e.clone(), r);
            }
        }
        IntPoly { terms }
    }

    pub fn eval<R: CommRing>(&self, ring: &R, vals: &[R::El]) -> R::El {
        // cache powers per variable
        let mut pow_cache: HashMap<(usize, u32), R::El> = HashMap::new();
        let mut acc = ring.zero();
        for (e, c) in &self.terms {
            let mut t = ring.from_bigint(c);
            if ring.is_zero(&t) {
                continue;
            }
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = pow_cache
                    .entry((i, k))
                    .or_insert_with(|| ring.pow(&vals[i], k as u64))
                    .clone();
                t = ring.mul(&t, &pw);
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }
}

/// Universal polynomials for one prime, grown on demand.
#[derive(Debug, Default)]
pub struct UniversalPolys {
    pub p: u64,
    pub levels: usize,
    pub sum: Vec<IntPoly>,
    pub prod: Vec<IntPoly>,
    pub neg: Vec<IntPoly>,
    /// Same polynomials with coefficients reduced mod p.
    pub sum_mod_p: Vec<IntPoly>,
    pub prod_mod_p: Vec<IntPoly>,
    pub neg_mod_p: Vec<IntPoly>,
}

fn ghost(p: u64, nvars: usize, offset: usize, i: usize) -> IntPoly {
    let mut acc = IntPoly::default();
    for j in 0..=i {
        let x = IntPoly::var(nvars, offset + j);
        let term = x.pow(p.pow((i - j) as u32), nvars).scale(&BigInt::from(p).pow(j as u32));
        acc = acc.add(&term);
    }
    acc
}

impl UniversalPolys {
    /// Computes the polynomials for levels 0..n. Variables: 2n.
    pub fn compute(p: u64, n: usize) -> Self {
        let nv = 2 * n;
        let pb = BigInt::from(p);
        let mut sum: Vec<IntPoly> = Vec::new();
        let mut prod: Vec<IntPoly> = Vec::new();
        let mut neg: Vec<IntPoly> = Vec::new();
        for i in 0..n {
            let wx = ghost(p, nv, 0, i);
            let wy = ghost(p, nv, n, i);
            let mut s = wx.add(&wy);
            let mut m = wx.mul(&wy);
            let mut ng = wx.scale(&BigInt::from(-1));
            for j in 0..i {
                let e = p.pow((i - j) as u32);
                let c = -pb.pow(j as u32);
                s = s.add(&sum[j].pow(e, nv).scale(&c));
                m = m.add(&prod[j].pow(e, nv).scale(&c));
                ng = ng.add(&neg[j].pow(e, nv).scale(&c));
            }
            let d = pb.pow(i as u32);
            sum.push(s.div_exact(&d));
            prod.push(m.div_exact(&d));
            neg.push(ng.div_exact(&d));
        }
        UniversalPolys {
            p,
            levels: n,
            sum_mod_p: sum.iter().map(|f| f.reduce_mod(p)).collect(),
            prod_mod_p: prod.iter().map(|f| f.reduce_mod(p)).collect(),
            neg_mod_p: neg.iter().map(|f| f.reduce_mod(p)).collect(),
            sum,
            prod,
            neg,
        }
    }
}

type Cache = Mutex<HashMap<u64, Arc<UniversalPolys>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared universal polynomials for (p, n); computed once per prime and
/// recomputed only when a deeper level is requested.
pub fn universal(p: u64, n: usize) -> Arc<UniversalPolys> {
    let mut guard = cache().lock().expect("universal polynomial cache poisoned");
    if let Some(u) = guard.get(&p) {
        if u.levels >= n {
            return Arc::clone(u);
        }
    }
    let u = Arc::new(UniversalPolys::compute(p, n));
    guard.insert(p, Arc::clone(&u));
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sum_polynomial() {
        let u = UniversalPolys::compute(2, 2);
        // S_1 = X_1 + Y_1 - X_0 Y_0 for p = 2
        let mut expected = IntPoly::var(4, 1).add(&IntPoly::var(4, 3));
        expected = expected.add(&IntPoly::var(4, 0).mul(&IntPoly::var(4, 2)).scale(&BigInt::from(-1)));
        assert_eq!(u.sum[1], expected);
    }

    #[test]
    fn negation_for_odd_p_is_coordinatewise() {
        let u = UniversalPolys::compute(3, 3);
        for i in 0..3 {
            assert_eq!(u.neg[i], IntPoly::var(6, i).scale(&BigInt::from(-1)));
        }
    }
}
