//! Integral forms Σ c·X^k·dlog_S with c ∈ W(𝔽_q), k ∈ ℤ[1/p]^d.
//!
//! W Ω_A embeds into this lattice; F, V, d and the product act on it by
//! explicit formulas, which makes it the reference model for normalization.

use std::collections::BTreeMap;

use super::super::drw_terms::basis::wedge_sign;
use super::super::drw_terms::weight::Weight;
use crate::error::{Error, Result};
use crate::witt::{Zq, ZqElem};

/// Coefficients are exact modulo p^prec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub terms: BTreeMap<(Weight, u32), ZqElem>,
    pub prec: u32,
}

impl Form {
    pub fn zero(prec: u32) -> Form {
        Form { terms: BTreeMap::new(), prec }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(zq: &Zq, c: ZqElem, k: Weight, s: u32) -> Form {
        let mut f = Form::zero(zq.precision());
        f.push(zq, k, s, c);
        f
    }

    fn push(&mut self, zq: &Zq, k: Weight, s: u32, c: ZqElem) {
        let c = zq.truncate(&c, self.prec);
        if zq.is_zero(&c) {
            return;
        }
        let key = (k, s);
        let v = match self.terms.get(&key) {
            Some(old) => zq.truncate(&zq.add(old, &c), self.prec),
            None => c,
        };
        if zq.is_zero(&v) {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    fn with_prec(&self, zq: &Zq, prec: u32) -> Form {
        let mut f = Form::zero(prec.min(self.prec));
        for ((k, s), c) in &self.terms {
            f.push(zq, k.clone(), *s, *c);
        }
        f
    }

    /// Degrees present.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|(_, s)| s.count_ones() as usize).collect();
        d.sort();
        d.dedup();
        d
    }

    pub fn add(&self, zq: &Zq, o: &Form) -> Form {
        let mut f = self.with_prec(zq, o.prec);
        for ((k, s), c) in &o.terms {
            f.push(zq, k.clone(), *s, *c);
        }
        f
    }

    pub fn scale(&self, zq: &Zq, a: &ZqElem) -> Form {
        let mut f = Form::zero(self.prec);
        for ((k, s), c) in &self.terms {
            f.push(zq, k.clone(), *s, zq.mul(a, c));
        }
        f
    }

    pub fn mul(&self, zq: &Zq, o: &Form) -> Form {
        let p = zq.p();
        let mut f = Form::zero(self.prec.min(o.prec));
        for ((k1, s1), c1) in &self.terms {
            for ((k2, s2), c2) in &o.terms {
                if let Some(sg) = wedge_sign(*s1, *s2) {
                    let c = zq.mul_int(&zq.mul(c1, c2), sg);
                    f.push(zq, k1.add(p, k2), s1 | s2, c);
                }
            }
        }
        f
    }

    /// F: σ on coefficients, X^k ↦ X^{pk}.
    pub fn frobenius(&self, zq: &Zq) -> Form {
        let p = zq.p();
        let mut f = Form::zero(self.prec);
        for ((k, s), c) in &self.terms {
            f.push(zq, k.mul_p(p), *s, zq.sigma(c));
        }
        f
    }

    /// V: c ↦ p σ^{-1}(c), X^k ↦ X^{k/p}.
    pub fn verschiebung(&self, zq: &Zq) -> Form {
        let p = zq.p();
        let mut f = Form::zero(self.prec);
        for ((k, s), c) in &self.terms {
            f.push(zq, k.div_p(p), *s, zq.verschiebung(c));
        }
        f
    }

    /// d(c X^k ω) = c X^k κ∧ω with κ = Σ k_j dlog_j.
    pub fn differential(&self, zq: &Zq) -> Result<Form> {
        let p = zq.p();
        // group by weight: each weight component is integral after d
        let mut by_weight: BTreeMap<&Weight, Vec<(u32, &ZqElem)>> = BTreeMap::new();
        for ((k, s), c) in &self.terms {
            by_weight.entry(k).or_default().push((*s, c));
        }
        let mut out_terms: Vec<(Weight, u32, ZqElem)> = Vec::new();
        let mut prec = self.prec;
        for (k, items) in by_weight {
            let u = k.u();
            let scaled = k.scaled(p, u as i64).expect("p^u k is integral");
            let mut acc: BTreeMap<u32, ZqElem> = BTreeMap::new();
            for (s, c) in items {
                for (j, &kj) in scaled.iter().enumerate() {
                    if kj == 0 {
                        continue;
                    }
                    if let Some(sg) = super::super::drw_terms::basis::left_wedge_sign(j, s) {
                        let e = acc.entry(s | (1 << j)).or_insert(ZqElem::ZERO);
                        *e = zq.add(e, &zq.mul_int(c, sg * kj));
                    }
                }
            }
            if u > 0 {
                if self.prec < u {
                    return Err(Error::Precision { have: self.prec, need: u });
                }
                prec = prec.min(self.prec - u);
            }
            for (s, c) in acc {
                let c = zq.truncate(&c, self.prec);
                let q = zq.div_p_pow(&c, u).map_err(|_| {
                    Error::InvalidForm(format!("d of a non-integral form at weight {k:?}"))
                })?;
                out_terms.push((k.clone(), s, q));
            }
        }
        let mut f = Form::zero(prec);
        for (k, s, c) in out_terms {
            f.push(zq, k, s, c);
        }
        Ok(f)
    }

    /// Drops weight components lying in Fil^n (u(k) ≥ n).
    pub fn truncate_weights(&mut self, n: u32) {
        self.terms.retain(|(k, _), _| k.u() < n);
    }
}
