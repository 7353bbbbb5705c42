//! Brute-force check that the basic Witt differentials of one weight span
//! exactly the lattice E_k = {ω integral : κ∧ω integral}.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::drw_terms::basis::{gamma, left_wedge_sign, shape, Shape};
use crate::drw_terms::{Drw, Weight};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub rank: usize,
    /// [ℤ_p^C : span of the basis].
    pub basis_index: BigInt,
    /// [ℤ_p^C : E_k], by enumeration modulo p^{u(k)}.
    pub lattice_index: BigInt,
    pub generators_integral: bool,
}

impl LatticeReport {
    pub fn ok(&self) -> bool {
        self.generators_integral && self.basis_index == self.lattice_index
    }
}

fn closed_under_d(p: u64, scaled_k: &[i64], pu: i64, masks: &[u32], w: &[i64]) -> bool {
    let mut out: std::collections::BTreeMap<u32, i64> = Default::default();
    for (s, &c) in masks.iter().zip(w) {
        if c == 0 {
            continue;
        }
        for (j, &kj) in scaled_k.iter().enumerate() {
            if kj == 0 {
                continue;
            }
            if let Some(sg) = left_wedge_sign(j, *s) {
                *out.entry(s | (1 << j)).or_insert(0) += sg * kj * c;
            }
        }
    }
    let _ = p;
    out.values().all(|v| v.rem_euclid(pu) == 0)
}

/// Compares the basis lattice with E_k in degree q.
pub fn check_weight(drw: &Drw, k: &Weight, q: usize) -> LatticeReport {
    let p = drw.p();
    let keys = drw.keys_at(k, q);
    let u = k.u();
    let pu = (p as i64).pow(u);
    let scaled_k = k.scaled(p, u as i64).expect("p^u k integral");
    let gammas: Vec<_> = keys.iter().map(|key| gamma(p, k, &key.part, key.z)).collect();
    let mut masks: Vec<u32> = gammas.iter().flat_map(|g| g.keys().copied()).collect();
    masks.sort();
    masks.dedup();
    let c = masks.len();
    let gens: Vec<Vec<i64>> = keys
        .iter()
        .zip(&gammas)
        .map(|(key, g)| {
            let scale = match shape(k, &key.part) {
                Shape::One => pu,
                _ => 1,
            };
            masks.iter().map(|s| scale * g.get(s).copied().unwrap_or(0)).collect()
        })
        .collect();
    let generators_integral = gens.iter().all(|g| closed_under_d(p, &scaled_k, pu, &masks, g));
    // indices over ℤ_p: keep the p-part of the determinant
    let basis_index = if gens.len() == c {
        let det = linalg::det(&linalg::from_ints(&gens)).numer().abs();
        let pb = BigInt::from(p);
        let mut part = BigInt::from(1);
        let mut rest = det;
        while !rest.is_zero() && (&rest % &pb).is_zero() {
            rest /= &pb;
            part *= &pb;
        }
        if rest.is_zero() { rest } else { part }
    } else {
        BigInt::from(0)
    };
    // enumerate ω mod p^u
    let total = (pu as u64).pow(c as u32);
    let mut count: u64 = 0;
    let mut w = vec![0i64; c];
    for idx in 0..total {
        let mut t = idx;
        for x in w.iter_mut() {
            *x = (t % pu as u64) as i64;
            t /= pu as u64;
        }
        if closed_under_d(p, &scaled_k, pu, &masks, &w) {
            count += 1;
        }
    }
    let lattice_index = BigInt::from(total / count);
    LatticeReport { rank: c, basis_index, lattice_index, generators_integral }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drw_terms::RingSpec;
    use crate::ff::PrimePower;
    use crate::poly::VarDecl;

    #[test]
    fn basis_spans_the_integral_lattice() {
        for (p, laurent) in [(2, false), (3, true), (2, true)] {
            let vars = vec![
                if laurent { VarDecl::laurent("x") } else { VarDecl::poly("x") },
                VarDecl::poly("y"),
            ];
            let drw = Drw::new(RingSpec::new(PrimePower::new(p, 1).unwrap(), vars).unwrap());
            for k in drw.weights(2, 3) {
                for q in 0..=2 {
                    let r = check_weight(&drw, &k, q);
                    assert!(r.ok(), "p={p} k={k:?} q={q}: {r:?}");
                }
            }
        }
    }
}
