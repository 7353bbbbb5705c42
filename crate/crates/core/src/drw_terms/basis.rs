//! Partitions, basic Witt differential shapes and their expansion in the
//! dlog basis.

use std::collections::BTreeMap;

use super::weight::Weight;

/// Ordered intervals (I₀, I₁, …, I_ℓ) of the valuation-ordered support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    pub i0: Vec<usize>,
    pub intervals: Vec<Vec<usize>>,
}

impl Partition {
    pub fn trivial(support: Vec<usize>) -> Self {
        Partition { i0: support, intervals: vec![] }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Flattened variables in order.
    pub fn flat(&self) -> Vec<usize> {
        let mut v = self.i0.clone();
        for i in &self.intervals {
            v.extend(i);
        }
        v
    }

    /// All partitions of an ordered support with ℓ differential intervals.
    pub fn enumerate(order: &[usize], ell: usize) -> Vec<Partition> {
        let s = order.len();
        let mut out = Vec::new();
        if ell > s {
            return out;
        }
        // choose ℓ start positions among 0..s
        fn rec(start: usize, s: usize, left: usize, acc: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
            if left == 0 {
                all.push(acc.clone());
                return;
            }
            for i in start..=s - left {
                acc.push(i);
                rec(i + 1, s, left - 1, acc, all);
                acc.pop();
            }
        }
        let mut starts = Vec::new();
        rec(0, s, ell, &mut Vec::new(), &mut starts);
        for st in starts {
            let first = st.first().copied().unwrap_or(s);
            let i0 = order[..first].to_vec();
            let mut intervals = Vec::new();
            for (a, &b) in st.iter().enumerate() {
                let e = st.get(a + 1).copied().unwrap_or(s);
                intervals.push(order[b..e].to_vec());
            }
            out.push(Partition { i0, intervals });
        }
        out
    }
}

/// Coefficient convention of a basic differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// I₀ ≠ ∅: e = ξ·γ with ξ ∈ V^{u(k)}W(k).
    One,
    /// I₀ = ∅, k fractional: e = (ξ/p^{u(k)})·γ with ξ ∈ V^{u(k)}W(k).
    Two,
    /// I₀ = ∅, k integral: e = ξ·γ.
    Three,
}

pub fn shape(k: &Weight, part: &Partition) -> Shape {
    if !part.i0.is_empty() {
        Shape::One
    } else if k.is_integral() {
        Shape::Three
    } else {
        Shape::Two
    }
}

/// Type tags; P* for polynomial rings, G* for rings with Laurent variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    P1,
    P2,
    P3,
    G1,
    G2a,
    G2b,
    G2c,
    G3,
    G4,
}

impl TypeTag {
    pub fn name(&self) -> &'static str {
        match self {
            TypeTag::P1 => "P1",
            TypeTag::P2 => "P2",
            TypeTag::P3 => "P3",
            TypeTag::G1 => "G1",
            TypeTag::G2a => "G2a",
            TypeTag::G2b => "G2b",
            TypeTag::G2c => "G2c",
            TypeTag::G3 => "G3",
            TypeTag::G4 => "G4",
        }
    }

    /// Tags reachable from this one under F.
    pub fn frobenius_targets(&self) -> &'static [TypeTag] {
        use TypeTag::*;
        match self {
            P1 => &[P1],
            P2 => &[P2, P3],
            P3 => &[P3],
            G1 => &[G1],
            G2a => &[G2a],
            G2b => &[G2b],
            G2c => &[G2c],
            G3 => &[G3, G2b, G2c],
            G4 => &[G4, G2c],
        }
    }
}

pub fn type_tag(laurent_ring: bool, k: &Weight, part: &Partition, z: u32) -> TypeTag {
    let sh = shape(k, part);
    if !laurent_ring {
        return match sh {
            Shape::One => TypeTag::P1,
            Shape::Two => TypeTag::P2,
            Shape::Three => TypeTag::P3,
        };
    }
    let neg = k.negatives();
    if neg.is_empty() {
        return if z == 0 { TypeTag::G1 } else { TypeTag::G2a };
    }
    if k.is_integral() {
        if neg.iter().all(|j| part.i0.contains(j)) {
            TypeTag::G2b
        } else {
            TypeTag::G2c
        }
    } else if !part.i0.is_empty() {
        TypeTag::G3
    } else {
        TypeTag::G4
    }
}

/// Integer form Σ c_S dlog_S keyed by bitmask S.
pub type IntForm = BTreeMap<u32, i64>;

/// Sign of dlog_j ∧ dlog_S relative to dlog_{S ∪ j}; None if j ∈ S.
pub fn left_wedge_sign(j: usize, s: u32) -> Option<i64> {
    if s & (1 << j) != 0 {
        return None;
    }
    let below = (s & ((1u32 << j) - 1)).count_ones();
    Some(if below % 2 == 0 { 1 } else { -1 })
}

/// Sign of dlog_A ∧ dlog_B relative to dlog_{A ∪ B}; None if they meet.
pub fn wedge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        bb &= bb - 1;
        // elements of a above j
        inv += (a >> (j + 1)).count_ones();
    }
    Some(if inv % 2 == 0 { 1 } else { -1 })
}

/// prim(κ_I) = κ_I / p^{min ord} as integer coefficients per variable.
pub fn prim_kappa(p: u64, k: &Weight, interval: &[usize]) -> Vec<(usize, i64)> {
    let v = k.min_ord(p, interval);
    interval
        .iter()
        .map(|&j| (j, k.0[j].scaled(p, -v).expect("integral after scaling")))
        .collect()
}

/// γ(k,𝒫,Z') without the monomial: prim(κ_{I₁}) ∧ … ∧ prim(κ_{I_ℓ}) ∧ dlog_{Z'}.
pub fn gamma(p: u64, k: &Weight, part: &Partition, z: u32) -> IntForm {
    let mut form = IntForm::new();
    form.insert(z, 1);
    for iv in part.intervals.iter().rev() {
        let prim = prim_kappa(p, k, iv);
        let mut next = IntForm::new();
        for (&s, &c) in &form {
            for &(j, a) in &prim {
                if let Some(sg) = left_wedge_sign(j, s) {
                    *next.entry(s | (1 << j)).or_insert(0) += sg * a * c;
                }
            }
        }
        next.retain(|_, c| *c != 0);
        form = next;
    }
    form
}

pub fn mask_of(vars: &[usize]) -> u32 {
    vars.iter().fold(0, |m, &j| m | (1 << j))
}

pub fn mask_vars(m: u32) -> Vec<usize> {
    (0..32).filter(|j| m & (1 << j) != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drw_terms::weight::Exp;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
    }

    #[test]
    fn partition_counts_are_binomial() {
        let order = vec![2, 0, 1, 3];
        for ell in 0..=4 {
            assert_eq!(Partition::enumerate(&order, ell).len(), binom(4, ell));
        }
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
        assert_eq!(wedge_sign(0b101, 0b010), Some(-1));
        assert_eq!(wedge_sign(0b1, 0b1), None);
    }

    #[test]
    fn gamma_of_fractional_interval() {
        // k = (1/2, 1), p = 2, order (0, 1); one interval {0,1}
        let k = Weight(vec![Exp { num: 1, den: 1 }, Exp::int(1)]);
        let part = Partition { i0: vec![], intervals: vec![vec![0, 1]] };
        let g = gamma(2, &k, &part, 0);
        assert_eq!(g.get(&0b01), Some(&1));
        assert_eq!(g.get(&0b10), Some(&2));
    }
}
