//! Two-term Gersten complexes C⁰ = K^M_q(𝔽_q(t)) → C¹ = ⊕_x K^M_{q−1}(κ(x))
//! for 𝔸¹, ℙ¹ and 𝔾_m, and their cohomology A^p(X; K^M, q).

use std::collections::BTreeMap;
use std::fmt;

use super::rational::{FunctionField, Place};
use super::symbol::{FunctionSymbol, KValue, MilnorSymbol};
use crate::error::{Error, Result};
use crate::ff::FqElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    A1,
    P1,
    Gm,
}

impl Curve {
    pub fn contains(&self, v: &Place) -> bool {
        match (self, v) {
            (Curve::P1, _) => true,
            (_, Place::Infinity) => false,
            (Curve::A1, _) => true,
            (Curve::Gm, Place::Finite(pi)) => !(pi.degree() == 1 && pi.coeff(0).is_zero()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Curve::A1 => "A1",
            Curve::P1 => "P1",
            Curve::Gm => "Gm",
        }
    }

    pub fn parse(s: &str) -> Option<Curve> {
        match s {
            "A1" | "a1" => Some(Curve::A1),
            "P1" | "p1" => Some(Curve::P1),
            "Gm" | "gm" | "GM" => Some(Curve::Gm),
            _ => None,
        }
    }
}

/// Element of C¹: a finitely supported K^M_{degree}(κ(x)) family.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: BTreeMap<Place, KValue>,
}

impl Cochain {
    pub fn is_zero(&self) -> bool {
        self.values.values().all(KValue::is_trivial)
    }
}

impl FunctionField {
    /// The Gersten differential: tame symbols at the closed points of X.
    pub fn gersten_differential(&self, x: Curve, s: &FunctionSymbol) -> Result<Cochain> {
        let mut out = Cochain { degree: s.degree.saturating_sub(1), values: BTreeMap::new() };
        if s.degree == 0 {
            return Ok(out);
        }
        for v in self.symbol_support(s)? {
            if !x.contains(&v) {
                continue;
            }
            let r = self.residue(s, &v)?;
            if !r.is_trivial() {
                out.values.insert(v, r);
            }
        }
        Ok(out)
    }
}

/// Abstract group descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDesc {
    Zero,
    Z,
    /// 𝔽_q^*, cyclic of order q − 1.
    Units(u64),
    Product(Vec<GroupDesc>),
}

impl GroupDesc {
    /// Drops trivial factors and flattens.
    pub fn simplify(self) -> GroupDesc {
        match self {
            GroupDesc::Product(parts) => {
                let mut flat = Vec::new();
                for g in parts.into_iter().map(GroupDesc::simplify) {
                    match g {
                        GroupDesc::Zero => {}
                        GroupDesc::Product(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                match flat.len() {
                    0 => GroupDesc::Zero,
                    1 => flat.pop().expect("one factor"),
                    _ => GroupDesc::Product(flat),
                }
            }
            g => g,
        }
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDesc::Zero => write!(f, "0"),
            GroupDesc::Z => write!(f, "Z"),
            GroupDesc::Units(q) => write!(f, "F_{q}^*"),
            GroupDesc::Product(parts) => {
                let s: Vec<String> = parts.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", s.join(" x "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassValue {
    Zero,
    Int(i64),
    Unit(FqElem),
    /// c·t^n on 𝔾_m.
    UnitInt(FqElem, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    pub p: u32,
    pub q: u32,
    pub value: ClassValue,
}

/// A^p(X; K^M, q) for one entry of the implemented table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowGroup {
    pub curve: Curve,
    pub p: u32,
    pub q: u32,
    pub desc: GroupDesc,
}

/// A class representative: a cycle in C⁰ or a cochain in C¹.
#[derive(Clone, Debug)]
pub enum Representative {
    Symbol(FunctionSymbol),
    Cochain(Cochain),
}

impl ChowGroup {
    /// Structure of A^p(X; K^M, q). Kernels are read off from divisors and
    /// residue vectors (K₂(𝔽_q(t)) ≅ ⊕_{finite v} κ(v)^*), cokernels from
    /// the degree map and the norm product (Weil reciprocity) on ℙ¹.
    pub fn new(k: &FunctionField, curve: Curve, p: u32, q: u32) -> Result<ChowGroup> {
        use Curve::*;
        use GroupDesc::*;
        let units = Units(k.field().q());
        let desc = match (p, q, curve) {
            (0, 0, _) => Z,
            (0, 1, A1 | P1) => units,
            (0, 1, Gm) => Product(vec![units, Z]),
            (0, 2, A1 | P1) => Zero,
            (0, 2, Gm) => units,
            (1, 0, _) => Zero,
            (1, 1, P1) => Z,
            (1, 2, P1) => units,
            (1, 1 | 2, A1 | Gm) => Zero,
            _ => return Err(Error::Unimplemented(format!("A^{p}({}; K^M, {q})", curve.name()))),
        };
        Ok(ChowGroup { curve, p, q, desc })
    }

    fn class(&self, value: ClassValue) -> ChowClass {
        ChowClass { p: self.p, q: self.q, value }
    }

    /// Normal form of the class of a cycle s ∈ C⁰.
    pub fn class_of_symbol(&self, k: &FunctionField, s: &FunctionSymbol) -> Result<ChowClass> {
        if self.p != 0 {
            return Err(Error::Domain("symbols represent classes only in A^0".into()));
        }
        if s.degree != self.q as usize {
            return Err(Error::DegreeMismatch(s.degree, self.q as usize));
        }
        if !k.gersten_differential(self.curve, s)?.is_zero() {
            return Err(Error::Domain("not a cycle: nonzero residue on the curve".into()));
        }
        let value = match (self.q, self.curve) {
            (0, _) => ClassValue::Int(s.terms.iter().map(|(c, _)| c).sum()),
            (1, Curve::A1 | Curve::P1) => {
                let f = k.collapse_k1(s)?;
                ClassValue::Unit(k.as_constant(&f).expect("empty divisor on the curve"))
            }
            (1, _) => {
                let f = k.collapse_k1(s)?;
                let (n, u) = k.split(&f, &k.place_t())?;
                ClassValue::UnitInt(u.coeff(0), n)
            }
            // the residue vector vanishes at finite places: a constant symbol, and K₂(𝔽_q) = 0
            (2, Curve::A1 | Curve::P1) => ClassValue::Zero,
            _ => match k.residue(s, &k.place_t())? {
                KValue::Unit(u) => ClassValue::Unit(u.coeff(0)),
                _ => unreachable!("degree-2 residue lies in K1"),
            },
        };
        Ok(self.class(value))
    }

    /// Normal form of the class of z ∈ C¹.
    pub fn class_of_cochain(&self, k: &FunctionField, z: &Cochain) -> Result<ChowClass> {
        if self.p != 1 {
            return Err(Error::Domain("cochains represent classes only in A^1".into()));
        }
        if self.q == 0 || z.degree + 1 != self.q as usize {
            return Err(Error::DegreeMismatch(z.degree + 1, self.q as usize));
        }
        if let Some(v) = z.values.keys().find(|v| !self.curve.contains(v)) {
            return Err(Error::Domain(format!("place {} is not on {}", k.format_place(v), self.curve.name())));
        }
        if self.curve != Curve::P1 {
            return Ok(self.class(ClassValue::Zero));
        }
        let value = if self.q == 1 {
            let mut deg = 0;
            for (v, x) in &z.values {
                match x {
                    KValue::Int(n) => deg += v.degree() as i64 * n,
                    _ => return Err(Error::Domain("expected an integer multiplicity".into())),
                }
            }
            ClassValue::Int(deg)
        } else {
            let f = k.field();
            let mut acc = f.one();
            for (v, x) in &z.values {
                match x {
                    KValue::Unit(u) => acc = f.mul(&acc, &k.residue_field(v).norm(u)),
                    _ => return Err(Error::Domain("expected a residue-field unit".into())),
                }
            }
            ClassValue::Unit(acc)
        };
        Ok(self.class(value))
    }

    /// Representatives of generators, paired with their expected classes.
    pub fn representatives(&self, k: &FunctionField) -> Vec<(ClassValue, Representative)> {
        let f = k.field();
        let g = f.generator();
        let cg = k.constant(g);
        let at_t = |value: KValue| {
            let mut values = BTreeMap::new();
            values.insert(k.place_t(), value);
            Representative::Cochain(Cochain { degree: self.q as usize - 1, values })
        };
        let sym = |e: Vec<_>| Representative::Symbol(MilnorSymbol::single(e));
        match (self.p, self.q, self.curve) {
            (0, 0, _) => vec![(ClassValue::Int(1), sym(vec![]))],
            (0, 1, Curve::Gm) => vec![
                (ClassValue::UnitInt(g, 0), sym(vec![cg])),
                (ClassValue::UnitInt(f.one(), 1), sym(vec![k.t()])),
            ],
            (0, 1, _) => vec![(ClassValue::Unit(g), sym(vec![cg]))],
            (0, 2, Curve::Gm) => vec![(ClassValue::Unit(g), sym(vec![k.t(), cg]))],
            (1, 1, Curve::P1) => vec![(ClassValue::Int(1), at_t(KValue::Int(1)))],
            (1, 2, Curve::P1) => vec![(ClassValue::Unit(g), at_t(KValue::Unit(k.ring.constant(g))))],
            _ => vec![],
        }
    }

    /// Checks the normal-form map: generators hit their classes, and for
    /// A¹ the boundary of every sample symbol has zero class.
    pub fn verify(&self, k: &FunctionField, samples: &[FunctionSymbol]) -> Result<bool> {
        for (expected, rep) in self.representatives(k) {
            let got = match &rep {
                Representative::Symbol(s) => self.class_of_symbol(k, s)?,
                Representative::Cochain(z) => self.class_of_cochain(k, z)?,
            };
            if got.value != expected {
                return Ok(false);
            }
        }
        if self.p == 1 && self.q > 0 {
            let zero = match (self.q, self.curve) {
                (1, Curve::P1) => ClassValue::Int(0),
                (2, Curve::P1) => ClassValue::Unit(k.field().one()),
                _ => ClassValue::Zero,
            };
            for s in samples.iter().filter(|s| s.degree == self.q as usize) {
                let z = k.gersten_differential(self.curve, s)?;
                if self.class_of_cochain(k, &z)?.value != zero {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// One comparison line of a projective-bundle or homotopy check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbfLine {
    pub p: u32,
    pub q: u32,
    pub lhs: GroupDesc,
    pub rhs: GroupDesc,
    pub verified: bool,
}

impl PbfLine {
    pub fn ok(&self) -> bool {
        self.verified && self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbfReport {
    pub lines: Vec<PbfLine>,
}

impl PbfReport {
    pub fn ok(&self) -> bool {
        self.lines.iter().all(PbfLine::ok)
    }
}

impl FunctionField {
    /// K^M_m(𝔽_q); K₂ = 0 is established by certifying every symbol.
    pub fn point_k_group(&self, m: i64) -> Result<GroupDesc> {
        Ok(match m {
            0 => GroupDesc::Z,
            1 => GroupDesc::Units(self.field().q()),
            2 => {
                let kv = self.residue_field(&Place::Infinity);
                for a in kv.elements().filter(|a| !a.is_zero()) {
                    for b in kv.elements().filter(|b| !b.is_zero()) {
                        let c = kv.k2_certificate(&a, &b)?;
                        if !kv.verify_k2(&a, &b, &c) {
                            return Err(Error::Domain("K2 certificate failed".into()));
                        }
                    }
                }
                GroupDesc::Zero
            }
            _ if m < 0 => GroupDesc::Zero,
            _ => return Err(Error::Unimplemented(format!("K^M_{m} of a finite field"))),
        })
    }

    /// A^j(pt; K^M, m).
    fn point_chow(&self, j: i64, m: i64) -> Result<GroupDesc> {
        if j == 0 {
            self.point_k_group(m)
        } else {
            Ok(GroupDesc::Zero)
        }
    }

    /// Symbols used to exercise the normal-form maps.
    pub fn sample_symbols(&self) -> Vec<FunctionSymbol> {
        let r = &self.ring;
        let f = self.field();
        let mut lin: Vec<_> = f.elements().map(|c| self.from_poly(r.add(&r.x(), &r.constant(c)))).collect();
        lin.push(self.make(r.one(), r.from_ints(&[1, 1, 1])).expect("nonzero"));
        lin.push(self.make(r.from_ints(&[1, 0, 1]), r.x()).expect("nonzero"));
        lin.push(self.constant(f.generator()));
        let mut out = Vec::new();
        for a in &lin {
            out.push(MilnorSymbol::single(vec![a.clone()]));
            for b in &lin {
                out.push(MilnorSymbol::single(vec![a.clone(), b.clone()]));
            }
        }
        out
    }

    /// A^p(ℙ¹; K^M, q) against ⊕_{i=0,1} A^{p−i}(pt; K^M, q−i), p ≤ 1, q ≤ 2.
    pub fn pbf_check(&self) -> Result<PbfReport> {
        let samples = self.sample_symbols();
        let mut lines = Vec::new();
        for p in 0..=1u32 {
            for q in 0..=2u32 {
                let g = ChowGroup::new(self, Curve::P1, p, q)?;
                let rhs = GroupDesc::Product(vec![
                    self.point_chow(p as i64, q as i64)?,
                    self.point_chow(p as i64 - 1, q as i64 - 1)?,
                ])
                .simplify();
                lines.push(PbfLine { p, q, verified: g.verify(self, &samples)?, lhs: g.desc, rhs });
            }
        }
        Ok(PbfReport { lines })
    }

    /// A^p(𝔸¹; K^M, q) against A^p(pt; K^M, q).
    pub fn homotopy_check(&self) -> Result<PbfReport> {
        let samples = self.sample_symbols();
        let mut lines = Vec::new();
        for p in 0..=1u32 {
            for q in 0..=2u32 {
                let g = ChowGroup::new(self, Curve::A1, p, q)?;
                let rhs = self.point_chow(p as i64, q as i64)?;
                lines.push(PbfLine { p, q, verified: g.verify(self, &samples)?, lhs: g.desc, rhs });
            }
        }
        Ok(PbfReport { lines })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FiniteField;

    #[test]
    fn steinberg_symbol_has_no_residues_on_p1() {
        let k = FunctionField::new(FiniteField::of(5, 1));
        let s = MilnorSymbol::single(vec![k.t(), k.one_minus(&k.t())]);
        assert!(k.gersten_differential(Curve::P1, &s).unwrap().is_zero());
    }

    #[test]
    fn gm_excludes_zero_and_infinity() {
        let k = FunctionField::new(FiniteField::of(3, 1));
        let s = MilnorSymbol::single(vec![k.t()]);
        assert!(k.gersten_differential(Curve::Gm, &s).unwrap().is_zero());
        assert_eq!(k.gersten_differential(Curve::P1, &s).unwrap().values.len(), 2);
    }

    #[test]
    fn point_class_has_degree_one() {
        let k = FunctionField::new(FiniteField::of(2, 1));
        let g = ChowGroup::new(&k, Curve::P1, 1, 1).unwrap();
        let f = k.make(k.ring.from_ints(&[1, 1, 1]), k.ring.pow(&k.ring.x(), 2)).unwrap();
        let z = k.gersten_differential(Curve::P1, &MilnorSymbol::single(vec![f])).unwrap();
        assert_eq!(g.class_of_cochain(&k, &z).unwrap().value, ClassValue::Int(0));
    }

    #[test]
    fn pbf_and_homotopy_reports_match() {
        for (p, a) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let k = FunctionField::new(FiniteField::of(p, a));
            assert!(k.pbf_check().unwrap().ok());
            assert!(k.homotopy_check().unwrap().ok());
        }
    }

    #[test]
    fn unimplemented_entries_are_rejected() {
        let k = FunctionField::new(FiniteField::of(2, 1));
        assert!(matches!(ChowGroup::new(&k, Curve::P1, 2, 2), Err(Error::Unimplemented(_))));
    }
}
