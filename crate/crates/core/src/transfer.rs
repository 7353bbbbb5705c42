//! Norms N_{B/A} = Σ_{g∈G} g for two Galois étale extensions of a
//! (Laurent) polynomial algebra A over 𝔽_q:
//! B = A[y]/(y² − u) with u a unit monomial and p odd, and the constant
//! field extension B = A ⊗ 𝔽_{p^m} over A with coefficients in 𝔽_p.

use crate::drw_rewrite::{DRWExpr, Engine};
use crate::drw_terms::{DRWElement, Drw, RingSpec, TermKey, Weight};
use crate::error::{Error, Result};
use crate::ff::PrimePower;
use crate::poly::{LPoly, LaurentRing, VarDecl};
use crate::witt::ZqElem;

fn sum(parts: Vec<DRWExpr>) -> DRWExpr {
    let parts: Vec<DRWExpr> = parts.into_iter().filter(|e| !e.is_zero_sum()).collect();
    if parts.len() == 1 {
        parts.into_iter().next().expect("one part")
    } else {
        DRWExpr::Add(parts)
    }
}

fn mul(a: DRWExpr, b: DRWExpr) -> DRWExpr {
    if a.is_zero_sum() || b.is_zero_sum() {
        DRWExpr::zero()
    } else {
        DRWExpr::mul(a, b)
    }
}

fn unary(x: DRWExpr, op: fn(DRWExpr) -> DRWExpr) -> DRWExpr {
    if x.is_zero_sum() {
        x
    } else {
        op(x)
    }
}

/// Canonical form of a homogeneous expression, zero sums included.
fn normalize(engine: &Engine, e: &DRWExpr, n: u32, degree: usize) -> Result<DRWElement> {
    if e.is_zero_sum() {
        return Ok(engine.drw.zero(n, degree));
    }
    engine.normalize(e, n)
}

/// Expression for a canonical element.
pub fn expr_of_element(engine: &Engine, w: &DRWElement) -> Result<DRWExpr> {
    let parts = w.terms.iter().map(|(k, c)| engine.expr_of_basic(k, c)).collect::<Result<Vec<_>>>()?;
    Ok(sum(parts))
}

/// ω₀ + ω₁·[y] in W_nΩ_B, ω_i over A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElement {
    pub c0: DRWElement,
    pub c1: DRWElement,
}

/// B = A[y]/(y² − u).
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    pub base: Engine,
    /// Coordinate ring of B: the variables of A followed by y.
    pub b_ring: LaurentRing,
    pub u: LPoly,
}

impl QuadraticExtension {
    pub fn new(base: Engine, u: LPoly) -> Result<Self> {
        if base.drw.p() == 2 {
            return Err(Error::Domain("y^2 - u is not etale in characteristic 2".into()));
        }
        // f′ = 2y is a unit exactly when y² = u is
        if base.poly.unit_monomial(&u).is_none() {
            return Err(Error::Domain(format!("{} is not a unit monomial of A", base.poly.format(&u))));
        }
        let mut vars = base.poly.vars.clone();
        vars.push(VarDecl::poly("y"));
        let b_ring = LaurentRing::new(base.poly.field.clone(), vars);
        Ok(QuadraticExtension { base, b_ring, u })
    }

    pub fn degree(&self) -> usize {
        2
    }

    fn zq(&self) -> &crate::witt::Zq {
        self.base.drw.zq()
    }

    fn half(&self, j: i64) -> DRWExpr {
        DRWExpr::Scalar(self.zq().from_ratio(j, 2).expect("p odd"))
    }

    fn u_pow(&self, e: i64) -> Result<DRWExpr> {
        let (c, ex) = self.base.poly.unit_monomial(&self.u).expect("checked unit");
        let f = &self.base.poly.field;
        let c = f.pow_i(&c, e);
        Ok(DRWExpr::Teich(self.base.poly.monomial(c, ex.iter().map(|k| k * e).collect())?))
    }

    /// Splits a monomial c·X^e·y^j of B.
    fn split_monomial(&self, g: &LPoly) -> Result<(LPoly, i64)> {
        let (e, c) = g
            .as_monomial()
            .ok_or_else(|| Error::Unimplemented("Teichmuller lift of a non-monomial involving y".into()))?;
        let d = self.base.poly.nvars();
        let j = e[d];
        Ok((self.base.poly.monomial(*c, e[..d].to_vec())?, j))
    }

    fn is_base(&self, g: &LPoly) -> bool {
        let d = self.base.poly.nvars();
        g.terms.keys().all(|e| e[d] == 0)
    }

    fn drop_y(&self, g: &LPoly) -> LPoly {
        let mut out = g.clone();
        out.terms = g.terms.iter().map(|(e, c)| (e[..e.len() - 1].to_vec(), *c)).collect();
        out
    }

    /// Rewrites an expression over B as E₀ + E₁·[y] with E_i over A,
    /// using [y]² = [u], dlog[y] = ½dlog[u], F[y] = [u]^{(p−1)/2}[y] and
    /// V(ω[y]) = V(ω[u]^{−(p−1)/2})[y].
    pub fn lower(&self, e: &DRWExpr) -> Result<(DRWExpr, DRWExpr)> {
        let h = (self.base.drw.p() as i64 - 1) / 2;
        Ok(match e {
            DRWExpr::Scalar(c) => (DRWExpr::Scalar(*c), DRWExpr::zero()),
            DRWExpr::Teich(g) if self.is_base(g) => (DRWExpr::Teich(self.drop_y(g)), DRWExpr::zero()),
            DRWExpr::Teich(g) => {
                let (m, j) = self.split_monomial(g)?;
                let t = mul(DRWExpr::Teich(m), self.u_pow(j.div_euclid(2))?);
                if j.rem_euclid(2) == 0 {
                    (t, DRWExpr::zero())
                } else {
                    (DRWExpr::zero(), t)
                }
            }
            DRWExpr::Dlog(g) => {
                let (m, j) = self.split_monomial(g)?;
                let mut parts = vec![DRWExpr::Dlog(m)];
                if j != 0 {
                    parts.push(mul(self.half(j), DRWExpr::Dlog(self.u.clone())));
                }
                (sum(parts), DRWExpr::zero())
            }
            DRWExpr::F(x) => {
                let (a, b) = self.lower(x)?;
                (unary(a, DRWExpr::f), mul(unary(b, DRWExpr::f), self.u_pow(h)?))
            }
            DRWExpr::V(x) => {
                let (a, b) = self.lower(x)?;
                (unary(a, DRWExpr::v), unary(mul(b, self.u_pow(-h)?), DRWExpr::v))
            }
            DRWExpr::D(x) => {
                let (a, b) = self.lower(x)?;
                let db = sum(vec![
                    unary(b.clone(), DRWExpr::d),
                    mul(b, mul(self.half(1), DRWExpr::Dlog(self.u.clone()))),
                ]);
                (unary(a, DRWExpr::d), db)
            }
            DRWExpr::Add(xs) => {
                let (mut a, mut b) = (Vec::new(), Vec::new());
                for x in xs {
                    let (p, q) = self.lower(x)?;
                    a.push(p);
                    b.push(q);
                }
                (sum(a), sum(b))
            }
            DRWExpr::Mul(x, y) => {
                let (a0, a1) = self.lower(x)?;
                let (b0, b1) = self.lower(y)?;
                let c0 = sum(vec![mul(a0.clone(), b0.clone()), mul(mul(a1.clone(), b1.clone()), self.u_pow(1)?)]);
                let c1 = sum(vec![mul(a0, b1), mul(a1, b0)]);
                (c0, c1)
            }
        })
    }

    /// Evaluates an expression over B at level n.
    pub fn eval(&self, e: &DRWExpr, n: u32) -> Result<QuadElement> {
        let degree = e.degree().ok_or_else(|| Error::Domain("sum of mixed degrees".into()))?;
        let (a, b) = self.lower(e)?;
        Ok(QuadElement { c0: normalize(&self.base, &a, n, degree)?, c1: normalize(&self.base, &b, n, degree)? })
    }

    /// The nontrivial automorphism y ↦ −y on expressions.
    pub fn conjugate_expr(&self, e: &DRWExpr) -> DRWExpr {
        let f = self.b_ring.field.clone();
        let d = self.base.poly.nvars();
        map_leaves(e, &|g: &LPoly| {
            let mut out = g.clone();
            out.terms = g
                .terms
                .iter()
                .map(|(ex, c)| (ex.clone(), if ex[d] % 2 == 0 { *c } else { f.neg(c) }))
                .collect();
            out
        }, &|c| c)
    }

    /// g(ω) for g ∈ G = {id, σ}; σ([y]) = [−1][y] = −[y].
    pub fn act(&self, g: usize, w: &QuadElement) -> QuadElement {
        if g % 2 == 0 {
            return w.clone();
        }
        QuadElement { c0: w.c0.clone(), c1: self.base.drw.neg(&w.c1) }
    }

    pub fn include(&self, w: &DRWElement) -> QuadElement {
        QuadElement { c0: w.clone(), c1: self.base.drw.zero(w.level, w.degree) }
    }

    pub fn add(&self, x: &QuadElement, y: &QuadElement) -> Result<QuadElement> {
        let drw = &self.base.drw;
        Ok(QuadElement { c0: drw.add(&x.c0, &y.c0)?, c1: drw.add(&x.c1, &y.c1)? })
    }

    /// N_{B/A}(ω) = Σ_g g(ω).
    pub fn norm(&self, w: &QuadElement) -> Result<DRWElement> {
        let mut acc = self.act(0, w);
        for g in 1..self.degree() {
            acc = self.add(&acc, &self.act(g, w))?;
        }
        if !acc.c1.is_zero() {
            return Err(Error::InvalidForm("Galois sum is not A-side".into()));
        }
        Ok(acc.c0)
    }

    /// (ω₀, ω₁) with ω = ω₀ + ω₁[y].
    pub fn decompose(&self, w: &QuadElement) -> Vec<DRWElement> {
        vec![w.c0.clone(), w.c1.clone()]
    }

    /// Σ_j ω_j·[y]^j, evaluated through the expression model of B.
    pub fn recompose(&self, parts: &[DRWElement]) -> Result<QuadElement> {
        let (n, degree) = match parts.first() {
            Some(w) => (w.level, w.degree),
            None => return Err(Error::Domain("empty decomposition".into())),
        };
        let d = self.base.poly.nvars();
        let mut terms = Vec::new();
        for (j, w) in parts.iter().enumerate() {
            let mut e = vec![0; d + 1];
            e[d] = j as i64;
            let yj = DRWExpr::Teich(self.b_ring.monomial(self.b_ring.field.one(), e)?);
            terms.push(mul(self.lift_expr(&expr_of_element(&self.base, w)?), yj));
        }
        let e = sum(terms);
        if e.is_zero_sum() {
            let z = self.base.drw.zero(n, degree);
            return Ok(QuadElement { c0: z.clone(), c1: z });
        }
        self.eval(&e, n)
    }

    /// An A-expression viewed over B (append a zero y-exponent).
    pub fn lift_expr(&self, e: &DRWExpr) -> DRWExpr {
        map_leaves(e, &|g: &LPoly| {
            let mut out = g.clone();
            out.terms = g.terms.iter().map(|(ex, c)| {
                let mut ex = ex.clone();
                ex.push(0);
                (ex, *c)
            }).collect();
            out
        }, &|c| c)
    }
}

/// Substitutes polynomial leaves and scalars.
pub fn map_leaves(e: &DRWExpr, f: &dyn Fn(&LPoly) -> LPoly, s: &dyn Fn(ZqElem) -> ZqElem) -> DRWExpr {
    match e {
        DRWExpr::Scalar(c) => DRWExpr::Scalar(s(*c)),
        DRWExpr::Teich(g) => DRWExpr::Teich(f(g)),
        DRWExpr::Dlog(g) => DRWExpr::Dlog(f(g)),
        DRWExpr::F(x) => DRWExpr::f(map_leaves(x, f, s)),
        DRWExpr::V(x) => DRWExpr::v(map_leaves(x, f, s)),
        DRWExpr::D(x) => DRWExpr::d(map_leaves(x, f, s)),
        DRWExpr::Add(xs) => DRWExpr::Add(xs.iter().map(|x| map_leaves(x, f, s)).collect()),
        DRWExpr::Mul(a, b) => DRWExpr::mul(map_leaves(a, f, s), map_leaves(b, f, s)),
    }
}

/// B = A ⊗ 𝔽_{p^m} for A over 𝔽_p; G is generated by the Frobenius σ.
#[derive(Clone, Debug)]
pub struct ConstantFieldExtension {
    pub base: Engine,
    pub ext: Engine,
    pub m: u32,
}

impl ConstantFieldExtension {
    pub fn new(base: Engine, m: u32) -> Result<Self> {
        let pp = base.drw.ring.pp;
        if pp.a != 1 {
            return Err(Error::Unimplemented("constant field extensions over a non-prime base field".into()));
        }
        let ext_pp = PrimePower::with_limit(pp.p, m, u64::MAX)?;
        let ext = Engine::new(Drw::new(RingSpec::new(ext_pp, base.drw.ring.vars.clone())?));
        Ok(ConstantFieldExtension { base, ext, m })
    }

    pub fn degree(&self) -> usize {
        self.m as usize
    }

    fn map_coeffs(&self, from: &Drw, to: &Drw, w: &DRWElement, f: &dyn Fn(&ZqElem) -> Result<ZqElem>) -> Result<DRWElement> {
        if w.ring != from.ring {
            return Err(Error::RingMismatch);
        }
        let terms = w.terms.iter().map(|(k, c)| Ok((k.clone(), f(c)?))).collect::<Result<Vec<_>>>()?;
        to.from_terms(w.level, w.degree, terms)
    }

    pub fn include(&self, w: &DRWElement) -> Result<DRWElement> {
        let (za, zb) = (self.base.drw.zq(), self.ext.drw.zq());
        self.map_coeffs(&self.base.drw, &self.ext.drw, w, &|c| {
            Ok(zb.from_int(za.as_integer(c).expect("prime field coefficient") as i64))
        })
    }

    /// σ^g on coefficients.
    pub fn act(&self, g: usize, w: &DRWElement) -> Result<DRWElement> {
        let zb = self.ext.drw.zq();
        self.map_coeffs(&self.ext.drw, &self.ext.drw, w, &|c| Ok(zb.sigma_pow(c, g as i64)))
    }

    /// σ^g on expressions: Teichmüller coefficients and scalars.
    pub fn act_expr(&self, g: usize, e: &DRWExpr) -> DRWExpr {
        let f = self.ext.poly.field.clone();
        let zb = self.ext.drw.zq().clone();
        map_leaves(
            e,
            &|h: &LPoly| {
                let mut out = h.clone();
                out.terms = h.terms.iter().map(|(ex, c)| (ex.clone(), (0..g).fold(*c, |x, _| f.frobenius(&x)))).collect();
                out
            },
            &|c| zb.sigma_pow(&c, g as i64),
        )
    }

    pub fn norm(&self, w: &DRWElement) -> Result<DRWElement> {
        let drw = &self.ext.drw;
        let mut acc = drw.zero(w.level, w.degree);
        for g in 0..self.degree() {
            acc = drw.add(&acc, &self.act(g, w)?)?;
        }
        let za = self.base.drw.zq();
        self.map_coeffs(drw, &self.base.drw, &acc, &|c| {
            let zb = self.ext.drw.zq();
            zb.as_integer(c)
                .map(|v| za.from_int(v as i64))
                .ok_or_else(|| Error::InvalidForm("Galois sum has a coefficient outside W(F_p)".into()))
        })
    }

    /// Coordinates of c ∈ W(𝔽_{p^m}) in the basis [θ]^j over W(𝔽_p).
    fn coordinates(&self, c: &ZqElem) -> Vec<i64> {
        let zb = self.ext.drw.zq();
        let m = self.degree();
        let t = zb.teichmuller(&self.ext.poly.field.theta());
        let modulus = (zb.p() as i128).pow(zb.precision());
        // columns: θ̃-coordinates of [θ]^j
        let mut a: Vec<Vec<i128>> = vec![vec![0; m + 1]; m];
        let mut pw = zb.one();
        for j in 0..m {
            for (i, row) in a.iter_mut().enumerate() {
                row[j] = pw.0[i] as i128;
            }
            pw = zb.mul(&pw, &t);
        }
        for (i, row) in a.iter_mut().enumerate() {
            row[m] = c.0[i] as i128;
        }
        solve_mod(&mut a, modulus, zb.p() as i128)
    }

    /// (ω_j) with ω = Σ_j ω_j [θ]^j.
    pub fn decompose(&self, w: &DRWElement) -> Result<Vec<DRWElement>> {
        let za = self.base.drw.zq();
        let mut parts: Vec<Vec<(TermKey, ZqElem)>> = vec![Vec::new(); self.degree()];
        for (k, c) in &w.terms {
            for (j, x) in self.coordinates(c).into_iter().enumerate() {
                parts[j].push((k.clone(), za.from_int(x as i64)));
            }
        }
        parts.into_iter().map(|t| self.base.drw.from_terms(w.level, w.degree, t)).collect()
    }

    pub fn recompose(&self, parts: &[DRWElement]) -> Result<DRWElement> {
        let zb = self.ext.drw.zq();
        let t = zb.teichmuller(&self.ext.poly.field.theta());
        let first = parts.first().ok_or_else(|| Error::Domain("empty decomposition".into()))?;
        let mut acc = self.ext.drw.zero(first.level, first.degree);
        let mut pw = zb.one();
        for w in parts {
            let inc = self.include(w)?;
            let scaled = self.map_coeffs(&self.ext.drw, &self.ext.drw, &inc, &|c| Ok(zb.mul(c, &pw)))?;
            acc = self.ext.drw.add(&acc, &scaled)?;
            pw = zb.mul(&pw, &t);
        }
        Ok(acc)
    }
}

fn inv_mod(a: i128, m: i128) -> i128 {
    let (mut r0, mut r1, mut s0, mut s1) = (a.rem_euclid(m), m, 1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m)
}

/// Solves a square system mod p^M whose matrix is invertible mod p.
fn solve_mod(a: &mut [Vec<i128>], modulus: i128, p: i128) -> Vec<i64> {
    let m = a.len();
    for col in 0..m {
        let piv = (col..m).find(|&r| a[r][col].rem_euclid(p) != 0).expect("unimodular basis change");
        a.swap(col, piv);
        let inv = inv_mod(a[col][col], modulus);
        for x in a[col].iter_mut() {
            *x = (*x * inv).rem_euclid(modulus);
        }
        for r in 0..m {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x = (*x - f * y).rem_euclid(modulus);
                }
            }
        }
    }
    a.iter().map(|row| row[m] as i64).collect()
}

/// Push-forward along A → A[z₁,…] (new variables appended, weight 0).
pub fn extend_variables(from: &Drw, to: &Drw, w: &DRWElement) -> Result<DRWElement> {
    if w.ring != from.ring || to.ring.nvars() < from.ring.nvars() || to.ring.pp != from.ring.pp {
        return Err(Error::RingMismatch);
    }
    let extra = to.ring.nvars() - from.ring.nvars();
    let terms = w
        .terms
        .iter()
        .map(|(k, c)| {
            let mut ex = k.k.0.clone();
            ex.extend(Weight::zero(extra).0);
            (TermKey { k: Weight(ex), part: k.part.clone(), z: k.z }, *c)
        })
        .collect();
    to.from_terms(w.level, w.degree, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(p: u32) -> QuadraticExtension {
        let pp = PrimePower::new(p, 1).unwrap();
        let base = Engine::new(Drw::new(RingSpec::new(pp, vec![VarDecl::laurent("x")]).unwrap()));
        let u = base.poly.variable(0);
        QuadraticExtension::new(base, u).unwrap()
    }

    #[test]
    fn norm_of_y_vanishes_and_y_squared_is_u() {
        let q = quad(3);
        let y = DRWExpr::Teich(q.b_ring.variable(1));
        let wy = q.eval(&y, 2).unwrap();
        assert!(q.norm(&wy).unwrap().is_zero());
        let y2 = q.eval(&DRWExpr::mul(y.clone(), y), 2).unwrap();
        let u = q.base.normalize(&DRWExpr::Teich(q.u.clone()), 2).unwrap();
        assert_eq!(q.decompose(&y2), vec![u.clone(), q.base.drw.zero(2, 0)]);
        assert_eq!(q.norm(&y2).unwrap(), q.base.drw.mul_int(&u, 2));
    }

    #[test]
    fn conjugation_matches_expression_substitution() {
        let q = quad(5);
        let y = DRWExpr::Teich(q.b_ring.variable(1));
        let x = DRWExpr::Teich(q.b_ring.variable(0));
        let e = DRWExpr::mul(DRWExpr::d(y.clone()), DRWExpr::V(Box::new(DRWExpr::mul(x, y))));
        let w = q.eval(&e, 3).unwrap();
        assert_eq!(q.act(1, &w), q.eval(&q.conjugate_expr(&e), 3).unwrap());
        assert_eq!(q.act(1, &q.act(1, &w)), w);
    }

    #[test]
    fn constant_field_norm_is_trace_on_scalars() {
        let pp = PrimePower::new(2, 1).unwrap();
        let base = Engine::new(Drw::new(RingSpec::new(pp, vec![VarDecl::poly("x")]).unwrap()));
        let c = ConstantFieldExtension::new(base, 2).unwrap();
        let x = c.base.normalize(&DRWExpr::Teich(c.base.poly.variable(0)), 2).unwrap();
        let bx = c.include(&x).unwrap();
        assert_eq!(c.norm(&bx).unwrap(), c.base.drw.mul_int(&x, 2));
        let parts = c.decompose(&bx).unwrap();
        assert_eq!(parts[0], x);
        assert!(parts[1].is_zero());
    }
}
