//! Normalization of expressions to canonical sums of basic Witt
//! differentials.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::expr::DRWExpr;
use super::form::Form;
use crate::drw_terms::basis::{gamma, shape, Shape};
use crate::drw_terms::{DRWElement, Drw, TermKey, Weight};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{LPoly, LaurentRing};
use crate::witt::{WittRing, ZqElem};

/// Evaluation order used by `normalize_with`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Evaluate bottom-up; F consumes one level of its argument.
    Innermost,
    /// Rewrite first (F to the leaves, V out of products), then evaluate.
    Outermost,
}

#[derive(Clone, Debug)]
pub struct Engine {
    pub drw: Drw,
    pub poly: LaurentRing,
    witt: WittRing<LaurentRing>,
}

impl Engine {
    pub fn new(drw: Drw) -> Self {
        let poly = drw.ring.poly_ring();
        let witt = WittRing::new(poly.clone(), drw.p());
        Engine { drw, poly, witt }
    }

    fn prec(&self) -> u32 {
        self.drw.zq().precision()
    }

    fn mono_form(&self, e: &[i64], c: &crate::ff::FqElem) -> Form {
        let zq = self.drw.zq();
        Form::monomial(zq, zq.teichmuller(c), Weight::from_ints(e), 0)
    }

    /// [f] as an integral form modulo Fil^n.
    pub fn teich_form(&self, f: &LPoly, n: u32) -> Result<Form> {
        let zq = self.drw.zq();
        if n == 0 || f.is_zero() {
            return Ok(Form::zero(self.prec()));
        }
        self.poly.check_exponents(f.terms.keys().next().expect("nonzero"))?;
        for e in f.terms.keys() {
            self.poly.check_exponents(e)?;
        }
        let mut acc = Form::zero(self.prec());
        for (e, c) in &f.terms {
            acc = acc.add(zq, &self.mono_form(e, c));
        }
        if f.terms.len() > 1 && n > 1 {
            // Σ[m_i] = (y_0, y_1, …) with y_0 = f, hence [f] = Σ[m_i] − Σ_{i≥1} V^i[y_i]
            let mut sum = self.witt.zero(n as usize);
            for (e, c) in &f.terms {
                let m = self.poly.monomial(*c, e.clone())?;
                sum = self.witt.add(&sum, &self.witt.teichmuller(&m, n as usize))?;
            }
            for i in 1..n {
                let yi = &sum.coords[i as usize];
                if yi.is_zero() {
                    continue;
                }
                let mut t = self.teich_form(yi, n - i)?;
                for _ in 0..i {
                    t = t.verschiebung(zq);
                }
                acc = acc.add(zq, &t.scale(zq, &zq.from_int(-1)));
            }
        }
        acc.truncate_weights(n);
        Ok(acc)
    }

    fn dlog_form(&self, u: &LPoly) -> Result<Form> {
        let zq = self.drw.zq();
        let (_, e) = self
            .poly
            .unit_monomial(u)
            .ok_or_else(|| Error::Domain("dlog of a non-unit".into()))?;
        let d = self.poly.nvars();
        let mut f = Form::zero(self.prec());
        for (j, &a) in e.iter().enumerate() {
            if a != 0 {
                f = f.add(zq, &Form::monomial(zq, zq.from_int(a), Weight::zero(d), 1 << j));
            }
        }
        Ok(f)
    }

    /// Value of an expression in W_nΩ, as an integral form.
    pub fn eval(&self, e: &DRWExpr, n: u32) -> Result<Form> {
        let zq = self.drw.zq();
        if n == 0 {
            return Ok(Form::zero(self.prec()));
        }
        let mut f = match e {
            DRWExpr::Scalar(c) => Form::monomial(zq, *c, Weight::zero(self.poly.nvars()), 0),
            DRWExpr::Teich(g) => self.teich_form(g, n)?,
            DRWExpr::Dlog(u) => self.dlog_form(u)?,
            DRWExpr::F(x) => {
                if n + 1 > self.prec() {
                    return Err(Error::Precision { have: self.prec(), need: n + 1 });
                }
                self.eval(x, n + 1)?.frobenius(zq)
            }
            DRWExpr::V(x) => self.eval(x, n - 1)?.verschiebung(zq),
            DRWExpr::D(x) => self.eval(x, n)?.differential(zq)?,
            DRWExpr::Add(xs) => {
                let mut acc = Form::zero(self.prec());
                for x in xs {
                    acc = acc.add(zq, &self.eval(x, n)?);
                }
                acc
            }
            DRWExpr::Mul(a, b) => self.eval(a, n)?.mul(zq, &self.eval(b, n)?),
        };
        f.truncate_weights(n);
        Ok(f)
    }

    /// Integral form of a canonical element (exact lift of each term).
    pub fn embed(&self, el: &DRWElement) -> Result<Form> {
        let zq = self.drw.zq();
        let p = self.drw.p();
        let mut out = Form::zero(self.prec());
        for (key, c) in &el.terms {
            let coeff = match shape(&key.k, &key.part) {
                Shape::Two => zq.div_p_pow(c, key.k.u())?,
                _ => *c,
            };
            for (s, g) in gamma(p, &key.k, &key.part, key.z) {
                let t = Form::monomial(zq, zq.mul_int(&coeff, g), key.k.clone(), s);
                out = out.add(zq, &t);
            }
        }
        out.prec = self.prec();
        Ok(out)
    }

    /// Unique canonical decomposition of a homogeneous form at level n.
    pub fn decompose(&self, f: &Form, n: u32, degree: usize) -> Result<DRWElement> {
        let zq = self.drw.zq();
        let p = self.drw.p();
        let mut by_weight: BTreeMap<Weight, BTreeMap<u32, ZqElem>> = BTreeMap::new();
        for ((k, s), c) in &f.terms {
            if k.u() >= n {
                continue;
            }
            if s.count_ones() as usize != degree {
                return Err(Error::DegreeMismatch(s.count_ones() as usize, degree));
            }
            by_weight.entry(k.clone()).or_default().insert(*s, *c);
        }
        let mut terms = Vec::new();
        for (k, coeffs) in by_weight {
            let keys = self.drw.keys_at(&k, degree);
            let gammas: Vec<_> = keys.iter().map(|key| gamma(p, &k, &key.part, key.z)).collect();
            let mut masks: Vec<u32> = gammas.iter().flat_map(|g| g.keys().copied()).collect();
            masks.sort();
            masks.dedup();
            if masks.len() != keys.len() {
                return Err(Error::InvalidForm(format!("basis at weight {k:?} is not square")));
            }
            for s in coeffs.keys() {
                if !masks.contains(s) {
                    return Err(Error::InvalidForm(format!("form at weight {k:?} leaves the lattice")));
                }
            }
            let g: Vec<Vec<i64>> = gammas
                .iter()
                .map(|gm| masks.iter().map(|s| gm.get(s).copied().unwrap_or(0)).collect())
                .collect();
            let ginv = linalg::invert(&linalg::from_ints(&g))
                .ok_or_else(|| Error::InvalidForm(format!("singular basis at weight {k:?}")))?;
            // common p-power denominator E
            let pb = BigInt::from(p);
            let mut e_max = 0u32;
            for row in &ginv {
                for x in row {
                    let mut den = x.denom().clone();
                    let mut e = 0;
                    while (&den % &pb).is_zero() {
                        den /= &pb;
                        e += 1;
                    }
                    e_max = e_max.max(e);
                }
            }
            for (pi, key) in keys.iter().enumerate() {
                let mut acc = ZqElem::ZERO;
                for (si, s) in masks.iter().enumerate() {
                    let Some(c) = coeffs.get(s) else { continue };
                    let r = &ginv[si][pi];
                    if r.is_zero() {
                        continue;
                    }
                    let scaled = r * num_rational::BigRational::from_integer(pb.pow(e_max));
                    let num = scaled.numer().to_i64().ok_or_else(|| Error::Domain("entry overflow".into()))?;
                    let den = scaled.denom().to_i64().ok_or_else(|| Error::Domain("entry overflow".into()))?;
                    acc = zq.add(&acc, &zq.mul(c, &zq.from_ratio(num, den)?));
                }
                let u = key.k.u();
                let (xi, loss) = match shape(&key.k, &key.part) {
                    Shape::Two => {
                        if e_max >= u {
                            (zq.truncate(&acc, f.prec), e_max - u)
                        } else {
                            (zq.mul_p_pow(&acc, u - e_max), 0)
                        }
                    }
                    _ => (zq.truncate(&acc, f.prec), e_max),
                };
                if f.prec < loss || f.prec - loss < n {
                    return Err(Error::Precision { have: f.prec.saturating_sub(loss), need: n });
                }
                let xi = zq.div_p_pow(&xi, loss).map_err(|_| {
                    Error::InvalidForm(format!("non-integral coordinate at weight {k:?}"))
                })?;
                let xi = zq.truncate(&xi, n);
                if zq.is_zero(&xi) {
                    continue;
                }
                if zq.ord_p(&xi) < self.drw.min_coeff_ord(key) {
                    return Err(Error::InvalidForm(format!("coordinate at {key:?} misses the coefficient ideal")));
                }
                terms.push((key.clone(), xi));
            }
        }
        self.drw.from_terms(n, degree, terms)
    }

    /// Canonical form of an expression at level n, checked against both
    /// strategies.
    pub fn normalize(&self, e: &DRWExpr, n: u32) -> Result<DRWElement> {
        let a = self.normalize_with(e, n, Strategy::Innermost)?;
        let b = self.normalize_with(e, n, Strategy::Outermost)?;
        if a != b {
            return Err(Error::NonConfluent(format!(
                "strategies disagree: {} vs {} terms",
                a.len(),
                b.len()
            )));
        }
        Ok(a)
    }

    pub fn normalize_with(&self, e: &DRWExpr, n: u32, strategy: Strategy) -> Result<DRWElement> {
        let degree = e.degree().ok_or_else(|| Error::Domain("sum of mixed degrees".into()))?;
        let form = match strategy {
            Strategy::Innermost => self.eval(e, n)?,
            Strategy::Outermost => self.eval(&self.rewrite(e), n)?,
        };
        self.decompose(&form, n, degree)
    }

    /// Product in W_nΩ.
    pub fn product(&self, a: &DRWElement, b: &DRWElement) -> Result<DRWElement> {
        if a.ring != b.ring || a.ring != self.drw.ring {
            return Err(Error::RingMismatch);
        }
        if a.level != b.level {
            return Err(Error::LevelMismatch(a.level, b.level));
        }
        let f = self.embed(a)?.mul(self.drw.zq(), &self.embed(b)?);
        self.decompose(&f, a.level, a.degree + b.degree)
    }

    /// The canonical element as an expression built from the defining
    /// products of V, F, d and Teichmüller monomials.
    pub fn expr_of_basic(&self, key: &TermKey, xi: &ZqElem) -> Result<DRWExpr> {
        let zq = self.drw.zq();
        let p = self.drw.p();
        let k = &key.k;
        let u0 = k.u();
        let mono = |w: Vec<i64>| -> Result<DRWExpr> {
            Ok(DRWExpr::Teich(self.poly.monomial(self.drw.ring.field().one(), w)?))
        };
        let scaled = |idx: &[usize], s: i64| -> Vec<i64> {
            k.restrict_to(idx).scaled(p, s).expect("integral after scaling")
        };
        let diff_factor = |iv: &[usize], coeff: Option<ZqElem>| -> Result<DRWExpr> {
            let kr = k.restrict_to(iv);
            let ui = kr.u();
            if ui > 0 {
                let inner = mono(scaled(iv, ui as i64))?;
                let inner = match coeff {
                    Some(c) => DRWExpr::mul(DRWExpr::Scalar(c), inner),
                    None => inner,
                };
                Ok(DRWExpr::d(DRWExpr::iterate(ui, inner, DRWExpr::v)))
            } else {
                let t = k.min_ord(p, iv);
                let inner = DRWExpr::d(mono(scaled(iv, -t))?);
                let f = DRWExpr::iterate(t as u32, inner, DRWExpr::f);
                Ok(match coeff {
                    Some(c) => DRWExpr::mul(DRWExpr::Scalar(c), f),
                    None => f,
                })
            }
        };
        // η with ξ = V^{u}η
        let eta = |u: u32| -> Result<ZqElem> { zq.div_p_pow(&zq.sigma_pow(xi, u as i64), u) };
        let mut factors = Vec::new();
        match shape(k, &key.part) {
            Shape::One => {
                let base = DRWExpr::mul(DRWExpr::Scalar(eta(u0)?), mono(scaled(&key.part.i0, u0 as i64))?);
                factors.push(DRWExpr::iterate(u0, base, DRWExpr::v));
                for iv in &key.part.intervals {
                    factors.push(diff_factor(iv, None)?);
                }
            }
            Shape::Two => {
                let (first, rest) = key.part.intervals.split_first().expect("type 2 has an interval");
                factors.push(diff_factor(first, Some(eta(u0)?))?);
                for iv in rest {
                    factors.push(diff_factor(iv, None)?);
                }
            }
            Shape::Three => {
                factors.push(DRWExpr::Scalar(*xi));
                for iv in &key.part.intervals {
                    factors.push(diff_factor(iv, None)?);
                }
            }
        }
        for j in crate::drw_terms::basis::mask_vars(key.z) {
            factors.push(DRWExpr::Dlog(self.poly.variable(j)));
        }
        Ok(DRWExpr::product(DRWExpr::Scalar(zq.one()), factors))
    }
}
