//! Expression rewriting: F is pushed to the leaves and V is pulled out of
//! products.
//!
//! Rules: F(a+b) → Fa+Fb, F(ab) → Fa·Fb, F[f] → [f^p], Fξ → σ(ξ),
//! F dlog u → dlog u, FV → p, FdV → d, Fd[f] → [f]^{p-1}d[f],
//! Fd(a+b) and Fd(ab) by linearity and the Leibniz rule, Fd(Fx) → p·F(F dx),
//! Fdd → 0; V(x)·y → V(x·Fy) and y·V(x) → V(Fy·x).
//!
//! Termination: with the measure (number of F nodes, number of products with
//! a V factor, size of the F-free part) ordered lexicographically, every rule
//! decreases the measure: F-rules remove an F above a strictly smaller
//! subtree (Fd(Fx) trades one F above d for two F below it, applied to the
//! smaller tree dx), and the V-rules remove one V-inversion while the new F
//! is immediately eliminated on a smaller argument.

use super::engine::Engine;
use super::expr::DRWExpr;
use crate::poly::LPoly;
use crate::ring::CommRing;

impl Engine {
    /// Rewrites to an F-free expression with the same value.
    pub fn rewrite(&self, e: &DRWExpr) -> DRWExpr {
        match e {
            DRWExpr::Scalar(_) | DRWExpr::Teich(_) | DRWExpr::Dlog(_) => e.clone(),
            DRWExpr::F(x) => self.apply_f(&self.rewrite(x)),
            DRWExpr::V(x) => DRWExpr::v(self.rewrite(x)),
            DRWExpr::D(x) => DRWExpr::d(self.rewrite(x)),
            DRWExpr::Add(xs) => DRWExpr::Add(xs.iter().map(|x| self.rewrite(x)).filter(|x| !x.is_zero_sum()).collect()),
            DRWExpr::Mul(a, b) => self.pull_v(self.rewrite(a), self.rewrite(b)),
        }
    }

    fn scalar_p(&self) -> DRWExpr {
        DRWExpr::Scalar(self.drw.zq().from_int(self.drw.p() as i64))
    }

    fn pull_v(&self, a: DRWExpr, b: DRWExpr) -> DRWExpr {
        if a.is_zero_sum() || b.is_zero_sum() {
            return DRWExpr::zero();
        }
        match (a, b) {
            (DRWExpr::V(x), b) => DRWExpr::v(self.pull_v(*x, self.apply_f(&b))),
            (a, DRWExpr::V(y)) => DRWExpr::v(self.pull_v(self.apply_f(&a), *y)),
            (a, b) => DRWExpr::mul(a, b),
        }
    }

    fn teich_pow(&self, f: &LPoly, e: u64) -> DRWExpr {
        DRWExpr::Teich(self.poly.pow(f, e))
    }

    /// F applied to an F-free expression, returning an F-free expression.
    fn apply_f(&self, x: &DRWExpr) -> DRWExpr {
        let zq = self.drw.zq();
        let p = self.drw.p();
        match x {
            DRWExpr::Scalar(c) => DRWExpr::Scalar(zq.sigma(c)),
            DRWExpr::Teich(f) => self.teich_pow(f, p),
            DRWExpr::Dlog(_) => x.clone(),
            DRWExpr::Add(xs) => DRWExpr::Add(xs.iter().map(|y| self.apply_f(y)).collect()),
            DRWExpr::Mul(a, b) => self.pull_v(self.apply_f(a), self.apply_f(b)),
            DRWExpr::V(y) => self.pull_v(self.scalar_p(), (**y).clone()),
            DRWExpr::F(y) => self.apply_f(&self.apply_f(y)),
            DRWExpr::D(y) => self.apply_fd(y),
        }
    }

    /// F(d y) for F-free y.
    fn apply_fd(&self, y: &DRWExpr) -> DRWExpr {
        let p = self.drw.p();
        match y {
            DRWExpr::V(z) => DRWExpr::d((**z).clone()),
            DRWExpr::Teich(f) => DRWExpr::mul(self.teich_pow(f, p - 1), DRWExpr::d(y.clone())),
            DRWExpr::Scalar(_) | DRWExpr::Dlog(_) | DRWExpr::D(_) => DRWExpr::zero(),
            DRWExpr::Add(zs) => DRWExpr::Add(zs.iter().map(|z| self.apply_fd(z)).collect()),
            DRWExpr::Mul(a, b) => {
                let sign = if a.degree().unwrap_or(0) % 2 == 0 { 1 } else { -1 };
                let left = self.pull_v(self.apply_fd(a), self.apply_f(b));
                let right = self.pull_v(self.apply_f(a), self.apply_fd(b));
                let right = if sign == 1 {
                    right
                } else {
                    self.pull_v(DRWExpr::Scalar(self.drw.zq().from_int(-1)), right)
                };
                DRWExpr::Add(vec![left, right])
            }
            DRWExpr::F(z) => {
                // d F z = p F d z
                let inner = self.apply_f(&self.apply_fd(z));
                self.pull_v(self.scalar_p(), inner)
            }
        }
    }
}
