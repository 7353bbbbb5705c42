//! Expressions in the free dga on Teichmüller lifts, scalars, F, V and d.

use crate::poly::LPoly;
use crate::witt::ZqElem;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DRWExpr {
    /// ξ ∈ W(𝔽_q), given by a lift.
    Scalar(ZqElem),
    /// [f] for f in the coordinate ring.
    Teich(LPoly),
    /// dlog[u] = d[u]/[u] for a unit u.
    Dlog(LPoly),
    F(Box<DRWExpr>),
    V(Box<DRWExpr>),
    D(Box<DRWExpr>),
    Add(Vec<DRWExpr>),
    Mul(Box<DRWExpr>, Box<DRWExpr>),
}

impl DRWExpr {
    pub fn f(x: DRWExpr) -> DRWExpr {
        DRWExpr::F(Box::new(x))
    }
    pub fn v(x: DRWExpr) -> DRWExpr {
        DRWExpr::V(Box::new(x))
    }
    pub fn d(x: DRWExpr) -> DRWExpr {
        DRWExpr::D(Box::new(x))
    }
    pub fn mul(a: DRWExpr, b: DRWExpr) -> DRWExpr {
        DRWExpr::Mul(Box::new(a), Box::new(b))
    }

    /// Left-nested product; `one` is returned for an empty list.
    pub fn product(one: DRWExpr, factors: Vec<DRWExpr>) -> DRWExpr {
        let mut it = factors.into_iter();
        match it.next() {
            None => one,
            Some(first) => it.fold(first, DRWExpr::mul),
        }
    }

    /// Iterated operator application op^k(x).
    pub fn iterate(k: u32, x: DRWExpr, op: fn(DRWExpr) -> DRWExpr) -> DRWExpr {
        (0..k).fold(x, |acc, _| op(acc))
    }

    /// Static form degree; None if a sum mixes degrees.
    pub fn degree(&self) -> Option<usize> {
        match self {
            DRWExpr::Scalar(_) | DRWExpr::Teich(_) => Some(0),
            DRWExpr::Dlog(_) => Some(1),
            DRWExpr::F(x) | DRWExpr::V(x) => x.degree(),
            DRWExpr::D(x) => x.degree().map(|d| d + 1),
            DRWExpr::Add(xs) => {
                // empty sums are zero in every degree
                let mut it = xs.iter().filter(|x| !x.is_zero_sum()).map(|x| x.degree());
                let first = it.next().unwrap_or(Some(0))?;
                it.all(|d| d == Some(first)).then_some(first)
            }
            DRWExpr::Mul(a, b) => Some(a.degree()? + b.degree()?),
        }
    }

    pub fn zero() -> DRWExpr {
        DRWExpr::Add(vec![])
    }

    pub fn is_zero_sum(&self) -> bool {
        matches!(self, DRWExpr::Add(xs) if xs.iter().all(|x| x.is_zero_sum()))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            DRWExpr::Scalar(_) | DRWExpr::Teich(_) | DRWExpr::Dlog(_) => 1,
            DRWExpr::F(x) | DRWExpr::V(x) | DRWExpr::D(x) => 1 + x.size(),
            DRWExpr::Add(xs) => 1 + xs.iter().map(|x| x.size()).sum::<usize>(),
            DRWExpr::Mul(a, b) => 1 + a.size() + b.size(),
        }
    }
}
