//! Minimal commutative-ring interface used by the generic Witt vector code.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub trait CommRing {
    type El: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, x: &Self::El, y: &Self::El) -> Self::El;
    fn neg(&self, x: &Self::El) -> Self::El;
    fn mul(&self, x: &Self::El, y: &Self::El) -> Self::El;
    fn from_bigint(&self, n: &BigInt) -> Self::El;
    fn is_zero(&self, x: &Self::El) -> bool;

    /// Characteristic if prime, else 0.
    fn char_p(&self) -> u64 {
        0
    }

    fn sub(&self, x: &Self::El, y: &Self::El) -> Self::El {
        self.add(x, &self.neg(y))
    }

    fn pow(&self, x: &Self::El, mut e: u64) -> Self::El {
        let mut r = self.one();
        let mut b = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// Absolute Frobenius x ↦ x^p; rings of characteristic p override this.
    fn frobenius(&self, x: &Self::El, p: u64) -> Self::El {
        self.pow(x, p)
    }
}

/// ℤ, used by the ghost-component oracle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl CommRing for Integers {
    type El = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x + y
    }
    fn neg(&self, x: &BigInt) -> BigInt {
        -x
    }
    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * y
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
}

impl CommRing for crate::ff::FiniteField {
    type El = crate::ff::FqElem;
    fn zero(&self) -> Self::El {
        crate::ff::FqElem::ZERO
    }
    fn one(&self) -> Self::El {
        crate::ff::FiniteField::one(self)
    }
    fn add(&self, x: &Self::El, y: &Self::El) -> Self::El {
        crate::ff::FiniteField::add(self, x, y)
    }
    fn neg(&self, x: &Self::El) -> Self::El {
        crate::ff::FiniteField::neg(self, x)
    }
    fn mul(&self, x: &Self::El, y: &Self::El) -> Self::El {
        crate::ff::FiniteField::mul(self, x, y)
    }
    fn from_bigint(&self, n: &BigInt) -> Self::El {
        let p = BigInt::from(self.p());
        let r: BigInt = ((n % &p) + &p) % &p;
        self.from_int(i64::try_from(r).expect("small residue"))
    }
    fn is_zero(&self, x: &Self::El) -> bool {
        x.is_zero()
    }
    fn char_p(&self) -> u64 {
        self.p() as u64
    }
    fn pow(&self, x: &Self::El, e: u64) -> Self::El {
        crate::ff::FiniteField::pow(self, x, e)
    }
    fn frobenius(&self, x: &Self::El, _p: u64) -> Self::El {
        crate::ff::FiniteField::frobenius(self, x)
    }
}
