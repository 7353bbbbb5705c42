//! Exact rational linear algebra for small dense matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn from_ints(m: &[Vec<i64>]) -> QMatrix {
    m.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect()
}

/// Inverse by Gauss–Jordan elimination; None if singular.
pub fn invert(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut a: QMatrix = m.clone();
    let mut inv: QMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &s;
            inv[col][j] = &inv[col][j] / &s;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - t;
                    let t = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - t;
                }
            }
        }
    }
    Some(inv)
}

/// Determinant by fraction-free elimination.
pub fn det(m: &QMatrix) -> BigRational {
    let n = m.len();
    let mut a = m.clone();
    let mut d = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(col, piv);
            d = -d;
        }
        d = &d * &a[col][col];
        for r in col + 1..n {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for j in col..n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - t;
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = from_ints(&[vec![2, 1], vec![1, 3]]);
        let inv = invert(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let s: BigRational = (0..2).map(|k| &m[i][k] * &inv[k][j]).sum();
                assert_eq!(s, if i == j { BigRational::one() } else { BigRational::zero() });
            }
        }
        assert_eq!(det(&m), BigRational::from_integer(BigInt::from(5)));
    }
}
