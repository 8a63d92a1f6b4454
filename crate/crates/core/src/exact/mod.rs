//! Exact arithmetic substrate: rationals, polynomials over Q, number fields on
//! a power basis and real-root isolation.

pub mod dominance;
pub mod field;
pub mod minpoly;
pub mod modp;
pub mod poly;
pub mod roots;

use num_traits::{One, Zero};

pub use field::{field_mul, floor_of, trace, FieldElement, FieldExt, NumberField};
pub use minpoly::MinimalPolynomial;
pub use poly::Poly;
pub use roots::{isolate_real_roots, RootInterval};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type BigRat = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(n.into(), d.into())
}

/// Determinant of a square rational matrix by Gaussian elimination.
pub fn det_rational(m: &[Vec<BigRat>]) -> BigRat {
    let n = m.len();
    let mut a: Vec<Vec<BigRat>> = m.to_vec();
    let mut det = BigRat::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRat::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse_rational(m: &[Vec<BigRat>]) -> Option<Vec<Vec<BigRat>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRat::one()
                } else {
                    BigRat::zero()
                }
            }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        let inv = a[k][k].recip();
        for v in a[k].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_and_inverse() {
        let m = vec![vec![rat(2, 1), rat(-2, 1)], vec![rat(-2, 1), rat(6, 1)]];
        assert_eq!(det_rational(&m), rat(8, 1));
        let inv = inverse_rational(&m).unwrap();
        assert_eq!(
            inv,
            vec![vec![rat(3, 4), rat(1, 4)], vec![rat(1, 4), rat(1, 4)]]
        );
        assert!(
            inverse_rational(&[vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]]).is_none()
        );
    }
}
