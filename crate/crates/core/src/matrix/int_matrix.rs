use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::format_poly;

/// Square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Ok(IntMatrix {
            n,
            entries: rows.concat(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x.into()).collect())
            .collect();
        Self::from_rows(&rows).expect("square matrix")
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .chunks(self.n)
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_default()
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        bareiss_det(self.rows())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Exact inverse of a unimodular matrix (adjugate times `det`).
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let det = self.det();
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular);
        }
        let n = self.n;
        if n == 1 {
            return Ok(IntMatrix {
                n,
                entries: vec![det],
            });
        }
        let mut inv = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<BigInt>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != i)
                            .map(|c| self.get(r, c).clone())
                            .collect()
                    })
                    .collect();
                let cof = bareiss_det(minor);
                let cof = if (i + j) % 2 == 0 { cof } else { -cof };
                inv.set(i, j, cof * &det);
            }
        }
        Ok(inv)
    }

    /// Characteristic polynomial `det(tI - A)`, little-endian and monic,
    /// by Faddeev–LeVerrier (all divisions are exact).
    pub fn charpoly(&self) -> Vec<BigInt> {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::zeros(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                next.entries[i * n + i] += &coeffs[n - k + 1];
            }
            m = next;
            let tr = self.mul(&m).trace();
            let (q, r) = (-tr).div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero());
            coeffs[n - k] = q;
        }
        coeffs
    }

    /// Parses `a,b;c,d` or a JSON array of arrays such as `[[a,b],[c,d]]`.
    pub fn parse(text: &str) -> Result<IntMatrix> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty matrix text".into()));
        }
        let body = if compact.starts_with('[') {
            let inner = compact
                .strip_prefix("[[")
                .and_then(|s| s.strip_suffix("]]"))
                .ok_or_else(|| Error::Parse("JSON matrix must look like [[a,b],[c,d]]".into()))?;
            inner.replace("],[", ";")
        } else {
            compact
        };
        let rows: Vec<Vec<BigInt>> = body
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        BigInt::from_str(x)
                            .map_err(|_| Error::Parse(format!("not an integer: {x:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(&rows).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Compact text form `a,b;c,d`.
    pub fn to_text(&self) -> String {
        self.rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Entries as `i64` when they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl FromStr for IntMatrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_text())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(tI - A)` rendered as `t^2-6t+1`.
pub fn charpoly_string(a: &IntMatrix) -> String {
    format_poly(&a.charpoly(), "t")
}

pub fn charpoly(a: &IntMatrix) -> Vec<BigInt> {
    a.charpoly()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn charpolys() {
        assert_eq!(charpoly_string(&m(&[&[5, 2], &[2, 1]])), "t^2-6t+1");
        assert_eq!(charpoly_string(&m(&[&[5, 1], &[4, 1]])), "t^2-6t+1");
        assert_eq!(charpoly_string(&IntMatrix::identity(2)), "t^2-2t+1");
        assert_eq!(
            charpoly_string(&m(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]])),
            "t^3-t^2-t-1"
        );
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        // det(tI - A) at t = 0 is (-1)^n det A
        let a = m(&[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]]);
        let cp = a.charpoly();
        assert_eq!(cp[0], -a.det());
    }

    #[test]
    fn inverse_of_unimodular() {
        let t = m(&[&[2, 1, 0], &[1, 1, 0], &[3, 4, 1]]);
        let inv = t.inverse_unimodular().unwrap();
        assert_eq!(t.mul(&inv), IntMatrix::identity(3));
        assert_eq!(
            m(&[&[2, 0], &[0, 1]]).inverse_unimodular().unwrap_err(),
            Error::NotUnimodular
        );
    }

    #[test]
    fn parses_both_formats() {
        let a: IntMatrix = "5,2;2,1".parse().unwrap();
        assert_eq!(a, m(&[&[5, 2], &[2, 1]]));
        assert_eq!(IntMatrix::parse("[[5, 2], [2, 1]]").unwrap(), a);
        assert_eq!(IntMatrix::parse("[[-7]]").unwrap(), m(&[&[-7]]));
        assert!(matches!(IntMatrix::parse("5,2;2"), Err(Error::Parse(_))));
        assert!(matches!(IntMatrix::parse("5,x;2,1"), Err(Error::Parse(_))));
        assert!(matches!(IntMatrix::parse(""), Err(Error::Parse(_))));
        assert_eq!(a.to_text(), "5,2;2,1");
    }
}
