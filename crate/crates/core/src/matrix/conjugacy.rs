use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Cap on visited conjugates in the transvection search used for n >= 3.
const NODE_CAP: usize = 200_000;

/// `T A T^-1`.
pub fn conjugate(a: &IntMatrix, t: &IntMatrix) -> Result<IntMatrix> {
    if a.dim() != t.dim() {
        return Err(Error::DimensionMismatch(
            "conjugator has a different size".into(),
        ));
    }
    let inv = t.inverse_unimodular()?;
    Ok(t.mul(a).mul(&inv))
}

/// Searches for `T` in `SL_n(Z)` with entries bounded by `bound` such that
/// `T A T^-1` is entrywise non-negative. Returns `(T A T^-1, T)`.
pub fn nonneg_representative(a: &IntMatrix, bound: u64) -> Result<(IntMatrix, IntMatrix)> {
    let n = a.dim();
    if a.is_nonnegative() {
        return Ok((a.clone(), IntMatrix::identity(n)));
    }
    if n == 2 {
        for t in sl2_by_height(bound as i64) {
            let b = conjugate(a, &t)?;
            if b.is_nonnegative() {
                return Ok((b, t));
            }
        }
        return Err(Error::NotFound);
    }
    transvection_search(a, &BigInt::from(bound))
}

/// All of `SL_2(Z)` with entries in `[-bound, bound]`, ordered by max |entry|
/// and then lexicographically.
pub fn sl2_by_height(bound: i64) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for h in 1..=bound {
        let mut level = Vec::new();
        for p in -h..=h {
            for q in -h..=h {
                for r in -h..=h {
                    for s in -h..=h {
                        let top = p.abs().max(q.abs()).max(r.abs()).max(s.abs());
                        if top == h && p * s - q * r == 1 {
                            level.push([p, q, r, s]);
                        }
                    }
                }
            }
        }
        level.sort();
        out.extend(
            level
                .into_iter()
                .map(|[p, q, r, s]| IntMatrix::from_i64(&[&[p, q], &[r, s]])),
        );
    }
    out
}

fn transvection_search(a: &IntMatrix, bound: &BigInt) -> Result<(IntMatrix, IntMatrix)> {
    let n = a.dim();
    let mut moves = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for s in [1i64, -1] {
                    let mut e = IntMatrix::identity(n);
                    e.set(i, j, BigInt::from(s));
                    let mut inv = IntMatrix::identity(n);
                    inv.set(i, j, BigInt::from(-s));
                    moves.push((e, inv));
                }
            }
        }
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(a.clone());
    queue.push_back((a.clone(), IntMatrix::identity(n)));
    while let Some((cur, t)) = queue.pop_front() {
        for (e, inv) in &moves {
            let t2 = e.mul(&t);
            if t2.entries().iter().any(|x| &x.abs() > bound) {
                continue;
            }
            let next = e.mul(&cur).mul(inv);
            if next.is_nonnegative() {
                debug_assert!(t2.det().is_one());
                return Ok((next, t2));
            }
            if seen.len() < NODE_CAP && seen.insert(next.clone()) {
                queue.push_back((next, t2));
            }
        }
    }
    Err(Error::NotFound)
}
