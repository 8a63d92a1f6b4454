//! Jacobi–Perron multidimensional continued fractions over a real number
//! field, and factorization of non-negative unimodular matrices into the
//! elementary matrices `B(b)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{BigRat, FieldElement, RootInterval};
use crate::matrix::{IntMatrix, PerronData};

/// Direction `(1, θ_1, ..., θ_{n-1})` together with its real embedding.
#[derive(Clone, Debug)]
pub struct JPState {
    pub theta: Vec<FieldElement>,
    pub embedding: RootInterval,
}

impl JPState {
    /// `θ_i = v_{i+1} / v_1`.
    pub fn from_perron(pd: &PerronData) -> Result<Self> {
        let v1 = &pd.eigenvector[0];
        let theta = pd.eigenvector[1..]
            .iter()
            .map(|v| v.try_div(v1))
            .collect::<Result<Vec<_>>>()?;
        Ok(JPState {
            theta,
            embedding: pd.embedding.clone(),
        })
    }
}

/// `n x n` matrix with first row `(0, ..., 0, 1)` and row `i+1` equal to
/// `e_i` plus `b_i` in the last column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryMatrix {
    pub b: Vec<BigInt>,
}

impl ElementaryMatrix {
    pub fn new(b: Vec<BigInt>) -> Self {
        ElementaryMatrix { b }
    }

    pub fn from_i64(b: &[i64]) -> Self {
        ElementaryMatrix {
            b: b.iter().map(|&x| x.into()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.b.len() + 1
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let n = self.dim();
        let mut m = IntMatrix::zeros(n);
        m.set(0, n - 1, BigInt::one());
        for (i, bi) in self.b.iter().enumerate() {
            m.set(i + 1, i, BigInt::one());
            let cur = m.get(i + 1, n - 1).clone();
            m.set(i + 1, n - 1, cur + bi);
        }
        m
    }
}

/// One step: digits `b_i = floor(θ_i)` and the next direction with
/// `B(b) (1, θ')^T ∝ (1, θ)^T`.
pub fn jp_step(s: &JPState) -> Result<(Vec<BigInt>, JPState)> {
    let mut root = s.embedding.clone();
    let digits: Vec<BigInt> = s
        .theta
        .iter()
        .map(|t| t.floor_refining(&mut root))
        .collect();
    let lead = s.theta[0].add_rational(&-BigRat::from_integer(digits[0].clone()));
    if lead.is_zero() {
        return Err(Error::IntegerLeadingCoordinate);
    }
    let inv = lead.inv()?;
    let n1 = s.theta.len();
    let mut next = Vec::with_capacity(n1);
    for i in 0..n1 - 1 {
        let t = s.theta[i + 1].add_rational(&-BigRat::from_integer(digits[i + 1].clone()));
        next.push(&t * &inv);
    }
    next.push(inv);
    Ok((
        digits,
        JPState {
            theta: next,
            embedding: root,
        },
    ))
}

/// Jacobi–Perron digits with an exactly detected period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JPExpansion {
    pub preperiod: Vec<Vec<BigInt>>,
    /// Empty when no repetition was seen within the budget or the expansion
    /// terminated.
    pub period: Vec<Vec<BigInt>>,
    pub states_seen: usize,
    /// The expansion stopped at an integer leading coordinate.
    pub terminated: bool,
}

impl JPExpansion {
    pub fn is_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    /// Digit vector number `k` (0-based), cycling through the period.
    pub fn digit(&self, k: usize) -> Option<&Vec<BigInt>> {
        if k < self.preperiod.len() {
            return self.preperiod.get(k);
        }
        if self.period.is_empty() {
            return None;
        }
        self.period
            .get((k - self.preperiod.len()) % self.period.len())
    }

    /// Smallest period of the digit sequence, rotated to its least rotation.
    pub fn canonical_period(&self) -> Vec<Vec<BigInt>> {
        let p = &self.period;
        let l = p.len();
        let Some(step) = (1..=l).find(|&s| l.is_multiple_of(s) && (0..l).all(|i| p[i] == p[(i + s) % l]))
        else {
            return Vec::new();
        };
        let base = &p[..step];
        (0..step)
            .map(|r| {
                base[r..]
                    .iter()
                    .chain(&base[..r])
                    .cloned()
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap_or_default()
    }
}

/// Iterates [`jp_step`] from the PF direction until a state repeats or
/// `max_steps` is reached.
pub fn jp_expand(pd: &PerronData, max_steps: usize) -> Result<JPExpansion> {
    let start = JPState::from_perron(pd)?;
    Ok(expand_from(start, max_steps))
}

pub fn expand_from(start: JPState, max_steps: usize) -> JPExpansion {
    let mut seen: HashMap<Vec<FieldElement>, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut state = start;
    for step in 0..max_steps {
        if let Some(&first) = seen.get(&state.theta) {
            let period = digits.split_off(first);
            return JPExpansion {
                preperiod: digits,
                period,
                states_seen: step,
                terminated: false,
            };
        }
        seen.insert(state.theta.clone(), step);
        match jp_step(&state) {
            Ok((b, next)) => {
                digits.push(b);
                state = next;
            }
            Err(_) => {
                return JPExpansion {
                    preperiod: digits,
                    period: Vec::new(),
                    states_seen: step + 1,
                    terminated: true,
                };
            }
        }
    }
    JPExpansion {
        preperiod: digits,
        period: Vec::new(),
        states_seen: max_steps,
        terminated: false,
    }
}

/// `B(b_1) ... B(b_k)`.
pub fn convergents(e: &JPExpansion, k: usize) -> Result<IntMatrix> {
    let n = e
        .preperiod
        .first()
        .or(e.period.first())
        .map(|b| b.len() + 1)
        .ok_or(Error::InsufficientDigits)?;
    let mut acc = IntMatrix::identity(n);
    for i in 0..k {
        let b = e.digit(i).ok_or(Error::InsufficientDigits)?;
        acc = acc.mul(&ElementaryMatrix::new(b.clone()).to_matrix());
    }
    Ok(acc)
}

/// Product of a digit list.
pub fn product(digits: &[Vec<BigInt>], n: usize) -> IntMatrix {
    digits.iter().fold(IntMatrix::identity(n), |acc, b| {
        acc.mul(&ElementaryMatrix::new(b.clone()).to_matrix())
    })
}

/// A verified factorization, plus any other factorizations of the same
/// length met by the exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub digits: Vec<Vec<BigInt>>,
    pub alternatives: Vec<Vec<Vec<BigInt>>>,
}

/// Cap on equal-length alternatives collected by the search.
const MAX_ALTERNATIVES: usize = 8;

/// Writes a non-negative unimodular `A` as `B(b_1) ... B(b_k)`, `k <= max_depth`.
pub fn factor_nonneg(a: &IntMatrix, max_depth: usize) -> Result<Factorization> {
    if !a.is_nonnegative() {
        return Err(Error::NotNonNegative);
    }
    if !a.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let n = a.dim();
    if n < 2 {
        return Err(Error::NotFactorable(max_depth));
    }
    let found = greedy(a, max_depth).or_else(|| {
        (0..=max_depth).find_map(|depth| {
            let mut out = Vec::new();
            search(a, depth, &mut Vec::new(), &mut out, 1);
            out.pop()
        })
    });
    let Some(digits) = found else {
        return Err(Error::NotFactorable(max_depth));
    };
    if product(&digits, n) != *a {
        return Err(Error::NotFactorable(max_depth));
    }
    let mut all = Vec::new();
    search(
        a,
        digits.len(),
        &mut Vec::new(),
        &mut all,
        MAX_ALTERNATIVES + 1,
    );
    let alternatives = all
        .into_iter()
        .filter(|d| *d != digits && product(d, n) == *a)
        .collect();
    Ok(Factorization {
        digits,
        alternatives,
    })
}

/// `A = A' B(b)`: `A'_{:,j+1} = A_{:,j}` and `A'_{:,0} = A_{:,n-1} - Σ b_i A_{:,i}`.
fn peel(a: &IntMatrix, b: &[BigInt]) -> IntMatrix {
    let n = a.dim();
    let mut out = IntMatrix::zeros(n);
    for r in 0..n {
        for j in 0..n - 1 {
            out.set(r, j + 1, a.get(r, j).clone());
        }
        let mut first = a.get(r, n - 1).clone();
        for (i, bi) in b.iter().enumerate() {
            first -= bi * a.get(r, i);
        }
        out.set(r, 0, first);
    }
    out
}

/// Digit vectors `b` with `peel(a, b) >= 0`.
fn admissible(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = a.dim();
    let last = a.column(n - 1);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend_admissible(a, 0, last, &mut cur, &mut out);
    out
}

fn extend_admissible(
    a: &IntMatrix,
    i: usize,
    rest: Vec<BigInt>,
    cur: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
) {
    let n = a.dim();
    if i == n - 1 {
        out.push(cur.clone());
        return;
    }
    let col = a.column(i);
    // largest t with rest - t col >= 0
    let max = col
        .iter()
        .zip(&rest)
        .filter(|(c, _)| c.is_positive())
        .map(|(c, r)| r.div_floor(c))
        .min();
    let Some(max) = max else {
        return;
    };
    let mut t = BigInt::zero();
    while t <= max {
        let next: Vec<BigInt> = rest.iter().zip(&col).map(|(r, c)| r - &t * c).collect();
        cur.push(t.clone());
        extend_admissible(a, i + 1, next, cur, out);
        cur.pop();
        t += 1;
    }
}

/// Peels the largest admissible digits, lexicographically, until the
/// identity is reached.
fn greedy(a: &IntMatrix, max_depth: usize) -> Option<Vec<Vec<BigInt>>> {
    let n = a.dim();
    let id = IntMatrix::identity(n);
    let mut cur = a.clone();
    let mut rev = Vec::new();
    while cur != id {
        if rev.len() >= max_depth {
            return None;
        }
        let b = admissible(&cur).into_iter().max()?;
        cur = peel(&cur, &b);
        rev.push(b);
    }
    rev.reverse();
    Some(rev)
}

/// Depth-limited search for factorizations of exactly `depth` factors.
fn search(
    a: &IntMatrix,
    depth: usize,
    acc: &mut Vec<Vec<BigInt>>,
    out: &mut Vec<Vec<Vec<BigInt>>>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    if depth == 0 {
        if *a == IntMatrix::identity(a.dim()) {
            let mut d = acc.clone();
            d.reverse();
            out.push(d);
        }
        return;
    }
    for b in admissible(a) {
        acc.push(b.clone());
        search(&peel(a, &b), depth - 1, acc, out, cap);
        acc.pop();
        if out.len() >= cap {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::perron_data;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn d(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter()
            .map(|b| b.iter().map(|&x| x.into()).collect())
            .collect()
    }

    #[test]
    fn elementary_shapes() {
        assert_eq!(
            ElementaryMatrix::from_i64(&[2]).to_matrix(),
            m(&[&[0, 1], &[1, 2]])
        );
        assert_eq!(
            ElementaryMatrix::from_i64(&[1, 3]).to_matrix(),
            m(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 3]])
        );
    }

    #[test]
    fn silver_expansion() {
        let pd = perron_data(&m(&[&[5, 2], &[2, 1]])).unwrap();
        let e = jp_expand(&pd, 200).unwrap();
        assert_eq!(
            (e.preperiod.clone(), e.period.clone()),
            (d(&[&[0]]), d(&[&[2]]))
        );
    }

    #[test]
    fn tribonacci_expansion() {
        let pd = perron_data(&m(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]])).unwrap();
        let e = jp_expand(&pd, 200).unwrap();
        assert_eq!(e.preperiod, d(&[&[0, 0], &[0, 1]]));
        assert_eq!(e.period, d(&[&[1, 1]]));
    }

    #[test]
    fn golden_expansion() {
        let pd = perron_data(&m(&[&[2, 1], &[1, 1]])).unwrap();
        let e = jp_expand(&pd, 200).unwrap();
        assert_eq!(e.period, d(&[&[1]]));
        // θ = golden ratio itself: purely periodic [1]
        let g = JPExpansion {
            preperiod: vec![],
            period: d(&[&[1]]),
            states_seen: 1,
            terminated: false,
        };
        // B(1)^8 gives 34/21, just over 1e-3 away; B(1)^9 gives 55/34
        let c = convergents(&g, 9).unwrap();
        let ratio = c.get(1, 1).to_string().parse::<f64>().unwrap()
            / c.get(0, 1).to_string().parse::<f64>().unwrap();
        assert!((ratio - 1.618_033_988_7).abs() < 1e-3);
    }

    #[test]
    fn factorizations() {
        assert_eq!(
            factor_nonneg(&m(&[&[0, 1], &[1, 3]]), 12).unwrap().digits,
            d(&[&[3]])
        );
        assert_eq!(
            factor_nonneg(&m(&[&[1, 1], &[0, 1]]), 12).unwrap().digits,
            d(&[&[0], &[1]])
        );
        let f = factor_nonneg(&m(&[&[5, 2], &[2, 1]]), 12).unwrap();
        assert_eq!(f.digits, d(&[&[0], &[2], &[2], &[0]]));
        assert_eq!(product(&f.digits, 2), m(&[&[5, 2], &[2, 1]]));
        assert_eq!(
            factor_nonneg(&m(&[&[1, -1], &[0, 1]]), 12).unwrap_err(),
            Error::NotNonNegative
        );
    }

    #[test]
    fn cubic_factorization() {
        let a = m(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]]);
        let f = factor_nonneg(&a, 12).unwrap();
        assert_eq!(product(&f.digits, 3), a);
    }

    #[test]
    fn convergents_need_digits() {
        let e = JPExpansion {
            preperiod: d(&[&[2]]),
            period: vec![],
            states_seen: 1,
            terminated: true,
        };
        assert_eq!(convergents(&e, 1).unwrap(), m(&[&[0, 1], &[1, 2]]));
        assert_eq!(convergents(&e, 2).unwrap_err(), Error::InsufficientDigits);
    }

    #[test]
    fn canonical_period_reduces_and_rotates() {
        let e = JPExpansion {
            preperiod: vec![],
            period: d(&[&[4], &[1], &[4], &[1]]),
            states_seen: 4,
            terminated: false,
        };
        assert_eq!(e.canonical_period(), d(&[&[1], &[4]]));
    }
}
