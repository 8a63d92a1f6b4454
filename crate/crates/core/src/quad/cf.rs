use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{BigRat, FieldElement, RootInterval};

/// Expansions longer than this are abandoned; quadratic irrationals from
/// matrices of modest size repeat long before.
const MAX_TERMS: usize = 100_000;

/// Eventually periodic simple continued fraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CFExpansion {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

/// Simple continued fraction of `x` under `embedding`, with the period
/// detected as the first exactly repeated complete quotient.
pub fn cf_expand(x: &FieldElement, embedding: &RootInterval) -> Result<CFExpansion> {
    cf_expand_with_states(x, embedding).map(|(cf, _)| cf)
}

/// As [`cf_expand`], also returning the complete quotients `x_0, x_1, ...`
/// up to the start of the second pass through the period.
pub fn cf_expand_with_states(
    x: &FieldElement,
    embedding: &RootInterval,
) -> Result<(CFExpansion, Vec<FieldElement>)> {
    if x.is_rational() {
        return Err(Error::NotIrrational);
    }
    let mut root = embedding.clone();
    let mut seen: HashMap<FieldElement, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut digits = Vec::new();
    let mut cur = x.clone();
    while states.len() < MAX_TERMS {
        if let Some(&start) = seen.get(&cur) {
            let period = digits[start..].to_vec();
            digits.truncate(start);
            return Ok((
                CFExpansion {
                    preperiod: digits,
                    period,
                },
                states,
            ));
        }
        let a = cur.floor_refining(&mut root);
        let frac = cur.add_rational(&-BigRat::from_integer(a.clone()));
        seen.insert(cur.clone(), states.len());
        states.push(cur);
        digits.push(a);
        cur = frac.inv()?;
    }
    Err(Error::BudgetExhausted(MAX_TERMS))
}

/// Index of the lexicographically least rotation among `candidates`.
fn least_rotation(period: &[BigInt], candidates: impl Iterator<Item = usize>) -> usize {
    let rotate = |r: usize| {
        period[r..]
            .iter()
            .chain(&period[..r])
            .cloned()
            .collect::<Vec<_>>()
    };
    candidates
        .min_by(|&a, &b| rotate(a).cmp(&rotate(b)))
        .unwrap_or(0)
}

/// The lexicographically least rotation of a period and its offset.
pub fn min_rotation(period: &[BigInt]) -> (usize, Vec<BigInt>) {
    let r = least_rotation(period, 0..period.len().max(1));
    (r, rotated(period, r))
}

fn rotated(period: &[BigInt], r: usize) -> Vec<BigInt> {
    if period.is_empty() {
        return Vec::new();
    }
    period[r..].iter().chain(&period[..r]).cloned().collect()
}

/// Key of the `GL_2(Z)` orbit of `x`: the period up to rotation.
pub fn gl_key(cf: &CFExpansion) -> Vec<BigInt> {
    min_rotation(&cf.period).1
}

/// Key of the `SL_2(Z)` orbit of `x`. A Möbius map of determinant -1 shifts
/// the tail by an odd number of terms, so for an even period only rotations
/// of matching parity (counted from the start of the expansion) are allowed.
pub fn proper_key(cf: &CFExpansion) -> Vec<BigInt> {
    let l = cf.period.len();
    if l % 2 == 1 {
        return gl_key(cf);
    }
    let p = cf.preperiod.len();
    let r = least_rotation(&cf.period, (0..l).filter(|r| (p + r).is_multiple_of(2)));
    rotated(&cf.period, r)
}
