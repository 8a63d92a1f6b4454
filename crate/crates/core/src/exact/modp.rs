//! Distinct-degree factorisation over small prime fields, used to rule out
//! factor degrees before any trial factor search over Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

type Fp = Vec<u64>; // little-endian, trimmed

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, q);
        }
        b = mulmod(b, b, q);
        e >>= 1;
    }
    r
}

fn inv(a: u64, q: u64) -> u64 {
    powmod(a, q - 2, q)
}

fn sub(a: &Fp, b: &Fp, q: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| {
                let x = a.get(k).copied().unwrap_or(0);
                let y = b.get(k).copied().unwrap_or(0);
                (x + q - y) % q
            })
            .collect(),
    )
}

fn mul(a: &Fp, b: &Fp, q: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, q)) % q;
        }
    }
    trim(out)
}

fn rem(a: &Fp, m: &Fp, q: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let li = inv(*m.last().unwrap(), q);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = mulmod(*r.last().unwrap(), li, q);
        for (j, &mc) in m.iter().enumerate() {
            r[k + j] = (r[k + j] + q - mulmod(c, mc, q)) % q;
        }
        r = trim(r);
    }
    r
}

fn div(a: &Fp, m: &Fp, q: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let li = inv(*m.last().unwrap(), q);
    let mut quot = vec![0u64; a.len().saturating_sub(dm)];
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = mulmod(*r.last().unwrap(), li, q);
        quot[k] = c;
        for (j, &mc) in m.iter().enumerate() {
            r[k + j] = (r[k + j] + q - mulmod(c, mc, q)) % q;
        }
        r = trim(r);
    }
    trim(quot)
}

fn gcd(a: &Fp, b: &Fp, q: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, q);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let li = inv(l, q);
        a = a.into_iter().map(|c| mulmod(c, li, q)).collect();
    }
    a
}

fn powmod_poly(base: &Fp, mut e: u64, m: &Fp, q: u64) -> Fp {
    let mut result: Fp = vec![1];
    let mut b = rem(base, m, q);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, q), m, q);
        }
        b = rem(&mul(&b, &b, q), m, q);
        e >>= 1;
    }
    result
}

fn derivative(a: &Fp, q: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mulmod(c, k as u64 % q, q))
            .collect(),
    )
}

/// Degrees of the irreducible factors of a monic integer polynomial modulo
/// `q`, or `None` when the reduction is not squarefree.
pub fn factor_degrees(coeffs: &[BigInt], q: u64) -> Option<Vec<usize>> {
    let qb = BigInt::from(q);
    let f: Fp = trim(
        coeffs
            .iter()
            .map(|c| c.mod_floor(&qb).to_u64().unwrap())
            .collect(),
    );
    if f.len() != coeffs.len() {
        return None;
    }
    if gcd(&f, &derivative(&f, q), q).len() != 1 {
        return None;
    }
    let mut degrees = Vec::new();
    let mut rest = f;
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            degrees.push(rest.len() - 1);
            break;
        }
        h = powmod_poly(&h, q, &rest, q);
        let g = gcd(&rest, &sub(&h, &x, q), q);
        let gd = g.len() - 1;
        if gd > 0 {
            degrees.extend(std::iter::repeat_n(d, gd / d));
            rest = div(&rest, &g, q);
            h = rem(&h, &rest, q);
        }
    }
    Some(degrees)
}

/// Degrees `k` (with `1 <= k <= n/2`) of possible factors over Z that are
/// consistent with every modular factorisation pattern found.
pub fn possible_factor_degrees(coeffs: &[BigInt]) -> Vec<usize> {
    let n = coeffs.len() - 1;
    let mut allowed: Vec<bool> = (0..=n).map(|k| k >= 1 && 2 * k <= n).collect();
    let mut tried = 0;
    for q in [
        3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
    ] {
        let Some(degs) = factor_degrees(coeffs, q) else {
            continue;
        };
        tried += 1;
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for &d in &degs {
            for s in (d..=n).rev() {
                if sums[s - d] {
                    sums[s] = true;
                }
            }
        }
        for k in 0..=n {
            allowed[k] &= sums[k];
        }
        if tried >= 8 || allowed.iter().all(|a| !a) {
            break;
        }
    }
    (0..=n).filter(|&k| allowed[k]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn patterns_of_small_polynomials() {
        // x^2 + 1 splits mod 5, stays irreducible mod 3
        assert_eq!(factor_degrees(&ints(&[1, 0, 1]), 3), Some(vec![2]));
        assert_eq!(factor_degrees(&ints(&[1, 0, 1]), 5), Some(vec![1, 1]));
        // x^2 mod q is not squarefree
        assert_eq!(factor_degrees(&ints(&[0, 0, 1]), 7), None);
    }

    #[test]
    fn product_of_quadratics_keeps_degree_two() {
        // (x^2+x+1)(x^2-3x+1): a degree-2 factor must stay possible
        let f = ints(&[1, -2, -1, -2, 1]);
        assert!(possible_factor_degrees(&f).contains(&2));
    }

    #[test]
    fn irreducible_quartic_is_excluded() {
        // x^4 - x - 1 is irreducible over Q
        assert!(possible_factor_degrees(&ints(&[-1, -1, 0, 0, 1])).is_empty());
    }
}
