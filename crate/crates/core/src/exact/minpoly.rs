//! Monic integer polynomials verified irreducible over Q.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::modp::possible_factor_degrees;
use super::poly::{format_poly, Poly};
use super::roots::isolate_real_roots;
use super::BigRat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MinimalPolynomial {
    coeffs: Vec<BigInt>,
}

impl MinimalPolynomial {
    /// Little-endian monic coefficients; rejects anything reducible over Q.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
        }
        if !is_irreducible(&coeffs) {
            return Err(Error::ReduciblePolynomial);
        }
        Ok(MinimalPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_ints(&self.coeffs)
    }

    /// Whether the root is an algebraic unit (constant term is +-1).
    pub fn is_unit(&self) -> bool {
        self.coeffs[0].abs().is_one()
    }

    /// Polynomial discriminant.
    pub fn discriminant(&self) -> BigInt {
        let p = self.to_poly();
        let n = self.degree();
        // disc = (-1)^{n(n-1)/2} res(p, p') for monic p
        let res = resultant(&p, &p.derivative());
        let sign = if (n * (n - 1) / 2) % 2 == 1 {
            -BigRat::one()
        } else {
            BigRat::one()
        };
        (res * sign).to_integer()
    }

    pub fn display(&self, var: &str) -> String {
        format_poly(&self.coeffs, var)
    }
}

impl fmt::Debug for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

/// Resultant over Q via the Euclidean remainder sequence.
pub fn resultant(a: &Poly, b: &Poly) -> BigRat {
    let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
        return BigRat::zero();
    };
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = BigRat::one();
    loop {
        if db == 0 {
            return acc * num_traits::pow(b.coeff(0), da);
        }
        let r = a.rem(&b);
        let Some(dr) = r.degree() else {
            return BigRat::zero();
        };
        // res(a,b) = (-1)^{da db} lc(b)^{da-dr} res(b, r)
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b.leading().unwrap().clone(), da - dr);
        a = b;
        b = r;
        da = db;
        db = dr;
    }
}

/// Irreducibility over Q of a monic integer polynomial.
pub fn is_irreducible(coeffs: &[BigInt]) -> bool {
    let n = coeffs.len() - 1;
    if n == 1 {
        return true;
    }
    let p = Poly::from_ints(coeffs);
    if !p.is_squarefree() {
        return false;
    }
    if has_integer_root(&p) {
        return false;
    }
    if n <= 3 {
        return true;
    }
    let candidates = possible_factor_degrees(coeffs);
    candidates
        .into_iter()
        .filter(|&k| k >= 2)
        .all(|k| kronecker_factor(coeffs, k).is_none())
}

/// For a squarefree monic integer polynomial, rational roots are integers;
/// check the integers inside each isolating interval.
fn has_integer_root(p: &Poly) -> bool {
    let Ok(roots) = isolate_real_roots(p) else {
        return false;
    };
    for mut root in roots {
        root.refine_to(&BigRat::from_integer(BigInt::from(1)));
        let lo = root.low().ceil();
        let hi = root.high().floor();
        let mut k = lo;
        while k <= hi {
            if root.cmp_rational(&k) == Ordering::Equal {
                return true;
            }
            k += BigRat::one();
        }
    }
    false
}

fn divisors(v: &BigInt) -> Vec<BigInt> {
    let v = v.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= v {
        if (&v % &d).is_zero() {
            let other = &v / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Lagrange interpolation through integer points.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut term = Poly::constant(BigRat::from_integer(yi.clone()));
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = BigRat::from_integer(xi - xj);
            let lin = Poly::new(vec![BigRat::from_integer(-xj.clone()), BigRat::one()]);
            term = term.mul(&lin).scale(&denom.recip());
        }
        acc = acc.add(&term);
    }
    acc
}

/// Kronecker's method: searches for a monic integer factor of degree `k`.
pub fn kronecker_factor(coeffs: &[BigInt], k: usize) -> Option<Poly> {
    let p = Poly::from_ints(coeffs);
    // choose k+1 evaluation points where |p(x)| has few divisors
    let mut points: Vec<(usize, BigInt, BigInt)> = (-12i64..=12)
        .map(BigInt::from)
        .map(|x| {
            let v = p.eval(&BigRat::from_integer(x.clone())).to_integer();
            (if v.is_zero() { 0 } else { divisors(&v).len() }, x, v)
        })
        .collect();
    if points.iter().any(|(_, _, v)| v.is_zero()) {
        return Some(Poly::from_i64(&[0, 1]));
    }
    points.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.abs().cmp(&b.1.abs()))
            .then(a.1.cmp(&b.1))
    });
    points.truncate(k + 1);
    let xs: Vec<BigInt> = points.iter().map(|t| t.1.clone()).collect();
    let options: Vec<Vec<BigInt>> = points
        .iter()
        .map(|(_, _, v)| {
            divisors(v)
                .into_iter()
                .flat_map(|d| [d.clone(), -d])
                .collect()
        })
        .collect();
    let total: usize = options.iter().map(Vec::len).product();
    if total > 5_000_000 {
        // Out of reach for the search; treat as no factor found.
        return None;
    }
    let mut idx = vec![0usize; k + 1];
    loop {
        let ys: Vec<BigInt> = idx
            .iter()
            .zip(&options)
            .map(|(&i, o)| o[i].clone())
            .collect();
        let g = interpolate(&xs, &ys);
        if g.degree() == Some(k)
            && g.leading().is_some_and(|l| l.is_one())
            && g.has_integer_coeffs()
        {
            let (_, r) = p.div_rem(&g);
            if r.is_zero() {
                return Some(g);
            }
        }
        let mut pos = 0;
        loop {
            if pos > k {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Squarefree kernel: returns `(s, d)` with `v = s^2 d`, `d` squarefree and
/// carrying the sign of `v`.
pub fn squarefree_decomposition(v: &BigInt) -> (BigInt, BigInt) {
    let sign = if v.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut rest = v.abs();
    let mut square = BigInt::one();
    let mut d = BigInt::one();
    let mut q = BigInt::from(2);
    while &q * &q <= rest {
        while (&rest % &q).is_zero() {
            rest /= &q;
            if (&rest % &q).is_zero() {
                rest /= &q;
                square *= &q;
            } else {
                d *= &q;
            }
        }
        q += if q == BigInt::from(2) { 1 } else { 2 };
    }
    d *= rest;
    (square, d * sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn quadratics() {
        assert!(MinimalPolynomial::from_i64(&[1, -6, 1]).is_ok());
        assert!(MinimalPolynomial::from_i64(&[-2, 0, 1]).is_ok());
        assert_eq!(
            MinimalPolynomial::from_i64(&[1, -2, 1]).unwrap_err(),
            Error::ReduciblePolynomial
        );
        assert_eq!(
            MinimalPolynomial::from_i64(&[-1, 0, 1]).unwrap_err(),
            Error::ReduciblePolynomial
        );
        assert!(matches!(
            MinimalPolynomial::from_i64(&[1, 2]),
            Err(Error::InvalidPolynomial(_))
        ));
    }

    #[test]
    fn quartic_products_are_caught() {
        // (x^2+x+1)(x^2-3x+1)
        assert!(!is_irreducible(&ints(&[1, -2, -1, -2, 1])));
        // (x^2-2)(x^2-3) = x^4 - 5x^2 + 6
        assert!(!is_irreducible(&ints(&[6, 0, -5, 0, 1])));
        // x^4 - 10x^2 + 1 is irreducible over Q but reducible mod every prime
        assert!(is_irreducible(&ints(&[1, 0, -10, 0, 1])));
        assert!(is_irreducible(&ints(&[-1, -1, -1, 1])));
    }

    #[test]
    fn sextic_product_of_cubics() {
        // (x^3-x-1)(x^3-x^2-x-1)
        let a = Poly::from_i64(&[-1, -1, 0, 1]);
        let b = Poly::from_i64(&[-1, -1, -1, 1]);
        let c: Vec<BigInt> = a.mul(&b).coeffs().iter().map(|x| x.to_integer()).collect();
        assert!(!is_irreducible(&c));
    }

    #[test]
    fn discriminants() {
        assert_eq!(
            MinimalPolynomial::from_i64(&[1, -6, 1])
                .unwrap()
                .discriminant(),
            32.into()
        );
        assert_eq!(
            MinimalPolynomial::from_i64(&[-1, -1, -1, 1])
                .unwrap()
                .discriminant(),
            (-44).into()
        );
    }

    #[test]
    fn unit_flag() {
        assert!(MinimalPolynomial::from_i64(&[1, -6, 1]).unwrap().is_unit());
        assert!(!MinimalPolynomial::from_i64(&[-2, 0, 1]).unwrap().is_unit());
    }

    #[test]
    fn squarefree_kernel() {
        assert_eq!(squarefree_decomposition(&32.into()), (4.into(), 2.into()));
        assert_eq!(squarefree_decomposition(&45.into()), (3.into(), 5.into()));
        assert_eq!(
            squarefree_decomposition(&(-44).into()),
            (2.into(), (-11).into())
        );
        assert_eq!(squarefree_decomposition(&1.into()), (1.into(), 1.into()));
    }
}
