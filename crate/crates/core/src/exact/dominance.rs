//! Exact test that a real root strictly dominates every other root in
//! absolute value, via Schur–Cohn root counting in a disc.

use std::cmp::Ordering;

use num_traits::Signed;

use super::poly::Poly;
use super::roots::RootInterval;
use super::BigRat;

/// Number of roots (with multiplicity) strictly inside the unit disc, or
/// `None` when the transform degenerates (roots on the unit circle, or an
/// unlucky radius).
pub fn roots_in_unit_disc(p: &Poly) -> Option<usize> {
    let mut p = p.clone();
    let mut count = 0;
    loop {
        let n = p.degree()?;
        if n == 0 {
            return Some(count);
        }
        let a0 = p.coeff(0);
        let an = p.coeff(n);
        let rev = p.reversed_padded(n);
        match an.abs().cmp(&a0.abs()) {
            Ordering::Greater => {
                // an*p - a0*p* vanishes at 0 and keeps degree n
                let g = p.scale(&an).sub(&rev.scale(&a0));
                let shifted = g.coeffs()[1..].to_vec();
                p = Poly::new(shifted);
                count += 1;
            }
            Ordering::Less => {
                p = p.scale(&a0).sub(&rev.scale(&an));
            }
            Ordering::Equal => return None,
        }
        if p.is_zero() {
            return None;
        }
    }
}

/// Roots of `p` with `|z| < r`.
pub fn roots_in_disc(p: &Poly, r: &BigRat) -> Option<usize> {
    roots_in_unit_disc(&p.scale_argument(r))
}

/// Decides whether the root named by `root` (assumed real and positive)
/// strictly exceeds the modulus of every other root of `p`. Refines the
/// bracket up to width `2^-max_bits`; an unresolved tie reports `false`.
pub fn strictly_dominant(p: &Poly, root: &mut RootInterval, max_bits: u32) -> bool {
    let n = p.degree().unwrap_or(0);
    if n <= 1 {
        return true;
    }
    let floor_width = BigRat::new(1.into(), num_bigint::BigInt::from(1) << max_bits);
    loop {
        if root.low().is_positive() {
            if roots_in_disc(p, root.low()) == Some(n - 1) {
                return true;
            }
            if let Some(k) = roots_in_disc(p, root.high()) {
                if k < n {
                    return false;
                }
            }
        }
        if root.width() < floor_width {
            return false;
        }
        root.bisect();
    }
}

impl Poly {
    /// Coefficients reversed as a degree-`n` polynomial.
    pub(crate) fn reversed_padded(&self, n: usize) -> Poly {
        let mut c: Vec<BigRat> = (0..=n).map(|k| self.coeff(k)).collect();
        c.reverse();
        Poly::new(c)
    }
}
