//! Real-root isolation by Sturm sequences and exact interval refinement.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::BigRat;
use crate::error::{Error, Result};

/// A half-open interval `(low, high]` containing exactly one real root of a
/// squarefree polynomial. Names a real embedding of `Q(root)`.
#[derive(Clone, Debug)]
pub struct RootInterval {
    low: BigRat,
    high: BigRat,
    poly: Arc<Poly>,
}

impl RootInterval {
    pub fn low(&self) -> &BigRat {
        &self.low
    }

    pub fn high(&self) -> &BigRat {
        &self.high
    }

    pub fn polynomial(&self) -> &Poly {
        &self.poly
    }

    pub fn width(&self) -> BigRat {
        &self.high - &self.low
    }

    /// Halves the interval, keeping the root inside.
    pub fn bisect(&mut self) {
        let mid = (&self.low + &self.high) / BigRat::from_integer(2.into());
        let at_mid = self.poly.eval(&mid);
        if at_mid.is_zero() {
            self.low = (&self.low + &mid) / BigRat::from_integer(2.into());
            self.high = mid;
            return;
        }
        let at_low = self.poly.eval(&self.low);
        if at_low.is_positive() == at_mid.is_positive() {
            self.low = mid;
        } else {
            self.high = mid;
        }
    }

    /// Bisects until the width is at most `eps`.
    pub fn refine_to(&mut self, eps: &BigRat) {
        while &self.width() > eps {
            self.bisect();
        }
    }

    /// Midpoint approximation as `f64` (reporting only).
    pub fn approx(&self) -> f64 {
        let mid = (&self.low + &self.high) / BigRat::from_integer(2.into());
        rat_to_f64(&mid)
    }

    /// Compares the root with a rational number exactly.
    pub fn cmp_rational(&self, q: &BigRat) -> Ordering {
        if q <= &self.low {
            return Ordering::Greater;
        }
        if q >= &self.high {
            if q == &self.high && self.poly.eval(q).is_zero() {
                return Ordering::Equal;
            }
            return Ordering::Less;
        }
        // low < q < high: one Sturm-free sign test decides.
        let at_q = self.poly.eval(q);
        if at_q.is_zero() {
            return Ordering::Equal;
        }
        let at_low = self.poly.eval(&self.low);
        // same sign at both ends of (low, q]: the root lies above q
        if at_low.is_positive() == at_q.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Encloses `f(root)` in a rational interval using the current bracket.
    pub fn enclose(&self, f: &Poly) -> (BigRat, BigRat) {
        let mut acc = (BigRat::zero(), BigRat::zero());
        for c in f.coeffs().iter().rev() {
            acc = interval_mul(&acc, &(self.low.clone(), self.high.clone()));
            acc.0 += c;
            acc.1 += c;
        }
        acc
    }

    /// Sign of `f(root)`, refining the bracket as needed. `None` when `f`
    /// vanishes at the root (`f` shares a factor with the defining polynomial).
    pub fn sign_of(&mut self, f: &Poly) -> Option<Ordering> {
        if f.is_zero() || vanishes_here(self, f) {
            return None;
        }
        loop {
            let (lo, hi) = self.enclose(f);
            if lo.is_positive() {
                return Some(Ordering::Greater);
            }
            if hi.is_negative() {
                return Some(Ordering::Less);
            }
            self.bisect();
        }
    }

    /// `floor(f(root))`, refining the bracket as needed. Terminates whenever
    /// `f(root)` is not an integer or `f` is constant.
    pub fn floor_of(&mut self, f: &Poly) -> BigInt {
        if f.degree().unwrap_or(0) == 0 {
            return f.coeff(0).floor().to_integer();
        }
        loop {
            let (lo, hi) = self.enclose(f);
            let fl = lo.floor();
            if hi < &fl + BigRat::one() {
                return fl.to_integer();
            }
            self.bisect();
        }
    }
}

fn vanishes_here(root: &RootInterval, f: &Poly) -> bool {
    let g = root.poly.gcd(f);
    if g.degree() == Some(0) {
        return false;
    }
    // The common factor has a root in (low, high] iff it changes sign there or
    // vanishes at `high`.
    sturm_count(&sturm_sequence(&g), &root.low, &root.high) > 0
}

fn interval_mul(a: &(BigRat, BigRat), b: &(BigRat, BigRat)) -> (BigRat, BigRat) {
    let products = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = products.iter().min().unwrap().clone();
    let hi = products.iter().max().unwrap().clone();
    (lo, hi)
}

pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]).neg();
        if r.is_zero() {
            break;
        }
        seq.push(r);
    }
    seq
}

fn sign_variations(seq: &[Poly], x: &BigRat) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots in `(a, b]`.
pub fn sturm_count(seq: &[Poly], a: &BigRat, b: &BigRat) -> usize {
    sign_variations(seq, a).saturating_sub(sign_variations(seq, b))
}

/// Strict bound on the absolute value of every root.
pub fn cauchy_bound(p: &Poly) -> BigRat {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(BigRat::zero);
    max + BigRat::one()
}

/// Isolates every real root of a squarefree polynomial, in increasing order.
pub fn isolate_real_roots(p: &Poly) -> Result<Vec<RootInterval>> {
    if p.degree().is_none() {
        return Err(Error::InvalidPolynomial("zero polynomial".into()));
    }
    if !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let poly = Arc::new(p.monic());
    let seq = sturm_sequence(&poly);
    let bound = cauchy_bound(&poly);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match sturm_count(&seq, &a, &b) {
            0 => {}
            1 => out.push(RootInterval {
                low: a,
                high: b,
                poly: Arc::clone(&poly),
            }),
            _ => {
                let mid = (&a + &b) / BigRat::from_integer(2.into());
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
    out.sort_by(|x, y| x.low.cmp(&y.low));
    Ok(out)
}

pub fn rat_to_f64(q: &BigRat) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale down huge numerators/denominators before converting.
    let n = q.numer().bits() as i64;
    let d = q.denom().bits() as i64;
    let shift = (n.max(d) - 1000).max(0) as usize;
    let num = q.numer() >> shift;
    let den = q.denom() >> shift;
    num.to_f64().unwrap_or(0.0) / den.to_f64().unwrap_or(1.0)
}
