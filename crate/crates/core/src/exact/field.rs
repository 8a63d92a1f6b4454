//! Arithmetic in `K = Q(λ)` on the power basis `1, λ, …, λ^{n-1}`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::minpoly::MinimalPolynomial;
use super::poly::Poly;
use super::roots::RootInterval;
use super::{det_rational, BigRat};
use crate::error::{Error, Result};

/// The number field cut out by a minimal polynomial.
pub struct NumberField {
    minpoly: MinimalPolynomial,
    modulus: Poly,
    basis_traces: Vec<BigRat>,
}

impl NumberField {
    pub fn new(minpoly: MinimalPolynomial) -> Arc<Self> {
        let modulus = minpoly.to_poly();
        let n = minpoly.degree();
        let mut field = NumberField {
            minpoly,
            modulus,
            basis_traces: Vec::new(),
        };
        // trace of multiplication by λ^k, read off its multiplication matrix
        let traces = (0..n)
            .map(|k| {
                let mut coords = vec![BigRat::zero(); n];
                coords[k] = BigRat::one();
                matrix_trace(&field.multiplication_matrix_of(&coords))
            })
            .collect();
        field.basis_traces = traces;
        Arc::new(field)
    }

    pub fn minpoly(&self) -> &MinimalPolynomial {
        &self.minpoly
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    fn multiplication_matrix_of(&self, coords: &[BigRat]) -> Vec<Vec<BigRat>> {
        let n = self.degree();
        let a = Poly::new(coords.to_vec());
        let mut m = vec![vec![BigRat::zero(); n]; n];
        for j in 0..n {
            let col = a.mul(&Poly::monomial(BigRat::one(), j)).rem(&self.modulus);
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.coeff(i);
            }
        }
        m
    }

    /// Trace of `λ^k` for `k < n`.
    pub fn basis_trace(&self, k: usize) -> &BigRat {
        &self.basis_traces[k]
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.minpoly)
    }
}

fn matrix_trace(m: &[Vec<BigRat>]) -> BigRat {
    m.iter().enumerate().map(|(i, row)| row[i].clone()).sum()
}

/// Shorthand constructors on a shared field handle.
#[allow(clippy::wrong_self_convention)]
pub trait FieldExt {
    fn element(&self, coords: Vec<BigRat>) -> FieldElement;
    fn from_i64s(&self, coords: &[i64]) -> FieldElement;
    fn from_rational(&self, q: BigRat) -> FieldElement;
    fn from_int(&self, k: i64) -> FieldElement;
    fn generator(&self) -> FieldElement;
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
}

impl FieldExt for Arc<NumberField> {
    fn element(&self, coords: Vec<BigRat>) -> FieldElement {
        FieldElement::from_poly(Arc::clone(self), &Poly::new(coords))
    }

    fn from_i64s(&self, coords: &[i64]) -> FieldElement {
        self.element(
            coords
                .iter()
                .map(|&c| BigRat::from_integer(c.into()))
                .collect(),
        )
    }

    fn from_rational(&self, q: BigRat) -> FieldElement {
        self.element(vec![q])
    }

    fn from_int(&self, k: i64) -> FieldElement {
        self.from_rational(BigRat::from_integer(k.into()))
    }

    fn generator(&self) -> FieldElement {
        self.element(vec![BigRat::zero(), BigRat::one()])
    }

    fn zero(&self) -> FieldElement {
        self.element(Vec::new())
    }

    fn one(&self) -> FieldElement {
        self.from_int(1)
    }
}

/// An element of a number field; equality is coordinate-wise on the power
/// basis.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<BigRat>,
}

impl FieldElement {
    pub fn from_poly(field: Arc<NumberField>, p: &Poly) -> Self {
        let n = field.degree();
        let r = p.rem(field.modulus());
        let coords = (0..n).map(|k| r.coeff(k)).collect();
        FieldElement { field, coords }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRat] {
        &self.coords
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    pub fn same_field(&self, other: &FieldElement) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn to_rational(&self) -> Option<BigRat> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElement {
            field: Arc::clone(&self.field),
            coords,
        })
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(FieldElement {
            field: Arc::clone(&self.field),
            coords,
        })
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(FieldElement::from_poly(
            Arc::clone(&self.field),
            &self.as_poly().mul(&other.as_poly()),
        ))
    }

    pub fn scale(&self, q: &BigRat) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn add_rational(&self, q: &BigRat) -> FieldElement {
        let mut coords = self.coords.clone();
        coords[0] += q;
        FieldElement {
            field: Arc::clone(&self.field),
            coords,
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.as_poly().xgcd(self.field.modulus());
        debug_assert_eq!(g.degree(), Some(0));
        Ok(FieldElement::from_poly(Arc::clone(&self.field), &s))
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Matrix of `x ↦ self·x` on the power basis (column `j` is `self·λ^j`).
    pub fn multiplication_matrix(&self) -> Vec<Vec<BigRat>> {
        self.field.multiplication_matrix_of(&self.coords)
    }

    /// Trace of multiplication by `self`, i.e. the sum of the conjugates.
    pub fn trace(&self) -> BigRat {
        self.coords
            .iter()
            .enumerate()
            .map(|(k, c)| c * self.field.basis_trace(k))
            .sum()
    }

    pub fn norm(&self) -> BigRat {
        det_rational(&self.multiplication_matrix())
    }

    /// Sign under the embedding named by `root`, refining it in place.
    pub fn sign_refining(&self, root: &mut RootInterval) -> Ordering {
        if self.is_rational() {
            return self.coords[0].cmp(&BigRat::zero());
        }
        root.sign_of(&self.as_poly())
            .expect("non-rational element cannot vanish at a root of its minimal polynomial")
    }

    pub fn sign_at(&self, root: &RootInterval) -> Ordering {
        self.sign_refining(&mut root.clone())
    }

    pub fn floor_refining(&self, root: &mut RootInterval) -> BigInt {
        root.floor_of(&self.as_poly())
    }

    /// Exact comparison under the embedding named by `root`.
    pub fn cmp_at(&self, other: &FieldElement, root: &mut RootInterval) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign_refining(root))
    }

    /// Floating approximation under `root` with absolute error below `eps`.
    pub fn approx(&self, root: &RootInterval, eps: f64) -> f64 {
        let mut r = root.clone();
        let target = BigRat::from_float(eps)
            .unwrap_or_else(|| BigRat::new(1.into(), BigInt::from(1u64 << 40)));
        loop {
            let (lo, hi) = r.enclose(&self.as_poly());
            if &hi - &lo < target {
                return super::roots::rat_to_f64(&((lo + hi) / BigRat::from_integer(2.into())));
            }
            r.bisect();
        }
    }
}

/// Product of two elements of the same field.
pub fn field_mul(a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    a.try_mul(b)
}

/// Trace of the multiplication-by-`a` endomorphism.
pub fn trace(a: &FieldElement) -> BigRat {
    a.trace()
}

/// `floor` of `a` under the real embedding named by `root`.
pub fn floor_of(a: &FieldElement, root: &RootInterval) -> BigInt {
    a.floor_refining(&mut root.clone())
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

// Operator sugar for elements known to share a field; mismatched fields panic.
impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.scale(&-BigRat::one())
    }
}
