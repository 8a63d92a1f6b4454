//! Real quadratic fields and their orders: conductors, module similarity,
//! class numbers and the continued-fraction test for `SL_2(Z)` conjugacy.

mod cf;
mod forms;
mod modules;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use cf::{cf_expand, cf_expand_with_states, gl_key, min_rotation, proper_key, CFExpansion};
pub use forms::{class_number, class_number_of_discriminant, reduced_forms, rho, Form};
pub use modules::{
    canonical_basis, coefficient_ring, conductor_of, gauss_class_key, gauss_conjugacy_test,
    handelman_triple, similar_modules, ConjugacyVerdict, HandelmanTriple,
};

use crate::error::{Error, Result};
use crate::exact::minpoly::squarefree_decomposition;
use crate::exact::{
    isolate_real_roots, BigRat, FieldElement, FieldExt, MinimalPolynomial, NumberField,
    RootInterval,
};

/// `Q(√d)` with `d` squarefree, presented on the basis `1, ω`.
#[derive(Clone)]
pub struct QuadField {
    d: BigInt,
    field: Arc<NumberField>,
    /// The embedding with `√d > 0`.
    embedding: RootInterval,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        Self::from_bigint(BigInt::from(d))
    }

    pub fn from_bigint(d: BigInt) -> Result<Self> {
        if d < BigInt::from(2) || squarefree_decomposition(&d).0 != BigInt::one() {
            return Err(Error::InvalidPolynomial(format!(
                "{d} is not a squarefree integer >= 2"
            )));
        }
        // minimal polynomial of ω
        let coeffs = if one_mod_four(&d) {
            vec![
                -(&d - BigInt::one()) / BigInt::from(4),
                BigInt::from(-1),
                BigInt::one(),
            ]
        } else {
            vec![-d.clone(), BigInt::zero(), BigInt::one()]
        };
        let field = NumberField::new(MinimalPolynomial::new(coeffs)?);
        let embedding = isolate_real_roots(field.modulus())?
            .pop()
            .expect("real quadratic field");
        Ok(QuadField {
            d,
            field,
            embedding,
        })
    }

    /// The quadratic field containing `K`, together with the image of the
    /// generator of `K` under the identification fixed by `embedding`.
    pub fn from_field(
        k: &Arc<NumberField>,
        embedding: &RootInterval,
    ) -> Result<(Self, FieldElement)> {
        if k.degree() != 2 {
            return Err(Error::DegreeUnsupported(k.degree()));
        }
        let c = k.minpoly().coeffs();
        let (b, c0) = (&c[1], &c[0]);
        let disc: BigInt = b * b - 4 * c0;
        let (s, d) = squarefree_decomposition(&disc);
        let q = QuadField::from_bigint(d)?;
        // λ = (-b ± s√d)/2, the sign read off from the embedding
        let centre = BigRat::new(-b.clone(), BigInt::from(2));
        let sign = match embedding.cmp_rational(&centre) {
            Ordering::Greater => BigInt::one(),
            _ => -BigInt::one(),
        };
        let half_s = BigRat::new(s * sign, BigInt::from(2));
        let image = q.sqrt_d().scale(&half_s).add_rational(&centre);
        Ok((q, image))
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn embedding(&self) -> &RootInterval {
        &self.embedding
    }

    pub fn omega(&self) -> FieldElement {
        self.field.generator()
    }

    pub fn sqrt_d(&self) -> FieldElement {
        if one_mod_four(&self.d) {
            self.field.from_i64s(&[-1, 2])
        } else {
            self.field.generator()
        }
    }

    /// Discriminant of the maximal order.
    pub fn discriminant(&self) -> BigInt {
        if one_mod_four(&self.d) {
            self.d.clone()
        } else {
            &self.d * 4
        }
    }

    /// `x + y ω`.
    pub fn element(&self, x: BigRat, y: BigRat) -> FieldElement {
        self.field.element(vec![x, y])
    }

    /// Coordinates `(x, y)` of `e = x + y ω`.
    pub fn coords(&self, e: &FieldElement) -> (BigRat, BigRat) {
        (
            e.coords().first().cloned().unwrap_or_default(),
            e.coords().get(1).cloned().unwrap_or_default(),
        )
    }
}

impl PartialEq for QuadField {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
    }
}

impl Eq for QuadField {}

impl fmt::Debug for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt {})", self.d)
    }
}

/// The order `Z + fωZ` of conductor `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadOrder {
    pub field: QuadField,
    pub conductor: BigInt,
}

impl QuadOrder {
    pub fn new(field: QuadField, conductor: BigInt) -> Result<Self> {
        if !conductor.is_positive() {
            return Err(Error::InvalidPolynomial(
                "conductor must be positive".into(),
            ));
        }
        Ok(QuadOrder { field, conductor })
    }

    /// `f^2 d_K`.
    pub fn discriminant(&self) -> BigInt {
        &self.conductor * &self.conductor * self.field.discriminant()
    }

    /// Basis `{1, fω}`.
    pub fn basis(&self) -> [FieldElement; 2] {
        let k = self.field.field();
        [
            k.one(),
            self.field
                .omega()
                .scale(&BigRat::from_integer(self.conductor.clone())),
        ]
    }
}

fn one_mod_four(d: &BigInt) -> bool {
    d.mod_floor(&BigInt::from(4)) == BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn omega_satisfies_its_quadratic() {
        for d in [2, 3, 5, 6, 7, 10, 13] {
            let q = QuadField::new(d).unwrap();
            let s = q.sqrt_d();
            assert_eq!(&s * &s, q.field().from_int(d));
            assert_eq!(s.sign_at(q.embedding()), Ordering::Greater);
        }
        assert!(QuadField::new(8).is_err());
        assert!(QuadField::new(1).is_err());
    }

    #[test]
    fn silver_field_identification() {
        let k = NumberField::new(MinimalPolynomial::from_i64(&[1, -6, 1]).unwrap());
        let root = isolate_real_roots(k.modulus()).unwrap().pop().unwrap();
        let (q, lambda) = QuadField::from_field(&k, &root).unwrap();
        assert_eq!(q.d(), &BigInt::from(2));
        // 3 + 2√2
        assert_eq!(q.coords(&lambda), (rat(3, 1), rat(2, 1)));
        let low = isolate_real_roots(k.modulus()).unwrap().remove(0);
        let (_, lambda) = QuadField::from_field(&k, &low).unwrap();
        assert_eq!(q.coords(&lambda), (rat(3, 1), rat(-2, 1)));
    }

    #[test]
    fn order_discriminants() {
        let o = QuadOrder::new(QuadField::new(2).unwrap(), 2.into()).unwrap();
        assert_eq!(o.discriminant(), 32.into());
        let o = QuadOrder::new(QuadField::new(5).unwrap(), 3.into()).unwrap();
        assert_eq!(o.discriminant(), 45.into());
    }
}
