use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::cf::{cf_expand, cf_expand_with_states, gl_key, min_rotation, proper_key};
use super::{QuadField, QuadOrder};
use crate::error::{Error, Result};
use crate::exact::{
    isolate_real_roots, BigRat, FieldElement, FieldExt, MinimalPolynomial, NumberField,
};
use crate::matrix::{perron_data, IntMatrix};
use crate::trace_form::{module_of, JacobianModule};

/// A quadratic module carried into its `Q(√d)` presentation.
struct QuadImage {
    quad: QuadField,
    basis: [FieldElement; 2],
}

impl QuadImage {
    fn of(m: &JacobianModule) -> Result<Self> {
        if m.field.degree() != 2 {
            return Err(Error::DegreeUnsupported(m.field.degree()));
        }
        let (quad, lambda) = QuadField::from_field(&m.field, &m.embedding)?;
        let map = |e: &FieldElement| {
            let c0 = e.coords().first().cloned().unwrap_or_default();
            let c1 = e.coords().get(1).cloned().unwrap_or_default();
            lambda.scale(&c1).add_rational(&c0)
        };
        let basis = [map(&m.basis[0]), map(&m.basis[1])];
        Ok(QuadImage { quad, basis })
    }

    /// `θ` with `m ~ Z + θZ`.
    fn theta(&self) -> Result<FieldElement> {
        self.basis[1].try_div(&self.basis[0])
    }
}

/// Coordinates `(x, y)` of `e = x + y θ`.
fn in_theta_basis(q: &QuadField, e: &FieldElement, theta: &FieldElement) -> (BigRat, BigRat) {
    let (e0, e1) = q.coords(e);
    let (t0, t1) = q.coords(theta);
    let y = e1 / &t1;
    let x = e0 - &y * t0;
    (x, y)
}

/// Conductor of the coefficient ring of a quadratic module: the least `f`
/// with `fω·m ⊆ m`, i.e. the lcm of the denominators of `ω` and `ωθ` in the
/// basis `{1, θ}` of `m / b_1`.
pub fn conductor_of(m: &JacobianModule) -> Result<BigInt> {
    let img = QuadImage::of(m)?;
    let theta = img.theta()?;
    let omega = img.quad.omega();
    let (a, b) = in_theta_basis(&img.quad, &omega, &theta);
    let (c, d) = in_theta_basis(&img.quad, &(&omega * &theta), &theta);
    Ok([a, b, c, d]
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom())))
}

/// The order `{α : α m ⊆ m}` of a quadratic module.
pub fn coefficient_ring(m: &JacobianModule) -> Result<QuadOrder> {
    let img = QuadImage::of(m)?;
    QuadOrder::new(img.quad, conductor_of(m)?)
}

/// Hermite basis of the module in `Q(√d)` coordinates on `{1, ω}`:
/// rows `(x1, y1), (0, y2)` with `x1, y2 > 0` and `0 <= y1 < y2`.
pub fn canonical_basis(m: &JacobianModule) -> Result<(QuadField, [[BigRat; 2]; 2])> {
    let img = QuadImage::of(m)?;
    let rows: Vec<(BigRat, BigRat)> = img.basis.iter().map(|b| img.quad.coords(b)).collect();
    let den = rows.iter().fold(BigInt::one(), |acc, (x, y)| {
        acc.lcm(x.denom()).lcm(y.denom())
    });
    let scale = BigRat::from_integer(den.clone());
    let mut r: Vec<[BigInt; 2]> = rows
        .iter()
        .map(|(x, y)| [(x * &scale).to_integer(), (y * &scale).to_integer()])
        .collect();
    // Euclid on the first column
    while !r[1][0].is_zero() {
        let q = r[0][0].div_floor(&r[1][0]);
        let t = [&r[0][0] - &q * &r[1][0], &r[0][1] - &q * &r[1][1]];
        r[0] = std::mem::replace(&mut r[1], t);
    }
    if r[0][0].is_negative() {
        r[0] = [-&r[0][0], -&r[0][1]];
    }
    if r[1][1].is_negative() {
        r[1][1] = -&r[1][1];
    }
    let y1 = r[0][1].mod_floor(&r[1][1]);
    let to = |v: &BigInt| BigRat::new(v.clone(), den.clone());
    let hnf = [[to(&r[0][0]), to(&y1)], [BigRat::zero(), to(&r[1][1])]];
    Ok((img.quad, hnf))
}

/// `m2 = μ m1` for some `μ` in the field: the `θ`'s are `GL_2(Z)`-equivalent,
/// i.e. their continued fractions share a period up to rotation.
pub fn similar_modules(m1: &JacobianModule, m2: &JacobianModule) -> bool {
    let (Ok(a), Ok(b)) = (QuadImage::of(m1), QuadImage::of(m2)) else {
        return false;
    };
    if a.quad != b.quad {
        return false;
    }
    let key = |img: &QuadImage| -> Option<Vec<BigInt>> {
        let theta = img.theta().ok()?;
        cf_expand(&theta, img.quad.embedding())
            .ok()
            .map(|cf| gl_key(&cf))
    };
    match (key(&a), key(&b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjugacyVerdict {
    Conjugate,
    NotConjugate,
}

/// Decides `SL_2(Z)` conjugacy of hyperbolic `A, B` by comparing the
/// continued fractions of their attracting fixed points.
pub fn gauss_conjugacy_test(a: &IntMatrix, b: &IntMatrix) -> Result<ConjugacyVerdict> {
    let (ka, kb) = (gauss_class_key(a)?, gauss_class_key(b)?);
    if a.charpoly() != b.charpoly() {
        return Ok(ConjugacyVerdict::NotConjugate);
    }
    Ok(if ka == kb {
        ConjugacyVerdict::Conjugate
    } else {
        ConjugacyVerdict::NotConjugate
    })
}

/// Period key of the attracting fixed point of a hyperbolic `A` in
/// `SL_2(Z)`. Two matrices with the same characteristic polynomial are
/// conjugate iff their keys agree.
pub fn gauss_class_key(m: &IntMatrix) -> Result<Vec<BigInt>> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch(
            "the period test needs 2x2 matrices".into(),
        ));
    }
    if m.det() != BigInt::one() {
        return Err(Error::NotUnimodular);
    }
    if m.trace().abs() <= BigInt::from(2) {
        return Err(Error::NotHyperbolic);
    }
    // A ~ B iff -A ~ -B
    let m = if m.trace().is_negative() {
        m.scale(&BigInt::from(-1))
    } else {
        m.clone()
    };
    let field = NumberField::new(MinimalPolynomial::new(m.charpoly())?);
    let root = isolate_real_roots(field.modulus())?
        .pop()
        .ok_or(Error::NotHyperbolic)?;
    let x = attracting_fixed_point(&m, &field)?;
    Ok(proper_key(&cf_expand(&x, &root)?))
}

/// Fixed point `x = (λ - d)/c` of `x -> (ax + b)/(cx + d)` belonging to the
/// expanding eigenvalue.
fn attracting_fixed_point(m: &IntMatrix, field: &Arc<NumberField>) -> Result<FieldElement> {
    let c = BigRat::from_integer(m.get(1, 0).clone());
    let d = BigRat::from_integer(m.get(1, 1).clone());
    if c.is_zero() {
        return Err(Error::NotHyperbolic);
    }
    Ok(field.generator().add_rational(&-d).scale(&c.recip()))
}

/// `(Λ, [I], K)` for a hyperbolic 2x2 matrix: the field, the coefficient
/// ring of the eigenvector module, and a reduced representative of its
/// similarity class.
#[derive(Clone, Debug)]
pub struct HandelmanTriple {
    pub field: QuadField,
    pub order: QuadOrder,
    /// `Z + θZ` with `θ` purely periodic, its period rotated to the least one.
    pub ideal_class_rep: JacobianModule,
    pub period: Vec<BigInt>,
}

impl PartialEq for HandelmanTriple {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.order.conductor == other.order.conductor
            && self.period == other.period
    }
}

impl Eq for HandelmanTriple {}

pub fn handelman_triple(a: &IntMatrix) -> Result<HandelmanTriple> {
    if a.dim() != 2 {
        return Err(Error::DegreeUnsupported(a.dim()));
    }
    let pd = perron_data(a)?;
    let m = module_of(&pd);
    let order = coefficient_ring(&m)?;
    let img = QuadImage::of(&m)?;
    let (cf, states) = cf_expand_with_states(&img.theta()?, img.quad.embedding())?;
    let (r, period) = min_rotation(&cf.period);
    let theta = states[cf.preperiod.len() + r].clone();
    let k = img.quad.field();
    let rep = JacobianModule::new(vec![k.one(), theta], img.quad.embedding().clone())?;
    Ok(HandelmanTriple {
        field: img.quad,
        order,
        ideal_class_rep: rep,
        period,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::matrix::conjugate;
    use crate::trace_form::{form_report, gram};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn module(rows: &[&[i64]]) -> JacobianModule {
        module_of(&perron_data(&m(rows)).unwrap())
    }

    #[test]
    fn conductors_of_examples() {
        assert_eq!(
            conductor_of(&module(&[&[5, 2], &[2, 1]])).unwrap(),
            1.into()
        );
        assert_eq!(
            conductor_of(&module(&[&[5, 1], &[4, 1]])).unwrap(),
            2.into()
        );
        assert_eq!(
            conductor_of(&module(&[&[7, -4], &[2, -1]])).unwrap(),
            1.into()
        );
    }

    #[test]
    fn orders_are_their_own_coefficient_rings() {
        for d in [2, 3, 5, 6, 7, 10, 13] {
            let q = QuadField::new(d).unwrap();
            for f in 1..=5 {
                let o = QuadOrder::new(q.clone(), f.into()).unwrap();
                let m = JacobianModule::new(o.basis().to_vec(), q.embedding().clone()).unwrap();
                assert_eq!(coefficient_ring(&m).unwrap(), o);
                assert_eq!(
                    form_report(&m).unwrap().ring_discriminant,
                    BigRat::from_integer(o.discriminant())
                );
            }
        }
    }

    #[test]
    fn gram_of_order_basis() {
        let q = QuadField::new(3).unwrap();
        let o = QuadOrder::new(q.clone(), 2.into()).unwrap();
        let m = JacobianModule::new(o.basis().to_vec(), q.embedding().clone()).unwrap();
        assert_eq!(
            gram(&m).entries,
            vec![vec![rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(24, 1)]]
        );
    }

    #[test]
    fn gauss_examples() {
        let a = m(&[&[5, 2], &[2, 1]]);
        let b = m(&[&[5, 1], &[4, 1]]);
        assert_eq!(
            gauss_conjugacy_test(&a, &b).unwrap(),
            ConjugacyVerdict::NotConjugate
        );
        assert_eq!(
            gauss_conjugacy_test(&a, &a).unwrap(),
            ConjugacyVerdict::Conjugate
        );
        let c = conjugate(&a, &m(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(
            gauss_conjugacy_test(&a, &c).unwrap(),
            ConjugacyVerdict::Conjugate
        );
        assert_eq!(
            gauss_conjugacy_test(&a, &IntMatrix::identity(2)).unwrap_err(),
            Error::NotHyperbolic
        );
        let neg = a.scale(&BigInt::from(-1));
        assert_eq!(
            gauss_conjugacy_test(&neg, &conjugate(&neg, &m(&[&[2, 1], &[1, 1]])).unwrap()).unwrap(),
            ConjugacyVerdict::Conjugate
        );
    }

    #[test]
    fn similarity() {
        let ma = module(&[&[5, 2], &[2, 1]]);
        let mb = module(&[&[5, 1], &[4, 1]]);
        assert!(!similar_modules(&ma, &mb));
        let mu = ma.field.from_i64s(&[0, 1]);
        assert!(similar_modules(&ma, &ma.scaled(&mu).unwrap()));
        let changed = ma
            .with_basis_change(&[vec![2.into(), 1.into()], vec![1.into(), 1.into()]])
            .unwrap();
        assert!(similar_modules(&ma, &changed));
    }

    #[test]
    fn triples() {
        let ta = handelman_triple(&m(&[&[5, 2], &[2, 1]])).unwrap();
        assert_eq!(
            (ta.field.d().clone(), ta.order.conductor.clone()),
            (2.into(), 1.into())
        );
        let tb = handelman_triple(&m(&[&[5, 1], &[4, 1]])).unwrap();
        assert_eq!(
            (tb.field.d().clone(), tb.order.conductor.clone()),
            (2.into(), 2.into())
        );
        assert_ne!(ta, tb);
        assert_eq!(coefficient_ring(&tb.ideal_class_rep).unwrap(), tb.order);
        let conj = conjugate(&m(&[&[5, 1], &[4, 1]]), &m(&[&[1, 0], &[1, 1]])).unwrap();
        if let Ok(tc) = handelman_triple(&conj) {
            assert_eq!(tc, tb);
        }
    }

    #[test]
    fn canonical_basis_is_basis_free() {
        let ma = module(&[&[5, 2], &[2, 1]]);
        let changed = ma
            .with_basis_change(&[vec![3.into(), 1.into()], vec![2.into(), 1.into()]])
            .unwrap();
        assert_eq!(
            canonical_basis(&ma).unwrap().1,
            canonical_basis(&changed).unwrap().1
        );
    }
}
