use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::One;

use super::IntMatrix;
use crate::error::{Error, Result};
use crate::exact::dominance::strictly_dominant;
use crate::exact::{
    isolate_real_roots, BigRat, FieldElement, FieldExt, MinimalPolynomial, NumberField, Poly,
    RootInterval,
};

/// Bisection depth below which a modulus tie between the leading root and
/// another root is treated as a real tie.
const DOMINANCE_BITS: u32 = 256;

/// Exact Perron–Frobenius eigendata of a hyperbolic integer matrix.
#[derive(Clone, Debug)]
pub struct PerronData {
    pub matrix: IntMatrix,
    pub field: Arc<NumberField>,
    /// Names the real embedding sending the generator to the PF root.
    pub embedding: RootInterval,
    pub eigenvalue: FieldElement,
    /// Right eigenvector normalized so that the first coordinate is 1.
    pub eigenvector: Vec<FieldElement>,
    /// Constant term of the minimal polynomial is +-1.
    pub is_unit: bool,
}

impl PerronData {
    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn minimal_polynomial(&self) -> &MinimalPolynomial {
        self.field.minpoly()
    }
}

/// Computes the PF eigenvalue and eigenvector of `a` exactly in `Q(lambda)`.
pub fn perron_data(a: &IntMatrix) -> Result<PerronData> {
    if !a.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let cp = a.charpoly();
    // Screen on the squarefree part so that e.g. the identity is reported as
    // not hyperbolic rather than reducible.
    let sq = Poly::from_ints(&cp).squarefree_part();
    let real = isolate_real_roots(&sq)?;
    let above_one = real
        .last()
        .is_some_and(|r| r.cmp_rational(&BigRat::one()) == Ordering::Greater);
    if !above_one {
        return Err(Error::NotHyperbolic);
    }

    let minpoly = MinimalPolynomial::new(cp)?;
    let is_unit = minpoly.is_unit();
    let field = NumberField::new(minpoly);
    let mut embedding = isolate_real_roots(field.modulus())?
        .pop()
        .ok_or(Error::NotHyperbolic)?;
    if !strictly_dominant(field.modulus(), &mut embedding, DOMINANCE_BITS) {
        return Err(Error::NotHyperbolic);
    }

    let lambda = field.generator();
    let eigenvector = kernel_vector(a, &lambda)?;
    for v in &eigenvector {
        if v.sign_refining(&mut embedding) != Ordering::Greater {
            return Err(Error::NonPositiveEigenvector);
        }
    }
    let pd = PerronData {
        matrix: a.clone(),
        field,
        embedding,
        eigenvalue: lambda,
        eigenvector,
        is_unit,
    };
    assert!(
        residual(&pd).iter().all(FieldElement::is_zero),
        "eigenvector residual must vanish"
    );
    Ok(pd)
}

/// `A v - lambda v`, coordinate by coordinate.
pub fn residual(pd: &PerronData) -> Vec<FieldElement> {
    let n = pd.matrix.dim();
    (0..n)
        .map(|i| {
            let mut acc = pd.field.zero();
            for j in 0..n {
                let a = BigRat::from_integer(pd.matrix.get(i, j).clone());
                acc = &acc + &pd.eigenvector[j].scale(&a);
            }
            &acc - &(&pd.eigenvalue * &pd.eigenvector[i])
        })
        .collect()
}

/// Solves `(A - lambda I) v = 0` over the field of `lambda` with `v_1 = 1`.
fn kernel_vector(a: &IntMatrix, lambda: &FieldElement) -> Result<Vec<FieldElement>> {
    let n = a.dim();
    let field = lambda.field();
    let mut m: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = field.from_rational(BigRat::from_integer(a.get(i, j).clone()));
                    if i == j {
                        &e - lambda
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();

    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv()?;
        for x in m[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..n {
                    let t = &f * &m[row][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "eigenspace has dimension {}",
            free.len()
        )));
    }
    let f = free[0];
    let mut v = vec![field.zero(); n];
    v[f] = field.one();
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -&m[r][f];
    }
    if v[0].is_zero() {
        return Err(Error::NonPositiveEigenvector);
    }
    let scale = v[0].inv()?;
    Ok(v.iter().map(|x| x * &scale).collect())
}

/// Perron data of `A^k` presented in the field of `A`: the eigenvector is
/// that of `A` and the eigenvalue is `λ^k`, checked exactly against the
/// explicit power.
pub fn perron_data_of_power(a: &IntMatrix, k: u32) -> Result<PerronData> {
    let k = k.max(1);
    let pd = perron_data(a)?;
    let power = PerronData {
        matrix: a.pow(k),
        eigenvalue: pd.eigenvalue.pow(k),
        ..pd
    };
    assert!(
        residual(&power).iter().all(FieldElement::is_zero),
        "eigenvector residual must vanish"
    );
    Ok(power)
}

impl PartialEq for PerronData {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
            && self.field == other.field
            && self.eigenvector == other.eigenvector
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::Zero;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn coords(e: &FieldElement) -> Vec<BigRat> {
        let mut c = e.coords().to_vec();
        c.resize(2, BigRat::zero());
        c
    }

    #[test]
    fn silver_examples() {
        // lambda = 3+2√2, so √2 = (lambda-3)/2
        let pd = perron_data(&m(&[&[5, 2], &[2, 1]])).unwrap();
        assert_eq!(pd.minimal_polynomial().display("x"), "x^2-6x+1");
        // √2 - 1 = (lambda - 5)/2
        assert_eq!(coords(&pd.eigenvector[1]), vec![rat(-5, 2), rat(1, 2)]);
        let pd = perron_data(&m(&[&[5, 1], &[4, 1]])).unwrap();
        // 2√2 - 2 = lambda - 5
        assert_eq!(coords(&pd.eigenvector[1]), vec![rat(-5, 1), rat(1, 1)]);
        assert!(pd.is_unit);
    }

    #[test]
    fn golden_example() {
        let pd = perron_data(&m(&[&[1, 1], &[1, 2]])).unwrap();
        // lambda = (3+√5)/2, (1+√5)/2 = lambda - 1
        assert_eq!(coords(&pd.eigenvector[1]), vec![rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn rejections() {
        assert_eq!(
            perron_data(&IntMatrix::identity(2)).unwrap_err(),
            Error::NotHyperbolic
        );
        assert_eq!(perron_data(&m(&[&[1]])).unwrap_err(), Error::NotHyperbolic);
        assert_eq!(
            perron_data(&m(&[&[2, 1], &[1, 2]])).unwrap_err(),
            Error::NotUnimodular
        );
        // elliptic
        assert_eq!(
            perron_data(&m(&[&[0, -1], &[1, 0]])).unwrap_err(),
            Error::NotHyperbolic
        );
        // parabolic
        assert_eq!(
            perron_data(&m(&[&[1, 1], &[0, 1]])).unwrap_err(),
            Error::NotHyperbolic
        );
        // block diagonal: reducible charpoly with a root > 1
        let b = m(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(perron_data(&b).unwrap_err(), Error::ReduciblePolynomial);
        // negative trace: dominant root is negative
        assert_eq!(
            perron_data(&m(&[&[-2, -1], &[-1, -1]])).unwrap_err(),
            Error::NotHyperbolic
        );
    }

    #[test]
    fn tribonacci() {
        let pd = perron_data(&m(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(pd.degree(), 3);
        assert!(residual(&pd).iter().all(FieldElement::is_zero));
        // v = (1, 1/t, 1/t^2)
        let t = &pd.eigenvalue;
        assert_eq!(&pd.eigenvector[1] * t, pd.field.one());
        assert_eq!(&(&pd.eigenvector[2] * t) * t, pd.field.one());
    }
}
