//! The Z-module spanned by the eigenvector coordinates and the trace form
//! `(x, y) -> Tr(xy)` restricted to it.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    det_rational, inverse_rational, BigRat, FieldElement, FieldExt, NumberField, RootInterval,
};
use crate::matrix::{bareiss_det, PerronData};

/// `m = Z b_1 + ... + Z b_n` inside a number field, with the real embedding
/// it came from.
#[derive(Clone, Debug)]
pub struct JacobianModule {
    pub field: Arc<NumberField>,
    pub embedding: RootInterval,
    pub basis: Vec<FieldElement>,
}

impl JacobianModule {
    /// A full module; the basis must be Q-linearly independent.
    pub fn new(basis: Vec<FieldElement>, embedding: RootInterval) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::DimensionMismatch("empty basis".into()));
        };
        let field = Arc::clone(first.field());
        if basis.iter().any(|b| !b.same_field(first)) {
            return Err(Error::FieldMismatch);
        }
        if basis.len() != field.degree() {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} elements in a degree {} field",
                basis.len(),
                field.degree()
            )));
        }
        let m = JacobianModule {
            field,
            embedding,
            basis,
        };
        if det_rational(&m.coordinate_matrix()).is_zero() {
            return Err(Error::DimensionMismatch(
                "basis is not linearly independent".into(),
            ));
        }
        Ok(m)
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    /// Rows are the power-basis coordinates of the generators.
    pub fn coordinate_matrix(&self) -> Vec<Vec<BigRat>> {
        let n = self.field.degree();
        self.basis
            .iter()
            .map(|b| {
                let mut c = b.coords().to_vec();
                c.resize(n, BigRat::zero());
                c
            })
            .collect()
    }

    /// Coordinates of `e` with respect to the module basis.
    pub fn coords_of(&self, e: &FieldElement) -> Result<Vec<BigRat>> {
        if !e.same_field(&self.basis[0]) {
            return Err(Error::FieldMismatch);
        }
        let n = self.field.degree();
        let inv = inverse_rational(&self.coordinate_matrix()).ok_or(Error::SingularForm)?;
        let mut c = e.coords().to_vec();
        c.resize(n, BigRat::zero());
        Ok((0..n)
            .map(|j| (0..n).map(|k| &c[k] * &inv[k][j]).sum())
            .collect())
    }

    pub fn contains(&self, e: &FieldElement) -> bool {
        self.coords_of(e)
            .is_ok_and(|c| c.iter().all(BigRat::is_integer))
    }

    /// Same lattice, possibly on a different basis.
    pub fn same_lattice(&self, other: &JacobianModule) -> bool {
        self.field == other.field
            && other.basis.iter().all(|b| self.contains(b))
            && self.basis.iter().all(|b| other.contains(b))
    }

    /// `mu * m`.
    pub fn scaled(&self, mu: &FieldElement) -> Result<JacobianModule> {
        let basis = self
            .basis
            .iter()
            .map(|b| b.try_mul(mu))
            .collect::<Result<Vec<_>>>()?;
        JacobianModule::new(basis, self.embedding.clone())
    }

    /// The same module on the basis `U (b_1, ..., b_n)`.
    pub fn with_basis_change(&self, u: &[Vec<BigInt>]) -> Result<JacobianModule> {
        let basis = u
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.basis)
                    .fold(self.basis[0].scale(&BigRat::zero()), |acc, (k, b)| {
                        &acc + &b.scale(&BigRat::from_integer(k.clone()))
                    })
            })
            .collect();
        JacobianModule::new(basis, self.embedding.clone())
    }
}

/// `m = Z v_1 + ... + Z v_n` for the normalized PF eigenvector.
pub fn module_of(pd: &PerronData) -> JacobianModule {
    JacobianModule {
        field: Arc::clone(&pd.field),
        embedding: pd.embedding.clone(),
        basis: pd.eigenvector.clone(),
    }
}

/// Symmetric matrix `a_ij = Tr(b_i b_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<BigRat>>,
}

impl GramMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        GramMatrix {
            entries: rows
                .iter()
                .map(|r| r.iter().map(|&x| BigRat::from_integer(x.into())).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

pub fn gram(m: &JacobianModule) -> GramMatrix {
    let n = m.degree();
    let mut entries = vec![vec![BigRat::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let t = (&m.basis[i] * &m.basis[j]).trace();
            entries[j][i] = t.clone();
            entries[i][j] = t;
        }
    }
    GramMatrix { entries }
}

/// Exact determinant: clear denominators, then Bareiss over Z.
pub fn determinant(g: &GramMatrix) -> BigRat {
    let n = g.dim();
    let l = g
        .entries
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<Vec<BigInt>> = g
        .entries
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| (x * BigRat::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    BigRat::new(bareiss_det(scaled), num_traits::pow(l, n))
}

/// Congruence diagonalization `P G P^T = diag(d_1, ..., d_n)` over Q.
pub fn diagonalize(g: &GramMatrix) -> Result<Vec<BigRat>> {
    let n = g.dim();
    let mut a = g.entries.clone();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            let j = (k + 1..n)
                .find(|&j| !a[k][j].is_zero())
                .ok_or(Error::SingularForm)?;
            // row_k += row_j, col_k += col_j; if that still leaves a zero
            // pivot, subtract instead.
            let plus = &a[k][k] + &a[k][j] + &a[k][j] + &a[j][j];
            let sign = if plus.is_zero() {
                -BigRat::one()
            } else {
                BigRat::one()
            };
            for c in 0..n {
                let t = &sign * &a[j][c];
                a[k][c] += t;
            }
            for r in 0..n {
                let t = &sign * &a[r][j];
                a[r][k] += t;
            }
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let t = &f * &a[k][c];
                a[i][c] -= t;
            }
            for r in k..n {
                let t = &f * &a[r][k];
                a[r][i] -= t;
            }
        }
        diag.push(p);
    }
    Ok(diag)
}

/// `#positive - #negative` over a congruence diagonalization.
pub fn signature(g: &GramMatrix) -> Result<i64> {
    let d = diagonalize(g)?;
    Ok(d.iter().map(|x| if x.is_positive() { 1 } else { -1 }).sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormReport {
    pub gram: GramMatrix,
    /// Gram determinant of the given basis.
    pub determinant: BigRat,
    pub signature: i64,
    pub diagonal: Vec<BigRat>,
    /// Discriminant of the coefficient ring of the module: independent of the
    /// basis and of scaling the module, hence a conjugacy invariant.
    pub ring_discriminant: BigRat,
}

pub fn form_report(m: &JacobianModule) -> Result<FormReport> {
    let g = gram(m);
    let det = determinant(&g);
    let diagonal = diagonalize(&g)?;
    let signature = diagonal
        .iter()
        .map(|x| if x.is_positive() { 1 } else { -1 })
        .sum();
    // index and Gram determinant both taken on m / b_1
    let index = ring_index(m)?;
    let unit_det = determinant(&gram(&normalized(m)?));
    let ring_discriminant = unit_det * BigRat::from_integer(&index * &index);
    Ok(FormReport {
        gram: g,
        determinant: det,
        signature,
        diagonal,
        ring_discriminant,
    })
}

/// `{x in Z^n : (sum x_j b_j) m ⊆ m}`, rows of the returned matrix spanning
/// the coefficient ring in module coordinates. Requires `1 ∈ m`, which holds
/// for modules built from a normalized eigenvector; otherwise the module is
/// first divided by its first generator.
pub fn coefficient_lattice(m: &JacobianModule) -> Result<Vec<Vec<BigInt>>> {
    let m = normalized(m)?;
    let n = m.degree();
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    // products b_j b_i in module coordinates: conditions sum_j x_j c[j][i][k] ∈ Z
    let mut c = vec![vec![Vec::new(); n]; n];
    for (j, bj) in m.basis.iter().enumerate() {
        for (i, bi) in m.basis.iter().enumerate() {
            c[j][i] = m.coords_of(&(bj * bi))?;
        }
    }
    for i in 0..n {
        for k in 0..n {
            let column: Vec<BigRat> = (0..n).map(|j| c[j][i][k].clone()).collect();
            let d = column
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            if d.is_one() {
                continue;
            }
            let s: Vec<BigInt> = column
                .iter()
                .map(|x| (x * BigRat::from_integer(d.clone())).to_integer())
                .collect();
            restrict_congruence(&mut basis, &s, &d);
        }
    }
    Ok(basis)
}

/// `[m : Λ]` where `Λ` is the coefficient ring.
pub fn ring_index(m: &JacobianModule) -> Result<BigInt> {
    Ok(bareiss_det(coefficient_lattice(m)?).abs())
}

/// The module divided by its first generator, so that it contains 1.
pub fn normalized(m: &JacobianModule) -> Result<JacobianModule> {
    if m.basis[0] == m.field.one() {
        return Ok(m.clone());
    }
    m.scaled(&m.basis[0].inv()?)
}

/// Replaces the lattice spanned by `basis` (rows) with its sublattice
/// `{x : x . s ≡ 0 mod d}`.
fn restrict_congruence(basis: &mut [Vec<BigInt>], s: &[BigInt], d: &BigInt) {
    let n = basis.len();
    let mut vals: Vec<BigInt> = basis
        .iter()
        .map(|row| {
            row.iter()
                .zip(s)
                .map(|(x, y)| x * y)
                .sum::<BigInt>()
                .mod_floor(d)
        })
        .collect();
    // Euclid on the values, mirrored on the rows, until one row carries the gcd.
    for i in 1..n {
        while !vals[i].is_zero() {
            let q = vals[0].div_floor(&vals[i]);
            for c in 0..n {
                let t = &q * &basis[i][c];
                basis[0][c] -= t;
            }
            vals[0] = &vals[0] - &q * &vals[i];
            basis.swap(0, i);
            vals.swap(0, i);
        }
    }
    let g = vals[0].gcd(d);
    let factor = d / g;
    for x in basis[0].iter_mut() {
        *x *= &factor;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, MinimalPolynomial};
    use crate::matrix::{perron_data, IntMatrix};

    fn report(rows: &[&[i64]]) -> FormReport {
        form_report(&module_of(
            &perron_data(&IntMatrix::from_i64(rows)).unwrap(),
        ))
        .unwrap()
    }

    #[test]
    fn silver_modules() {
        let a = report(&[&[5, 2], &[2, 1]]);
        assert_eq!(a.gram, GramMatrix::from_i64(&[&[2, -2], &[-2, 6]]));
        assert_eq!((a.determinant.clone(), a.signature), (rat(8, 1), 2));
        assert_eq!(a.ring_discriminant, rat(8, 1));
        let b = report(&[&[5, 1], &[4, 1]]);
        assert_eq!(b.gram, GramMatrix::from_i64(&[&[2, -4], &[-4, 24]]));
        assert_eq!((b.determinant.clone(), b.signature), (rat(32, 1), 2));
        assert_eq!(b.ring_discriminant, rat(32, 1));
    }

    #[test]
    fn golden_module() {
        let r = report(&[&[1, 1], &[1, 2]]);
        assert_eq!((r.determinant, r.signature), (rat(5, 1), 2));
    }

    #[test]
    fn signatures() {
        assert_eq!(
            signature(&GramMatrix::from_i64(&[&[1, 0], &[0, -1]])).unwrap(),
            0
        );
        assert_eq!(
            signature(&GramMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap(),
            0
        );
        assert_eq!(
            signature(&GramMatrix::from_i64(&[&[2, -2], &[-2, 6]])).unwrap(),
            2
        );
        // row_k += row_j would give a zero pivot here: 0 + 2*1 + (-2) = 0
        assert_eq!(
            signature(&GramMatrix::from_i64(&[&[0, 1], &[1, -2]])).unwrap(),
            0
        );
        assert_eq!(
            signature(&GramMatrix::from_i64(&[&[0, 0], &[0, 1]])).unwrap_err(),
            Error::SingularForm
        );
        assert_eq!(
            signature(&GramMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]])).unwrap_err(),
            Error::SingularForm
        );
    }

    #[test]
    fn conjugate_module_keeps_ring_discriminant() {
        // T = [[1,1],[0,1]] gives a module with raw determinant 2
        let r = report(&[&[7, -4], &[2, -1]]);
        assert_eq!(r.determinant, rat(2, 1));
        assert_eq!(r.ring_discriminant, rat(8, 1));
    }

    #[test]
    fn coefficient_ring_of_an_order_is_itself() {
        // Z + 2√2 Z over x^2 - 2
        let k = crate::exact::NumberField::new(MinimalPolynomial::from_i64(&[-2, 0, 1]).unwrap());
        let root = crate::exact::isolate_real_roots(k.modulus())
            .unwrap()
            .pop()
            .unwrap();
        let m = JacobianModule::new(vec![k.one(), k.from_i64s(&[0, 2])], root).unwrap();
        assert_eq!(ring_index(&m).unwrap(), BigInt::one());
        assert_eq!(form_report(&m).unwrap().ring_discriminant, rat(32, 1));
    }

    #[test]
    fn cubic_module() {
        let pd = perron_data(&IntMatrix::from_i64(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]])).unwrap();
        let r = form_report(&module_of(&pd)).unwrap();
        // v = (1, 1/t, 1/t^2) spans Z[t] since t is a unit
        assert_eq!(r.ring_discriminant, rat(-44, 1));
        assert_eq!(r.determinant, rat(-44, 1));
        // one real embedding and one complex pair
        assert_eq!(r.signature, 1);
    }
}
