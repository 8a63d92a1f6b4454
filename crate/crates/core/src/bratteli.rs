//! Stationary Bratteli diagrams, common-block witnesses for conjugate
//! matrices, and the invariant-based stable isomorphism decision.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::jacobi_perron::{jp_expand, ElementaryMatrix, JPExpansion};
use crate::matrix::{perron_data, IntMatrix};
use crate::quad::{coefficient_ring, similar_modules, QuadField};
use crate::trace_form::{form_report, module_of};

/// Powers tried when absorbing `T` and `T^-1` into non-negative prefixes.
const MAX_ABSORB: u32 = 32;

/// Leveled multigraph given by its incidence matrices; level 0 is a single
/// vertex joined once to every vertex of level 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratteliDiagram {
    pub root_edges: Vec<BigInt>,
    pub levels: Vec<IntMatrix>,
    /// Index of the first level of the repeating block, if any.
    pub stationary_period: Option<usize>,
}

impl BratteliDiagram {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn vertices_per_level(&self) -> usize {
        self.root_edges.len()
    }
}

pub fn stationary_diagram(a: &IntMatrix, depth: usize) -> Result<BratteliDiagram> {
    if !a.is_nonnegative() {
        return Err(Error::NotNonNegative);
    }
    Ok(BratteliDiagram {
        root_edges: vec![BigInt::one(); a.dim()],
        levels: vec![a.clone(); depth],
        stationary_period: Some(0),
    })
}

/// Levels `B(b_1), B(b_2), ...` read from the expansion, cycling through the
/// period.
pub fn jp_diagram(e: &JPExpansion, depth: usize) -> Result<BratteliDiagram> {
    let n = e
        .preperiod
        .first()
        .or(e.period.first())
        .map(|b| b.len() + 1)
        .ok_or(Error::InsufficientDigits)?;
    let levels = (0..depth)
        .map(|k| {
            e.digit(k)
                .map(|b| ElementaryMatrix::new(b.clone()).to_matrix())
                .ok_or(Error::InsufficientDigits)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BratteliDiagram {
        root_edges: vec![BigInt::one(); n],
        levels,
        stationary_period: e.is_periodic().then_some(e.preperiod.len()),
    })
}

/// For `A2 = T A T^-1`: non-negative `R = T A^j` and `S = A^i T^-1` with
/// `R A^L S = A2^(L+i+j)` and `S R = A^(i+j)`, so the two stationary
/// diagrams share the block `A^L` after telescoping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonBlockWitness {
    /// The conjugator actually used (`T` or `-T`).
    pub t: IntMatrix,
    pub j: u32,
    pub i: u32,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub block: IntMatrix,
    pub length: u32,
}

impl CommonBlockWitness {
    /// Re-multiplies every claimed identity.
    pub fn verify(&self, a: &IntMatrix, a2: &IntMatrix) -> bool {
        let total = self.length + self.i + self.j;
        self.left.is_nonnegative()
            && self.right.is_nonnegative()
            && self.block == a.pow(self.length)
            && self.left.mul(&self.block).mul(&self.right) == a2.pow(total)
            && self.right.mul(&self.left) == a.pow(self.i + self.j)
            && self.left.mul(&self.right) == a2.pow(self.i + self.j)
    }
}

pub fn common_block_witness(
    a: &IntMatrix,
    a2: &IntMatrix,
    t: &IntMatrix,
    length: u32,
) -> Result<CommonBlockWitness> {
    if !a.is_nonnegative() || !a2.is_nonnegative() {
        return Err(Error::NotNonNegative);
    }
    let inv = t.inverse_unimodular()?;
    if t.mul(a) != a2.mul(t) {
        return Err(Error::DimensionMismatch("A2 is not T A T^-1".into()));
    }
    let minus = BigInt::from(-1);
    for (t, inv) in [
        (t.clone(), inv.clone()),
        (t.scale(&minus), inv.scale(&minus)),
    ] {
        let Some(j) = first_nonneg(|k| t.mul(&a.pow(k))) else {
            continue;
        };
        let Some(i) = first_nonneg(|k| a.pow(k).mul(&inv)) else {
            continue;
        };
        let w = CommonBlockWitness {
            left: t.mul(&a.pow(j)),
            right: a.pow(i).mul(&inv),
            block: a.pow(length),
            t,
            j,
            i,
            length,
        };
        if w.verify(a, a2) {
            return Ok(w);
        }
    }
    Err(Error::NotFound)
}

fn first_nonneg(f: impl Fn(u32) -> IntMatrix) -> Option<u32> {
    (0..=MAX_ABSORB).find(|&k| f(k).is_nonnegative())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Both Jacobi–Perron expansions end in this period (up to rotation).
    PeriodTail {
        period: Vec<Vec<BigInt>>,
    },
    CommonBlock(CommonBlockWitness),
    /// The named invariant differs.
    Mismatch {
        invariant: String,
        left: String,
        right: String,
    },
    /// Degree above 2: every available invariant agrees but no similarity
    /// test exists.
    UndeterminedAtDegree {
        degree: usize,
        agreeing: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableIsoVerdict {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

impl StableIsoVerdict {
    fn mismatch(invariant: &str, left: impl ToString, right: impl ToString) -> Self {
        StableIsoVerdict {
            verdict: Verdict::NotIsomorphic,
            evidence: Evidence::Mismatch {
                invariant: invariant.into(),
                left: left.to_string(),
                right: right.to_string(),
            },
        }
    }
}

/// Field, then conductor, then module similarity; agreement on all three is
/// certified by equal Jacobi–Perron period tails.
pub fn stable_iso_decide(
    a: &IntMatrix,
    b: &IntMatrix,
    max_steps: usize,
) -> Result<StableIsoVerdict> {
    let pa = perron_data(a)?;
    let pb = perron_data(b)?;
    if pa.degree() != pb.degree() {
        return Ok(StableIsoVerdict::mismatch(
            "degree",
            pa.degree(),
            pb.degree(),
        ));
    }
    let (ma, mb) = (module_of(&pa), module_of(&pb));
    if pa.degree() == 2 {
        let (qa, _) = QuadField::from_field(&pa.field, &pa.embedding)?;
        let (qb, _) = QuadField::from_field(&pb.field, &pb.embedding)?;
        if qa != qb {
            return Ok(StableIsoVerdict::mismatch("field", qa.d(), qb.d()));
        }
        let (oa, ob) = (coefficient_ring(&ma)?, coefficient_ring(&mb)?);
        if oa.conductor != ob.conductor {
            return Ok(StableIsoVerdict::mismatch(
                "conductor",
                &oa.conductor,
                &ob.conductor,
            ));
        }
        if !similar_modules(&ma, &mb) {
            return Ok(StableIsoVerdict::mismatch(
                "ideal_class",
                "not similar",
                "not similar",
            ));
        }
        let (ea, eb) = (jp_expand(&pa, max_steps)?, jp_expand(&pb, max_steps)?);
        if !ea.is_periodic() || !eb.is_periodic() {
            return Err(Error::BudgetExhausted(max_steps));
        }
        let (ka, kb) = (ea.canonical_period(), eb.canonical_period());
        if ka != kb {
            return Ok(StableIsoVerdict::mismatch(
                "jp_period",
                format!("{ka:?}"),
                format!("{kb:?}"),
            ));
        }
        return Ok(StableIsoVerdict {
            verdict: Verdict::Isomorphic,
            evidence: Evidence::PeriodTail { period: ka },
        });
    }
    let (ra, rb) = (form_report(&ma)?, form_report(&mb)?);
    if ra.ring_discriminant != rb.ring_discriminant {
        return Ok(StableIsoVerdict::mismatch(
            "delta",
            &ra.ring_discriminant,
            &rb.ring_discriminant,
        ));
    }
    if ra.signature != rb.signature {
        return Ok(StableIsoVerdict::mismatch(
            "sigma",
            ra.signature,
            rb.signature,
        ));
    }
    Ok(StableIsoVerdict {
        verdict: Verdict::Undetermined,
        evidence: Evidence::UndeterminedAtDegree {
            degree: pa.degree(),
            agreeing: vec!["delta".into(), "sigma".into()],
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::conjugate;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn stationary_levels() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let d = stationary_diagram(&a, 3).unwrap();
        assert_eq!(d.levels, vec![a.clone(); 3]);
        assert_eq!(stationary_diagram(&a, 0).unwrap().depth(), 0);
        assert_eq!(
            stationary_diagram(&m(&[&[1, -1], &[0, 1]]), 2).unwrap_err(),
            Error::NotNonNegative
        );
    }

    #[test]
    fn jp_levels() {
        let pd = perron_data(&m(&[&[5, 2], &[2, 1]])).unwrap();
        let e = jp_expand(&pd, 200).unwrap();
        let d = jp_diagram(&e, 4).unwrap();
        assert_eq!(d.levels[1..], vec![m(&[&[0, 1], &[1, 2]]); 3]);
        assert_eq!(d.stationary_period, Some(1));
        let stub = JPExpansion {
            preperiod: vec![vec![2.into()]],
            period: vec![],
            states_seen: 1,
            terminated: true,
        };
        assert_eq!(jp_diagram(&stub, 2).unwrap_err(), Error::InsufficientDigits);
    }

    #[test]
    fn witnesses() {
        let a = m(&[&[5, 2], &[2, 1]]);
        let w = common_block_witness(&a, &a, &IntMatrix::identity(2), 5).unwrap();
        assert_eq!((w.i, w.j), (0, 0));
        assert_eq!(w.block, a.pow(5));

        let t = m(&[&[1, 1], &[0, 1]]);
        let a2 = conjugate(&a, &t).unwrap();
        // a2 has negative entries, so take a non-negative conjugate pair instead
        assert!(common_block_witness(&a, &a2, &t, 4).is_err());
        let g = m(&[&[2, 1], &[1, 1]]);
        let swap = m(&[&[0, 1], &[1, 0]]);
        let g2 = conjugate(&g, &swap).unwrap();
        let w = common_block_witness(&g, &g2, &swap, 3).unwrap();
        assert!(w.verify(&g, &g2));
    }

    #[test]
    fn absorbing_a_nontrivial_conjugator() {
        let a = m(&[&[5, 2], &[2, 1]]);
        let t = m(&[&[-1, 2], &[1, -3]]);
        let a2 = conjugate(&a, &t).unwrap();
        assert!(a2.is_nonnegative());
        let w = common_block_witness(&a, &a2, &t, 4).unwrap();
        assert!(w.verify(&a, &a2));
        assert!(w.i + w.j > 0);
    }

    #[test]
    fn decisions() {
        let a = m(&[&[5, 2], &[2, 1]]);
        let b = m(&[&[5, 1], &[4, 1]]);
        let v = stable_iso_decide(&a, &b, 200).unwrap();
        assert_eq!(v.verdict, Verdict::NotIsomorphic);
        assert_eq!(
            v.evidence,
            Evidence::Mismatch {
                invariant: "conductor".into(),
                left: "1".into(),
                right: "2".into()
            }
        );
        assert_eq!(
            stable_iso_decide(&b, &a, 200).unwrap().verdict,
            Verdict::NotIsomorphic
        );
        let c = conjugate(&a, &m(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(
            stable_iso_decide(&a, &c, 200).unwrap().verdict,
            Verdict::Isomorphic
        );
        assert_eq!(
            stable_iso_decide(&a, &a.pow(2), 200).unwrap().verdict,
            Verdict::Isomorphic
        );
    }

    #[test]
    fn cubic_is_undetermined() {
        let t = m(&[&[1, 1, 1], &[1, 0, 0], &[0, 1, 0]]);
        let v = stable_iso_decide(&t, &t.pow(2), 200).unwrap();
        assert_eq!(v.verdict, Verdict::Undetermined);
    }
}
