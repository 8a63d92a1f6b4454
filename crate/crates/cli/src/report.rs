//! Serializable invariant reports. Exact values travel as strings; digits of
//! expansions as JSON integers.

use anosov_core::bratteli::{stable_iso_decide, Evidence, Verdict};
use anosov_core::exact::{BigRat, FieldElement, MinimalPolynomial};
use anosov_core::jacobi_perron::jp_expand;
use anosov_core::matrix::{charpoly_string, perron_data_of_power, IntMatrix, PerronData};
use anosov_core::quad::{
    canonical_basis, cf_expand, class_number, coefficient_ring, gauss_conjugacy_test,
    handelman_triple, min_rotation, ConjugacyVerdict, QuadField,
};
use anosov_core::trace_form::{form_report, module_of};
use anosov_core::Error;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub matrix: String,
    /// The report describes `matrix^power`.
    pub power: u32,
    /// Coefficients of `det(tI - A)`, constant term first.
    pub charpoly: Vec<String>,
    pub alexander: String,
    pub field: FieldInfo,
    pub perron: PerronInfo,
    /// Hermite basis of the eigenvector module (degree 2 only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub module: Option<[String; 2]>,
    pub gram: Vec<Vec<String>>,
    /// Gram determinant of the normalized eigenvector basis.
    pub gram_determinant: String,
    /// Discriminant of the coefficient ring of the module.
    pub delta: String,
    pub sigma: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conductor: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<ClassInfo>,
    /// Continued fraction of `v_2 / v_1` (degree 2 only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cf: Option<CfInfo>,
    pub jp: JpInfo,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub approx: Option<Approx>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub degree: usize,
    /// Squarefree `d` with `K = Q(√d)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<String>,
    /// Field discriminant for degree 2, else the discriminant of the
    /// minimal polynomial of `λ`.
    pub discriminant: String,
    /// Basis on which coordinates are written.
    pub basis: String,
    /// Minimal polynomial of the second basis element.
    pub generator_minpoly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerronInfo {
    pub minpoly: String,
    pub eigenvalue: String,
    pub eigenvector: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub order_discriminant: String,
    pub h_order: u64,
    /// Least rotation of the reduced period representing the ideal class.
    pub ideal_class_period: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfInfo {
    pub preperiod: Vec<i64>,
    pub period: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JpInfo {
    pub preperiod: Vec<Vec<i64>>,
    pub period: Vec<Vec<i64>>,
    pub canonical_period: Vec<Vec<i64>>,
    pub periodic: bool,
    pub terminated: bool,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Approx {
    pub lambda: f64,
    pub eigenvector: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub left: InvariantReport,
    pub right: InvariantReport,
    /// `SL_2(Z)` conjugacy by the period test; absent outside `SL_2(Z)`.
    pub conjugate: Option<bool>,
    /// Absent when the decision is undetermined.
    pub stably_isomorphic: Option<bool>,
    pub stable_iso: StableIsoInfo,
    pub differing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableIsoInfo {
    pub verdict: String,
    pub evidence: EvidenceInfo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum EvidenceInfo {
    PeriodTail {
        period: Vec<Vec<i64>>,
    },
    CommonBlock {
        t: String,
        j: u32,
        i: u32,
        block: String,
        length: u32,
    },
    Mismatch {
        invariant: String,
        left: String,
        right: String,
    },
    UndeterminedAtDegree {
        degree: usize,
        agreeing: Vec<String>,
    },
}

pub(crate) fn small(v: &BigInt) -> Result<i64, CliError> {
    v.to_i64().ok_or_else(|| CliError::Overflow(v.to_string()))
}

pub(crate) fn small_vec(v: &[BigInt]) -> Result<Vec<i64>, CliError> {
    v.iter().map(small).collect()
}

pub(crate) fn small_digits(v: &[Vec<BigInt>]) -> Result<Vec<Vec<i64>>, CliError> {
    v.iter().map(|b| small_vec(b)).collect()
}

fn tuple(coords: &[BigRat]) -> String {
    let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Writes field elements on `1, ω` for quadratic fields and on the power
/// basis of `λ` otherwise.
struct Coordinates {
    quad: Option<(QuadField, FieldElement)>,
    degree: usize,
}

impl Coordinates {
    fn new(pd: &PerronData) -> Result<Self, CliError> {
        let quad = if pd.degree() == 2 {
            Some(QuadField::from_field(&pd.field, &pd.embedding)?)
        } else {
            None
        };
        Ok(Coordinates {
            quad,
            degree: pd.degree(),
        })
    }

    fn show(&self, e: &FieldElement) -> String {
        match &self.quad {
            Some((q, lambda)) => {
                let c = e.coords();
                let c0 = c.first().cloned().unwrap_or_default();
                let c1 = c.get(1).cloned().unwrap_or_default();
                let (x, y) = q.coords(&lambda.scale(&c1).add_rational(&c0));
                tuple(&[x, y])
            }
            None => {
                let mut c = e.coords().to_vec();
                c.resize(self.degree, BigRat::default());
                tuple(&c)
            }
        }
    }
}

fn power_basis(n: usize) -> String {
    let parts: Vec<String> = (0..n)
        .map(|k| match k {
            0 => "1".into(),
            1 => "λ".into(),
            _ => format!("λ^{k}"),
        })
        .collect();
    parts.join(",")
}

pub fn invariant_report(
    a: &IntMatrix,
    power: u32,
    max_steps: usize,
    approx: bool,
) -> Result<InvariantReport, CliError> {
    if power == 0 {
        return Err(CliError::Usage("--power must be at least 1".into()));
    }
    let pd = perron_data_of_power(a, power)?;
    let m = pd.matrix.clone();
    let coords = Coordinates::new(&pd)?;
    let module = module_of(&pd);
    let fr = form_report(&module)?;
    assert!(
        fr.ring_discriminant.is_integer(),
        "order discriminant must be an integer"
    );

    let minpoly = pd.minimal_polynomial();
    // minimal polynomial of λ^k: the charpoly of A^k, irreducible since
    // λ^k generates the same field
    let eigen_minpoly = MinimalPolynomial::new(m.charpoly())?;
    let field = match &coords.quad {
        Some((q, _)) => FieldInfo {
            degree: 2,
            d: Some(q.d().to_string()),
            discriminant: q.discriminant().to_string(),
            basis: "1,ω".into(),
            generator_minpoly: q.field().minpoly().display("x"),
        },
        None => FieldInfo {
            degree: pd.degree(),
            d: None,
            discriminant: minpoly.discriminant().to_string(),
            basis: power_basis(pd.degree()),
            generator_minpoly: minpoly.display("x"),
        },
    };

    let (module_rows, conductor, class, cf) = if pd.degree() == 2 {
        let (_, hnf) = canonical_basis(&module)?;
        let order = coefficient_ring(&module)?;
        let triple = handelman_triple(&m)?;
        let ratio = pd.eigenvector[1].try_div(&pd.eigenvector[0])?;
        let expansion = cf_expand(&ratio, &pd.embedding)?;
        (
            Some([tuple(&hnf[0]), tuple(&hnf[1])]),
            Some(order.conductor.to_string()),
            Some(ClassInfo {
                order_discriminant: order.discriminant().to_string(),
                h_order: class_number(&order),
                ideal_class_period: small_vec(&triple.period)?,
            }),
            Some(CfInfo {
                preperiod: small_vec(&expansion.preperiod)?,
                period: small_vec(&expansion.period)?,
            }),
        )
    } else {
        (None, None, None, None)
    };

    let e = jp_expand(&pd, max_steps)?;
    let jp = JpInfo {
        preperiod: small_digits(&e.preperiod)?,
        period: small_digits(&e.period)?,
        canonical_period: small_digits(&e.canonical_period())?,
        periodic: e.is_periodic(),
        terminated: e.terminated,
        steps: e.states_seen,
    };

    let approx = approx.then(|| Approx {
        lambda: pd.eigenvalue.approx(&pd.embedding, 1e-12),
        eigenvector: pd
            .eigenvector
            .iter()
            .map(|v| v.approx(&pd.embedding, 1e-12))
            .collect(),
    });

    Ok(InvariantReport {
        matrix: a.to_text(),
        power,
        charpoly: m.charpoly().iter().map(|c| c.to_string()).collect(),
        alexander: charpoly_string(&m),
        field,
        perron: PerronInfo {
            minpoly: eigen_minpoly.display("x"),
            eigenvalue: coords.show(&pd.eigenvalue),
            eigenvector: pd.eigenvector.iter().map(|v| coords.show(v)).collect(),
        },
        module: module_rows,
        gram: fr
            .gram
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect(),
        gram_determinant: fr.determinant.to_string(),
        delta: fr.ring_discriminant.to_integer().to_string(),
        sigma: fr.signature,
        conductor,
        class,
        cf,
        jp,
        approx,
    })
}

fn least_rotation(p: &[i64]) -> Vec<i64> {
    let big: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
    min_rotation(&big)
        .1
        .iter()
        .map(|x| x.to_i64().unwrap_or_default())
        .collect()
}

/// Names of the invariants on which two reports disagree.
pub fn differing(l: &InvariantReport, r: &InvariantReport) -> Vec<String> {
    let mut out = Vec::new();
    let mut check = |name: &str, differs: bool| {
        if differs {
            out.push(name.to_string());
        }
    };
    check("degree", l.field.degree != r.field.degree);
    check("alexander", l.alexander != r.alexander);
    check("field", l.field.d != r.field.d);
    check("delta", l.delta != r.delta);
    check("sigma", l.sigma != r.sigma);
    check("conductor", l.conductor != r.conductor);
    let cf_key = |x: &InvariantReport| x.cf.as_ref().map(|c| least_rotation(&c.period));
    check("cf_period", cf_key(l) != cf_key(r));
    if l.field.degree > 2 || r.field.degree > 2 {
        check("jp_period", l.jp.canonical_period != r.jp.canonical_period);
    }
    out
}

fn evidence_info(e: &Evidence) -> Result<EvidenceInfo, CliError> {
    Ok(match e {
        Evidence::PeriodTail { period } => EvidenceInfo::PeriodTail {
            period: small_digits(period)?,
        },
        Evidence::CommonBlock(w) => EvidenceInfo::CommonBlock {
            t: w.t.to_text(),
            j: w.j,
            i: w.i,
            block: w.block.to_text(),
            length: w.length,
        },
        Evidence::Mismatch {
            invariant,
            left,
            right,
        } => EvidenceInfo::Mismatch {
            invariant: invariant.clone(),
            left: left.clone(),
            right: right.clone(),
        },
        Evidence::UndeterminedAtDegree { degree, agreeing } => EvidenceInfo::UndeterminedAtDegree {
            degree: *degree,
            agreeing: agreeing.clone(),
        },
    })
}

pub fn compare_report(
    a: &IntMatrix,
    b: &IntMatrix,
    max_steps: usize,
) -> Result<CompareReport, CliError> {
    let left = invariant_report(a, 1, max_steps, false)?;
    let right = invariant_report(b, 1, max_steps, false)?;
    let in_sl2 = |m: &IntMatrix| m.dim() == 2 && m.det() == BigInt::from(1);
    let conjugate = if in_sl2(a) && in_sl2(b) {
        Some(gauss_conjugacy_test(a, b)? == ConjugacyVerdict::Conjugate)
    } else {
        None
    };
    let decision = stable_iso_decide(a, b, max_steps)?;
    let stably_isomorphic = match decision.verdict {
        Verdict::Isomorphic => Some(true),
        Verdict::NotIsomorphic => Some(false),
        Verdict::Undetermined => None,
    };
    let differing = differing(&left, &right);
    Ok(CompareReport {
        left,
        right,
        conjugate,
        stably_isomorphic,
        stable_iso: StableIsoInfo {
            verdict: format!("{:?}", decision.verdict),
            evidence: evidence_info(&decision.evidence)?,
        },
        differing,
    })
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => CliError::Usage(m),
            other => CliError::Core(other),
        }
    }
}
