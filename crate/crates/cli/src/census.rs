//! Enumeration of non-negative hyperbolic matrices in `SL_2(Z)`, bucketed by
//! characteristic polynomial, comparing the number of conjugacy classes met
//! with the class number of the order `Z[λ]`.

use std::collections::BTreeMap;

use anosov_core::matrix::{charpoly_string, perron_data, IntMatrix};
use anosov_core::quad::{
    cf_expand, class_number_of_discriminant, conductor_of, gauss_class_key, min_rotation,
};
use anosov_core::trace_form::{form_report, module_of};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::small_vec;
use crate::CliError;

/// Largest accepted entry bound.
pub const MAX_ENTRY_BOUND: i64 = 30;

/// One CSV line per matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub charpoly: String,
    pub trace: i64,
    pub matrix: String,
    pub class_id: usize,
    pub delta: String,
    pub sigma: i64,
    pub conductor: String,
    pub cf_period: String,
    pub h_order: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub class_id: usize,
    pub size: usize,
    pub representative: String,
    pub delta: String,
    pub sigma: i64,
    pub conductor: String,
    pub cf_period: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BucketSummary {
    pub charpoly: String,
    pub trace: i64,
    pub matrices: Vec<String>,
    pub gauss_classes: usize,
    pub h_order: u64,
    /// `min / max` of `gauss_classes` and `h_order`.
    pub agreement_with_conjecture: f64,
    pub classes: Vec<ClassSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub entry_bound: i64,
    pub matrices: usize,
    pub buckets: Vec<BucketSummary>,
    /// Fraction of buckets with `gauss_classes == h_order`.
    pub agreement_overall: f64,
}

/// Invariants of one matrix, before class numbering.
struct Entry {
    matrix: IntMatrix,
    trace: i64,
    charpoly: String,
    key: Vec<BigInt>,
    delta: String,
    sigma: i64,
    conductor: String,
    cf_period: String,
}

/// `[[a, b], [c, d]]` with `0 <= a, b, c, d <= bound`, `ad - bc = 1` and
/// `a + d > 2`, in lexicographic order of `(a, b, c, d)`.
pub fn enumerate(bound: i64) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound {
            for c in 0..=bound {
                for d in 0..=bound {
                    if a * d - b * c == 1 && a + d > 2 {
                        out.push(IntMatrix::from_i64(&[&[a, b], &[c, d]]));
                    }
                }
            }
        }
    }
    out
}

fn format_period(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn analyse(m: &IntMatrix) -> Result<Entry, CliError> {
    let pd = perron_data(m)?;
    let module = module_of(&pd);
    let fr = form_report(&module)?;
    let ratio = pd.eigenvector[1].try_div(&pd.eigenvector[0])?;
    let cf = cf_expand(&ratio, &pd.embedding)?;
    Ok(Entry {
        matrix: m.clone(),
        trace: crate::report::small(&m.trace())?,
        charpoly: charpoly_string(m),
        key: gauss_class_key(m)?,
        delta: fr.ring_discriminant.to_integer().to_string(),
        sigma: fr.signature,
        conductor: conductor_of(&module)?.to_string(),
        cf_period: format_period(&small_vec(&min_rotation(&cf.period).1)?),
    })
}

/// Runs the census on a pool of `parallel` workers. The output depends only
/// on `bound`.
pub fn run_census(
    bound: i64,
    parallel: usize,
) -> Result<(Vec<CensusRow>, CensusSummary), CliError> {
    if !(0..=MAX_ENTRY_BOUND).contains(&bound) {
        return Err(CliError::Usage(format!(
            "--entry-bound must lie in 0..={MAX_ENTRY_BOUND}"
        )));
    }
    if parallel == 0 {
        return Err(CliError::Usage("--parallel must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel)
        .build()
        .map_err(|e| CliError::Io(e.to_string()))?;
    let matrices = enumerate(bound);
    let entries: Vec<Entry> = pool.install(|| {
        matrices
            .par_iter()
            .map(analyse)
            .collect::<Result<Vec<_>, _>>()
    })?;

    let mut buckets: BTreeMap<(i64, String), Vec<Entry>> = BTreeMap::new();
    for e in entries {
        buckets
            .entry((e.trace, e.charpoly.clone()))
            .or_default()
            .push(e);
    }

    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for ((trace, charpoly), bucket) in buckets {
        let disc = i128::from(trace) * i128::from(trace) - 4;
        let h_order = class_number_of_discriminant(disc);
        let mut keys: Vec<&Vec<BigInt>> = Vec::new();
        let mut classes: Vec<ClassSummary> = Vec::new();
        for e in &bucket {
            let id = match keys.iter().position(|k| *k == &e.key) {
                Some(i) => i + 1,
                None => {
                    keys.push(&e.key);
                    classes.push(ClassSummary {
                        class_id: keys.len(),
                        size: 0,
                        representative: e.matrix.to_text(),
                        delta: e.delta.clone(),
                        sigma: e.sigma,
                        conductor: e.conductor.clone(),
                        cf_period: e.cf_period.clone(),
                    });
                    keys.len()
                }
            };
            classes[id - 1].size += 1;
            rows.push(CensusRow {
                charpoly: charpoly.clone(),
                trace,
                matrix: e.matrix.to_text(),
                class_id: id,
                delta: e.delta.clone(),
                sigma: e.sigma,
                conductor: e.conductor.clone(),
                cf_period: e.cf_period.clone(),
                h_order,
            });
        }
        let g = classes.len();
        let agreement = g.min(h_order as usize) as f64 / g.max(h_order as usize).max(1) as f64;
        summaries.push(BucketSummary {
            charpoly,
            trace,
            matrices: bucket.iter().map(|e| e.matrix.to_text()).collect(),
            gauss_classes: g,
            h_order,
            agreement_with_conjecture: agreement,
            classes,
        });
    }
    let agreeing = summaries
        .iter()
        .filter(|b| b.gauss_classes as u64 == b.h_order)
        .count();
    let agreement_overall = if summaries.is_empty() {
        1.0
    } else {
        agreeing as f64 / summaries.len() as f64
    };
    let summary = CensusSummary {
        entry_bound: bound,
        matrices: rows.len(),
        buckets: summaries,
        agreement_overall,
    };
    Ok((rows, summary))
}

pub fn write_csv<W: std::io::Write>(rows: &[CensusRow], out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}
