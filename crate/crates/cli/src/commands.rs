//! Thin wrappers over the expansion, factorization and diagram operations.

use std::fmt::Write;

use anosov_core::bratteli::{jp_diagram, stationary_diagram, BratteliDiagram};
use anosov_core::jacobi_perron::{factor_nonneg, jp_expand};
use anosov_core::matrix::{nonneg_representative, perron_data, IntMatrix};
use serde::{Deserialize, Serialize};

use crate::report::{small_digits, small_vec};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JpReport {
    pub matrix: String,
    pub preperiod: Vec<Vec<i64>>,
    pub period: Vec<Vec<i64>>,
    pub canonical_period: Vec<Vec<i64>>,
    pub periodic: bool,
    pub terminated: bool,
    pub steps: usize,
}

pub fn jp_report(a: &IntMatrix, max_steps: usize) -> Result<JpReport, CliError> {
    let e = jp_expand(&perron_data(a)?, max_steps)?;
    Ok(JpReport {
        matrix: a.to_text(),
        preperiod: small_digits(&e.preperiod)?,
        period: small_digits(&e.period)?,
        canonical_period: small_digits(&e.canonical_period())?,
        periodic: e.is_periodic(),
        terminated: e.terminated,
        steps: e.states_seen,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub matrix: String,
    /// `T` with `T A T^-1` non-negative, when `A` itself is not.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conjugator: Option<String>,
    /// The matrix actually factored.
    pub factored: String,
    pub digits: Vec<Vec<i64>>,
    pub alternatives: Vec<Vec<Vec<i64>>>,
}

/// `(representative, conjugator)`, the conjugator absent when `A` is
/// already non-negative.
fn nonneg(a: &IntMatrix, search_bound: u64) -> Result<(IntMatrix, Option<String>), CliError> {
    if a.is_nonnegative() {
        return Ok((a.clone(), None));
    }
    let (rep, t) = nonneg_representative(a, search_bound)?;
    Ok((rep, Some(t.to_text())))
}

pub fn factor_report(
    a: &IntMatrix,
    max_depth: usize,
    search_bound: u64,
) -> Result<FactorReport, CliError> {
    let (rep, conjugator) = nonneg(a, search_bound)?;
    let f = factor_nonneg(&rep, max_depth)?;
    Ok(FactorReport {
        matrix: a.to_text(),
        conjugator,
        factored: rep.to_text(),
        digits: small_digits(&f.digits)?,
        alternatives: f
            .alternatives
            .iter()
            .map(|d| small_digits(d))
            .collect::<Result<_, _>>()?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BratteliReport {
    pub matrix: String,
    /// `stationary` or `jp`.
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conjugator: Option<String>,
    pub root_edges: Vec<i64>,
    pub levels: Vec<String>,
    pub stationary_period: Option<usize>,
}

pub fn bratteli_diagram(
    a: &IntMatrix,
    depth: usize,
    from_jp: bool,
    max_steps: usize,
    search_bound: u64,
) -> Result<(BratteliDiagram, Option<String>), CliError> {
    if from_jp {
        let e = jp_expand(&perron_data(a)?, max_steps)?;
        return Ok((jp_diagram(&e, depth)?, None));
    }
    let (rep, conjugator) = nonneg(a, search_bound)?;
    Ok((stationary_diagram(&rep, depth)?, conjugator))
}

pub fn bratteli_report(
    a: &IntMatrix,
    d: &BratteliDiagram,
    from_jp: bool,
    conjugator: Option<String>,
) -> Result<BratteliReport, CliError> {
    Ok(BratteliReport {
        matrix: a.to_text(),
        source: if from_jp { "jp" } else { "stationary" }.into(),
        conjugator,
        root_edges: small_vec(&d.root_edges)?,
        levels: d.levels.iter().map(|m| m.to_text()).collect(),
        stationary_period: d.stationary_period,
    })
}

/// DOT rendering: vertex `i` of level `k` is `v{k}_{i}`; an edge is labelled
/// with its multiplicity, zero entries are omitted.
pub fn to_dot(d: &BratteliDiagram) -> String {
    let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n  root [shape=point];\n");
    for (i, m) in d.root_edges.iter().enumerate() {
        if *m != 0.into() {
            writeln!(s, "  root -> v1_{i} [label=\"{m}\"];").unwrap();
        }
    }
    for (k, level) in d.levels.iter().enumerate() {
        let n = level.dim();
        for i in 0..n {
            for j in 0..n {
                let m = level.get(i, j);
                if *m != 0.into() {
                    writeln!(s, "  v{}_{i} -> v{}_{j} [label=\"{m}\"];", k + 1, k + 2).unwrap();
                }
            }
        }
    }
    s.push_str("}\n");
    s
}
