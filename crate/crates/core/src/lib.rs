//! Exact conjugacy invariants of hyperbolic integer matrices.
//!
//! The input is always an integer matrix `A` (the action of an Anosov or
//! pseudo-Anosov map on homology). From it the crate derives, in exact
//! arithmetic: the Perron–Frobenius eigendata in `K = Q(λ)`, the Z-module
//! spanned by the normalised eigenvector, the trace form with its
//! determinant and signature, quadratic orders and ideal-class data,
//! Jacobi–Perron expansions with periodicity detection, and stationary
//! Bratteli diagrams together with a stable-isomorphism decision.

#![allow(clippy::needless_range_loop)]

pub mod bratteli;
pub mod error;
pub mod exact;
pub mod jacobi_perron;
pub mod matrix;
pub mod quad;
pub mod trace_form;

pub use error::{Error, Result};
