//! Integer matrices acting on homology: characteristic polynomials, exact
//! Perron–Frobenius data, conjugation and non-negative representatives.

mod conjugacy;
mod int_matrix;
mod perron;

pub use conjugacy::{conjugate, nonneg_representative, sl2_by_height};
pub use int_matrix::{bareiss_det, charpoly, charpoly_string, IntMatrix};
pub use perron::{perron_data, perron_data_of_power, residual, PerronData};
