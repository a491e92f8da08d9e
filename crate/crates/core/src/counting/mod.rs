//! Closed-form cardinalities, the diagonal quadratic count, the norm
//! distribution oracle and the character sums behind them.

pub mod characters;
pub mod closed_form;
pub mod diag;
pub mod norm_dist;
pub mod tables;

pub use characters::{gauss_sum, jacobi_sum, verify_gauss_jacobi_relations, Character};
pub use closed_form::{closed_form_galois, closed_form_zn, closed_form_zn_composite, Counts};
pub use diag::{count_diag_quadratic, count_diag_quadratic_brute};
pub use norm_dist::{norm_distribution, oracle_counts};
