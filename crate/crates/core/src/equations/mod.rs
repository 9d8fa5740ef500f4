//! Polynomial layer: the binomial equations of the surface, their jet
//! truncations, and the syzygies among them.

pub mod binomial;
pub mod jets;
pub mod poly;
pub mod syzygy;

pub use binomial::{
    is_equation_label, riemenschneider_equations, weight_balance_check, Binomial, Monomial,
};
pub use jets::{jet_truncate, jet_truncate_centered, JetSystem, JetVariable};
pub use poly::{Coefficient, PrimeField, SparsePolynomial};
pub use syzygy::{admissible_triples, syzygy_check, Syzygy, SyzygyError};
