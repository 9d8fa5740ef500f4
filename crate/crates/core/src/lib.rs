//! Jet schemes of normal toric surface singularities.
//!
//! A toric surface singularity is given by a coprime pair `0 < p < q`, or
//! equivalently by the Hirzebruch–Jung continued fraction
//! `q/p = [c_2, ..., c_{e-1}]`. This crate builds its combinatorial data
//! ([`lattice`]), its equations and their jets ([`equations`]), classifies
//! the components of the jets over the singular point ([`components`]), and
//! checks the classification by exhaustive counting over small prime fields
//! ([`oracle`]).

pub mod components;
pub mod equations;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod scalar;

use num_bigint::BigInt;

pub use components::{
    an_components, build_graph, count_components, enumerate_components, lct, lct_via_mustata,
    recover_multiset, recover_order, speciality_one_count, ComponentError, ComponentId,
    ComponentRegistry, JetGraph,
};
pub use equations::{
    jet_truncate, riemenschneider_equations, syzygy_check, Binomial, JetSystem, SparsePolynomial,
};
pub use error::{Error, Result};
pub use lattice::{LatticeError, LatticeVector, SurfaceDescriptor};
pub use oracle::{
    enumerate_fiber, verify_monomial_witness, verify_stratum_counts, OracleConfig, OracleError,
};
pub use scalar::Scalar;

/// Surface data with arbitrary-precision integers.
pub type Surface = SurfaceDescriptor<BigInt>;
/// Surface data with machine integers.
pub type Surface64 = SurfaceDescriptor<i64>;
pub type Lattice64 = LatticeVector<i64>;
/// Polynomials with integer coefficients.
pub type IntPolynomial = SparsePolynomial<BigInt>;
pub type Polynomial64 = SparsePolynomial<i64>;
