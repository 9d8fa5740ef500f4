//! Exact integer scalars.
//!
//! Everything in this crate is exact. Lattice data and integer polynomial
//! coefficients are generic over [`Scalar`], which is satisfied by the
//! machine integers `i64`/`i128` and by the arbitrary-precision [`BigInt`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use serde_json::Value;

/// Exact signed integer usable as the scalar of the lattice and of integer
/// polynomial coefficients.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + Ord
    + std::hash::Hash
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_count(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("usize fits in scalar")
    }
}

impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

/// JSON rendering of a scalar: a number when it fits in 64 bits, otherwise
/// its decimal string.
pub fn scalar_json<T: Scalar>(x: &T) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}
