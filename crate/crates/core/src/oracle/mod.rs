//! Brute-force verification over small prime fields.
//!
//! The oracle never uses the classification: it enumerates jets, reads off
//! the orders of the coordinates, and compares the counts with what the
//! classification predicts.

pub mod an;
pub mod enumerate;
pub mod interpolate;
pub mod report;
pub mod witness;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use an::{an_chart, an_inclusion_exclusion};
pub use enumerate::{enumerate_fiber, FiberCount};
pub use interpolate::{dimension_estimate, DimensionEstimate};
pub use report::{verify_stratum_counts, Check, OracleReport};
pub use witness::{verify_monomial_witness, WitnessChecker};

use crate::components::ComponentError;

/// Environment variable overriding the search budget in bits.
pub const BUDGET_ENV: &str = "ORACLE_BUDGET_BITS";
pub const DEFAULT_BUDGET_BITS: u32 = 24;
pub const PRIMES: [u64; 3] = [2, 3, 5];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("prime must be one of 2, 3, 5, got {0}")]
    InvalidPrime(u64),
    #[error("search space {prime}^{exponent} exceeds the budget of 2^{budget_bits} candidates")]
    BudgetExceeded {
        prime: u64,
        exponent: usize,
        budget_bits: u32,
    },
    #[error("invalid budget {0:?}: expected a number of bits between 1 and 62")]
    InvalidBudget(String),
    #[error("orders are stored in 4 bits, so the level must be at most 14 and e at most 16 (got m = {m}, e = {e})")]
    Unsupported { m: usize, e: usize },
    #[error("counts at primes {primes:?} do not fit an integer polynomial: {reason}")]
    Interpolation { primes: Vec<u64>, reason: String },
    #[error("invalid stratum ({i},{s},{l}) at level {m}")]
    InvalidStratum {
        i: usize,
        s: usize,
        l: usize,
        m: usize,
    },
    #[error("inclusion–exclusion over the coordinate components needs 1 <= m <= n, got n = {n}, m = {m}")]
    AnRange { n: usize, m: usize },
    #[error(transparent)]
    Component(#[from] ComponentError),
}

/// Cap on the number of candidate tuples, `2^budget_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub budget_bits: u32,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            budget_bits: DEFAULT_BUDGET_BITS,
        }
    }
}

impl OracleConfig {
    pub fn with_budget_bits(budget_bits: u32) -> Self {
        Self { budget_bits }
    }

    pub fn parse_bits(text: &str) -> Result<u32, OracleError> {
        match text.trim().parse::<u32>() {
            Ok(b) if (1..=62).contains(&b) => Ok(b),
            _ => Err(OracleError::InvalidBudget(text.to_string())),
        }
    }

    /// Default budget unless `ORACLE_BUDGET_BITS` is set.
    pub fn from_env() -> Result<Self, OracleError> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => Ok(Self::with_budget_bits(Self::parse_bits(&v)?)),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Whether `prime^(e m) <= 2^budget_bits`.
    pub fn admits(&self, e: usize, m: usize, prime: u64) -> bool {
        let cap = 1u128 << self.budget_bits.min(127);
        let mut size: u128 = 1;
        for _ in 0..e * m {
            size *= prime as u128;
            if size > cap {
                return false;
            }
        }
        true
    }

    pub fn check(&self, e: usize, m: usize, prime: u64) -> Result<(), OracleError> {
        if !PRIMES.contains(&prime) {
            return Err(OracleError::InvalidPrime(prime));
        }
        if m > 14 || e > 16 {
            return Err(OracleError::Unsupported { m, e });
        }
        if !self.admits(e, m, prime) {
            return Err(OracleError::BudgetExceeded {
                prime,
                exponent: e * m,
                budget_bits: self.budget_bits,
            });
        }
        Ok(())
    }
}

/// Orders `ord x_1, ..., ord x_e` of a jet; `None` when the coordinate
/// vanishes up to the level (order above `m`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderVector(pub Vec<Option<usize>>);

impl Serialize for OrderVector {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(ser)
    }
}

impl OrderVector {
    pub fn min_order(&self) -> Option<usize> {
        self.0.iter().flatten().min().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_bounds() {
        let c = OracleConfig::default();
        assert!(c.admits(4, 6, 2));
        assert!(!c.admits(5, 5, 2));
        assert!(c.admits(4, 2, 3));
        assert_eq!(c.check(4, 2, 7), Err(OracleError::InvalidPrime(7)));
        assert!(matches!(
            c.check(6, 5, 5),
            Err(OracleError::BudgetExceeded { .. })
        ));
        assert!(OracleConfig::parse_bits("0").is_err());
        assert_eq!(OracleConfig::parse_bits(" 30 ").unwrap(), 30);
    }

    #[test]
    fn top_serializes_as_null() {
        let o = OrderVector(vec![Some(1), None, Some(2)]);
        assert_eq!(serde_json::to_string(&o).unwrap(), "[1,null,2]");
        assert_eq!(o.min_order(), Some(1));
    }
}
