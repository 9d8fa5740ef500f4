//! Dimension of the fiber from its point counts.
//!
//! Assumption: the number of `F_q`-points of the fiber is a polynomial in
//! `q` with integer coefficients, as it is for the strata here (tori times
//! affine spaces). Only three primes are available, so the count is first
//! divided by `q^a`, `a` the least `q`-adic valuation over the sampled
//! primes, and the quotient is interpolated through the samples. A quotient
//! with non-integer coefficients is reported as an error. The degree of the
//! count is the dimension.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::enumerate::enumerate_fiber;
use super::{OracleConfig, OracleError};
use crate::lattice::SurfaceDescriptor;
use crate::scalar::{scalar_json, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionEstimate {
    pub degree: usize,
    /// Leading coefficient: the number of top-dimensional components.
    pub leading: BigInt,
    /// Coefficients of the fitted count, constant term first.
    pub coefficients: Vec<BigInt>,
    pub samples: Vec<(u64, u64)>,
}

impl DimensionEstimate {
    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "leading": scalar_json(&self.leading),
            "coefficients": self.coefficients.iter().map(scalar_json).collect::<Vec<_>>(),
            "samples": self.samples.iter().map(|&(q, n)| json!({"prime": q, "count": n})).collect::<Vec<_>>(),
        })
    }
}

fn valuation(mut n: u64, q: u64) -> usize {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(q) {
        n /= q;
        v += 1;
    }
    v
}

/// Lagrange interpolation through `(x, y)`; coefficients constant term first.
fn lagrange(points: &[(BigInt, BigInt)]) -> Vec<Ratio<BigInt>> {
    let n = points.len();
    let mut out = vec![Ratio::zero(); n];
    for (k, (xk, yk)) in points.iter().enumerate() {
        // basis polynomial prod_{j != k} (x - x_j) / (x_k - x_j)
        let mut basis: Vec<Ratio<BigInt>> = vec![Ratio::one()];
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j == k {
                continue;
            }
            let mut next = vec![Ratio::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] += b.clone();
                next[d] -= b * Ratio::from_integer(xj.clone());
            }
            basis = next;
            denom *= xk - xj;
        }
        let scale = Ratio::new(yk.clone(), denom);
        for (d, b) in basis.into_iter().enumerate() {
            out[d] += b * scale.clone();
        }
    }
    out
}

/// Fit `count(q) = q^a R(q)` through the samples `(q, count)`.
pub fn fit_count_polynomial(samples: &[(u64, u64)]) -> Result<Vec<BigInt>, OracleError> {
    let primes: Vec<u64> = samples.iter().map(|s| s.0).collect();
    let fail = |reason: String| OracleError::Interpolation {
        primes: primes.clone(),
        reason,
    };
    if samples.is_empty() {
        return Err(fail("no samples".into()));
    }
    let mut sorted = primes.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != primes.len() {
        return Err(fail("repeated prime".into()));
    }
    if samples.iter().any(|&(_, n)| n == 0) {
        return Err(fail("a count is zero".into()));
    }
    let a = samples
        .iter()
        .map(|&(q, n)| valuation(n, q))
        .min()
        .expect("nonempty");
    let points: Vec<(BigInt, BigInt)> = samples
        .iter()
        .map(|&(q, n)| (BigInt::from(q), BigInt::from(n / q.pow(a as u32))))
        .collect();
    let reduced = lagrange(&points);
    if let Some(bad) = reduced.iter().find(|c| !c.is_integer()) {
        return Err(fail(format!("coefficient {bad} is not an integer")));
    }
    let mut coeffs = vec![BigInt::zero(); a];
    coeffs.extend(reduced.into_iter().map(|c| c.to_integer()));
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// Degree of the fiber's point count, sampled at `primes`.
pub fn dimension_estimate<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    m: usize,
    primes: &[u64],
    config: &OracleConfig,
) -> Result<DimensionEstimate, OracleError> {
    let mut samples = Vec::with_capacity(primes.len());
    for &p in primes {
        samples.push((p, enumerate_fiber(surface, m, p, config)?.total));
    }
    let coefficients = fit_count_polynomial(&samples)?;
    Ok(DimensionEstimate {
        degree: coefficients.len() - 1,
        leading: coefficients.last().expect("nonempty").clone(),
        coefficients,
        samples,
    })
}
