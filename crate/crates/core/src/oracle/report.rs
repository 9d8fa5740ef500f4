//! Comparison of the enumerated fiber with the predicted strata.
//!
//! The stratum `ord x_i = s, ord x_{i+1} = l` of a valid `(i, s, l)` is a
//! two-dimensional torus times an affine space, so over `F_q` it has
//! `(q - 1)^2 q^(dim - 2)` points. Two further checks need no
//! classification at all:
//!
//! * band law: if an interior `x_i` attains the least order `s` of a point and
//!   `c_i s <= m`, then `E_{i-1,i+1}` forces `s <= ord x_{i+1} <= (c_i - 1) s`;
//! * deep locus: with `s = floor(m/2) + 1`, every jet whose coordinates have
//!   order `>= s` is a solution, giving `q^(e (m + 1 - s))` points.

use serde::Serialize;
use serde_json::{json, Value};

use super::enumerate::{enumerate_fiber, FiberCount};
use super::{OracleConfig, OracleError, OrderVector};
use crate::components::{component_dim, m_upper, max_speciality, ComponentId};
use crate::lattice::SurfaceDescriptor;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: u64,
    pub actual: u64,
    pub pass: bool,
}

impl Check {
    fn new(name: String, expected: u64, actual: u64) -> Self {
        Self {
            name,
            expected,
            actual,
            pass: expected == actual,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub surface: Value,
    pub fiber: FiberCount,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct StratumJson<'a> {
    orders: &'a OrderVector,
    count: u64,
}

impl OracleReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Value {
        let strata: Vec<StratumJson> = self
            .fiber
            .strata
            .iter()
            .map(|(orders, &count)| StratumJson { orders, count })
            .collect();
        json!({
            "surface": self.surface,
            "m": self.fiber.m,
            "prime": self.fiber.prime,
            "total": self.fiber.total,
            "strata": strata,
            "checks": self.checks,
        })
    }
}

/// The triples `(i, s, l)` at level `m`, including `e = 3` where `i = 2`.
pub fn stratum_ids(chain: &[usize], m: usize) -> Vec<ComponentId> {
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    for s in 1..=max_speciality(m) {
        for (k, &c) in chain.iter().enumerate() {
            for l in s..=m_upper(c, s, m) {
                out.push(ComponentId::new(k + 2, s, l, m));
            }
        }
    }
    out
}

/// `(q - 1)^2 q^(dim - 2)`.
pub fn predicted_stratum(e: usize, s: usize, m: usize, q: u64) -> u64 {
    (q - 1).pow(2) * q.pow((component_dim(e, s, m) - 2) as u32)
}

/// Weighted number of points breaking the band law.
pub fn band_law_violations(chain: &[usize], fiber: &FiberCount) -> u64 {
    let e = chain.len() + 2;
    let m = fiber.m;
    fiber
        .strata
        .iter()
        .filter(|(o, _)| {
            let Some(s) = o.min_order() else { return false };
            (2..e).any(|i| {
                let c = chain[i - 2];
                o.0[i - 1] == Some(s)
                    && c * s <= m
                    && !matches!(o.0[i], Some(l) if l >= s && l <= m_upper(c, s, m))
            })
        })
        .map(|(_, n)| n)
        .sum()
}

/// Points all of whose coordinates have order `>= s`.
pub fn deep_locus_count(fiber: &FiberCount, s: usize) -> u64 {
    fiber
        .strata
        .iter()
        .filter(|(o, _)| o.0.iter().all(|x| x.is_none_or(|v| v >= s)))
        .map(|(_, n)| n)
        .sum()
}

/// Enumerate the fiber and check every stratum against its predicted count.
pub fn verify_stratum_counts<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    m: usize,
    prime: u64,
    config: &OracleConfig,
) -> Result<OracleReport, OracleError> {
    let fiber = enumerate_fiber(surface, m, prime, config)?;
    let chain = surface.chain();
    let e = surface.e;
    let q = prime;
    let mut checks = Vec::new();
    for id in stratum_ids(chain, m) {
        checks.push(Check::new(
            format!("stratum({},{},{})", id.i, id.s, id.l),
            predicted_stratum(e, id.s, m, q),
            fiber.stratum(id.i, id.s, Some(id.l)),
        ));
    }
    checks.push(Check::new(
        "band_law".into(),
        0,
        band_law_violations(chain, &fiber),
    ));
    let deep = m / 2 + 1;
    checks.push(Check::new(
        format!("deep_locus(s>={deep})"),
        q.pow((e * (m + 1 - deep)) as u32),
        deep_locus_count(&fiber, deep),
    ));
    Ok(OracleReport {
        surface: surface.to_json(),
        fiber,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(c: &[i64], m: usize, p: u64) -> OracleReport {
        let s = SurfaceDescriptor::<i64>::from_c_i64(c).unwrap();
        verify_stratum_counts(&s, m, p, &OracleConfig::default()).unwrap()
    }

    #[test]
    fn examples() {
        let r = report(&[2, 3], 2, 2);
        let c = r
            .checks
            .iter()
            .find(|c| c.name == "stratum(3,1,1)")
            .unwrap();
        assert_eq!((c.expected, c.actual), (16, 16));
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());

        let r = report(&[2], 1, 3);
        let c = r
            .checks
            .iter()
            .find(|c| c.name == "stratum(2,1,1)")
            .unwrap();
        assert_eq!((c.expected, c.actual), (12, 12));
        assert!(r.all_pass());
    }

    #[test]
    fn small_surfaces_pass() {
        for c in [
            vec![2i64, 3],
            vec![3, 2],
            vec![2, 2],
            vec![4],
            vec![2, 2, 2],
        ] {
            for m in 0..=3 {
                let r = report(&c, m, 2);
                assert!(
                    r.all_pass(),
                    "{c:?} m={m}: {:?}",
                    r.failures().collect::<Vec<_>>()
                );
            }
        }
    }

    #[test]
    fn json_shape() {
        let r = report(&[2, 3], 1, 2);
        let v = r.to_json();
        assert_eq!(v["m"], 1);
        assert_eq!(v["prime"], 2);
        assert_eq!(v["total"], 16);
        assert_eq!(v["surface"]["c"], json!([2, 3]));
        assert!(v["strata"][0]["orders"].is_array());
        assert!(v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["pass"] == true));
    }
}
