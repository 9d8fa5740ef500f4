//! Exhaustive enumeration of the `m`-jets over the singular point with
//! coordinates in `F_p`.
//!
//! Level 0 is fixed to zero. Once the levels `1..=k` are assigned, every
//! `F^(j)` whose variables all have level `<= k` can be tested, so the search
//! assigns one level at a time and abandons a prefix as soon as a test fails.
//! On centered jets `F^(j)` only involves levels `<= j - 1`, so the top level
//! `m` never enters an equation: it is counted in closed form, which only has
//! to track which coordinates first become nonzero there.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{OracleConfig, OracleError, OrderVector};
use crate::equations::{JetSystem, JetVariable, PrimeField};
use crate::lattice::SurfaceDescriptor;
use crate::scalar::Scalar;

/// Order value marking a coordinate that vanishes on all levels so far.
pub(crate) const TOP: u8 = 15;

/// Point count of the fiber and its split by order vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCount {
    pub e: usize,
    pub m: usize,
    pub prime: u64,
    pub total: u64,
    pub strata: BTreeMap<OrderVector, u64>,
}

impl FiberCount {
    /// Points with `ord x_i = s` and `ord x_{i+1} = l`.
    pub fn stratum(&self, i: usize, s: usize, l: Option<usize>) -> u64 {
        self.strata
            .iter()
            .filter(|(o, _)| o.0[i - 1] == Some(s) && o.0[i] == l)
            .map(|(_, n)| n)
            .sum()
    }
}

/// A polynomial over `F_p` flattened for fast evaluation.
#[derive(Debug, Clone)]
struct FlatPoly {
    terms: Vec<(u32, Vec<(usize, u32)>)>,
}

impl FlatPoly {
    fn vanishes(&self, vals: &[u8], p: u32) -> bool {
        let mut acc: u32 = 0;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(v, k) in factors {
                let x = vals[v] as u32;
                for _ in 0..k {
                    t = t * x % p;
                }
                if t == 0 {
                    break;
                }
            }
            acc = (acc + t) % p;
        }
        acc == 0
    }
}

/// The centered equations, grouped by the highest level they involve.
struct Program {
    e: usize,
    m: usize,
    p: u32,
    checks: Vec<Vec<FlatPoly>>,
}

fn compile<const P: u64, T: Scalar>(surface: &SurfaceDescriptor<T>, m: usize) -> Program {
    let e = surface.e;
    let system = JetSystem::<PrimeField<P>>::centered(surface, m);
    let mut checks = vec![Vec::new(); m + 1];
    for f in system.equations.iter().flatten() {
        if f.is_zero() {
            continue;
        }
        let support = f.support();
        let top = support
            .iter()
            .map(|&v| JetVariable::from_index(e, v).level)
            .max()
            .unwrap_or(0);
        let terms = f
            .terms()
            .map(|(exps, c)| {
                let factors = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(v, &k)| (v, k))
                    .collect();
                (c.value() as u32, factors)
            })
            .collect();
        checks[top].push(FlatPoly { terms });
    }
    Program {
        e,
        m,
        p: P as u32,
        checks,
    }
}

fn pack(orders: &[u8]) -> u64 {
    orders
        .iter()
        .enumerate()
        .fold(0u64, |acc, (j, &o)| acc | (o as u64) << (4 * j))
}

pub(crate) fn unpack(e: usize, key: u64) -> OrderVector {
    OrderVector(
        (0..e)
            .map(|j| match (key >> (4 * j)) & 0xf {
                x if x == TOP as u64 => None,
                x => Some(x as usize),
            })
            .collect(),
    )
}

struct Search<'a> {
    prog: &'a Program,
    vals: Vec<u8>,
    orders: Vec<u8>,
    counts: HashMap<u64, u64>,
}

impl<'a> Search<'a> {
    fn new(prog: &'a Program) -> Self {
        Self {
            prog,
            vals: vec![0; prog.e * (prog.m + 1)],
            orders: vec![TOP; prog.e],
            counts: HashMap::new(),
        }
    }

    /// Write the `idx`-th assignment of level `nu`; orders of coordinates
    /// first nonzero here become `nu`.
    fn assign(&mut self, nu: usize, mut idx: u64) {
        let (e, p) = (self.prog.e, self.prog.p as u64);
        for j in 0..e {
            let d = (idx % p) as u8;
            idx /= p;
            self.vals[nu * e + j] = d;
            if d != 0 && self.orders[j] == TOP {
                self.orders[j] = nu as u8;
            }
        }
    }

    fn unassign(&mut self, nu: usize) {
        let e = self.prog.e;
        for j in 0..e {
            self.vals[nu * e + j] = 0;
            if self.orders[j] == nu as u8 {
                self.orders[j] = TOP;
            }
        }
    }

    fn passes(&self, nu: usize) -> bool {
        self.prog.checks[nu]
            .iter()
            .all(|f| f.vanishes(&self.vals, self.prog.p))
    }

    /// Count the free top level with the current prefix.
    fn leaf(&mut self) {
        let (e, m) = (self.prog.e, self.prog.m);
        let q = self.prog.p as u64;
        let tops: Vec<usize> = (0..e).filter(|&j| self.orders[j] == TOP).collect();
        let fixed = q.pow((e - tops.len()) as u32);
        let mut orders = self.orders.clone();
        for mask in 0u32..(1 << tops.len()) {
            let mut weight = fixed;
            for (b, &j) in tops.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    orders[j] = m as u8;
                    weight *= q - 1;
                } else {
                    orders[j] = TOP;
                }
            }
            *self.counts.entry(pack(&orders)).or_insert(0) += weight;
        }
    }

    fn descend(&mut self, nu: usize) {
        if nu == self.prog.m {
            self.leaf();
            return;
        }
        let size = (self.prog.p as u64).pow(self.prog.e as u32);
        for idx in 0..size {
            self.assign(nu, idx);
            if self.passes(nu) {
                self.descend(nu + 1);
            }
            self.unassign(nu);
        }
    }
}

fn run(prog: &Program) -> HashMap<u64, u64> {
    if prog.m == 0 {
        return HashMap::from([(pack(&vec![TOP; prog.e]), 1)]);
    }
    if prog.m == 1 {
        let mut s = Search::new(prog);
        s.leaf();
        return s.counts;
    }
    let size = (prog.p as u64).pow(prog.e as u32);
    (0..size)
        .into_par_iter()
        .fold(
            || Search::new(prog),
            |mut s, idx| {
                s.assign(1, idx);
                if s.passes(1) {
                    s.descend(2);
                }
                s.unassign(1);
                s
            },
        )
        .map(|s| s.counts)
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// Count the `m`-jets over the singular point with coordinates in `F_prime`.
pub fn enumerate_fiber<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    m: usize,
    prime: u64,
    config: &OracleConfig,
) -> Result<FiberCount, OracleError> {
    config.check(surface.e, m, prime)?;
    let prog = match prime {
        2 => compile::<2, T>(surface, m),
        3 => compile::<3, T>(surface, m),
        5 => compile::<5, T>(surface, m),
        _ => unreachable!("prime checked above"),
    };
    let counts = run(&prog);
    let strata: BTreeMap<OrderVector, u64> = counts
        .into_iter()
        .map(|(k, v)| (unpack(surface.e, k), v))
        .collect();
    Ok(FiberCount {
        e: surface.e,
        m,
        prime,
        total: strata.values().sum(),
        strata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(c: &[i64], m: usize, p: u64) -> FiberCount {
        let s = SurfaceDescriptor::<i64>::from_c_i64(c).unwrap();
        enumerate_fiber(&s, m, p, &OracleConfig::with_budget_bits(24)).unwrap()
    }

    /// Filter every assignment of levels `1..=m` through the full system.
    fn naive(c: &[i64], m: usize, p: u64) -> u64 {
        let s = SurfaceDescriptor::<i64>::from_c_i64(c).unwrap();
        let sys = JetSystem::<i64>::new(&s, m);
        let e = s.e;
        let free = e * m;
        let mut hits = 0;
        for idx in 0..p.pow(free as u32) {
            let mut point = vec![0i64; e * (m + 1)];
            let mut x = idx;
            for slot in point.iter_mut().skip(e) {
                *slot = (x % p) as i64;
                x /= p;
            }
            let ok = sys
                .equations
                .iter()
                .flatten()
                .all(|f| f.evaluate(&point).rem_euclid(p as i64) == 0);
            hits += u64::from(ok);
        }
        hits
    }

    #[test]
    fn level_two_of_3_5() {
        assert_eq!(count(&[2, 3], 2, 2).total, 96);
        assert_eq!(count(&[2, 3], 2, 3).total, 1215);
    }

    #[test]
    fn a2_chart() {
        assert_eq!(count(&[3], 2, 2).total, 48);
    }

    #[test]
    fn level_zero_is_the_origin() {
        let f = count(&[2, 3], 0, 5);
        assert_eq!(f.total, 1);
        assert_eq!(f.strata.keys().next().unwrap().0, vec![None; 4]);
    }

    #[test]
    fn agrees_with_naive_filter() {
        for (c, m, p) in [
            (vec![2i64, 3], 2, 2),
            (vec![3], 3, 2),
            (vec![2, 2], 3, 2),
            (vec![2], 2, 3),
            (vec![4, 2], 2, 3),
        ] {
            assert_eq!(count(&c, m, p).total, naive(&c, m, p), "{c:?} m={m} p={p}");
        }
    }

    #[test]
    fn strata_partition_the_total() {
        let f = count(&[2, 3], 3, 2);
        assert_eq!(f.strata.values().sum::<u64>(), f.total);
        // (3,1,1) at level 2 over F_2: (q - 1)^2 q^4
        assert_eq!(count(&[2, 3], 2, 2).stratum(3, 1, Some(1)), 16);
    }

    #[test]
    fn pack_round_trip() {
        let orders = [1u8, TOP, 3, 2];
        assert_eq!(
            unpack(4, pack(&orders)).0,
            vec![Some(1), None, Some(3), Some(2)]
        );
    }
}
