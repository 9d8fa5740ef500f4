//! Monomial witness jets: for an interior lattice vector `v`, the arc
//! `x_j = t^(v . u_j)` lies on the surface, and its truncation at level `m`
//! realizes the orders of `v`. Choosing `v` with `v . u_i = s` and
//! `v . u_{i+1} = l` shows that every stratum `(i, s, l)` contains the
//! truncation of an arc.

use serde::Serialize;

use super::report::stratum_ids;
use super::{OracleError, OrderVector};
use crate::components::ComponentId;
use crate::equations::{riemenschneider_equations, Binomial};
use crate::lattice::{pairing_orders, witness_vector, SurfaceDescriptor};
use crate::scalar::Scalar;

type Series = Vec<i64>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let m = a.len() - 1;
    let mut out = vec![0; m + 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(m + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn monomial_series(exponents: &[u32], coords: &[Series]) -> Series {
    let m = coords[0].len() - 1;
    let mut acc = vec![0; m + 1];
    acc[0] = 1;
    for (j, &k) in exponents.iter().enumerate() {
        for _ in 0..k {
            acc = series_mul(&acc, &coords[j]);
        }
    }
    acc
}

/// Values `F^(0..m)` of every binomial at the jet whose coordinate `j` is
/// the truncated series `coords[j]` (all of length `m + 1`).
pub fn evaluate_jet_equations(binomials: &[Binomial], coords: &[Series]) -> Vec<Vec<i64>> {
    binomials
        .iter()
        .map(|b| {
            let plus = monomial_series(&b.plus.exponents, coords);
            let minus = monomial_series(&b.minus.exponents, coords);
            plus.iter().zip(&minus).map(|(x, y)| x - y).collect()
        })
        .collect()
}

/// Orders of a jet given by its coordinate series.
pub fn jet_orders(coords: &[Series]) -> OrderVector {
    OrderVector(
        coords
            .iter()
            .map(|x| x.iter().position(|&v| v != 0))
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessOutcome {
    pub id: [usize; 3],
    /// The lattice vector as `[a, b]`.
    pub v: [i64; 2],
    pub orders: OrderVector,
    pub vanishes: bool,
    pub realizes: bool,
}

impl WitnessOutcome {
    pub fn holds(&self) -> bool {
        self.vanishes && self.realizes
    }
}

/// Checks witnesses for all strata of one surface at one level.
pub struct WitnessChecker<'a, T: Scalar> {
    surface: &'a SurfaceDescriptor<T>,
    binomials: Vec<Binomial>,
    m: usize,
}

impl<'a, T: Scalar> WitnessChecker<'a, T> {
    pub fn new(surface: &'a SurfaceDescriptor<T>, m: usize) -> Self {
        Self {
            surface,
            binomials: riemenschneider_equations(surface),
            m,
        }
    }

    /// All valid triples at this level.
    pub fn ids(&self) -> Vec<ComponentId> {
        stratum_ids(self.surface.chain(), self.m)
    }

    pub fn check(&self, i: usize, s: usize, l: usize) -> Result<WitnessOutcome, OracleError> {
        let m = self.m;
        let invalid = OracleError::InvalidStratum { i, s, l, m };
        if !ComponentId::new(i, s, l, m).is_valid(self.surface.chain()) {
            return Err(invalid);
        }
        let v = witness_vector(self.surface, i, &T::from_count(s), &T::from_count(l))
            .map_err(|_| invalid)?;
        let coords: Vec<Series> = pairing_orders(self.surface, &v)
            .iter()
            .map(|o| {
                let mut x = vec![0; m + 1];
                if let Some(k) = o.to_usize().filter(|&k| k <= m) {
                    x[k] = 1;
                }
                x
            })
            .collect();
        let values = evaluate_jet_equations(&self.binomials, &coords);
        let orders = jet_orders(&coords);
        let realizes = orders.0[i - 1] == Some(s) && orders.0[i] == Some(l);
        Ok(WitnessOutcome {
            id: [i, s, l],
            v: [
                v.a.to_i64().expect("witness fits in i64"),
                v.b.to_i64().expect("witness fits in i64"),
            ],
            orders,
            vanishes: values.iter().flatten().all(|&x| x == 0),
            realizes,
        })
    }
}

/// Whether the monomial witness of `(i, s, l)` at level `m` is a jet of the
/// surface with `ord x_i = s` and `ord x_{i+1} = l`.
pub fn verify_monomial_witness<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    i: usize,
    s: usize,
    l: usize,
    m: usize,
) -> Result<bool, OracleError> {
    Ok(WitnessChecker::new(surface, m).check(i, s, l)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::{JetSystem, JetVariable};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn surface(c: &[i64]) -> SurfaceDescriptor<i64> {
        SurfaceDescriptor::from_c_i64(c).unwrap()
    }

    #[test]
    fn examples() {
        let s = surface(&[2, 3]);
        let w = WitnessChecker::new(&s, 3).check(3, 1, 2).unwrap();
        assert!(w.holds());
        assert_eq!(w.orders.0, vec![Some(1), Some(1), Some(1), Some(2)]);
        assert!(verify_monomial_witness(&surface(&[2]), 2, 1, 1, 1).unwrap());
        assert!(verify_monomial_witness(&surface(&[3, 2, 2]), 2, 2, 3, 4).unwrap());
        assert!(verify_monomial_witness(&s, 2, 1, 2, 3).is_err());
    }

    #[test]
    fn high_orders_truncate_to_zero() {
        // (3,1,1) on [2,3]: orders (3,2,1,1), so x_1 vanishes at level 2
        let w = WitnessChecker::new(&surface(&[2, 3]), 2)
            .check(3, 1, 1)
            .unwrap();
        assert_eq!(w.orders.0, vec![None, Some(2), Some(1), Some(1)]);
        assert!(w.holds());
    }

    #[test]
    fn numeric_evaluation_matches_symbolic_system() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for c in [vec![2i64, 3], vec![3, 2, 4]] {
            let s = surface(&c);
            let m = 3;
            let sys = JetSystem::<i64>::new(&s, m);
            for _ in 0..20 {
                let coords: Vec<Series> = (0..s.e)
                    .map(|_| (0..=m).map(|_| rng.gen_range(-3..=3)).collect())
                    .collect();
                let mut point = vec![0i64; s.e * (m + 1)];
                for (j, x) in coords.iter().enumerate() {
                    for (nu, &v) in x.iter().enumerate() {
                        point[JetVariable::new(j + 1, nu).index(s.e)] = v;
                    }
                }
                let numeric = evaluate_jet_equations(&sys.binomials, &coords);
                for (n, levels) in sys.equations.iter().enumerate() {
                    for (k, f) in levels.iter().enumerate() {
                        assert_eq!(f.evaluate(&point), numeric[n][k]);
                    }
                }
            }
        }
    }
}
