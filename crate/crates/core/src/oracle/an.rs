//! The `A_n` chart and the inclusion–exclusion count of its fiber.
//!
//! For `m <= n` the fiber is the union of the coordinate subspaces
//! `V(I_m^l)`, `l = 1..m`, inside the `3m` coordinates of levels `1..=m`.
//! An intersection of such subspaces is again a coordinate subspace, cut
//! out by the union of the generators, so the union has an exact
//! inclusion–exclusion count.

use std::collections::BTreeSet;

use super::OracleError;
use crate::components::an_ideal;
use crate::lattice::{LatticeError, SurfaceDescriptor};
use crate::scalar::Scalar;

/// `xy - z^(n+1)` as the toric surface with `c = [n + 1]`.
pub fn an_chart<T: Scalar>(n: usize) -> Result<SurfaceDescriptor<T>, LatticeError> {
    SurfaceDescriptor::from_c(&[T::from_count(n + 1)])
}

/// `|union_l V(I_m^l)|` over `F_q`, for `1 <= m <= n`.
pub fn an_inclusion_exclusion(n: usize, m: usize, q: u64) -> Result<u64, OracleError> {
    if m == 0 || m > n || m > 20 {
        return Err(OracleError::AnRange { n, m });
    }
    // generators of positive level; level 0 is already zero on the fiber
    let ideals: Vec<BTreeSet<_>> = (1..=m)
        .map(|l| an_ideal(m, l).into_iter().filter(|v| v.level > 0).collect())
        .collect();
    let mut total: i128 = 0;
    for mask in 1u32..(1 << m) {
        let mut gens = BTreeSet::new();
        for (k, ideal) in ideals.iter().enumerate() {
            if mask >> k & 1 == 1 {
                gens.extend(ideal.iter().copied());
            }
        }
        let term = (q as i128).pow((3 * m - gens.len()) as u32);
        if mask.count_ones() % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_fiber, OracleConfig};

    #[test]
    fn a2_level_two() {
        // x_1 y_1 = 0 with z_1 and level 2 free: (2q - 1) q^4
        assert_eq!(an_inclusion_exclusion(2, 2, 2).unwrap(), 48);
        assert_eq!(an_inclusion_exclusion(2, 2, 3).unwrap(), 5 * 81);
        assert!(an_inclusion_exclusion(2, 3, 2).is_err());
    }

    #[test]
    fn matches_enumeration() {
        for n in 1..=3 {
            let s = an_chart::<i64>(n).unwrap();
            for m in 1..=n {
                let f = enumerate_fiber(&s, m, 2, &OracleConfig::default()).unwrap();
                assert_eq!(f.total, an_inclusion_exclusion(n, m, 2).unwrap());
            }
        }
    }
}
