//! Classification of the components of the jet fiber over the singular
//! point, and the invariants read off them.

pub mod an;
pub mod counting;
pub mod graph;
pub mod lct;
pub mod recovery;
pub mod registry;
pub mod union_find;

use thiserror::Error;

pub use an::{an_components, an_ideal, AnComponent, AnCoord, AnDescription, AnVariable};
pub use counting::{component_codim, component_dim, count_components, m_upper, max_speciality};
pub use graph::{build_graph, JetGraph};
pub use lct::{format_ratio, lct, lct_via_mustata, MustataTable};
pub use recovery::{
    family_profiles, parse_count_table, recover_multiset, recover_order, recover_order_of,
    saturation_level, FamilyProfile, RecoveryError, RecoveryState,
};
pub use registry::{
    enumerate_components, ClassCounter, ComponentClass, ComponentId, ComponentRegistry,
};
pub use union_find::UnionFind;

use crate::equations::JetVariable;
use crate::lattice::SurfaceDescriptor;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComponentError {
    #[error("embedding dimension 3 (an A_n singularity) is handled by the A_n components, not the general classification")]
    EmbeddingDimensionThree,
    #[error("the level must be at least 1")]
    LevelZero,
    #[error("the level must be at least {needed}, got {got}")]
    LevelTooSmall { needed: usize, got: usize },
    #[error("A_n needs n >= 1, got {n}")]
    InvalidAn { n: usize },
}

/// Number of speciality-1 components at level `m` (`e >= 4`).
pub fn speciality_one_count<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    m: usize,
) -> Result<usize, ComponentError> {
    Ok(enumerate_components(surface, m)?.speciality_count(1))
}

/// Generators `x_j^(b)`, `1 <= j <= e`, `b < s`, of the ideal of the unique
/// component of speciality `s` at level `2s - 1`.
pub fn top_component_ideal(e: usize, s: usize) -> Vec<JetVariable> {
    (0..s)
        .flat_map(|b| (1..=e).map(move |j| JetVariable::new(j, b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn speciality_one_stabilizes() {
        for c in [vec![2i64, 3], vec![3, 2, 2], vec![5, 4, 2, 3]] {
            let s = SurfaceDescriptor::<i64>::from_c_i64(&c).unwrap();
            let max_c = *s.chain().iter().max().unwrap();
            for m in max_c..max_c + 6 {
                assert_eq!(speciality_one_count(&s, m).unwrap(), s.exc_count);
            }
        }
        let s = SurfaceDescriptor::<i64>::from_c_i64(&[2, 3]).unwrap();
        assert_eq!(speciality_one_count(&s, 3).unwrap(), 2);
    }

    #[test]
    fn top_ideal_has_e_s_generators() {
        let g = top_component_ideal(4, 2);
        assert_eq!(g.len(), 8);
        assert_eq!(g[5], JetVariable::new(2, 1));
    }
}
