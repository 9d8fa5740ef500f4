//! The leveled graph of components.
//!
//! Level `m` has one vertex per component of the jet fiber, weighted by its
//! speciality and dimension. A vertex of level `m + 1` represented by
//! `(i, s, l)` with `s <= ceil(m/2)` has the parent
//! `(i, s, min(l, m_i^s(m)))` at level `m`: truncation of jets maps the
//! stratum into that one. A vertex whose speciality first appears at level
//! `m + 1` starts a new line and has no parent.

use std::fmt::Write as _;

use serde::Serialize;

use super::counting::{m_upper, max_speciality};
use super::registry::{registry_from_chain, ComponentId, ComponentRegistry};
use super::ComponentError;
use crate::lattice::SurfaceDescriptor;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct GraphLevel {
    pub m: usize,
    pub registry: ComponentRegistry,
    /// Parent class at level `m - 1` of each class, `None` for line origins.
    pub parents: Vec<Option<usize>>,
}

#[derive(Debug, Clone)]
pub struct JetGraph {
    pub e: usize,
    pub m_max: usize,
    /// Levels `1..=m_max`, `levels[m - 1]` at level `m`.
    pub levels: Vec<GraphLevel>,
}

/// A member whose parent disagrees with the one of its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentConflict {
    pub member: ComponentId,
    pub expected: Option<usize>,
    pub found: Option<usize>,
}

/// Parent of one representative at the level below, given as a class index
/// of `lower`.
fn representative_parent(id: &ComponentId, lower: &ComponentRegistry) -> Option<usize> {
    if id.s > max_speciality(lower.m) {
        return None;
    }
    let c = lower.chain()[id.i - 2];
    let l = id.l.min(m_upper(c, id.s, lower.m));
    Some(
        lower
            .class_index(id.i, id.s, l)
            .expect("truncated triple is valid at the lower level"),
    )
}

#[derive(Serialize)]
struct VertexJson {
    id: usize,
    label: String,
    speciality: usize,
    dim: usize,
    members: Vec<[usize; 3]>,
    parent: Option<usize>,
}

#[derive(Serialize)]
struct LevelJson {
    m: usize,
    vertices: Vec<VertexJson>,
    identifications: Vec<[[usize; 3]; 2]>,
}

impl JetGraph {
    pub fn level(&self, m: usize) -> &GraphLevel {
        &self.levels[m - 1]
    }

    /// Members of every class whose own parent differs from the class parent.
    pub fn parent_conflicts(&self) -> Vec<(usize, ParentConflict)> {
        let mut out = Vec::new();
        for pair in self.levels.windows(2) {
            let (lower, upper) = (&pair[0], &pair[1]);
            for (k, class) in upper.registry.classes.iter().enumerate() {
                for member in &class.members {
                    let found = representative_parent(member, &lower.registry);
                    if found != upper.parents[k] {
                        out.push((
                            upper.m,
                            ParentConflict {
                                member: *member,
                                expected: upper.parents[k],
                                found,
                            },
                        ));
                    }
                }
            }
        }
        out
    }

    /// Follow parents from class `k` at level `m` to a line origin; returns
    /// its level and class index.
    pub fn tower_root(&self, m: usize, k: usize) -> (usize, usize) {
        let (mut m, mut k) = (m, k);
        while let Some(parent) = self.level(m).parents[k] {
            k = parent;
            m -= 1;
        }
        (m, k)
    }

    /// Line origins of level `m`.
    pub fn origins(&self, m: usize) -> Vec<usize> {
        let level = self.level(m);
        (0..level.parents.len())
            .filter(|&k| level.parents[k].is_none())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let levels: Vec<LevelJson> = self
            .levels
            .iter()
            .map(|level| LevelJson {
                m: level.m,
                vertices: level
                    .registry
                    .classes
                    .iter()
                    .zip(&level.parents)
                    .map(|(c, &parent)| VertexJson {
                        id: c.id,
                        label: c.label(),
                        speciality: c.speciality,
                        dim: c.dim,
                        members: c.members.iter().map(|x| x.triple()).collect(),
                        parent,
                    })
                    .collect(),
                identifications: level
                    .registry
                    .identifications()
                    .into_iter()
                    .map(|(a, b)| [a.triple(), b.triple()])
                    .collect(),
            })
            .collect();
        serde_json::json!({ "e": self.e, "m_max": self.m_max, "levels": levels })
    }

    /// DOT rendering: one cluster per level, edges from child to parent.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph jets {\n  rankdir=BT;\n  node [shape=box];\n");
        for level in &self.levels {
            let _ = writeln!(out, "  subgraph cluster_m{} {{", level.m);
            let _ = writeln!(out, "    label=\"m={}\";", level.m);
            for c in &level.registry.classes {
                let _ = writeln!(
                    out,
                    "    m{}_{} [label=\"{} s={} dim={}\"];",
                    level.m,
                    c.id,
                    c.label(),
                    c.speciality,
                    c.dim
                );
            }
            out.push_str("  }\n");
        }
        for level in &self.levels {
            for (k, parent) in level.parents.iter().enumerate() {
                if let Some(p) = parent {
                    let _ = writeln!(out, "  m{}_{} -> m{}_{};", level.m, k, level.m - 1, p);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The graph on levels `1..=m_max` (`e >= 4`, `m_max >= 2`).
pub fn build_graph<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    m_max: usize,
) -> Result<JetGraph, ComponentError> {
    if surface.e < 4 {
        return Err(ComponentError::EmbeddingDimensionThree);
    }
    if m_max < 2 {
        return Err(ComponentError::LevelTooSmall {
            needed: 2,
            got: m_max,
        });
    }
    let chain = surface.chain();
    let mut levels: Vec<GraphLevel> = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let registry = registry_from_chain(chain, m);
        let parents = match levels.last() {
            None => vec![None; registry.len()],
            Some(lower) => registry
                .classes
                .iter()
                .map(|c| representative_parent(&c.members[0], &lower.registry))
                .collect(),
        };
        levels.push(GraphLevel {
            m,
            registry,
            parents,
        });
    }
    Ok(JetGraph {
        e: surface.e,
        m_max,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(c: &[i64], m_max: usize) -> JetGraph {
        build_graph(&SurfaceDescriptor::<i64>::from_c_i64(c).unwrap(), m_max).unwrap()
    }

    #[test]
    fn first_levels_of_2_3() {
        let g = graph(&[2, 3], 3);
        assert_eq!(g.level(1).registry.len(), 1);
        assert_eq!(g.level(2).parents, vec![Some(0), Some(0)]);
        let level3 = g.level(3);
        let top = level3
            .registry
            .classes
            .iter()
            .position(|c| c.speciality == 2)
            .unwrap();
        assert_eq!(level3.parents[top], None);
        assert_eq!(g.origins(3), vec![top]);
    }

    #[test]
    fn towers_end_at_the_top_component() {
        for c in [vec![2i64, 3], vec![3, 2, 2], vec![4, 2, 5, 3]] {
            let g = graph(&c, 12);
            assert!(g.parent_conflicts().is_empty());
            for level in &g.levels {
                for (k, class) in level.registry.classes.iter().enumerate() {
                    let s = class.speciality;
                    let (root_m, root) = g.tower_root(level.m, k);
                    assert_eq!(root_m, 2 * s - 1);
                    assert_eq!(g.level(root_m).registry.speciality_count(s), 1);
                    assert_eq!(g.level(root_m).registry.classes[root].speciality, s);
                }
            }
        }
    }

    #[test]
    fn dot_is_stable() {
        let a = graph(&[2, 3], 3).to_dot();
        let b = graph(&[2, 3], 3).to_dot();
        assert_eq!(a, b);
        assert!(a.contains("m2_0 [label=\"C(2,1,1)=C(3,1,2) s=1 dim=6\"];"));
        assert!(a.contains("m2_1 -> m1_0;"));
    }

    #[test]
    fn rejects_small_inputs() {
        let s = SurfaceDescriptor::<i64>::from_c_i64(&[2, 3]).unwrap();
        assert!(build_graph(&s, 1).is_err());
        let a = SurfaceDescriptor::<i64>::from_c_i64(&[2]).unwrap();
        assert!(build_graph(&a, 3).is_err());
    }
}
