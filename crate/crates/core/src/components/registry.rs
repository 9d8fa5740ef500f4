//! Enumeration of the components of the jet fiber over the singular point.
//!
//! At level `m` the candidates are the triples `(i, s, l)` with
//! `2 <= i <= e - 1`, `1 <= s <= ceil(m/2)` and `s <= l <= m_i^s`. The only
//! coincidences are `(i, s, s) = (i + 1, s, m_{i+1}^s)`; the registry closes
//! them with a union-find and keeps one class per component.

use serde::Serialize;
use serde_json::Value;

use super::counting::{component_codim, m_upper, max_speciality};
use super::union_find::UnionFind;
use super::ComponentError;
use crate::lattice::SurfaceDescriptor;
use crate::scalar::Scalar;

/// The triple `(i, s, l)` at level `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentId {
    pub i: usize,
    pub s: usize,
    pub l: usize,
    pub m: usize,
}

impl ComponentId {
    pub fn new(i: usize, s: usize, l: usize, m: usize) -> Self {
        Self { i, s, l, m }
    }

    pub fn triple(&self) -> [usize; 3] {
        [self.i, self.s, self.l]
    }

    /// Whether the triple is a valid index on the chain at its level.
    pub fn is_valid(&self, chain: &[usize]) -> bool {
        let e = chain.len() + 2;
        (2..e).contains(&self.i)
            && self.s >= 1
            && self.s <= max_speciality(self.m)
            && self.l >= self.s
            && self.l <= m_upper(chain[self.i - 2], self.s, self.m)
    }
}

impl std::fmt::Display for ComponentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C({},{},{})", self.i, self.s, self.l)
    }
}

/// Offsets of the triples in a flat array: speciality-major, then family,
/// then `l`.
#[derive(Debug, Clone, Default)]
pub(crate) struct Layout {
    m: usize,
    /// `start[(s - 1) * families + (i - 2)]`, with a final sentinel.
    start: Vec<usize>,
    families: usize,
}

impl Layout {
    pub(crate) fn build(&mut self, chain: &[usize], m: usize) {
        self.m = m;
        self.families = chain.len();
        self.start.clear();
        let mut at = 0;
        for s in 1..=max_speciality(m) {
            for &c in chain {
                self.start.push(at);
                at += m_upper(c, s, m) + 1 - s;
            }
        }
        self.start.push(at);
    }

    pub(crate) fn total(&self) -> usize {
        *self.start.last().unwrap_or(&0)
    }

    fn block(&self, i: usize, s: usize) -> usize {
        (s - 1) * self.families + (i - 2)
    }

    /// Flat index of a valid `(i, s, l)`.
    pub(crate) fn index(&self, i: usize, s: usize, l: usize) -> usize {
        self.start[self.block(i, s)] + (l - s)
    }

    /// First and last index of the block `(i, s, .)`.
    fn ends(&self, i: usize, s: usize) -> (usize, usize) {
        let b = self.block(i, s);
        (self.start[b], self.start[b + 1] - 1)
    }

    /// Union the identified triples.
    pub(crate) fn identify(&self, uf: &mut UnionFind) {
        for s in 1..=max_speciality(self.m) {
            for i in 2..self.families + 1 {
                // (i, s, s) is the first triple of its block and
                // (i + 1, s, m_{i+1}^s) the last of the next one
                let (lo, _) = self.ends(i, s);
                let (_, hi) = self.ends(i + 1, s);
                uf.union(lo, hi);
            }
        }
    }
}

/// Reusable scratch space for counting classes by union-find.
#[derive(Debug, Default)]
pub struct ClassCounter {
    layout: Layout,
    uf: UnionFind,
}

impl ClassCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of classes of triples on the chain at level `m` (`e >= 4`).
    pub fn count(&mut self, chain: &[usize], m: usize) -> usize {
        self.layout.build(chain, m);
        self.uf.reset(self.layout.total());
        self.layout.identify(&mut self.uf);
        self.uf.set_count()
    }
}

/// One component: a class of identified triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub id: usize,
    pub speciality: usize,
    pub codim: usize,
    pub dim: usize,
    /// Sorted by `(i, s, l)`.
    #[serde(serialize_with = "serialize_members")]
    pub members: Vec<ComponentId>,
}

fn serialize_members<S: serde::Serializer>(
    members: &[ComponentId],
    ser: S,
) -> Result<S::Ok, S::Error> {
    ser.collect_seq(members.iter().map(|c| c.triple()))
}

impl ComponentClass {
    /// `C(2,1,1)=C(3,1,2)`.
    pub fn label(&self) -> String {
        self.members
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join("=")
    }
}

/// All components of the jet fiber at one level.
#[derive(Debug, Clone)]
pub struct ComponentRegistry {
    pub e: usize,
    pub m: usize,
    chain: Vec<usize>,
    layout: Layout,
    class_of: Vec<usize>,
    pub classes: Vec<ComponentClass>,
}

#[derive(Serialize)]
struct RegistryJson<'a> {
    m: usize,
    classes: &'a [ComponentClass],
}

impl ComponentRegistry {
    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// All valid triples in layout order.
    pub fn ids(&self) -> impl Iterator<Item = ComponentId> + '_ {
        let m = self.m;
        (1..=max_speciality(m)).flat_map(move |s| {
            self.chain.iter().enumerate().flat_map(move |(k, &c)| {
                (s..=m_upper(c, s, m)).map(move |l| ComponentId::new(k + 2, s, l, m))
            })
        })
    }

    /// Class index of a triple, `None` if the triple is not valid here.
    pub fn class_index(&self, i: usize, s: usize, l: usize) -> Option<usize> {
        let id = ComponentId::new(i, s, l, self.m);
        if !id.is_valid(&self.chain) {
            return None;
        }
        Some(self.class_of[self.layout.index(i, s, l)])
    }

    pub fn class_of(&self, id: &ComponentId) -> Option<&ComponentClass> {
        if id.m != self.m {
            return None;
        }
        self.class_index(id.i, id.s, id.l).map(|k| &self.classes[k])
    }

    pub fn classes_with_speciality(&self, s: usize) -> impl Iterator<Item = &ComponentClass> {
        self.classes.iter().filter(move |c| c.speciality == s)
    }

    /// Number of classes of speciality `s`.
    pub fn speciality_count(&self, s: usize) -> usize {
        self.classes_with_speciality(s).count()
    }

    pub fn min_codim(&self) -> Option<usize> {
        self.classes.iter().map(|c| c.codim).min()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.classes.iter().map(|c| c.dim).max()
    }

    /// The identified pairs `((i, s, s), (i + 1, s, m_{i+1}^s))`.
    pub fn identifications(&self) -> Vec<(ComponentId, ComponentId)> {
        let m = self.m;
        let mut out = Vec::new();
        for s in 1..=max_speciality(m) {
            for i in 2..self.e - 1 {
                out.push((
                    ComponentId::new(i, s, s, m),
                    ComponentId::new(i + 1, s, m_upper(self.chain[i - 1], s, m), m),
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(RegistryJson {
            m: self.m,
            classes: &self.classes,
        })
        .expect("registry json")
    }
}

/// Enumerate and canonicalize the components at level `m >= 1` (`e >= 4`).
pub fn enumerate_components<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    m: usize,
) -> Result<ComponentRegistry, ComponentError> {
    if surface.e < 4 {
        return Err(ComponentError::EmbeddingDimensionThree);
    }
    if m == 0 {
        return Err(ComponentError::LevelZero);
    }
    Ok(registry_from_chain(surface.chain(), m))
}

pub(crate) fn registry_from_chain(chain: &[usize], m: usize) -> ComponentRegistry {
    let e = chain.len() + 2;
    let mut layout = Layout::default();
    layout.build(chain, m);
    let mut uf = UnionFind::new(layout.total());
    layout.identify(&mut uf);

    let mut registry = ComponentRegistry {
        e,
        m,
        chain: chain.to_vec(),
        layout,
        class_of: Vec::new(),
        classes: Vec::new(),
    };
    // classes numbered by first appearance in (s, i, l) order
    let ids: Vec<ComponentId> = registry.ids().collect();
    let mut class_of_root = vec![usize::MAX; ids.len()];
    let mut class_of = Vec::with_capacity(ids.len());
    let mut classes: Vec<ComponentClass> = Vec::new();
    for (k, id) in ids.into_iter().enumerate() {
        let root = uf.find(k);
        if class_of_root[root] == usize::MAX {
            class_of_root[root] = classes.len();
            let codim = component_codim(e, id.s, m);
            classes.push(ComponentClass {
                id: classes.len(),
                speciality: id.s,
                codim,
                dim: e * (m + 1) - codim,
                members: Vec::new(),
            });
        }
        let c = class_of_root[root];
        debug_assert_eq!(classes[c].speciality, id.s);
        classes[c].members.push(id);
        class_of.push(c);
    }
    for class in &mut classes {
        class.members.sort_by_key(|c| (c.i, c.s, c.l));
    }
    registry.class_of = class_of;
    registry.classes = classes;
    registry
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::counting::count_from_chain;

    fn members(reg: &ComponentRegistry) -> Vec<Vec<[usize; 3]>> {
        reg.classes
            .iter()
            .map(|c| c.members.iter().map(|x| x.triple()).collect())
            .collect()
    }

    fn surface(c: &[i64]) -> SurfaceDescriptor<i64> {
        SurfaceDescriptor::from_c_i64(c).unwrap()
    }

    #[test]
    fn level_two_of_2_3() {
        let reg = enumerate_components(&surface(&[2, 3]), 2).unwrap();
        assert_eq!(
            members(&reg),
            vec![vec![[2, 1, 1], [3, 1, 2]], vec![[3, 1, 1]]]
        );
        assert!(reg.classes.iter().all(|c| c.dim == 6 && c.codim == 6));
        assert_eq!(reg.classes[0].label(), "C(2,1,1)=C(3,1,2)");
    }

    #[test]
    fn level_three_of_2_3() {
        let reg = enumerate_components(&surface(&[2, 3]), 3).unwrap();
        assert_eq!(reg.len(), 3);
        assert_eq!(reg.speciality_count(1), 2);
        let top = reg.classes_with_speciality(2).next().unwrap();
        assert_eq!(
            top.members.iter().map(|x| x.triple()).collect::<Vec<_>>(),
            vec![[2, 2, 2], [3, 2, 2]]
        );
    }

    #[test]
    fn level_two_of_3_2_2() {
        let reg = enumerate_components(&surface(&[3, 2, 2]), 2).unwrap();
        assert_eq!(
            members(&reg),
            vec![vec![[2, 1, 1], [3, 1, 1], [4, 1, 1]], vec![[2, 1, 2]]]
        );
    }

    #[test]
    fn rejects_a_n() {
        assert_eq!(
            enumerate_components(&surface(&[3]), 2).unwrap_err(),
            ComponentError::EmbeddingDimensionThree
        );
    }

    #[test]
    fn lookup_and_json() {
        let reg = enumerate_components(&surface(&[2, 3]), 2).unwrap();
        assert_eq!(reg.class_index(2, 1, 1), reg.class_index(3, 1, 2));
        assert_eq!(reg.class_index(2, 1, 2), None);
        assert_eq!(reg.class_index(4, 1, 1), None);
        let json = reg.to_json();
        assert_eq!(
            serde_json::to_string(&json).unwrap(),
            r#"{"m":2,"classes":[{"id":0,"speciality":1,"codim":6,"dim":6,"members":[[2,1,1],[3,1,2]]},{"id":1,"speciality":1,"codim":6,"dim":6,"members":[[3,1,1]]}]}"#
        );
    }

    #[test]
    fn counter_matches_registry_and_closed_form() {
        let mut counter = ClassCounter::new();
        for c in [vec![2, 3], vec![4, 2, 5], vec![2, 2, 2, 2], vec![6, 6, 3]] {
            for m in 1..25 {
                let reg = registry_from_chain(&c, m);
                assert_eq!(reg.len(), counter.count(&c, m));
                assert_eq!(reg.len(), count_from_chain(&c, m), "{c:?} m={m}");
                assert_eq!(
                    reg.identifications().len(),
                    (c.len() - 1) * max_speciality(m)
                );
            }
        }
    }
}
