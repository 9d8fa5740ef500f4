//! Recovering the continued fraction from jet data.
//!
//! The multiset `{c_2, ..., c_{e-1}}` is read off the table `m -> N(m)`: a
//! family whose entry exceeds every level reached so far contributes
//! `m - 2s + 2` triples at speciality `s`, and a family with entry `c` first
//! falls short of that at `m = c`, by exactly one. Comparing `N(m)` with the
//! bound `Ñ(m)` built from the entries found so far yields the next entry
//! `m_j` and its multiplicity `α_j = Ñ(m_j) - N(m_j)`.
//!
//! The order of the entries comes from the speciality-1 classes at a level
//! where every family is saturated: family `i` has `c_i - 1` triples, and a
//! class shared by two families makes them neighbours in the chain.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use super::counting::{count_from_chain, family_count, max_speciality, unbounded_family_count};
use super::registry::{registry_from_chain, ComponentRegistry};
use super::ComponentError;
use crate::lattice::SurfaceDescriptor;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecoveryError {
    #[error("embedding dimension must be at least 3, got {e}")]
    EmbeddingDimension { e: usize },
    #[error("the table has no entry for level {m}")]
    MissingLevel { m: usize },
    #[error(
        "the table ends at level {last} with {found} of {needed} entries recovered; extend it"
    )]
    TableTooShort {
        last: usize,
        found: usize,
        needed: usize,
    },
    #[error("at level {m} the table has {observed} components, above the bound {bound}")]
    AboveBound {
        m: usize,
        observed: usize,
        bound: usize,
    },
    #[error("at level {m} the table implies {found} entries, more than the {needed} available")]
    TooManyEntries {
        m: usize,
        found: usize,
        needed: usize,
    },
    #[error("at level {m} the table has {observed} components but the recovered entries give {expected}")]
    TableMismatch {
        m: usize,
        observed: usize,
        expected: usize,
    },
    #[error("malformed table line {line}: {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("level {m} appears twice in the table")]
    DuplicateLevel { m: usize },
    #[error("level {m_star} is below saturation: family {family} reaches l = {m_star}")]
    BelowSaturation { m_star: usize, family: usize },
    #[error("no families given")]
    NoFamilies,
    #[error("shared classes do not link the families into a chain: {reason}")]
    NotAChain { reason: String },
    #[error(transparent)]
    Component(#[from] ComponentError),
}

/// One step `(m_j, α_j)` of the multiset recovery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveryStep {
    pub m: usize,
    pub alpha: usize,
    pub bound: usize,
    pub observed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoveryState {
    pub e: usize,
    pub steps: Vec<RecoveryStep>,
    /// The recovered entries in increasing order.
    pub multiset: Vec<usize>,
}

impl RecoveryState {
    fn found(&self) -> usize {
        self.steps.iter().map(|s| s.alpha).sum()
    }
}

/// Parse a table of `m count` lines; blank lines and `#` comments are skipped.
pub fn parse_count_table(text: &str) -> Result<BTreeMap<usize, usize>, RecoveryError> {
    let mut table = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = || RecoveryError::MalformedLine {
            line: k + 1,
            text: raw.to_string(),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [m, n] = fields[..] else {
            return Err(bad());
        };
        let m: usize = m.parse().map_err(|_| bad())?;
        let n: usize = n.parse().map_err(|_| bad())?;
        if table.insert(m, n).is_some() {
            return Err(RecoveryError::DuplicateLevel { m });
        }
    }
    Ok(table)
}

/// `Ñ(m)` given the entries found so far.
fn bound(e: usize, found: &[usize], m: usize) -> usize {
    if e == 3 {
        // A_n: m components while m <= n
        return match found.first() {
            Some(&c) => m.min(c - 1),
            None => m,
        };
    }
    let unknown = e - 2 - found.len();
    (1..=max_speciality(m))
        .map(|s| {
            found.iter().map(|&c| family_count(c, s, m)).sum::<usize>()
                + unknown * unbounded_family_count(s, m)
                - (e - 3)
        })
        .sum()
}

/// Recover `{c_2, ..., c_{e-1}}` from `m -> N(m)`.
///
/// Every level from 1 up to the last threshold must be present. Entries
/// beyond it are checked against the recovered multiset.
pub fn recover_multiset(
    table: &BTreeMap<usize, usize>,
    e: usize,
) -> Result<RecoveryState, RecoveryError> {
    if e < 3 {
        return Err(RecoveryError::EmbeddingDimension { e });
    }
    let needed = e - 2;
    let mut state = RecoveryState {
        e,
        steps: Vec::new(),
        multiset: Vec::new(),
    };
    let mut m = 0;
    while state.found() < needed {
        m += 1;
        let Some(&observed) = table.get(&m) else {
            let last = table.keys().next_back().copied().unwrap_or(0);
            if m > last {
                return Err(RecoveryError::TableTooShort {
                    last,
                    found: state.found(),
                    needed,
                });
            }
            return Err(RecoveryError::MissingLevel { m });
        };
        let b = bound(e, &state.multiset, m);
        if observed > b {
            return Err(RecoveryError::AboveBound {
                m,
                observed,
                bound: b,
            });
        }
        if observed < b {
            let alpha = b - observed;
            if state.found() + alpha > needed {
                return Err(RecoveryError::TooManyEntries {
                    m,
                    found: state.found() + alpha,
                    needed,
                });
            }
            state.multiset.extend(std::iter::repeat_n(m, alpha));
            state.steps.push(RecoveryStep {
                m,
                alpha,
                bound: b,
                observed,
            });
        }
    }
    for (&m, &observed) in table {
        if m == 0 {
            continue;
        }
        let expected = if e == 3 {
            m.min(state.multiset[0] - 1)
        } else {
            count_from_chain(&state.multiset, m)
        };
        if observed != expected {
            return Err(RecoveryError::TableMismatch {
                m,
                observed,
                expected,
            });
        }
    }
    Ok(state)
}

/// The speciality-1 classes of one family as `(l, class)` pairs, with the
/// family index forgotten.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyProfile {
    pub classes: Vec<(usize, usize)>,
}

/// Speciality-1 profiles of the families of a registry, in family order.
pub fn family_profiles(registry: &ComponentRegistry) -> Vec<FamilyProfile> {
    let mut by_family: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for id in registry.ids().filter(|id| id.s == 1) {
        let class = registry.class_index(id.i, id.s, id.l).expect("valid id");
        by_family.entry(id.i).or_default().push((id.l, class));
    }
    by_family
        .into_values()
        .map(|classes| FamilyProfile { classes })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Role {
    /// `l = 1` of a family with `c >= 3`: shared with the following families.
    Start,
    /// The single triple of a family with `c = 2`.
    Middle,
    /// `l = c - 1` of a family with `c >= 3`: shared with the preceding ones.
    End,
}

/// Recover the chain `c_2, ..., c_{e-1}`, up to reversal, from the
/// speciality-1 profiles at level `m_star`.
pub fn recover_order(
    profiles: &[FamilyProfile],
    m_star: usize,
) -> Result<Vec<usize>, RecoveryError> {
    if profiles.is_empty() {
        return Err(RecoveryError::NoFamilies);
    }
    let c: Vec<usize> = profiles.iter().map(|p| p.classes.len() + 1).collect();
    for (f, p) in profiles.iter().enumerate() {
        if p.classes.iter().any(|&(l, _)| l >= m_star) {
            return Err(RecoveryError::BelowSaturation { m_star, family: f });
        }
    }

    let mut members: BTreeMap<usize, Vec<(Role, usize)>> = BTreeMap::new();
    for (f, p) in profiles.iter().enumerate() {
        for &(l, class) in &p.classes {
            let role = if c[f] == 2 {
                Some(Role::Middle)
            } else if l == 1 {
                Some(Role::Start)
            } else if l == c[f] - 1 {
                Some(Role::End)
            } else {
                None
            };
            if let Some(role) = role {
                members.entry(class).or_default().push((role, f));
            }
        }
    }

    let n = profiles.len();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (class, mut list) in members {
        list.sort();
        let starts = list.iter().filter(|(r, _)| *r == Role::Start).count();
        let ends = list.iter().filter(|(r, _)| *r == Role::End).count();
        if starts > 1 || ends > 1 {
            return Err(RecoveryError::NotAChain {
                reason: format!("class {class} joins {starts} starts and {ends} ends"),
            });
        }
        for w in list.windows(2) {
            let (a, b) = (w[0].1, w[1].1);
            edges.insert((a.min(b), a.max(b)));
        }
    }

    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    if edges.len() + 1 != n || adj.iter().any(|v| v.len() > 2) {
        return Err(RecoveryError::NotAChain {
            reason: format!("{} links among {n} families", edges.len()),
        });
    }
    let first = (0..n)
        .find(|&f| adj[f].len() <= 1)
        .expect("a path has an endpoint");
    let mut order = vec![first];
    let mut prev = usize::MAX;
    let mut at = first;
    while let Some(&next) = adj[at].iter().find(|&&x| x != prev) {
        order.push(next);
        prev = at;
        at = next;
    }
    if order.len() != n {
        return Err(RecoveryError::NotAChain {
            reason: "the links are not connected".into(),
        });
    }
    Ok(order.into_iter().map(|f| c[f]).collect())
}

/// Default saturation level `2 max c_i`.
pub fn saturation_level<T: Scalar>(surface: &SurfaceDescriptor<T>) -> usize {
    2 * surface.chain().iter().copied().max().unwrap_or(2)
}

/// [`recover_order`] on the registry of `surface` at `m_star`
/// (default [`saturation_level`]).
pub fn recover_order_of<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    m_star: Option<usize>,
) -> Result<Vec<usize>, RecoveryError> {
    if surface.e < 4 {
        return Err(ComponentError::EmbeddingDimensionThree.into());
    }
    let m_star = m_star.unwrap_or_else(|| saturation_level(surface));
    if m_star == 0 {
        return Err(ComponentError::LevelZero.into());
    }
    let registry = registry_from_chain(surface.chain(), m_star);
    recover_order(&family_profiles(&registry), m_star)
}
