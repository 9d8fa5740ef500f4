//! Closed-form combinatorics of the components: the bound `m_i^s`, the
//! codimension of a component, and the number `N(m)` of components.
//!
//! The family of index `i` contributes the triples `(i, s, l)` with
//! `s <= l <= m_i^s`, that is `m_i^s - s + 1` of them for each `s`. Writing
//! `q_c = floor((m + 1) / c)`, this count is
//!
//! ```text
//! N_c^s(m) = s c - 2s + 1     if s <= q_c
//!          = m - 2s + 2       otherwise
//! ```
//!
//! Taking `q_c = floor(m / c)` instead only moves `s = (m + 1) / c` (when `c`
//! divides `m + 1`) to the second branch, where both branches agree. A
//! round-up of `m / c` is not equivalent: it may put an `s` with
//! `s c > m + 1` in the first branch and overcount.
//! Each `s` loses `e - 3` classes to the identifications
//! `(i, s, s) ~ (i + 1, s, m_{i+1}^s)`, which chain the `e - 2` families along
//! a path, so
//!
//! ```text
//! N(m) = sum_{s = 1}^{ceil(m/2)} ( sum_i N_{c_i}^s(m) - (e - 3) ).
//! ```

use crate::lattice::SurfaceDescriptor;
use crate::scalar::Scalar;

use super::ComponentError;

/// `m_i^s = min((c_i - 1) s, m + 1 - s)`.
pub fn m_upper(c: usize, s: usize, m: usize) -> usize {
    debug_assert!(s >= 1 && c >= 2 && m + 1 >= 2 * s);
    ((c - 1) * s).min(m + 1 - s)
}

/// Largest speciality present at level `m`.
pub fn max_speciality(m: usize) -> usize {
    m.div_ceil(2)
}

/// `s e + (m - (2s - 1)) (e - 2)`.
pub fn component_codim(e: usize, s: usize, m: usize) -> usize {
    debug_assert!(s >= 1 && m + 1 >= 2 * s);
    s * e + (m + 1 - 2 * s) * (e - 2)
}

/// Dimension of a component in the `e (m + 1)`-dimensional jet space.
pub fn component_dim(e: usize, s: usize, m: usize) -> usize {
    e * (m + 1) - component_codim(e, s, m)
}

/// `q_c = floor((m + 1) / c)`.
pub fn q_threshold(c: usize, m: usize) -> usize {
    (m + 1) / c
}

/// `N_c^s(m)`, the number of triples `(i, s, l)` of a family with `c_i = c`.
pub fn family_count(c: usize, s: usize, m: usize) -> usize {
    if s <= q_threshold(c, m) {
        s * c + 1 - 2 * s
    } else {
        m + 2 - 2 * s
    }
}

/// `N_c^s(m)` of a family whose entry exceeds the level, `m - 2s + 2`.
pub fn unbounded_family_count(s: usize, m: usize) -> usize {
    m + 2 - 2 * s
}

fn require_e4<T: Scalar>(surface: &SurfaceDescriptor<T>) -> Result<(), ComponentError> {
    if surface.e < 4 {
        return Err(ComponentError::EmbeddingDimensionThree);
    }
    Ok(())
}

/// `N(m)` from the closed form over a chain `c_2..c_{e-1}` (`e >= 4`).
pub fn count_from_chain(chain: &[usize], m: usize) -> usize {
    let merges = chain.len() - 1;
    (1..=max_speciality(m))
        .map(|s| chain.iter().map(|&c| family_count(c, s, m)).sum::<usize>() - merges)
        .sum()
}

/// The closed-form component count `N(m)` for `m >= 1`.
pub fn count_components<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    m: usize,
) -> Result<usize, ComponentError> {
    require_e4(surface)?;
    if m == 0 {
        return Err(ComponentError::LevelZero);
    }
    Ok(count_from_chain(surface.chain(), m))
}
