//! Log canonical threshold of the surface in its minimal embedding.
//!
//! The closed form is `1` when `e = 3` and `e/2` otherwise. It is compared
//! with Mustata's formula `min_m codim(S_m) / (m + 1)`, where `S_m` is the
//! jet scheme: the closure of the jets over the smooth locus has codimension
//! `(m + 1)(e - 2)`, and the fiber over the singular point contributes its
//! components.

use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use super::an::an_components;
use super::registry::registry_from_chain;
use super::ComponentError;
use crate::lattice::SurfaceDescriptor;
use crate::scalar::{scalar_json, Scalar};

/// The closed-form log canonical threshold.
pub fn lct<T: Scalar>(surface: &SurfaceDescriptor<T>) -> Ratio<T> {
    if surface.e == 3 {
        Ratio::from_integer(T::one())
    } else {
        Ratio::new(T::from_count(surface.e), T::from_count(2))
    }
}

/// Plain rendering of a rational: `2`, `5/2`.
pub fn format_ratio<T: Scalar>(r: &Ratio<T>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ratio_json<T: Scalar>(r: &Ratio<T>) -> Value {
    if r.is_integer() {
        scalar_json(r.numer())
    } else {
        Value::String(format_ratio(r))
    }
}

/// One level of the Mustata table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MustataLevel<T: Scalar> {
    pub m: usize,
    /// `(m + 1)(e - 2)`.
    pub smooth_codim: usize,
    /// Least codimension of a component of the fiber over the singular point.
    pub fiber_codim: usize,
    pub codim: usize,
    pub ratio: Ratio<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MustataTable<T: Scalar> {
    pub levels: Vec<MustataLevel<T>>,
    pub minimum: Ratio<T>,
    /// Levels where the minimum is attained.
    pub attained_at: Vec<usize>,
}

#[derive(Serialize)]
struct LevelJson {
    m: usize,
    smooth_codim: usize,
    fiber_codim: usize,
    codim: usize,
    ratio: Value,
}

impl<T: Scalar> MustataTable<T> {
    pub fn to_json(&self) -> Value {
        let levels: Vec<LevelJson> = self
            .levels
            .iter()
            .map(|l| LevelJson {
                m: l.m,
                smooth_codim: l.smooth_codim,
                fiber_codim: l.fiber_codim,
                codim: l.codim,
                ratio: ratio_json(&l.ratio),
            })
            .collect();
        json!({
            "lct": ratio_json(&self.minimum),
            "attained_at": self.attained_at,
            "levels": levels,
        })
    }
}

/// `min_{1 <= m <= m_max} codim(S_m) / (m + 1)` with the per-level table.
pub fn lct_via_mustata<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    m_max: usize,
) -> Result<MustataTable<T>, ComponentError> {
    if m_max < 2 {
        return Err(ComponentError::LevelTooSmall {
            needed: 2,
            got: m_max,
        });
    }
    let e = surface.e;
    let mut levels = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let fiber_codim = if e == 3 {
            let n = surface.c_at(2) - 1;
            an_components(n, m)?
                .iter()
                .map(|c| c.codim)
                .min()
                .expect("A_n fiber is nonempty")
        } else {
            registry_from_chain(surface.chain(), m)
                .min_codim()
                .expect("fiber is nonempty")
        };
        let smooth_codim = (m + 1) * (e - 2);
        let codim = smooth_codim.min(fiber_codim);
        levels.push(MustataLevel {
            m,
            smooth_codim,
            fiber_codim,
            codim,
            ratio: Ratio::new(T::from_count(codim), T::from_count(m + 1)),
        });
    }
    let minimum = levels
        .iter()
        .map(|l| l.ratio.clone())
        .min()
        .expect("m_max >= 2");
    let attained_at = levels
        .iter()
        .filter(|l| l.ratio == minimum)
        .map(|l| l.m)
        .collect();
    Ok(MustataTable {
        levels,
        minimum,
        attained_at,
    })
}
