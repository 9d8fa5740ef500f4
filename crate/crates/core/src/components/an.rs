//! Components of the jet fiber of the `A_n` singularity `xy - z^(n+1)`.
//!
//! For `m <= n` the fiber is cut out by `xy = 0` alone, and its components
//! are the coordinate subspaces
//! `I_m^l = (x^(0..l-1), y^(0..m-l), z^(0))`, `l = 1..m`. For `m >= n + 1`
//! each of the `n` components lies over `V(I_n^l)`, isomorphic to
//! `S_{m-(n+1)} x A^(2n+1)`. Every component has codimension `m + 2`.
//!
//! As a toric surface with `e = 3` and `c = [n + 1]`, the chart is
//! `x = x_1`, `z = x_2`, `y = x_3`.

use std::fmt;

use serde::{Serialize, Serializer};

use super::ComponentError;
use crate::equations::JetVariable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnCoord {
    X,
    Y,
    Z,
}

impl AnCoord {
    /// Index of the coordinate in the toric chart.
    pub fn toric_index(self) -> usize {
        match self {
            AnCoord::X => 1,
            AnCoord::Z => 2,
            AnCoord::Y => 3,
        }
    }

    fn letter(self) -> char {
        match self {
            AnCoord::X => 'x',
            AnCoord::Y => 'y',
            AnCoord::Z => 'z',
        }
    }
}

/// The coordinate `coord^(level)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnVariable {
    pub coord: AnCoord,
    pub level: usize,
}

impl AnVariable {
    pub fn toric(&self) -> JetVariable {
        JetVariable::new(self.coord.toric_index(), self.level)
    }
}

impl fmt::Display for AnVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.coord.letter(), self.level)
    }
}

impl Serialize for AnVariable {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

/// The coordinate generators of `I_m^l`.
pub fn an_ideal(m: usize, l: usize) -> Vec<AnVariable> {
    let v = |coord, level| AnVariable { coord, level };
    let mut out: Vec<AnVariable> = (0..l).map(|k| v(AnCoord::X, k)).collect();
    out.extend((0..=m - l).map(|k| v(AnCoord::Y, k)));
    out.push(v(AnCoord::Z, 0));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnDescription {
    /// `m <= n`: the coordinate subspace `V(I_m^l)`.
    Coordinates { generators: Vec<AnVariable> },
    /// `m >= n + 1`: the preimage of `V(I_n^l)`, cut out by `I_n^l` and the
    /// equations of `S_{lower_level}` in the shifted coordinates
    /// `x^(l..)`, `y^(n-l+1..)`, `z^(1..)`; isomorphic to
    /// `S_{lower_level} x A^free_dim`.
    Lifted {
        base: Vec<AnVariable>,
        lower_level: usize,
        free_dim: usize,
        x_shift: usize,
        y_shift: usize,
        z_shift: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnComponent {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    pub codim: usize,
    pub description: AnDescription,
}

/// The components of the `m`-jets over the singular point of `A_n`.
pub fn an_components(n: usize, m: usize) -> Result<Vec<AnComponent>, ComponentError> {
    if n == 0 {
        return Err(ComponentError::InvalidAn { n });
    }
    if m == 0 {
        return Err(ComponentError::LevelZero);
    }
    let out = if m <= n {
        (1..=m)
            .map(|l| AnComponent {
                n,
                m,
                l,
                codim: m + 2,
                description: AnDescription::Coordinates {
                    generators: an_ideal(m, l),
                },
            })
            .collect()
    } else {
        (1..=n)
            .map(|l| AnComponent {
                n,
                m,
                l,
                codim: m + 2,
                description: AnDescription::Lifted {
                    base: an_ideal(n, l),
                    lower_level: m - (n + 1),
                    free_dim: 2 * n + 1,
                    x_shift: l,
                    y_shift: n + 1 - l,
                    z_shift: 1,
                },
            })
            .collect()
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(g: &[AnVariable]) -> Vec<String> {
        g.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn a2_at_level_two() {
        let comps = an_components(2, 2).unwrap();
        assert_eq!(comps.len(), 2);
        let ideals: Vec<Vec<String>> = comps
            .iter()
            .map(|c| match &c.description {
                AnDescription::Coordinates { generators } => names(generators),
                AnDescription::Lifted { .. } => panic!("expected coordinates"),
            })
            .collect();
        assert_eq!(
            ideals,
            vec![
                vec!["x_0", "y_0", "y_1", "z_0"],
                vec!["x_0", "x_1", "y_0", "z_0"]
            ]
        );
        assert!(comps.iter().all(|c| c.codim == 4));
    }

    #[test]
    fn counts_and_codims() {
        for n in 1..6 {
            for m in 1..10 {
                let comps = an_components(n, m).unwrap();
                assert_eq!(comps.len(), m.min(n));
                assert!(comps.iter().all(|c| c.codim == m + 2));
            }
        }
        assert_eq!(an_components(1, 1).unwrap()[0].codim, 3);
        assert_eq!(an_components(2, 5).unwrap().len(), 2);
        assert!(an_components(0, 1).is_err());
    }

    #[test]
    fn lifted_dimension_bookkeeping() {
        // the generators of I_n^l fix n + 2 coordinates, the lower jet scheme
        // of A_n sits in 3 (m - n) coordinates, and 2n + 1 are free
        let (n, m) = (2, 6);
        for c in an_components(n, m).unwrap() {
            if let AnDescription::Lifted {
                base,
                lower_level,
                free_dim,
                ..
            } = &c.description
            {
                assert_eq!(base.len(), n + 2);
                assert_eq!(base.len() + 3 * (lower_level + 1) + free_dim, 3 * (m + 1));
            } else {
                panic!("expected lifted");
            }
        }
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(an_components(1, 1).unwrap()).unwrap();
        assert_eq!(
            v.to_string(),
            r#"[{"n":1,"m":1,"l":1,"codim":3,"description":{"kind":"coordinates","generators":["x_0","y_0","z_0"]}}]"#
        );
        assert_eq!(
            AnVariable {
                coord: AnCoord::Y,
                level: 2
            }
            .toric(),
            JetVariable::new(3, 2)
        );
    }
}
