//! The five families of syzygies among the binomials `E_{ij}`.
//!
//! Each identity is a combination `a E + b E' + m E''` with monomial
//! cofactors; [`syzygy_check`] expands it, and the result must be zero.
//! Cofactor products over empty ranges are 1.
//!
//! With `P(a, b) = prod_{a <= k <= b} x_k^{c_k - 2}`:
//!
//! * `S1`, `1 <= i < j`, `j + 2 <= h <= e`:
//!   `x_i E_{jh} - x_j E_{ih} + P(j+1, h-1) x_{h-1} E_{i,j+1}`
//! * `S2`, `1 <= j`, `j + 2 <= h < i <= e`:
//!   `x_i E_{jh} - x_h E_{ji} + x_{j+1} P(j+1, h-1) E_{h-1,i}`
//! * `S3`, `1 <= j < i - 1`, `h = i + 1 <= e`:
//!   `x_{i+1} E_{ji} - x_i E_{j,i+1} + x_{j+1} P(j+1, i-1) E_{i-1,i+1}`
//! * `S4`, `j = i - 1 >= 1`, `i + 1 < h <= e`:
//!   `x_{i-1} E_{ih} - x_i E_{i-1,h} + P(i+1, h-1) x_{h-1} E_{i-1,i+1}`
//! * `S5`, `1 <= j < i - 1`, `i + 1 < h <= e`:
//!   `x_j E_{ih} - x_i E_{jh} + P(i+1, h-1) x_{h-1} E_{j,i+1}`

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::binomial::{binomial, Monomial};
use super::poly::{Coefficient, SparsePolynomial};
use crate::lattice::SurfaceDescriptor;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Syzygy {
    S1,
    S2,
    S3,
    S4,
    S5,
}

impl Syzygy {
    pub const ALL: [Syzygy; 5] = [Syzygy::S1, Syzygy::S2, Syzygy::S3, Syzygy::S4, Syzygy::S5];

    /// Whether `(i, j, h)` satisfies the index guard in embedding dimension `e`.
    pub fn admits(self, e: usize, i: usize, j: usize, h: usize) -> bool {
        match self {
            Syzygy::S1 => 1 <= i && i < j && j + 2 <= h && h <= e,
            Syzygy::S2 => 1 <= j && j + 2 <= h && h < i && i <= e,
            Syzygy::S3 => 1 <= j && j + 1 < i && h == i + 1 && h <= e,
            Syzygy::S4 => i >= 2 && j == i - 1 && i + 1 < h && h <= e,
            Syzygy::S5 => 1 <= j && j + 1 < i && i + 1 < h && h <= e,
        }
    }
}

impl fmt::Display for Syzygy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyzygyError {
    #[error("S1 needs 1 <= i < j and j + 2 <= h <= e, got (i,j,h) = ({i},{j},{h}) with e = {e}")]
    GuardS1 {
        i: usize,
        j: usize,
        h: usize,
        e: usize,
    },
    #[error("S2 needs 1 <= j and j + 2 <= h < i <= e, got (i,j,h) = ({i},{j},{h}) with e = {e}")]
    GuardS2 {
        i: usize,
        j: usize,
        h: usize,
        e: usize,
    },
    #[error(
        "S3 needs 1 <= j < i - 1 and h = i + 1 <= e, got (i,j,h) = ({i},{j},{h}) with e = {e}"
    )]
    GuardS3 {
        i: usize,
        j: usize,
        h: usize,
        e: usize,
    },
    #[error(
        "S4 needs j = i - 1 >= 1 and i + 1 < h <= e, got (i,j,h) = ({i},{j},{h}) with e = {e}"
    )]
    GuardS4 {
        i: usize,
        j: usize,
        h: usize,
        e: usize,
    },
    #[error(
        "S5 needs 1 <= j < i - 1 and i + 1 < h <= e, got (i,j,h) = ({i},{j},{h}) with e = {e}"
    )]
    GuardS5 {
        i: usize,
        j: usize,
        h: usize,
        e: usize,
    },
}

fn guard_error(syz: Syzygy, e: usize, i: usize, j: usize, h: usize) -> SyzygyError {
    match syz {
        Syzygy::S1 => SyzygyError::GuardS1 { i, j, h, e },
        Syzygy::S2 => SyzygyError::GuardS2 { i, j, h, e },
        Syzygy::S3 => SyzygyError::GuardS3 { i, j, h, e },
        Syzygy::S4 => SyzygyError::GuardS4 { i, j, h, e },
        Syzygy::S5 => SyzygyError::GuardS5 { i, j, h, e },
    }
}

/// All `(i, j, h)` admitted by `syz` in embedding dimension `e`.
pub fn admissible_triples(syz: Syzygy, e: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=e {
        for j in 1..=e {
            for h in 1..=e {
                if syz.admits(e, i, j, h) {
                    out.push((i, j, h));
                }
            }
        }
    }
    out
}

/// `P(a, b)`.
fn tail_product(chain: &[usize], a: usize, b: usize) -> Monomial {
    let e = chain.len() + 2;
    let mut m = Monomial::one(e);
    for k in a..=b {
        m.exponents[k - 1] += chain[k - 2] as u32 - 2;
    }
    m
}

/// One weighted summand `sign * cofactor * E_{ab}`.
struct Summand {
    sign: i64,
    cofactor: Monomial,
    label: (usize, usize),
}

fn summands(chain: &[usize], syz: Syzygy, i: usize, j: usize, h: usize) -> [Summand; 3] {
    let e = chain.len() + 2;
    let x = |k: usize| Monomial::var(e, k);
    let s = |sign, cofactor, label| Summand {
        sign,
        cofactor,
        label,
    };
    match syz {
        Syzygy::S1 => [
            s(1, x(i), (j, h)),
            s(-1, x(j), (i, h)),
            s(
                1,
                tail_product(chain, j + 1, h - 1).times(&x(h - 1)),
                (i, j + 1),
            ),
        ],
        Syzygy::S2 => [
            s(1, x(i), (j, h)),
            s(-1, x(h), (j, i)),
            s(
                1,
                x(j + 1).times(&tail_product(chain, j + 1, h - 1)),
                (h - 1, i),
            ),
        ],
        Syzygy::S3 => [
            s(1, x(i + 1), (j, i)),
            s(-1, x(i), (j, i + 1)),
            s(
                1,
                x(j + 1).times(&tail_product(chain, j + 1, i - 1)),
                (i - 1, i + 1),
            ),
        ],
        Syzygy::S4 => [
            s(1, x(i - 1), (i, h)),
            s(-1, x(i), (i - 1, h)),
            s(
                1,
                tail_product(chain, i + 1, h - 1).times(&x(h - 1)),
                (i - 1, i + 1),
            ),
        ],
        Syzygy::S5 => [
            s(1, x(j), (i, h)),
            s(-1, x(i), (j, h)),
            s(
                1,
                tail_product(chain, i + 1, h - 1).times(&x(h - 1)),
                (j, i + 1),
            ),
        ],
    }
}

/// Expand the left-hand side of identity `syz` at `(i, j, h)`.
pub fn syzygy_check<T: Scalar, C: Coefficient>(
    surface: &SurfaceDescriptor<T>,
    syz: Syzygy,
    i: usize,
    j: usize,
    h: usize,
) -> Result<SparsePolynomial<C>, SyzygyError> {
    let e = surface.e;
    if !syz.admits(e, i, j, h) {
        return Err(guard_error(syz, e, i, j, h));
    }
    let chain = surface.chain();
    let mut terms = Vec::with_capacity(6);
    for term in summands(chain, syz, i, j, h) {
        let eq = binomial(chain, term.label.0, term.label.1);
        terms.push((
            eq.plus.times(&term.cofactor).exponents,
            C::from_i64(term.sign),
        ));
        terms.push((
            eq.minus.times(&term.cofactor).exponents,
            C::from_i64(-term.sign),
        ));
    }
    let acc = SparsePolynomial::from_terms(e, terms);
    Ok(acc)
}
