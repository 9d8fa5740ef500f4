//! Jet truncation: substitute `x_j -> sum_{nu <= m} x_j^(nu) t^nu` and read
//! off the coefficients `F^(0), ..., F^(m)` of `t^0, ..., t^m`.
//!
//! Leveled variables are laid out level-major: `x_j^(nu)` has index
//! `nu * e + (j - 1)`. The variables of levels `<= k` are therefore a prefix
//! of the variables of any higher level, and a system built at level `m`
//! contains the systems of every lower level.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use serde_json::{Map, Value};

use super::binomial::{riemenschneider_equations, Binomial};
use super::poly::{Coefficient, SparsePolynomial};
use crate::lattice::SurfaceDescriptor;
use crate::scalar::Scalar;

/// The coordinate `x_coord^(level)`, `coord` one-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JetVariable {
    pub coord: usize,
    pub level: usize,
}

impl JetVariable {
    pub fn new(coord: usize, level: usize) -> Self {
        Self { coord, level }
    }

    pub fn index(&self, e: usize) -> usize {
        self.level * e + self.coord - 1
    }

    pub fn from_index(e: usize, index: usize) -> Self {
        Self {
            coord: index % e + 1,
            level: index / e,
        }
    }

    pub fn name(&self) -> String {
        format!("x{}_{}", self.coord, self.level)
    }
}

impl fmt::Display for JetVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

type Series<C> = Vec<SparsePolynomial<C>>;

/// Product of two series truncated after `t^m`.
fn series_mul<C: Coefficient>(a: &Series<C>, b: &Series<C>, m: usize, nvars: usize) -> Series<C> {
    let mut out: Series<C> = (0..=m).map(|_| SparsePolynomial::zero(nvars)).collect();
    for (da, pa) in a.iter().enumerate() {
        if pa.is_zero() {
            continue;
        }
        for (db, pb) in b.iter().enumerate().take(m + 1 - da) {
            if pb.is_zero() {
                continue;
            }
            out[da + db].add_assign_ref(&pa.mul_ref(pb));
        }
    }
    out
}

struct Truncator<C> {
    e: usize,
    m: usize,
    first_level: usize,
    nvars: usize,
    powers: HashMap<(usize, u32), Series<C>>,
}

impl<C: Coefficient> Truncator<C> {
    fn new(e: usize, m: usize, first_level: usize) -> Self {
        Self {
            e,
            m,
            first_level,
            nvars: e * (m + 1),
            powers: HashMap::new(),
        }
    }

    fn one(&self) -> Series<C> {
        let mut s: Series<C> = (0..=self.m)
            .map(|_| SparsePolynomial::zero(self.nvars))
            .collect();
        s[0] = SparsePolynomial::one(self.nvars);
        s
    }

    fn power(&mut self, coord: usize, k: u32) -> Series<C> {
        if k == 0 {
            return self.one();
        }
        if let Some(s) = self.powers.get(&(coord, k)) {
            return s.clone();
        }
        let s = if k == 1 {
            (0..=self.m)
                .map(|nu| {
                    if nu < self.first_level {
                        SparsePolynomial::zero(self.nvars)
                    } else {
                        SparsePolynomial::variable(
                            self.nvars,
                            JetVariable::new(coord, nu).index(self.e),
                        )
                    }
                })
                .collect()
        } else {
            let half = self.power(coord, k / 2);
            let sq = series_mul(&half, &half, self.m, self.nvars);
            if k % 2 == 1 {
                let base = self.power(coord, 1);
                series_mul(&sq, &base, self.m, self.nvars)
            } else {
                sq
            }
        };
        self.powers.insert((coord, k), s.clone());
        s
    }

    fn truncate(&mut self, poly: &SparsePolynomial<C>) -> Series<C> {
        assert_eq!(poly.nvars(), self.e, "expected a polynomial in x_1..x_e");
        let mut out: Series<C> = (0..=self.m)
            .map(|_| SparsePolynomial::zero(self.nvars))
            .collect();
        for (exps, coeff) in poly.terms() {
            let mut acc = self.one();
            for (j, &k) in exps.iter().enumerate() {
                if k > 0 {
                    let pw = self.power(j + 1, k);
                    acc = series_mul(&acc, &pw, self.m, self.nvars);
                }
            }
            for (slot, part) in out.iter_mut().zip(&acc) {
                slot.add_assign_ref(&part.scale(coeff));
            }
        }
        out
    }
}

/// Coefficients of `t^0..t^m` of `poly(sum_nu x^(nu) t^nu)`.
pub fn jet_truncate<C: Coefficient>(
    poly: &SparsePolynomial<C>,
    m: usize,
) -> Vec<SparsePolynomial<C>> {
    Truncator::new(poly.nvars(), m, 0).truncate(poly)
}

/// As [`jet_truncate`] with every level-0 coordinate set to zero: the
/// equations of the jets centered at the origin.
pub fn jet_truncate_centered<C: Coefficient>(
    poly: &SparsePolynomial<C>,
    m: usize,
) -> Vec<SparsePolynomial<C>> {
    Truncator::new(poly.nvars(), m, 1).truncate(poly)
}

/// The equations `F^(0..m)` of the `m`-jets of a toric surface.
#[derive(Debug, Clone, PartialEq)]
pub struct JetSystem<C: Coefficient> {
    pub e: usize,
    pub m: usize,
    pub centered: bool,
    pub binomials: Vec<Binomial>,
    /// `equations[n][k]` is `F^(k)` of `binomials[n]`.
    pub equations: Vec<Vec<SparsePolynomial<C>>>,
}

#[derive(Serialize)]
struct TermJson {
    coeff: Value,
    powers: Map<String, Value>,
}

#[derive(Serialize)]
struct EquationJson {
    i: usize,
    j: usize,
    levels: Vec<Vec<TermJson>>,
}

#[derive(Serialize)]
struct SystemJson {
    e: usize,
    m: usize,
    centered: bool,
    equations: Vec<EquationJson>,
}

fn coefficient_json<C: Coefficient>(c: &C) -> Value {
    let text = c.to_string();
    match text.parse::<i64>() {
        Ok(v) => Value::from(v),
        Err(_) => Value::String(text),
    }
}

/// `[{coeff, powers: {"x1_0": 1, ...}}, ...]` for one polynomial in leveled
/// variables.
pub fn jet_polynomial_json<C: Coefficient>(poly: &SparsePolynomial<C>, e: usize) -> Value {
    serde_json::to_value(terms_json(poly, e)).expect("terms json")
}

fn terms_json<C: Coefficient>(poly: &SparsePolynomial<C>, e: usize) -> Vec<TermJson> {
    poly.terms()
        .map(|(exps, c)| {
            let mut powers = Map::new();
            for (var, &k) in exps.iter().enumerate() {
                if k > 0 {
                    powers.insert(JetVariable::from_index(e, var).name(), Value::from(k));
                }
            }
            TermJson {
                coeff: coefficient_json(c),
                powers,
            }
        })
        .collect()
}

impl<C: Coefficient> JetSystem<C> {
    fn build<T: Scalar>(surface: &SurfaceDescriptor<T>, m: usize, centered: bool) -> Self {
        let binomials = riemenschneider_equations(surface);
        let mut tr = Truncator::new(surface.e, m, usize::from(centered));
        let equations = binomials
            .iter()
            .map(|b| tr.truncate(&b.to_polynomial::<C>()))
            .collect();
        Self {
            e: surface.e,
            m,
            centered,
            binomials,
            equations,
        }
    }

    pub fn new<T: Scalar>(surface: &SurfaceDescriptor<T>, m: usize) -> Self {
        Self::build(surface, m, false)
    }

    /// The system with every level-0 coordinate set to zero.
    pub fn centered<T: Scalar>(surface: &SurfaceDescriptor<T>, m: usize) -> Self {
        Self::build(surface, m, true)
    }

    pub fn nvars(&self) -> usize {
        self.e * (self.m + 1)
    }

    pub fn variables(&self) -> Vec<JetVariable> {
        (0..self.nvars())
            .map(|v| JetVariable::from_index(self.e, v))
            .collect()
    }

    /// The system at a lower level `m' <= m`.
    pub fn truncated(&self, m: usize) -> Self {
        assert!(m <= self.m);
        let nvars = self.e * (m + 1);
        Self {
            e: self.e,
            m,
            centered: self.centered,
            binomials: self.binomials.clone(),
            equations: self
                .equations
                .iter()
                .map(|levels| {
                    levels[..=m]
                        .iter()
                        .map(|f| f.restrict_vars(nvars))
                        .collect()
                })
                .collect(),
        }
    }

    /// All `F^(k)` vanish at `point` (indexed by variable index).
    pub fn vanishes_at(&self, point: &[C]) -> bool {
        self.equations
            .iter()
            .flatten()
            .all(|f| f.evaluate(point).is_zero())
    }

    pub fn to_json(&self) -> Value {
        let dto = SystemJson {
            e: self.e,
            m: self.m,
            centered: self.centered,
            equations: self
                .binomials
                .iter()
                .zip(&self.equations)
                .map(|(b, levels)| EquationJson {
                    i: b.i,
                    j: b.j,
                    levels: levels.iter().map(|f| terms_json(f, self.e)).collect(),
                })
                .collect(),
        };
        serde_json::to_value(dto).expect("jet system json")
    }
}
