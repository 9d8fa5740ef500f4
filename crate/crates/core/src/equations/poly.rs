//! Sparse multivariate polynomials over a declared set of variables.
//!
//! Terms are keyed by dense exponent vectors and kept in a `BTreeMap`, so the
//! term order is dense lexicographic and serialization is deterministic.
//! Coefficients are any [`Coefficient`] ring: the exact integers, or a small
//! prime field for the finite-field oracle.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Commutative ring of polynomial coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(v: i64) -> Self;
}

macro_rules! integer_coefficient {
    ($($t:ty),*) => {$(
        impl Coefficient for $t {
            fn from_i64(v: i64) -> Self {
                <$t>::from(v)
            }
        }
    )*};
}

integer_coefficient!(i64, i128, BigInt);

/// The prime field `F_P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PrimeField<const P: u64>(u64);

impl<const P: u64> PrimeField<P> {
    pub fn new(v: u64) -> Self {
        Self(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Debug for PrimeField<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for PrimeField<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for PrimeField<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for PrimeField<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for PrimeField<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for PrimeField<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Self((P - self.0) % P)
    }
}

impl<const P: u64> Zero for PrimeField<P> {
    fn zero() -> Self {
        Self(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for PrimeField<P> {
    fn one() -> Self {
        Self(1 % P)
    }
}

impl<const P: u64> Coefficient for PrimeField<P> {
    fn from_i64(v: i64) -> Self {
        Self(v.rem_euclid(P as i64) as u64)
    }
}

/// A polynomial in `nvars` variables.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial<C> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coefficient> SparsePolynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The variable with index `var`.
    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        Self::term(exps, C::one())
    }

    pub fn term(exponents: Vec<u32>, c: C) -> Self {
        let nvars = exponents.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending dense-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().rev().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> C {
        self.terms.get(exponents).cloned().unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.iter().sum()).max()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable sets differ");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable sets differ");
        let mut out = Self::zero(self.nvars);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let exps: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.add_term(exps, va.clone() * vb.clone());
            }
        }
        out
    }

    /// Sum of the given terms; repeated exponents are merged.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, C)>) -> Self {
        let mut terms: Vec<(Vec<u32>, C)> = terms.into_iter().collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Vec<u32>, C)> = Vec::with_capacity(terms.len());
        for (k, v) in terms {
            assert_eq!(k.len(), nvars, "variable sets differ");
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 = last.1.clone() + v,
                _ => merged.push((k, v)),
            }
        }
        Self {
            nvars,
            terms: merged.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// `c * x^exponents * self`; multiplying by a monomial keeps the term
    /// order, so the terms are rebuilt in one sorted pass.
    pub fn times_monomial(&self, exponents: &[u32], c: &C) -> Self {
        assert_eq!(self.nvars, exponents.len(), "variable sets differ");
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| {
                (
                    k.iter().zip(exponents).map(|(a, b)| a + b).collect(),
                    v.clone() * c.clone(),
                )
            })
            .filter(|(_, v): &(Vec<u32>, C)| !v.is_zero())
            .collect();
        Self {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul_ref(self);
        }
        out
    }

    pub fn evaluate(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (k, v) in &self.terms {
            let mut t = v.clone();
            for (x, &e) in point.iter().zip(k) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Drop every term that contains a variable for which `vanishes` holds,
    /// i.e. substitute zero for those variables.
    pub fn set_zero(&self, vanishes: impl Fn(usize) -> bool) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, v) in &self.terms {
            if k.iter()
                .enumerate()
                .all(|(var, &e)| e == 0 || !vanishes(var))
            {
                out.add_term(k.clone(), v.clone());
            }
        }
        out
    }

    /// Re-declare the variable set as the first `nvars` variables; panics if a
    /// dropped variable occurs.
    pub fn restrict_vars(&self, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (k, v) in &self.terms {
            assert!(
                k[nvars..].iter().all(|&e| e == 0),
                "dropped variable occurs"
            );
            out.add_term(k[..nvars].to_vec(), v.clone());
        }
        out
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for k in self.terms.keys() {
            for (var, &e) in k.iter().enumerate() {
                used[var] |= e > 0;
            }
        }
        (0..self.nvars).filter(|&v| used[v]).collect()
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> SparsePolynomial<D> {
        let mut out = SparsePolynomial::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    /// Render with a variable-naming function.
    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, (k, v)) in self.terms().enumerate() {
            let coeff = v.to_string();
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, coeff),
            };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = k
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(var, &e)| {
                    if e == 1 {
                        name(var)
                    } else {
                        format!("{}^{}", name(var), e)
                    }
                })
                .collect();
            if factors.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl<C: Coefficient> fmt::Debug for SparsePolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|v| format!("v{v}")))
    }
}

impl<C: Coefficient> Add for &SparsePolynomial<C> {
    type Output = SparsePolynomial<C>;
    fn add(self, rhs: Self) -> SparsePolynomial<C> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<C: Coefficient> Sub for &SparsePolynomial<C> {
    type Output = SparsePolynomial<C>;
    fn sub(self, rhs: Self) -> SparsePolynomial<C> {
        let mut out = self.clone();
        out.add_assign_ref(&-rhs);
        out
    }
}

impl<C: Coefficient> Mul for &SparsePolynomial<C> {
    type Output = SparsePolynomial<C>;
    fn mul(self, rhs: Self) -> SparsePolynomial<C> {
        self.mul_ref(rhs)
    }
}

impl<C: Coefficient> Neg for &SparsePolynomial<C> {
    type Output = SparsePolynomial<C>;
    fn neg(self) -> SparsePolynomial<C> {
        self.scale(&-C::one())
    }
}
