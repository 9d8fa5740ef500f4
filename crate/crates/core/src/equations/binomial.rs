//! Riemenschneider's quasi-determinantal binomials `E_{ij}`.
//!
//! For `1 <= i < j - 1 <= e - 1`,
//! `E_{ij} = x_i x_j - x_{i+1}^{c_{i+1}-1} x_{i+2}^{c_{i+2}-2} ... x_{j-2}^{c_{j-2}-2} x_{j-1}^{c_{j-1}-1}`,
//! where for `j = i + 2` the single middle factor is `x_{i+1}^{c_{i+1}}`.
//! There are `(e-1)(e-2)/2` of them.

use serde::Serialize;

use super::poly::{Coefficient, SparsePolynomial};
use crate::lattice::{LatticeVector, SurfaceDescriptor};
use crate::scalar::Scalar;

/// Exponent vector of a monomial in `x_1, ..., x_e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(e: usize) -> Self {
        Self {
            exponents: vec![0; e],
        }
    }

    /// `x_j` with `j` one-based.
    pub fn var(e: usize, j: usize) -> Self {
        let mut m = Self::one(e);
        m.exponents[j - 1] = 1;
        m
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn to_polynomial<C: Coefficient>(&self) -> SparsePolynomial<C> {
        SparsePolynomial::term(self.exponents.clone(), C::one())
    }

    /// The lattice point `sum_k exponents[k] u_k` represented by the monomial.
    pub fn weight<T: Scalar>(&self, u: &[LatticeVector<T>]) -> LatticeVector<T> {
        let mut acc = LatticeVector::new(T::zero(), T::zero());
        for (k, &e) in self.exponents.iter().enumerate() {
            if e > 0 {
                acc = acc.add(&u[k].scaled(&T::from_u32(e).unwrap()));
            }
        }
        acc
    }
}

/// One equation `E_{ij} = plus - minus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Binomial {
    pub i: usize,
    pub j: usize,
    pub plus: Monomial,
    pub minus: Monomial,
}

impl Binomial {
    pub fn label(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn to_polynomial<C: Coefficient>(&self) -> SparsePolynomial<C> {
        &self.plus.to_polynomial() - &self.minus.to_polynomial()
    }
}

/// Whether `(i, j)` labels one of the equations of an embedding of
/// dimension `e`.
pub fn is_equation_label(e: usize, i: usize, j: usize) -> bool {
    i >= 1 && i + 1 < j && j <= e
}

/// The middle factor `x_{i+1}^{c_{i+1}-1} x_{i+2}^{c_{i+2}-2} ... x_{j-1}^{c_{j-1}-1}`.
pub(crate) fn minus_monomial(chain: &[usize], i: usize, j: usize) -> Monomial {
    let e = chain.len() + 2;
    let c = |k: usize| chain[k - 2] as u32;
    let mut m = Monomial::one(e);
    for k in i + 1..j {
        m.exponents[k - 1] = c(k) - 2;
    }
    m.exponents[i] += 1;
    m.exponents[j - 2] += 1;
    m
}

pub fn binomial(chain: &[usize], i: usize, j: usize) -> Binomial {
    let e = chain.len() + 2;
    assert!(
        is_equation_label(e, i, j),
        "({i},{j}) is not an equation label"
    );
    Binomial {
        i,
        j,
        plus: Monomial::var(e, i).times(&Monomial::var(e, j)),
        minus: minus_monomial(chain, i, j),
    }
}

/// All `E_{ij}` in lexicographic order of `(i, j)`.
pub fn riemenschneider_equations<T: Scalar>(surface: &SurfaceDescriptor<T>) -> Vec<Binomial> {
    let chain = surface.chain();
    let e = surface.e;
    let mut out = Vec::with_capacity((e - 1) * (e - 2) / 2);
    for i in 1..=e {
        for j in i + 2..=e {
            out.push(binomial(chain, i, j));
        }
    }
    out
}

/// `u_i + u_j` equals the exponent-weighted sum of `u` over the minus term.
pub fn weight_balance_check<T: Scalar>(binomial: &Binomial, u: &[LatticeVector<T>]) -> bool {
    binomial.plus.weight(u) == binomial.minus.weight(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = SurfaceDescriptor<i64>;

    fn names(j: usize) -> String {
        format!("x{}", j + 1)
    }

    fn rendered(c: &[i64]) -> Vec<String> {
        let s = S::from_c(c).unwrap();
        riemenschneider_equations(&s)
            .iter()
            .map(|b| b.to_polynomial::<i64>().display_with(names))
            .collect()
    }

    #[test]
    fn equations_of_2_3() {
        assert_eq!(
            rendered(&[2, 3]),
            vec!["x1*x3 - x2^2", "x1*x4 - x2*x3^2", "x2*x4 - x3^3"]
        );
    }

    #[test]
    fn equations_of_a1() {
        assert_eq!(rendered(&[2]), vec!["x1*x3 - x2^2"]);
    }

    #[test]
    fn equations_of_all_twos() {
        let s = S::from_c(&[2, 2, 2]).unwrap();
        let minus: Vec<Vec<u32>> = riemenschneider_equations(&s)
            .into_iter()
            .map(|b| b.minus.exponents)
            .collect();
        assert_eq!(
            minus,
            vec![
                vec![0, 2, 0, 0, 0],
                vec![0, 1, 1, 0, 0],
                vec![0, 1, 0, 1, 0],
                vec![0, 0, 2, 0, 0],
                vec![0, 0, 1, 1, 0],
                vec![0, 0, 0, 2, 0],
            ]
        );
    }

    #[test]
    fn weight_balance_examples() {
        let s = S::from_c(&[2, 3]).unwrap();
        let eqs = riemenschneider_equations(&s);
        assert!(weight_balance_check(&eqs[0], &s.u));
        assert!(weight_balance_check(&eqs[2], &s.u));
        let mut bad = eqs[1].clone();
        bad.minus.exponents[2] += 1;
        assert!(!weight_balance_check(&bad, &s.u));
    }

    #[test]
    fn every_equation_is_weight_balanced() {
        for c in [
            vec![2i64, 3],
            vec![5, 2, 4, 3],
            vec![2, 2, 2, 2, 7],
            vec![9],
        ] {
            let s = S::from_c(&c).unwrap();
            let eqs = riemenschneider_equations(&s);
            assert_eq!(eqs.len(), (s.e - 1) * (s.e - 2) / 2);
            for b in &eqs {
                assert!(weight_balance_check(b, &s.u), "{c:?} {:?}", b.label());
                assert_eq!(b.plus.degree(), 2);
            }
        }
    }

    #[test]
    fn json_shape() {
        let s = S::from_c(&[2]).unwrap();
        let eqs = riemenschneider_equations(&s);
        assert_eq!(
            serde_json::to_string(&eqs).unwrap(),
            r#"[{"i":1,"j":3,"plus":[1,0,1],"minus":[0,2,0]}]"#
        );
    }
}
