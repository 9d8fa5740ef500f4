//! Cone and lattice combinatorics of a normal toric surface.
//!
//! The surface `S(p, q)` is attached to the plane cone spanned by `(1, 0)` and
//! `(p, q)` with `0 < p < q` coprime. Everything here derives from the
//! Hirzebruch–Jung expansion `q/p = [c_2, ..., c_{e-1}]`: the minimal
//! generators `u_1, ..., u_e` of the dual semigroup, the dual expansion
//! `q/(q - p) = [b_1, ..., b_r]` whose length counts the exceptional curves of
//! the minimal resolution, and the monomial-arc witness vectors used to show
//! that every contact stratum is hit by a genuine arc.

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::scalar::{scalar_json, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("degenerate cone (p = {p}, q = {q}): need 0 < p < q, the cone is smooth or not strongly convex")]
    DegenerateCone { p: String, q: String },
    #[error("inputs must be positive, got ({num}, {den})")]
    NonPositive { num: String, den: String },
    #[error("expansion of {num}/{den} needs 0 < den < num")]
    OutOfRange { num: String, den: String },
    #[error("{num} and {den} are not coprime")]
    NotCoprime { num: String, den: String },
    #[error("expansion of {num}/{den} has more than {limit} entries")]
    ExpansionTooLong { num: String, den: String, limit: usize },
    #[error("a continued fraction needs at least one entry")]
    EmptyExpansion,
    #[error("continued fraction entry #{index} is {value}, entries must be >= 2")]
    EntryBelowTwo { index: usize, value: String },
    #[error("entry {value} does not fit a machine index")]
    NotRepresentable { value: String },
    #[error("family index {i} outside 2..={max}")]
    FamilyOutOfRange { i: usize, max: usize },
    #[error("contact order l = {l} outside the band [{lo}, {hi}] for s = {s}")]
    ContactOutOfBand {
        s: String,
        l: String,
        lo: String,
        hi: String,
    },
}

/// A point of the lattice `N = Z^2` (or of its dual `M`; the pairing is the
/// standard dot product in both cases).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector<T> {
    pub a: T,
    pub b: T,
}

impl<T: Scalar> LatticeVector<T> {
    pub fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    pub fn from_i64(a: i64, b: i64) -> Self {
        Self::new(T::from_i64(a).unwrap(), T::from_i64(b).unwrap())
    }

    pub fn dot(&self, other: &Self) -> T {
        self.a.clone() * other.a.clone() + self.b.clone() * other.b.clone()
    }

    pub fn scaled(&self, k: &T) -> Self {
        Self::new(self.a.clone() * k.clone(), self.b.clone() * k.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.a.clone() + other.a.clone(),
            self.b.clone() + other.b.clone(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.a.clone() - other.a.clone(),
            self.b.clone() - other.b.clone(),
        )
    }

    pub fn to_json(&self) -> Value {
        Value::Array(vec![scalar_json(&self.a), scalar_json(&self.b)])
    }
}

fn check_pair<T: Scalar>(num: &T, den: &T) -> Result<(), LatticeError> {
    let texts = || (num.to_string(), den.to_string());
    if !num.is_positive() || den.is_negative() {
        let (num, den) = texts();
        return Err(LatticeError::NonPositive { num, den });
    }
    if den.is_zero() || den == num {
        let (q, p) = texts();
        return Err(LatticeError::DegenerateCone { p, q });
    }
    if den > num {
        let (num, den) = texts();
        return Err(LatticeError::OutOfRange { num, den });
    }
    if !num.gcd(den).is_one() {
        let (num, den) = texts();
        return Err(LatticeError::NotCoprime { num, den });
    }
    Ok(())
}

/// Longest expansion (of a surface or of its dual) that is accepted.
pub const MAX_EXPANSION_LENGTH: usize = 1 << 16;

/// Hirzebruch–Jung expansion `num/den = c_1 - 1/(c_2 - 1/(...))` with every
/// entry at least 2.
pub fn hj_expand<T: Scalar>(num: &T, den: &T) -> Result<Vec<T>, LatticeError> {
    check_pair(num, den)?;
    let mut out = Vec::new();
    let (mut n, mut d) = (num.clone(), den.clone());
    while !d.is_zero() {
        if out.len() == MAX_EXPANSION_LENGTH {
            return Err(LatticeError::ExpansionTooLong {
                num: num.to_string(),
                den: den.to_string(),
                limit: MAX_EXPANSION_LENGTH,
            });
        }
        // ceil(n / d)
        let c = n.div_ceil(&d);
        let next = c.clone() * d.clone() - n;
        out.push(c);
        n = d;
        d = next;
    }
    Ok(out)
}

/// Exact value of a descending continued fraction, as a reduced `(num, den)`.
pub fn hj_evaluate<T: Scalar>(c: &[T]) -> Result<(T, T), LatticeError> {
    validate_entries(c)?;
    let mut num = c[c.len() - 1].clone();
    let mut den = T::one();
    for ck in c[..c.len() - 1].iter().rev() {
        let next = ck.clone() * num.clone() - den;
        den = num;
        num = next;
    }
    let g = num.gcd(&den);
    Ok((num / g.clone(), den / g))
}

fn validate_entries<T: Scalar>(c: &[T]) -> Result<(), LatticeError> {
    if c.is_empty() {
        return Err(LatticeError::EmptyExpansion);
    }
    let two = T::one() + T::one();
    for (index, value) in c.iter().enumerate() {
        if *value < two {
            return Err(LatticeError::EntryBelowTwo {
                index,
                value: value.to_string(),
            });
        }
    }
    Ok(())
}

/// Minimal generators `u_1 = (0,1), u_2 = (1,0), u_{i+1} = c_i u_i - u_{i-1}`.
pub fn semigroup_generators<T: Scalar>(c: &[T]) -> Result<Vec<LatticeVector<T>>, LatticeError> {
    validate_entries(c)?;
    let mut u = Vec::with_capacity(c.len() + 2);
    u.push(LatticeVector::new(T::zero(), T::one()));
    u.push(LatticeVector::new(T::one(), T::zero()));
    for ci in c {
        let n = u.len();
        let next = u[n - 1].scaled(ci).sub(&u[n - 2]);
        u.push(next);
    }
    Ok(u)
}

/// The dual expansion `q/(q - p) = [b_1, ..., b_r]`.
pub fn dual_expansion<T: Scalar>(p: &T, q: &T) -> Result<Vec<T>, LatticeError> {
    check_pair(q, p)?;
    hj_expand(q, &(q.clone() - p.clone()))
}

/// The complete combinatorial datum of a toric surface singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceDescriptor<T> {
    pub p: T,
    pub q: T,
    /// `[c_2, ..., c_{e-1}]`.
    pub c: Vec<T>,
    /// Embedding dimension.
    pub e: usize,
    /// `u_1, ..., u_e`.
    pub u: Vec<LatticeVector<T>>,
    /// `[b_1, ..., b_r]`.
    pub b: Vec<T>,
    /// Number of exceptional curves of the minimal resolution.
    pub exc_count: usize,
    chain: Vec<usize>,
}

#[derive(Serialize)]
struct SurfaceJson {
    p: Value,
    q: Value,
    c: Vec<Value>,
    e: usize,
    u: Vec<Value>,
    b: Vec<Value>,
    exc_count: usize,
}

impl<T: Scalar> SurfaceDescriptor<T> {
    /// Surface of the cone spanned by `(1, 0)` and `(p, q)`.
    pub fn from_pq(p: T, q: T) -> Result<Self, LatticeError> {
        check_pair(&q, &p)?;
        let c = hj_expand(&q, &p)?;
        Self::assemble(p, q, c)
    }

    /// Surface with the given Hirzebruch–Jung expansion of `q/p`.
    pub fn from_c(c: &[T]) -> Result<Self, LatticeError> {
        let (q, p) = hj_evaluate(c)?;
        Self::assemble(p, q, c.to_vec())
    }

    pub fn from_pq_i64(p: i64, q: i64) -> Result<Self, LatticeError> {
        Self::from_pq(T::from_i64(p).unwrap(), T::from_i64(q).unwrap())
    }

    pub fn from_c_i64(c: &[i64]) -> Result<Self, LatticeError> {
        let c: Vec<T> = c.iter().map(|&x| T::from_i64(x).unwrap()).collect();
        Self::from_c(&c)
    }

    fn assemble(p: T, q: T, c: Vec<T>) -> Result<Self, LatticeError> {
        let chain = c
            .iter()
            .map(|x| {
                x.to_usize().ok_or_else(|| LatticeError::NotRepresentable {
                    value: x.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let u = semigroup_generators(&c)?;
        let b = dual_expansion(&p, &q)?;
        let e = c.len() + 2;
        let exc_count = b.len();
        Ok(Self {
            p,
            q,
            c,
            e,
            u,
            b,
            exc_count,
            chain,
        })
    }

    /// The expansion as machine indices, `chain()[k] = c_{k+2}`.
    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    /// `c_i` for `2 <= i <= e - 1`.
    pub fn c_at(&self, i: usize) -> usize {
        self.chain[i - 2]
    }

    /// `u_j` for `1 <= j <= e`.
    pub fn generator(&self, j: usize) -> &LatticeVector<T> {
        &self.u[j - 1]
    }

    /// `c_2 + ... + c_{e-1} - 2(e - 2) + 1`, the exceptional count read off
    /// the expansion itself rather than the dual expansion.
    pub fn exceptional_count_from_chain(&self) -> i64 {
        let sum: i64 = self.chain.iter().map(|&c| c as i64).sum();
        sum - 2 * (self.e as i64 - 2) + 1
    }

    pub fn to_json(&self) -> Value {
        let dto = SurfaceJson {
            p: scalar_json(&self.p),
            q: scalar_json(&self.q),
            c: self.c.iter().map(scalar_json).collect(),
            e: self.e,
            u: self.u.iter().map(LatticeVector::to_json).collect(),
            b: self.b.iter().map(scalar_json).collect(),
            exc_count: self.exc_count,
        };
        serde_json::to_value(dto).expect("surface json")
    }
}

/// The unique `v` with `v . u_i = s` and `v . u_{i+1} = l`, for
/// `2 <= i <= e - 1` and `s <= l <= (c_i - 1) s`. In that band `v` lies in
/// the interior of the cone and pairs to at least `s` with every generator.
pub fn witness_vector<T: Scalar>(
    surface: &SurfaceDescriptor<T>,
    i: usize,
    s: &T,
    l: &T,
) -> Result<LatticeVector<T>, LatticeError> {
    if i < 2 || i > surface.e - 1 {
        return Err(LatticeError::FamilyOutOfRange {
            i,
            max: surface.e - 1,
        });
    }
    let ci = T::from_count(surface.c_at(i));
    let hi = (ci - T::one()) * s.clone();
    if !s.is_positive() || l < s || *l > hi {
        return Err(LatticeError::ContactOutOfBand {
            s: s.to_string(),
            l: l.to_string(),
            lo: s.to_string(),
            hi: hi.to_string(),
        });
    }
    let ui = surface.generator(i);
    let un = surface.generator(i + 1);
    // consecutive generators form a basis of M, so det = +-1
    let det = ui.a.clone() * un.b.clone() - ui.b.clone() * un.a.clone();
    debug_assert!(det.abs().is_one());
    let a = (s.clone() * un.b.clone() - ui.b.clone() * l.clone()) / det.clone();
    let b = (ui.a.clone() * l.clone() - un.a.clone() * s.clone()) / det;
    Ok(LatticeVector::new(a, b))
}

/// Pairings `(v . u_1, ..., v . u_e)`.
pub fn pairing_orders<T: Scalar>(surface: &SurfaceDescriptor<T>, v: &LatticeVector<T>) -> Vec<T> {
    surface.u.iter().map(|u| v.dot(u)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type S = SurfaceDescriptor<i64>;

    fn lv(a: i64, b: i64) -> LatticeVector<i64> {
        LatticeVector::new(a, b)
    }

    /// Independent evaluation with exact rationals, innermost term first.
    fn oracle_value(c: &[i64]) -> num_rational::Ratio<i64> {
        let mut x = num_rational::Ratio::from_integer(*c.last().unwrap());
        for &ck in c[..c.len() - 1].iter().rev() {
            x = num_rational::Ratio::from_integer(ck) - x.recip();
        }
        x
    }

    #[test]
    fn huge_entries_are_refused() {
        // c = [10^12] would have a dual expansion of 10^12 - 1 twos
        let err = S::from_pq(1, 1_000_000_000_000).unwrap_err();
        assert!(matches!(err, LatticeError::ExpansionTooLong { .. }));
        assert!(S::from_pq(1, MAX_EXPANSION_LENGTH as i64).is_ok());
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(&5i64, &3).unwrap(), vec![2, 3]);
        assert_eq!(hj_expand(&2i64, &1).unwrap(), vec![2]);
        assert_eq!(hj_expand(&7i64, &3).unwrap(), vec![3, 2, 2]);
        assert_eq!(oracle_value(&[2, 3]), num_rational::Ratio::new(5, 3));
        assert_eq!(oracle_value(&[3, 2, 2]), num_rational::Ratio::new(7, 3));
    }

    #[test]
    fn expand_rejects_bad_input() {
        assert!(matches!(
            hj_expand(&3i64, &3),
            Err(LatticeError::DegenerateCone { .. })
        ));
        assert!(matches!(
            hj_expand(&3i64, &0),
            Err(LatticeError::DegenerateCone { .. })
        ));
        assert!(matches!(
            hj_expand(&3i64, &5),
            Err(LatticeError::OutOfRange { .. })
        ));
        assert!(matches!(
            hj_expand(&6i64, &4),
            Err(LatticeError::NotCoprime { .. })
        ));
        assert!(matches!(
            hj_expand(&6i64, &-1),
            Err(LatticeError::NonPositive { .. })
        ));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(hj_evaluate(&[2i64, 3]).unwrap(), (5, 3));
        assert_eq!(hj_evaluate(&[2i64]).unwrap(), (2, 1));
        assert_eq!(hj_evaluate(&[2i64, 2, 2]).unwrap(), (4, 3));
        assert_eq!(hj_evaluate::<i64>(&[]), Err(LatticeError::EmptyExpansion));
        assert!(matches!(
            hj_evaluate(&[3i64, 1]),
            Err(LatticeError::EntryBelowTwo { index: 1, .. })
        ));
    }

    #[test]
    fn generator_examples() {
        assert_eq!(
            semigroup_generators(&[2i64, 3]).unwrap(),
            vec![lv(0, 1), lv(1, 0), lv(2, -1), lv(5, -3)]
        );
        assert_eq!(
            semigroup_generators(&[2i64]).unwrap(),
            vec![lv(0, 1), lv(1, 0), lv(2, -1)]
        );
        assert_eq!(
            semigroup_generators(&[3i64, 2, 2]).unwrap(),
            vec![lv(0, 1), lv(1, 0), lv(3, -1), lv(5, -2), lv(7, -3)]
        );
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_expansion(&3i64, &5).unwrap(), vec![3, 2]);
        assert_eq!(dual_expansion(&1i64, &2).unwrap(), vec![2]);
        assert_eq!(dual_expansion(&3i64, &7).unwrap(), vec![2, 4]);
    }

    #[test]
    fn surface_descriptor_of_3_5() {
        let s = S::from_pq(3, 5).unwrap();
        assert_eq!(s.c, vec![2, 3]);
        assert_eq!(s.e, 4);
        assert_eq!(s.exc_count, 2);
        assert_eq!(s.exceptional_count_from_chain(), 2);
        assert_eq!(s, S::from_c(&[2, 3]).unwrap());
        let json = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"p":3,"q":5,"c":[2,3],"e":4,"u":[[0,1],[1,0],[2,-1],[5,-3]],"b":[3,2],"exc_count":2}"#
        );
    }

    #[test]
    fn surface_rejects_degenerate_cones() {
        assert!(matches!(
            S::from_pq(0, 5),
            Err(LatticeError::DegenerateCone { .. })
        ));
        assert!(matches!(
            S::from_pq(1, 1),
            Err(LatticeError::DegenerateCone { .. })
        ));
        assert!(matches!(
            S::from_pq(2, 4),
            Err(LatticeError::NotCoprime { .. })
        ));
        assert!(matches!(
            S::from_pq(7, 5),
            Err(LatticeError::OutOfRange { .. })
        ));
    }

    #[test]
    fn witness_examples() {
        let s = S::from_c(&[2, 3]).unwrap();
        let v = witness_vector(&s, 3, &1, &2).unwrap();
        assert_eq!(v, lv(1, 1));
        assert_eq!(pairing_orders(&s, &v), vec![1, 1, 1, 2]);
        let v = witness_vector(&s, 3, &1, &1).unwrap();
        assert_eq!(v, lv(2, 3));
        assert_eq!(pairing_orders(&s, &v), vec![3, 2, 1, 1]);
        let a1 = S::from_c(&[2]).unwrap();
        let v = witness_vector(&a1, 2, &1, &1).unwrap();
        assert_eq!(v, lv(1, 1));
        assert_eq!(pairing_orders(&a1, &v), vec![1, 1, 1]);
    }

    #[test]
    fn witness_rejects_out_of_band() {
        let s = S::from_c(&[2, 3]).unwrap();
        assert!(matches!(
            witness_vector(&s, 3, &1, &3),
            Err(LatticeError::ContactOutOfBand { .. })
        ));
        assert!(matches!(
            witness_vector(&s, 2, &1, &2),
            Err(LatticeError::ContactOutOfBand { .. })
        ));
        assert!(matches!(
            witness_vector(&s, 4, &1, &1),
            Err(LatticeError::FamilyOutOfRange { .. })
        ));
    }

    #[test]
    fn bigint_surface_matches_i64() {
        let big = SurfaceDescriptor::<BigInt>::from_pq_i64(17, 60).unwrap();
        let small = S::from_pq(17, 60).unwrap();
        assert_eq!(big.chain(), small.chain());
        assert_eq!(big.to_json(), small.to_json());
    }

    fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
        (3i64..400)
            .prop_flat_map(|q| (1i64..q, Just(q)))
            .prop_filter("coprime", |(p, q)| num_integer::gcd(*p, *q) == 1)
    }

    fn chain() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(2i64..=9, 1..=8)
    }

    proptest! {
        #[test]
        fn expand_evaluate_round_trip(c in chain()) {
            let (q, p) = hj_evaluate(&c).unwrap();
            prop_assert_eq!(hj_expand(&q, &p).unwrap(), c.clone());
            prop_assert_eq!(oracle_value(&c), num_rational::Ratio::new(q, p));
        }

        #[test]
        fn last_generator_is_q_minus_p((p, q) in coprime_pair()) {
            let s = S::from_pq(p, q).unwrap();
            prop_assert_eq!(s.u.last().unwrap(), &lv(q, -p));
            prop_assert_eq!(s.u.len(), s.e);
            // consecutive generators are lattice bases
            for w in s.u.windows(2) {
                prop_assert_eq!((w[0].a * w[1].b - w[0].b * w[1].a).abs(), 1);
            }
        }

        #[test]
        fn dual_length_counts_exceptional_curves((p, q) in coprime_pair()) {
            let s = S::from_pq(p, q).unwrap();
            prop_assert_eq!(s.b.len() as i64, s.exceptional_count_from_chain());
            prop_assert!(s.b.iter().all(|&b| b >= 2));
            prop_assert_eq!(hj_evaluate(&s.b).unwrap(), (q, q - p));
        }

        #[test]
        fn witnesses_pair_positively(c in proptest::collection::vec(2i64..=6, 1..=6), s in 1i64..=5) {
            let surf = S::from_c(&c).unwrap();
            for i in 2..surf.e {
                let ci = surf.c_at(i) as i64;
                for l in s..=(ci - 1) * s {
                    let v = witness_vector(&surf, i, &s, &l).unwrap();
                    let orders = pairing_orders(&surf, &v);
                    prop_assert_eq!(orders[i - 1], s);
                    prop_assert_eq!(orders[i], l);
                    prop_assert!(orders.iter().all(|&o| o >= s && o > 0));
                    // weakly decreasing up to i, weakly increasing from i + 1
                    for j in 1..i {
                        prop_assert!(orders[j - 1] >= orders[j]);
                    }
                    for j in i..surf.e - 1 {
                        prop_assert!(orders[j] <= orders[j + 1]);
                    }
                }
            }
        }
    }
}
