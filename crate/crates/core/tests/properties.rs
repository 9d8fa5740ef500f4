use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use toric_jets::components::counting::count_from_chain;
use toric_jets::components::{recover_multiset, recover_order_of, ClassCounter};
use toric_jets::equations::{admissible_triples, syzygy_check, weight_balance_check, Syzygy};
use toric_jets::lattice::{hj_evaluate, LatticeVector};
use toric_jets::oracle::{enumerate_fiber, OracleConfig, WitnessChecker};
use toric_jets::{count_components, riemenschneider_equations, Surface, Surface64};

fn chain(max_len: usize, max_entry: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2..=max_entry, 1..=max_len)
}

fn surface(c: &[usize]) -> Surface64 {
    let c: Vec<i64> = c.iter().map(|&x| x as i64).collect();
    Surface64::from_c_i64(&c).unwrap()
}

fn det(a: &LatticeVector<i64>, b: &LatticeVector<i64>) -> i64 {
    a.a * b.b - a.b * b.a
}

proptest! {
    #[test]
    fn expansion_round_trips(c in chain(8, 9)) {
        let s = surface(&c);
        let again = Surface64::from_pq(s.p, s.q).unwrap();
        prop_assert_eq!(again.chain(), &c[..]);
        prop_assert_eq!(hj_evaluate(&s.c).unwrap(), (s.q, s.p));
    }

    #[test]
    fn generators_follow_the_recursion(c in chain(8, 9)) {
        let s = surface(&c);
        prop_assert_eq!(s.u.last().unwrap(), &LatticeVector::from_i64(s.q, -s.p));
        for i in 2..s.e {
            let ci = s.c_at(i) as i64;
            let lhs = s.generator(i).scaled(&ci);
            prop_assert_eq!(lhs, s.generator(i - 1).add(s.generator(i + 1)));
            prop_assert_eq!(det(s.generator(i - 1), s.generator(i)), det(s.generator(i), s.generator(i + 1)));
        }
    }

    #[test]
    fn dual_expansion_is_the_complementary_cone(c in chain(8, 9)) {
        let s = surface(&c);
        let dual = Surface64::from_pq(s.q - s.p, s.q).unwrap();
        prop_assert_eq!(&dual.c, &s.b);
        prop_assert_eq!(s.exc_count as i64, s.exceptional_count_from_chain());
    }

    #[test]
    fn reversed_chain_is_the_inverse_residue(c in chain(8, 9)) {
        let s = surface(&c);
        let mut rev = c.clone();
        rev.reverse();
        let r = surface(&rev);
        prop_assert_eq!(r.q, s.q);
        prop_assert_eq!((r.p * s.p).mod_floor(&s.q), 1 % s.q);
    }

    #[test]
    fn equations_are_weight_balanced(c in chain(7, 6)) {
        let s = surface(&c);
        let eqs = riemenschneider_equations(&s);
        prop_assert_eq!(eqs.len(), (s.e - 1) * (s.e - 2) / 2);
        for b in &eqs {
            prop_assert!(weight_balance_check(b, &s.u));
        }
    }

    #[test]
    fn syzygies_vanish(c in chain(8, 7)) {
        let s = surface(&c);
        for syz in Syzygy::ALL {
            for (i, j, h) in admissible_triples(syz, s.e) {
                prop_assert!(syzygy_check::<_, BigInt>(&s, syz, i, j, h).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn union_find_matches_closed_form(c in chain(8, 12), m in 1usize..60) {
        prop_assume!(c.len() >= 2);
        let mut counter = ClassCounter::new();
        prop_assert_eq!(counter.count(&c, m), count_from_chain(&c, m));
    }

    #[test]
    fn recovery_round_trips(c in chain(7, 9)) {
        prop_assume!(c.len() >= 2);
        let s = surface(&c);
        let m_max = 2 * c.iter().max().unwrap() + 2;
        let table: BTreeMap<usize, usize> = (1..=m_max).map(|m| (m, count_components(&s, m).unwrap())).collect();
        let mut sorted = c.clone();
        sorted.sort_unstable();
        prop_assert_eq!(recover_multiset(&table, s.e).unwrap().multiset, sorted);
        let order = recover_order_of(&s, None).unwrap();
        let mut rev = c.clone();
        rev.reverse();
        prop_assert!(order == c || order == rev);
    }

    #[test]
    fn witnesses_realize_every_stratum(c in chain(6, 8), m in 1usize..14) {
        let s = surface(&c);
        let checker = WitnessChecker::new(&s, m);
        for id in checker.ids() {
            prop_assert!(checker.check(id.i, id.s, id.l).unwrap().holds());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn strata_partition_the_fiber(c in chain(3, 5), m in 0usize..=3) {
        let s = surface(&c);
        let f = enumerate_fiber(&s, m, 2, &OracleConfig::default()).unwrap();
        prop_assert_eq!(f.strata.values().sum::<u64>(), f.total);
        // the origin jet is always a solution
        prop_assert!(f.strata.contains_key(&toric_jets::oracle::OrderVector(vec![None; s.e])));
    }
}

#[test]
fn big_cones_stay_exact() {
    // small entries, but q grows geometrically with the length
    let c: Vec<BigInt> = (0..90).map(|k| BigInt::from(3 + k % 4)).collect();
    let s = Surface::from_c(&c).unwrap();
    assert!(s.q > BigInt::from(u128::MAX));
    let again = Surface::from_pq(s.p.clone(), s.q.clone()).unwrap();
    assert_eq!(again.c, c);
    assert_eq!(again.u, s.u);
    assert_eq!(s.exc_count as i64, s.exceptional_count_from_chain());
}
