//! Order-theoretic properties of the lexicographic comparison and the
//! trivial-action case of the equivariant formula.

use std::cmp::Ordering;

use manin_core::casestudy::projective_space_model;
use manin_core::invariants::{
    ab_result, b_equivariant, compare_lex, AbPair, BalancedVerdict, GroupAction,
};
use manin_core::rat::ratio;
use manin_core::{balanced_verdict, PairingForm, PolyCone, PolarizedSpace, RatVec};
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = AbPair> {
    ((-20i64..=20), (1i64..=20), (0usize..=6))
        .prop_map(|(n, d, b)| AbPair::new(ratio(n, d), b))
}

proptest! {
    #[test]
    fn lex_is_total_and_antisymmetric(x in pair(), y in pair()) {
        let xy = compare_lex(&x, &y);
        let yx = compare_lex(&y, &x);
        prop_assert_eq!(xy, yx.reverse());
        prop_assert_eq!(xy == Ordering::Equal, x == y);
    }

    #[test]
    fn lex_is_transitive(x in pair(), y in pair(), z in pair()) {
        let mut v = [x, y, z];
        v.sort_by(compare_lex);
        prop_assert_ne!(compare_lex(&v[0], &v[1]), Ordering::Greater);
        prop_assert_ne!(compare_lex(&v[1], &v[2]), Ordering::Greater);
        prop_assert_ne!(compare_lex(&v[0], &v[2]), Ordering::Greater);
    }

    #[test]
    fn verdict_matches_order(x in pair(), y in pair()) {
        let verdict = balanced_verdict(&x, &y, true);
        match compare_lex(&y, &x) {
            Ordering::Less => prop_assert_eq!(verdict, BalancedVerdict::Balanced),
            Ordering::Equal => prop_assert_eq!(verdict, BalancedVerdict::WeaklyBalancedOnly),
            Ordering::Greater => prop_assert_eq!(verdict, BalancedVerdict::NotWeaklyBalanced),
        }
        prop_assert_eq!(
            balanced_verdict(&x, &y, false),
            BalancedVerdict::PullbackNotBig
        );
    }
}

#[test]
fn trivial_action_recovers_geometric_b_at_adjoint_zero() {
    // anticanonically polarized octant models: adjoint class 0, b = rank,
    // and the trivial action with no rigid components gives the same value
    for d in 1..=5usize {
        let gens: Vec<RatVec> = (0..d)
            .map(|i| {
                let mut v = vec![0i64; d];
                v[i] = 1;
                RatVec::from_ints(&v)
            })
            .collect();
        let cone = PolyCone::from_generators(&gens, PairingForm::identity(d)).unwrap();
        let k = RatVec::from_ints(&vec![-2i64; d]);
        let l = RatVec::from_ints(&vec![2i64; d]);
        let space =
            PolarizedSpace::new("octant", vec![], cone, k, l, None, Some(true)).unwrap();
        let res = ab_result(&space).unwrap();
        assert!(res.adjoint_class.is_zero());
        assert_eq!(res.b, d);
        let trivial = GroupAction::new(vec![], vec![]);
        assert_eq!(b_equivariant(&space, &trivial).unwrap(), d);
    }
}

#[test]
fn equivariant_b_is_at_most_geometric_b() {
    let space = projective_space_model(3).unwrap();
    let res = ab_result(&space).unwrap();
    let trivial = GroupAction::new(vec![], vec![]);
    assert!(b_equivariant(&space, &trivial).unwrap() <= res.b);
}
