use std::collections::BTreeSet;

use inertia_core::algebra::{decompose, expand_all, trapezoid_add_formula, InertiaPoint, InertiaSet, Trapezoid};
use proptest::prelude::*;

fn trapezoid() -> impl Strategy<Value = Trapezoid> {
    (0usize..=6, 0usize..=12, 0usize..=12)
        .prop_map(|(k, a, b)| Trapezoid::new(k, a.min(b), a.max(b)))
        .prop_filter("nonempty", |t| !t.is_empty())
}

fn union_of_trapezoids() -> impl Strategy<Value = InertiaSet> {
    prop::collection::vec(trapezoid(), 0..5).prop_map(InertiaSet::from_trapezoids)
}

/// Any finite point set, not necessarily swap-symmetric.
fn point_set() -> impl Strategy<Value = InertiaSet> {
    prop::collection::vec((0usize..6, 0usize..6), 0..10).prop_map(InertiaSet::from_points)
}

fn minkowski(a: &BTreeSet<InertiaPoint>, b: &BTreeSet<InertiaPoint>) -> BTreeSet<InertiaPoint> {
    let mut out = BTreeSet::new();
    for p in a {
        for q in b {
            out.insert(InertiaPoint::new(p.pos + q.pos, p.neg + q.neg));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn formula_matches_minkowski_sum(a in trapezoid(), b in trapezoid()) {
        let sum = trapezoid_add_formula(a, b).unwrap();
        prop_assert_eq!(sum.expand(), minkowski(&a.expand(), &b.expand()));
    }

    #[test]
    fn decompose_round_trips(s in union_of_trapezoids()) {
        let parts = decompose(s.points()).unwrap();
        prop_assert_eq!(&expand_all(&parts), s.points());
        for (i, t) in parts.iter().enumerate() {
            prop_assert!(!t.is_empty());
            let others: Vec<Trapezoid> = parts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, t)| *t).collect();
            prop_assert_ne!(&expand_all(&others), s.points(), "{} is redundant in {:?}", t, parts);
        }
        let text = s.to_t_notation().unwrap();
        prop_assert_eq!(text.parse::<InertiaSet>().unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cap_is_idempotent_and_monotone(s in union_of_trapezoids(), n in 0usize..16, m in 0usize..16) {
        let once = s.cap(n);
        prop_assert_eq!(once.cap(n), once.clone());
        prop_assert!(once.is_subset(&s));
        prop_assert_eq!(s.cap(n).cap(m), s.cap(n.min(m)));
    }

    #[test]
    fn add_and_union_laws(a in union_of_trapezoids(), b in union_of_trapezoids(), c in union_of_trapezoids()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.add(&b.union(&c)), a.add(&b).union(&a.add(&c)));
        prop_assert_eq!(a.add(&InertiaSet::origin()), a.clone());
        prop_assert!(a.add(&InertiaSet::empty()).is_empty());
    }

    #[test]
    fn swap_closure_is_preserved(a in union_of_trapezoids(), b in union_of_trapezoids(), n in 0usize..20) {
        prop_assert!(a.is_swap_symmetric());
        prop_assert!(a.add(&b).is_swap_symmetric());
        prop_assert!(a.union(&b).is_swap_symmetric());
        prop_assert!(a.cap(n).is_swap_symmetric());
    }

    #[test]
    fn arbitrary_point_sets_decompose_or_refuse(s in point_set()) {
        // trapezoids are swap-symmetric, so asymmetric sets never decompose
        if !s.is_swap_symmetric() {
            prop_assert!(decompose(s.points()).is_err());
        }
        if let Ok(parts) = decompose(s.points()) {
            prop_assert_eq!(&expand_all(&parts), s.points());
        }
    }

    #[test]
    fn json_round_trip(s in union_of_trapezoids()) {
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<InertiaSet>(&json).unwrap(), s);
    }
}
