use inertia_core::algebra::{InertiaSet, Trapezoid};
use inertia_core::graphs::{BipartiteCase, FamilySpec, Nova};
use inertia_kit::{parse_family_spec, parse_t_notation, render_ascii};
use proptest::prelude::*;

fn nova() -> impl Strategy<Value = Nova> {
    (prop::collection::vec(3usize..7, 0..3), prop::collection::vec(1usize..5, 0..4))
        .prop_map(|(c, a)| Nova::new(c, a))
}

fn leaf() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (1usize..12).prop_map(FamilySpec::Path),
        (3usize..12).prop_map(FamilySpec::Cycle),
        prop::collection::vec(1usize..5, 1..4).prop_map(FamilySpec::DisjointPaths),
        prop::collection::vec(1usize..5, 1..5).prop_map(FamilySpec::GeneralizedStar),
        prop::collection::vec(3usize..7, 1..4).prop_map(FamilySpec::Bouquet),
        nova().prop_map(FamilySpec::Supernova),
        (nova(), nova(), 4usize..10, 2usize..8)
            .prop_map(|(first, second, bridge, gap)| FamilySpec::Pulsar { first, second, bridge, gap }),
        (nova(), nova(), 2usize..6).prop_map(|(first, second, w)| FamilySpec::BinaryStar { first, second, w }),
        (1usize..5, 1usize..5).prop_map(|(a, b)| FamilySpec::CompleteBipartite(a, b)),
        (1usize..4, 1usize..4, 1usize..4, 1usize..4, prop::sample::select(BipartiteCase::ALL.to_vec()))
            .prop_map(|(a, b, c, d, case)| FamilySpec::BipartiteJoin { a, b, c, d, case }),
    ]
}

fn spec() -> impl Strategy<Value = FamilySpec> {
    leaf().prop_recursive(2, 8, 3, |inner| {
        prop_oneof![
            (inner.clone(), 0usize..4, inner.clone(), 0usize..4).prop_map(|(l, la, r, ra)| FamilySpec::Join {
                left: Box::new(l),
                left_at: la,
                right: Box::new(r),
                right_at: ra,
            }),
            prop::collection::vec(inner, 1..3).prop_map(FamilySpec::DisjointUnion),
        ]
    })
}

fn invalid_spec() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        Just(FamilySpec::Path(0)),
        (0usize..3).prop_map(FamilySpec::Cycle),
        Just(FamilySpec::GeneralizedStar(vec![])),
        (0usize..3).prop_map(|c| FamilySpec::Bouquet(vec![c])),
        (0usize..3).prop_map(|b| FamilySpec::CompleteBipartite(0, b)),
        (nova(), nova(), 0usize..2).prop_map(|(first, second, w)| FamilySpec::BinaryStar { first, second, w }),
        (nova(), nova(), 4usize..10).prop_map(|(first, second, bridge)| FamilySpec::Pulsar {
            first,
            second,
            bridge,
            gap: bridge - 1,
        }),
        (leaf(), 200usize..300).prop_map(|(l, at)| FamilySpec::Join {
            left: Box::new(l),
            left_at: at,
            right: Box::new(FamilySpec::Path(2)),
            right_at: 0,
        }),
    ]
}

fn trapezoid_set() -> impl Strategy<Value = InertiaSet> {
    prop::collection::vec((0usize..3, 0usize..6, 0usize..4), 0..4).prop_map(|ts| {
        let mut set = InertiaSet::empty();
        for (k, m, extra) in ts {
            let n = m + extra;
            set = set.union(&InertiaSet::from(Trapezoid::new(k, m, n)));
        }
        set
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn spec_round_trips(s in spec()) {
        prop_assume!(s.validate().is_ok());
        let printed = s.to_string();
        prop_assert_eq!(parse_family_spec(&printed).unwrap(), s.clone());
        let spaced = printed.replace(',', " , ").replace('(', " ( ");
        prop_assert_eq!(parse_family_spec(&spaced).unwrap(), s);
    }

    #[test]
    fn invalid_specs_never_parse(s in invalid_spec()) {
        prop_assert!(s.validate().is_err());
        prop_assert!(parse_family_spec(&s.to_string()).is_err());
    }

    #[test]
    fn truncated_specs_fail_cleanly(s in spec(), cut in 0usize..200) {
        let text = s.to_string();
        let cut = cut.min(text.len().saturating_sub(1));
        prop_assert!(parse_family_spec(&text[..cut]).is_err());
    }

    #[test]
    fn t_notation_round_trips(set in trapezoid_set()) {
        let printed = set.to_string();
        prop_assert_eq!(parse_t_notation(&printed).unwrap(), set);
    }

    #[test]
    fn ascii_table_shape(set in trapezoid_set()) {
        let text = render_ascii(&set);
        let height = set.iter().map(|p| p.neg).max().map_or(1, |q| q + 1);
        prop_assert_eq!(text.lines().count(), height + 3);
        let dots = text.matches('•').count();
        prop_assert_eq!(dots, set.len());
    }
}
