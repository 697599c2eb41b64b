//! Invariants checked on random instances against naive oracles.

use std::collections::BTreeSet;

use proptest::prelude::*;

use psgkit::dynamics::PartialDynSystem;
use psgkit::families;
use psgkit::format;
use psgkit::largeness::{self, Notion};
use psgkit::{Limits, PartialMap, PartialSemigroup, SubsetMask};

fn semigroup() -> impl Strategy<Value = PartialSemigroup> {
    (1usize..=4, 0.2f64..1.0, any::<u64>())
        .prop_map(|(n, density, seed)| families::random_partial(n, density, seed).unwrap())
}

fn with_subset() -> impl Strategy<Value = (PartialSemigroup, SubsetMask)> {
    semigroup().prop_flat_map(|s| {
        let n = s.size();
        (Just(s), (0u64..1 << n).prop_map(move |b| SubsetMask::from_bits(n, b)))
    })
}

fn raw_table() -> impl Strategy<Value = Vec<Vec<Option<usize>>>> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(proptest::option::of(0..n), n), n)
    })
}

fn partial_map(points: usize) -> impl Strategy<Value = PartialMap> {
    proptest::collection::vec(proptest::option::of(0..points), points)
        .prop_map(move |image| PartialMap::new(points, image).unwrap())
}

fn nonempty_subsets(of: &SubsetMask) -> impl Iterator<Item = SubsetMask> + '_ {
    of.nonempty_subsets()
}

fn r_of(s: &PartialSemigroup, h: &SubsetMask) -> SubsetMask {
    s.right_set_family(h).unwrap()
}

/// `⋃_{t∈H} t⁻¹A`, computed pointwise.
fn pulled_back(s: &PartialSemigroup, h: &SubsetMask, a: &SubsetMask) -> SubsetMask {
    SubsetMask::from_indices(
        s.size(),
        (0..s.size()).filter(|&x| h.iter().any(|t| s.product(t, x).is_some_and(|p| a.contains(p)))),
    )
}

fn lands_in(s: &PartialSemigroup, t: &SubsetMask, x: usize, target: &SubsetMask) -> bool {
    t.iter().all(|f| s.product(f, x).is_some_and(|p| target.contains(p)))
}

fn naive(s: &PartialSemigroup, a: &SubsetMask, notion: Notion) -> bool {
    let n = s.size();
    let all = s.full_set();
    let delta = s.delta_r();
    match notion {
        Notion::PartiallySyndetic => (0..n).filter(|&u| !s.left_set(u).is_empty()).all(|u| {
            nonempty_subsets(s.left_set(u)).any(|h| r_of(s, &h).is_subset(&pulled_back(s, &h, a)))
        }),
        Notion::Syndetic => {
            if delta.is_empty() {
                n > 0
            } else {
                nonempty_subsets(&all).any(|h| delta.is_subset(&pulled_back(s, &h, a)))
            }
        }
        Notion::PartiallyThick => (0..n).filter(|&u| !s.left_set(u).is_empty()).any(|u| {
            nonempty_subsets(s.left_set(u)).all(|f| r_of(s, &f).iter().any(|t| lands_in(s, &f, t, a)))
        }),
        Notion::CThick => delta
            .iter()
            .any(|p| !s.left_set(p).is_empty() && lands_in(s, s.left_set(p), p, a)),
        Notion::PartiallyPiecewiseSyndetic => (0..n).filter(|&e| !s.right_set(e).is_empty()).all(|e| {
            nonempty_subsets(s.right_set(e)).any(|h| {
                let target = pulled_back(s, &h, a);
                nonempty_subsets(&r_of(s, &h))
                    .all(|t| r_of(s, &t).iter().any(|x| lands_in(s, &t, x, &target)))
            })
        }),
        Notion::CPiecewiseSyndetic => (0..n).any(|e| {
            nonempty_subsets(s.right_set(e)).any(|h| {
                let target = pulled_back(s, &h, a);
                let rh = r_of(s, &h);
                nonempty_subsets(s.right_set(e)).all(|t| {
                    let front = t.intersection(&rh);
                    r_of(s, &t).iter().any(|x| lands_in(s, &front, x, &target))
                })
            })
        }),
    }
}

fn naive_violations(rows: &[Vec<Option<usize>>]) -> BTreeSet<(usize, usize, usize)> {
    let n = rows.len();
    let p = |x: usize, y: usize| rows[x][y];
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = p(x, y).and_then(|xy| p(xy, z));
                let rhs = p(y, z).and_then(|yz| p(x, yz));
                if lhs != rhs {
                    out.insert((x, y, z));
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn validate_reports_exactly_the_naive_violations(rows in raw_table()) {
        let s = PartialSemigroup::from_rows(rows.clone()).unwrap();
        let report = s.validate();
        let got: BTreeSet<_> = report.violations.iter().map(|v| v.triple).collect();
        let want = naive_violations(&rows);
        prop_assert_eq!(report.ok, want.is_empty());
        prop_assert_eq!(got, want);
    }

    #[test]
    fn psg_text_round_trips(s in semigroup(), named in any::<bool>()) {
        let s = if named {
            let names = (0..s.size()).map(|i| format!("e{i}")).collect();
            s.with_names(names).unwrap()
        } else {
            s
        };
        let text = format::emit_psg(&s);
        let back = format::parse_psg(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(format::emit_psg(&back), text);
    }

    #[test]
    fn pds_text_round_trips(s in semigroup()) {
        let d = PartialDynSystem::translation(&s);
        let text = format::emit_pds(&d, "s.psg");
        let parsed = format::parse_pds(&text).unwrap();
        prop_assert_eq!(parsed.semigroup.as_str(), "s.psg");
        let back = parsed.into_system(s.clone()).unwrap();
        prop_assert_eq!(format::emit_pds(&back, "s.psg"), text);
    }

    #[test]
    fn quotients_compose((s, a) in with_subset()) {
        for x in 0..s.size() {
            let inner = s.quotient_set(x, &a);
            for y in s.right_set(x).iter() {
                let xy = s.product(x, y).unwrap();
                prop_assert_eq!(s.quotient_set(y, &inner), s.quotient_set(xy, &a));
            }
        }
    }

    #[test]
    fn quotients_are_monotone((s, a) in with_subset(), extra in any::<u64>()) {
        let b = a.union(&SubsetMask::from_bits(s.size(), extra & ((1 << s.size()) - 1)));
        for x in 0..s.size() {
            prop_assert!(s.quotient_set(x, &a).is_subset(&s.quotient_set(x, &b)));
        }
    }

    #[test]
    fn composability_sets_are_antitone(s in semigroup(), h in any::<u64>(), g in any::<u64>()) {
        let n = s.size();
        let mask = (1u64 << n) - 1;
        let small = SubsetMask::from_bits(n, (h & mask) | 1);
        let big = small.union(&SubsetMask::from_bits(n, g & mask));
        prop_assert!(s.right_set_family(&big).unwrap().is_subset(&s.right_set_family(&small).unwrap()));
        prop_assert!(s.left_set_family(&big).unwrap().is_subset(&s.left_set_family(&small).unwrap()));
        prop_assert_eq!(s.is_right_adequate(), !s.right_set_family(&s.full_set()).unwrap().is_empty());
    }

    #[test]
    fn classifiers_match_naive_definitions((s, a) in with_subset()) {
        let report = largeness::classify(&s, &a);
        for n in Notion::ALL {
            prop_assert_eq!(report.holds(n), naive(&s, &a, n), "{}", n.name());
            prop_assert!(largeness::replay(&s, &a, report.get(n)));
        }
    }

    #[test]
    fn largeness_is_upward_closed((s, a) in with_subset(), extra in any::<u64>()) {
        let b = a.union(&SubsetMask::from_bits(s.size(), extra & ((1 << s.size()) - 1)));
        for n in Notion::ALL {
            if largeness::verdict(&s, &a, n).holds {
                prop_assert!(largeness::verdict(&s, &b, n).holds, "{}", n.name());
            }
        }
    }

    #[test]
    fn thick_and_syndetic_are_dual((s, a) in with_subset()) {
        let d = largeness::classify(&s, &a).duality;
        prop_assert!(d.thick_vs_complement_syndetic);
        prop_assert!(d.syndetic_vs_complement_thick);
    }

    #[test]
    fn minimal_left_ideals_match_exhaustive_search(s in semigroup()) {
        let ideals = s.all_left_ideals(&Limits::default()).unwrap();
        let minimal: BTreeSet<Vec<usize>> = ideals
            .iter()
            .filter(|i| !ideals.iter().any(|j| j != *i && j.is_subset(i)))
            .map(|i| i.to_vec())
            .collect();
        let got: BTreeSet<Vec<usize>> = s.minimal_left_ideals().iter().map(|i| i.to_vec()).collect();
        prop_assert_eq!(got, minimal);
    }

    #[test]
    fn smallest_ideal_lies_in_every_ideal(s in semigroup()) {
        if let Some(k) = s.smallest_ideal() {
            prop_assert!(s.is_ideal(&k).unwrap());
            for i in s.all_ideals(&Limits::default()).unwrap() {
                prop_assert!(k.is_subset(&i));
            }
            let e = s.minimal_idempotents();
            prop_assert!(e.is_subset(&k));
        }
    }

    #[test]
    fn transpose_is_an_involution(s in semigroup()) {
        let t = s.transpose();
        prop_assert!(t.validate().ok);
        prop_assert_eq!(t.transpose(), s);
    }

    #[test]
    fn infinity_extension_is_a_homomorphism(
        (f, g) in (1usize..=5).prop_flat_map(|n| (partial_map(n), partial_map(n)))
    ) {
        let (fe, ge) = (f.extend(), g.extend());
        prop_assert_eq!(fe.apply(fe.infinity()), fe.infinity());
        prop_assert_eq!(fe.restrict().unwrap(), f.clone());
        prop_assert_eq!(f.compose(&g).extend(), fe.compose(&ge));
    }

    #[test]
    fn return_sets_grow_with_the_neighborhood(s in semigroup(), extra in any::<u64>()) {
        let d = PartialDynSystem::translation(&s);
        let n = d.points();
        for y in 0..n {
            let single = SubsetMask::singleton(n, y);
            let bigger = single.union(&SubsetMask::from_bits(n, extra & ((1 << n) - 1)));
            prop_assert!(d.return_set(y, &single).is_subset(&d.return_set(y, &bigger)));
            if d.returns_syndetically(y, &single) {
                prop_assert!(d.returns_syndetically(y, &bigger));
            }
        }
    }

    #[test]
    fn translation_systems_satisfy_the_axioms(s in semigroup()) {
        let d = PartialDynSystem::translation(&s);
        prop_assert!(d.validate().ok);
        let r = psgkit::dynamics::left_ideal_correspondence(&d, &Limits::default()).unwrap();
        prop_assert!(r.holds());
    }
}

#[test]
fn subset_mask_bits_round_trip() {
    for n in 0..=6 {
        for bits in 0..1u64 << n {
            let m = SubsetMask::from_bits(n, bits);
            assert_eq!(m.to_bits(), Some(bits));
            assert_eq!(m.complement().complement(), m);
            assert_eq!(m.count(), bits.count_ones() as usize);
        }
    }
}
