//! Property tests for the group engine: axioms, counting identities,
//! closure idempotence, and isomorphism-test symmetry on randomized small
//! groups.

use burnloops_core::group::FiniteGroup;
use burnloops_core::iso::isomorphic;
use burnloops_core::models::{make_reference, ReferenceSpec};
use burnloops_core::perm::Perm;
use proptest::prelude::*;

fn perm_strategy(max_degree: usize) -> impl Strategy<Value = Perm> {
    (2..max_degree).prop_flat_map(|d| {
        Just((0..d as u16).collect::<Vec<u16>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).expect("shuffle of 0..d"))
    })
}

/// A pool of small reference-group recipes, all of order <= 48.
fn small_group_spec() -> impl Strategy<Value = ReferenceSpec> {
    prop_oneof![
        (1u32..13).prop_map(ReferenceSpec::Cyclic),
        (1u32..13).prop_map(|k| ReferenceSpec::Dihedral(2 * k)),
        Just(ReferenceSpec::Sym3),
        (2u32..24).prop_map(ReferenceSpec::UnitsMod),
        ((1u32..7), (1u32..5)).prop_map(|(a, b)| ReferenceSpec::DirectProduct(vec![
            ReferenceSpec::Cyclic(a),
            ReferenceSpec::Dihedral(2 * b),
        ])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_inverse_identity(p in perm_strategy(12), q in perm_strategy(12)) {
        prop_assume!(p.degree() == q.degree());
        let id = Perm::identity(p.degree());
        prop_assert_eq!(p.compose(&p.inverse()), id.clone());
        prop_assert_eq!(p.compose(&id), p.clone());
        // (pq)^-1 = q^-1 p^-1
        prop_assert_eq!(p.compose(&q).inverse(), q.inverse().compose(&p.inverse()));
    }

    #[test]
    fn closure_is_idempotent_and_lagrange_holds(p in perm_strategy(6), q in perm_strategy(6)) {
        prop_assume!(p.degree() == q.degree());
        let g = FiniteGroup::closure(&[p, q]).unwrap();
        let again = FiniteGroup::closure(g.elements()).unwrap();
        prop_assert_eq!(again.elements(), g.elements());
        for sub in [g.center(), g.derived_subgroup()] {
            prop_assert_eq!(g.order() % sub.order(), 0);
        }
    }

    #[test]
    fn orbit_stabilizer_counting(p in perm_strategy(9), point in 0usize..8) {
        let g = FiniteGroup::closure(&[p]).unwrap();
        prop_assume!(point < g.degree());
        let (orbit, stab) = g.orbit_stabilizer(point).unwrap();
        prop_assert_eq!(orbit.len() * stab.order(), g.order());
    }

    #[test]
    fn quotient_respects_order(p in perm_strategy(6), q in perm_strategy(6)) {
        prop_assume!(p.degree() == q.degree());
        let g = FiniteGroup::closure(&[p, q]).unwrap();
        let d = g.derived_subgroup();
        // the derived subgroup is always normal
        prop_assert!(g.is_normal(&d).unwrap());
        let quot = g.quotient(&d).unwrap();
        prop_assert_eq!(quot.order() * d.order(), g.order());
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(a in small_group_spec(), b in small_group_spec()) {
        let ga = make_reference(&a).unwrap();
        let gb = make_reference(&b).unwrap();
        prop_assume!(ga.order() <= 48 && gb.order() <= 48);
        let self_iso = isomorphic(&ga, &ga).expect("reflexive");
        prop_assert!(self_iso.is_valid());
        let ab = isomorphic(&ga, &gb);
        let ba = isomorphic(&gb, &ga);
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let Some(w) = ab {
            prop_assert!(w.is_valid());
        }
    }
}
