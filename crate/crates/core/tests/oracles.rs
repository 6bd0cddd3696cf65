mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trispcl::accat::AcyclicCategory;
use trispcl::accat::ClosureReport;
use trispcl::fixtures;
use trispcl::symmetry::{quotient_category, GroupAction};

#[test]
fn naturally_labelled_poset_counts() {
    let counts: Vec<usize> = (0..=5)
        .map(|n| naturally_labelled_posets(n).len())
        .collect();
    assert_eq!(counts, [1, 1, 2, 7, 40, 357]);
}

#[test]
fn closure_sides_match_library() {
    for n in 1..=4 {
        for lt in naturally_labelled_posets(n) {
            let p = poset_of(&lt);
            for (f, side) in closure_like_maps(&lt) {
                let r = ClosureReport::of_object_map(&p, &f);
                assert!(r.is_closure_operator());
                match side {
                    Side::Descending => assert!(r.is_descending_closure()),
                    Side::Ascending => {
                        assert!(r.is_ascending_closure() && !r.is_descending_closure())
                    }
                    Side::Neither => {
                        assert!(!r.is_ascending_closure() && !r.is_descending_closure())
                    }
                }
            }
        }
    }
}

#[test]
fn automorphism_groups_of_small_posets() {
    let antichain = vec![vec![false; 3]; 3];
    assert_eq!(automorphisms(&antichain).len(), 6);
    assert_eq!(small_subgroups(&automorphisms(&antichain), 4).len(), 4);
    let chain: Order = (0..3).map(|x| (0..3).map(|y| x < y).collect()).collect();
    assert_eq!(automorphisms(&chain).len(), 1);
}

/// Compares with the oracle; true when composition merged orbits.
fn check_quotient(c: &AcyclicCategory, a: &GroupAction) -> bool {
    let q = quotient_category(c, a).unwrap();
    let oracle = decomposition_classes(c, a);
    assert!(
        same_partition(&q.morphism_class, &oracle),
        "classes differ: {:?} vs {:?}",
        q.morphism_class,
        oracle
    );
    q.category.morphism_count() < a.orbits(1).len()
}

#[test]
fn quotient_matches_decomposition_oracle_on_fixtures() {
    let (p, a) = fixtures::triangle_boundary_face_poset();
    check_quotient(p.category(), &a);
    let (p, a) = fixtures::two_disjoint_chains();
    check_quotient(p.category(), &a);
}

#[test]
fn quotient_matches_decomposition_oracle_on_random_categories() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut merged = 0;
    for _ in 0..200 {
        let (c, a) = fixtures::random_g_category(&mut rng, 7, 6, 40);
        merged += check_quotient(&c, &a) as usize;
        let (p, a) = fixtures::random_g_poset(&mut rng, 7, 6);
        merged += check_quotient(p.category(), &a) as usize;
    }
    eprintln!("merged beyond orbits: {merged}");
    assert!(merged > 0, "corpus never merges orbits through composition");
}

#[test]
fn push_then_lift_round_trips() {
    use trispcl::closure::induced_trisp_closure_map;
    use trispcl::equivariant::{check_condition_c, lift_closure_map, push_closure_map};
    use trispcl::nerve::nerve;
    use trispcl::symmetry::induced_trisp_action;
    let mut round_trips = 0;
    for n in 2..=4 {
        for lt in naturally_labelled_posets(n) {
            let p = poset_of(&lt);
            let k = nerve(p.category()).unwrap();
            let maps = closure_like_maps(&lt);
            for gens in small_subgroups(&automorphisms(&lt), 4) {
                let action = poset_action(&p, &gens);
                let group: Vec<Vec<usize>> = action
                    .elements()
                    .iter()
                    .map(|g| g.block(0).to_vec())
                    .collect();
                let ta = induced_trisp_action(&k, &action).unwrap();
                for (f, side) in &maps {
                    if *side == Side::Neither || !is_equivariant(f, &group) {
                        continue;
                    }
                    let c = induced_trisp_closure_map(&p, &operator(&p, f)).unwrap();
                    let pushed = push_closure_map(&k.trisp, &ta, &c).unwrap();
                    if !check_condition_c(&k.trisp, &pushed.quotient, &pushed.map)
                        .unwrap()
                        .holds
                    {
                        continue;
                    }
                    let lifted = lift_closure_map(&k.trisp, &ta, &pushed.map).unwrap();
                    assert_eq!(lifted, c, "lift(push(c)) differs for {f:?} on {lt:?}");
                    let again = push_closure_map(&k.trisp, &ta, &lifted).unwrap();
                    assert_eq!(again.map, pushed.map);
                    round_trips += 1;
                }
            }
        }
    }
    assert!(
        round_trips > 50,
        "only {round_trips} cases satisfy Condition C"
    );
}
