mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bundletri::complex::{f_from_h, h_from_f};
use bundletri::format::{parse, write};
use bundletri::handle::{handle_addition, Pairing};
use bundletri::stacked::{random_stacked, recognize_stacked};
use bundletri::verify::{are_isomorphic, betti_numbers};
use bundletri::{Complex, Error, HVector};

fn stacked(n: usize, steps: usize, seed: u64) -> Complex {
    random_stacked(n, steps, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn h_and_f_invert_each_other(tail in prop::collection::vec(-50i64..50, 1..8)) {
        let mut entries = vec![1i64];
        entries.extend(tail);
        let n = entries.len() - 1;
        let h = HVector::new(entries).unwrap();
        let f = f_from_h(&h, n).unwrap();
        prop_assert_eq!(h_from_f(&f, n).unwrap(), h);
    }

    #[test]
    fn face_counts_agree_with_brute_force(n in 3usize..7, steps in 0usize..10, seed in any::<u64>()) {
        let c = stacked(n, steps, seed);
        let brute = common::brute_f_vector(&c);
        let f = c.f_vector();
        prop_assert_eq!(f.as_slice(), brute.as_slice());
        let h = c.h_vector().unwrap();
        prop_assert_eq!(h.as_slice(), common::h_from_f_direct(&brute));
    }

    #[test]
    fn stacked_spheres_have_flat_h_vectors(n in 3usize..7, steps in 0usize..12, seed in any::<u64>()) {
        let c = stacked(n, steps, seed);
        let m = c.num_vertices() as i64;
        let h = c.h_vector().unwrap();
        let inner = &h.as_slice()[1..n];
        prop_assert!(inner.iter().all(|&x| x == m - n as i64));
        prop_assert_eq!(h.as_slice()[0], 1);
        prop_assert_eq!(h.as_slice()[n], 1);
        prop_assert!(c.klee_residual().unwrap().iter().all(|&r| r == 0));
    }

    #[test]
    fn recognition_replays(n in 3usize..6, steps in 0usize..9, seed in any::<u64>()) {
        let c = stacked(n, steps, seed);
        let trace = recognize_stacked(&c).expect("stacked sphere is recognized");
        prop_assert_eq!(trace.len(), steps);
        prop_assert_eq!(trace.replay().unwrap(), c);
    }

    #[test]
    fn graph_distance_is_a_metric(n in 3usize..6, steps in 0usize..10, seed in any::<u64>()) {
        let c = stacked(n, steps, seed);
        let oracle = common::floyd(&c);
        let vs = c.vertices().to_vec();
        for &u in &vs {
            for &v in &vs {
                let d = c.graph_distance(u, v).unwrap();
                prop_assert_eq!(d, oracle[&(u, v)]);
                prop_assert_eq!(d, c.graph_distance(v, u).unwrap());
                prop_assert_eq!(d == 0, u == v);
                for &w in &vs {
                    prop_assert!(d <= c.graph_distance(u, w).unwrap() + c.graph_distance(w, v).unwrap());
                }
            }
        }
    }

    #[test]
    fn isomorphism_is_an_equivalence(n in 3usize..6, steps in 0usize..8, seed in any::<u64>()) {
        let c = stacked(n, steps, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let (b, _) = common::random_relabel(&c, 100, &mut rng);
        let (d, _) = common::random_relabel(&b, 300, &mut rng);
        prop_assert!(are_isomorphic(&c, &c).unwrap().verifies(&c, &c));
        let ab = are_isomorphic(&c, &b).unwrap();
        prop_assert!(ab.verifies(&c, &b));
        prop_assert!(ab.inverse().verifies(&b, &c));
        prop_assert!(are_isomorphic(&b, &c).is_some());
        prop_assert!(are_isomorphic(&c, &d).unwrap().verifies(&c, &d));
    }

    #[test]
    fn facet_lists_round_trip(n in 3usize..6, steps in 0usize..10, seed in any::<u64>()) {
        let c = stacked(n, steps, seed);
        prop_assert_eq!(parse(&write(&c)).unwrap(), c);
    }

    #[test]
    fn betti_sum_is_euler_characteristic(n in 3usize..6, steps in 0usize..8, seed in any::<u64>()) {
        let c = stacked(n, steps, seed);
        let b = betti_numbers(&c).unwrap();
        prop_assert_eq!(b.euler_characteristic(), c.euler_characteristic());
        prop_assert_eq!(b.as_slice(), common::oracle_betti(&c));
    }

    #[test]
    fn handle_addition_changes_counts_exactly(
        n in 3usize..6,
        steps in 6usize..16,
        seed in any::<u64>(),
        pick in any::<(usize, usize, usize)>(),
    ) {
        let c = stacked(n, steps, seed);
        let facets = c.facets();
        let kept = &facets[pick.0 % facets.len()];
        let glued = &facets[pick.1 % facets.len()];
        let mut ws = glued.clone();
        ws.rotate_left(pick.2 % n);
        let Ok(pairing) = Pairing::new(kept.iter().copied().zip(ws).collect()) else {
            return Ok(());
        };
        match handle_addition(&c, &pairing) {
            Ok(q) => {
                let (f, g) = (c.f_vector(), q.f_vector());
                prop_assert_eq!(g.count(0), f.count(0) - n as i64);
                prop_assert_eq!(q.num_facets(), c.num_facets() - 2);
                prop_assert_eq!(g.count(1), f.count(1) - (n * (n - 1) / 2) as i64);
            }
            Err(
                Error::DistanceViolation { .. }
                | Error::NonSimplicialQuotient(_)
                | Error::NotPseudomanifold(_)
                | Error::InvalidPairing(_)
                | Error::NotAFacet(_),
            ) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
