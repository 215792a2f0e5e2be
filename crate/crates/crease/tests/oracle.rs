//! Enumeration and weighting against a brute-force generator.

#[path = "support/brute.rs"]
mod brute;

use brute::*;
use crease::*;
use proptest::prelude::*;

#[test]
fn enumeration_matches_brute_force() {
    for k in 1..=6 {
        let (all, good) = brute_counts(k);
        let got_all = enumerate_configs(k, 0, false)
            .iter()
            .filter(|c| c.curves.len() == k)
            .count();
        let got_good = enumerate_configs(k, 0, true)
            .iter()
            .filter(|c| c.curves.len() == k)
            .count();
        assert_eq!((got_all, got_good), (all, good), "k = {k}");
    }
    assert_eq!(brute_counts(3).1, 1);
    assert_eq!(enumerate_configs(3, 0, true).len(), 2);
    assert_eq!(enumerate_configs(4, 0, true).len(), 2);
}

#[test]
fn solver_matches_elimination() {
    for k in 1..=5 {
        for edges in all_labeled_trees(k + 1) {
            let cfg = CreaseConfig::from_edges(k + 1, &edges);
            let ours = solve_weighting(&cfg).ok().map(|w| w.singles(&cfg).unwrap());
            assert_eq!(ours, brute_weights(k + 1, &edges), "{edges:?}");
        }
    }
}

fn tree_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (3usize..11).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(move |code| (n, prufer_tree(n, &code)))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn weights_are_label_independent(
        (n, edges) in tree_strategy(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cfg = CreaseConfig::from_edges(n, &edges);
        let mut cp: Vec<usize> = (0..edges.len()).collect();
        let mut rp: Vec<usize> = (0..n).collect();
        cp.shuffle(&mut rng);
        rp.shuffle(&mut rng);
        let other = cfg.relabeled(&cp, &rp);
        prop_assert_eq!(canonical_form(&cfg), canonical_form(&other));
        prop_assert!(config_isomorphic(&cfg, &other));
        match (solve_weighting(&cfg), solve_weighting(&other)) {
            (Ok(a), Ok(b)) => {
                let a = a.singles(&cfg).unwrap();
                let b = b.singles(&other).unwrap();
                for i in 0..a.len() {
                    prop_assert_eq!(a[i], b[cp[i]]);
                }
            }
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "weightability changed under relabeling"),
        }
    }

    #[test]
    fn weightings_obey_the_identities((n, edges) in tree_strategy()) {
        let cfg = CreaseConfig::from_edges(n, &edges);
        let brute = brute_weights(n, &edges);
        let ours = solve_weighting(&cfg);
        prop_assert_eq!(ours.is_ok(), brute.is_some());
        if let Ok(w) = ours {
            verify_weighting(&cfg, &w).unwrap();
            let t = w.singles(&cfg).unwrap();
            prop_assert_eq!(2 * t.iter().sum::<i64>(), 2);
            for (c, &(a, b)) in cfg.ends().iter().enumerate() {
                if cfg.degree(a) == 1 || cfg.degree(b) == 1 {
                    prop_assert_eq!(t[c], 1);
                }
                prop_assert!(t[c] % 2 != 0);
            }
        }
    }

    #[test]
    fn json_round_trips((n, edges) in tree_strategy(), perm in permutation(4)) {
        let mut cfg = CreaseConfig::from_edges(n, &edges);
        cfg.curves[0].corners = 2 * perm[0] as u32;
        let text = config_to_json(&cfg);
        prop_assert_eq!(parse_config(&text).unwrap(), cfg);
    }

    #[test]
    fn enumeration_canonical_form_is_stable(k in 1usize..6) {
        for cfg in enumerate_configs(k, 2, false) {
            let again = CreaseConfig::from_decorated_edges(
                cfg.regions.len(),
                &cfg.ends().iter().zip(&cfg.curves).map(|(&(a, b), c)| (b, a, c.corners)).collect::<Vec<_>>(),
            );
            prop_assert_eq!(canonical_form(&cfg), canonical_form(&again));
        }
    }
}
