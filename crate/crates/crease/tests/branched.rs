use crease::branched::*;
use crease::composer::Model;

fn complexity(n1: usize, n2: usize) -> Complexity {
    Complexity { n1, n2 }
}

#[test]
fn example_initial_complexity() {
    let d = mushroom_five();
    validate_diagram(&d).unwrap();
    assert_eq!(d.word_strings(), vec!["×,1,2,3,3,4,2,5,5,4,1,×"]);
    assert_eq!(compute_complexity(&d), complexity(14, 8));
}

#[test]
fn example_close_instances() {
    let d = mushroom_five();
    let w = &d.words[0];
    // second occurrences of 3, 5, 4, 1
    assert_eq!(
        partial_close_vertices(&d, ComponentName::APlus),
        vec![3, 7, 8, 9]
    );
    assert_eq!([3, 7, 8, 9].map(|i| w[i]), [3, 5, 4, 1]);
    // first occurrences of 1, 2, 3, 5
    assert_eq!(
        partial_close_vertices(&d, ComponentName::AMinus),
        vec![0, 1, 2, 6]
    );
    assert_eq!([0, 1, 2, 6].map(|i| w[i]), [1, 2, 3, 5]);
}

#[test]
fn example_partial_close_pinch() {
    let d = mushroom_five();
    let moves = enumerate_partial_close_moves(&d);
    assert_eq!(moves.len(), 2);
    let Move::PartialClose(m) = &moves[0] else {
        panic!()
    };
    assert_eq!(
        (m.component, m.ids.clone()),
        (ComponentName::APlus, vec![1, 2, 3])
    );
    let Move::PartialClose(m) = &moves[1] else {
        panic!()
    };
    assert_eq!(
        (m.component, m.ids.clone()),
        (ComponentName::AMinus, vec![5, 4, 1])
    );

    let after = apply_partial_close(&d, &moves[0]).unwrap();
    assert_eq!(after.word_strings(), vec!["×,4,5,5,4,×"]);
    assert_eq!(compute_complexity(&after), complexity(4, 4));
    assert_eq!(after.double_points().len(), 2);
    assert_eq!(
        partial_close_vertices(&after, ComponentName::AMinus),
        vec![0, 1]
    );
    assert_eq!(
        partial_close_vertices(&after, ComponentName::APlus),
        vec![2, 3]
    );
}

#[test]
fn example_double_cusp_pinch() {
    let d = mushroom_five();
    let moves = enumerate_double_cusp_moves(&d).unwrap();
    let Move::DoubleCusp(m) = &moves[0] else {
        panic!()
    };
    assert_eq!((m.slid, m.past, m.new_ids), (2, 4, [6, 7]));
    assert_eq!(&d.words[0][m.arc.0..=m.arc.1], &[3, 4, 2, 5]);

    let after = apply_double_cusp(&d, &moves[0]).unwrap();
    assert_eq!(after.word_strings(), vec!["×,1,6,7,3,3,7,4,5,5,4,6,1,×"]);
    assert_eq!(compute_complexity(&after), complexity(12, 12));
    assert!(complexity(12, 12) < complexity(14, 8));
    assert_eq!(after.double_points().len(), 6);

    let chords = |name| {
        let c = after.component(name).unwrap();
        let mut v: Vec<(u32, u32)> = c
            .interior
            .edges
            .iter()
            .map(|e| match e {
                [End::B(a), End::B(b)] => (c.boundary[*a.min(b)], c.boundary[*a.max(b)]),
                _ => panic!("interior vertex left"),
            })
            .collect();
        v.sort();
        v
    };
    assert_eq!(chords(ComponentName::APlus), vec![(1, 6), (4, 5), (7, 3)]);
    assert_eq!(chords(ComponentName::AMinus), vec![(3, 7), (5, 4), (6, 1)]);
    // every chord is now a partial-close move
    assert_eq!(enumerate_partial_close_moves(&after).len(), 6);
}

#[test]
fn canonical_models() {
    for (m, k, f) in [
        (Model::Saucer, complexity(0, 0), FoldingAssignment::F1),
        (Model::Mushroom, complexity(0, 0), FoldingAssignment::F2),
        (Model::Toric, complexity(6, 0), FoldingAssignment::F3),
    ] {
        let d = canonical_model(m);
        validate_diagram(&d).unwrap();
        assert_eq!(d.folding, f);
        assert_eq!(compute_complexity(&d), k, "{m}");
        assert!(enumerate_partial_close_moves(&d).is_empty());
        assert!(enumerate_double_cusp_moves(&d).unwrap().is_empty());
        let r = classify(&d).unwrap();
        assert_eq!(r.label, m);
        assert!(r.trace.is_empty());
    }
    let t = canonical_model(Model::Toric);
    for name in [ComponentName::DeltaPlus, ComponentName::DeltaMinus] {
        assert!(partial_close_vertices(&t, name).is_empty());
    }
    let a = t.component(ComponentName::APlus).unwrap();
    assert_eq!((a.interior.vertices.len(), a.interior.edges.len()), (1, 2));
    assert!(a.interior.edges.iter().any(|e| e[0] == e[1]));
}

#[test]
fn classify_example() {
    let r = classify(&mushroom_five()).unwrap();
    assert_eq!(r.label, Model::Mushroom);
    assert_eq!(r.initial, complexity(14, 8));
    assert_eq!(r.trace[0].after, complexity(4, 4));
    assert_eq!(r.terminal, complexity(0, 0));
    for s in &r.trace {
        assert!(s.after.measure() < s.before.measure());
    }
}

#[test]
fn validation_rejects() {
    let json = mushroom_five().to_json();
    assert_eq!(parse_diagram(&json).unwrap(), mushroom_five());
    let f4 = json.replace("\"f2\"", "\"f4\"");
    assert_eq!(
        parse_diagram(&f4),
        Err(DiagramError::Invalid(vec![DiagramViolation::F4Excluded]))
    );
    assert_eq!(
        FoldingAssignment::from_signs([
            crease::Sign::Plus,
            crease::Sign::Minus,
            crease::Sign::Minus
        ]),
        Err(FoldingError::F4Excluded)
    );

    let mut t = canonical_model(Model::Toric);
    t.components[0].membership = vec![Circle::Boundary];
    let errs = validate_diagram(&t).unwrap_err();
    assert!(errs.iter().any(|v| matches!(
        v,
        DiagramViolation::Geography {
            component: ComponentName::DeltaPlus,
            ..
        }
    )));

    let mut d = mushroom_five();
    d.words[0].push(7);
    assert!(validate_diagram(&d).is_err());

    // crossing chords are not planar
    let mut d = mushroom_five();
    let a = d
        .components
        .iter_mut()
        .find(|c| c.name == ComponentName::APlus)
        .unwrap();
    a.interior.edges.push([End::B(5), End::B(7)]);
    a.interior.edges.push([End::B(3), End::B(9)]);
    let errs = validate_diagram(&d).unwrap_err();
    assert!(
        errs.iter()
            .any(|v| matches!(v, DiagramViolation::NonPlanar { .. })),
        "{errs:?}"
    );
}

mod random {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeMap;

    fn grown(f: FoldingAssignment, max: usize, seed: u64) -> BranchedDiagram {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        generate::grow_diagram(f, max, &mut |n| rng.gen_range(0..n))
    }

    /// A boundary instance is ∂-close when it has no edge and no connected
    /// piece of the trace graph attaches on both sides of it.
    fn interval_close(c: &ChordComponent) -> Vec<usize> {
        if !(c.on_locus() && c.sees_boundary()) {
            return Vec::new();
        }
        let n = c.boundary.len();
        let m = c.interior.vertices.len();
        let key = |e: End| match e {
            End::B(i) => i,
            End::V(k) => n + k,
        };
        let mut parent: Vec<usize> = (0..n + m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        for e in &c.interior.edges {
            let (a, b) = (find(&mut parent, key(e[0])), find(&mut parent, key(e[1])));
            parent[a] = b;
        }
        let mut span: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for i in 0..n {
            if c.interior.degree(End::B(i)) > 0 {
                let r = find(&mut parent, i);
                let s = span.entry(r).or_insert((i, i));
                s.0 = s.0.min(i);
                s.1 = s.1.max(i);
            }
        }
        (0..n)
            .filter(|&i| {
                c.interior.degree(End::B(i)) == 0 && !span.values().any(|&(a, b)| a < i && i < b)
            })
            .collect()
    }

    fn occurrences_ok(d: &BranchedDiagram) -> bool {
        let mut count: BTreeMap<u32, usize> = BTreeMap::new();
        for &x in d.words.iter().flatten() {
            *count.entry(x).or_default() += 1;
        }
        count.values().all(|&c| c == 2)
    }

    #[test]
    fn hundred_grown_diagrams_classify() {
        for seed in 0..100u64 {
            let f = if seed % 2 == 0 {
                FoldingAssignment::F1
            } else {
                FoldingAssignment::F2
            };
            let d = grown(f, 1 + seed as usize % 6, seed);
            validate_diagram(&d).unwrap();
            assert!(d.double_points().len() <= 6);
            let r = classify(&d).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            assert_eq!(r.label, f.model());
            assert_eq!(r.terminal, Complexity { n1: 0, n2: 0 });
        }
    }

    proptest! {
        #[test]
        fn closeness_matches_interval_oracle(seed in any::<u64>(), max in 1usize..9, two in any::<bool>()) {
            let f = if two { FoldingAssignment::F2 } else { FoldingAssignment::F1 };
            let d = grown(f, max, seed);
            for c in &d.components {
                prop_assert_eq!(partial_close_vertices(&d, c.name), interval_close(c));
            }
        }

        #[test]
        fn moves_keep_invariants(seed in any::<u64>(), max in 1usize..8, two in any::<bool>()) {
            let f = if two { FoldingAssignment::F2 } else { FoldingAssignment::F1 };
            let mut d = grown(f, max, seed);
            prop_assert_eq!(parse_diagram(&d.to_json()).unwrap(), d.clone());
            while let Some(mv) = enumerate_partial_close_moves(&d).into_iter().next() {
                let next = apply_partial_close(&d, &mv).unwrap();
                prop_assert!(validate_diagram(&next).is_ok());
                prop_assert!(occurrences_ok(&next));
                prop_assert_eq!(next.folding, d.folding);
                prop_assert!(next.double_points().len() < d.double_points().len());
                prop_assert!(compute_complexity(&next).measure() < compute_complexity(&d).measure());
                d = next;
            }
            prop_assert!(is_minimal(&d));
        }
    }
}
