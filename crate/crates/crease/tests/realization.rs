use std::f64::consts::PI;

use crease::ltg::*;
use crease::realization::plan::Template;
use crease::realization::*;
use crease::*;
use proptest::prelude::*;

fn ltg_of(cfg: &CreaseConfig) -> Ltg {
    build_ltg(cfg, &solve_weighting(cfg).unwrap()).unwrap()
}

#[test]
fn bases() {
    assert_eq!(derive_basis(&[1, -1, -1, -1], 0).unwrap(), vec![0, 0, 0, 0]);
    assert_eq!(derive_basis(&[-3, 1, 1], 0).unwrap(), vec![-2, 1, 1]);
    assert_eq!(derive_basis(&[1, -3, 1], 0).unwrap(), vec![0, -1, 1]);
    assert_eq!(
        derive_basis(&[1, -2, 1], 0),
        Err(RealizeError::EvenWeight(1))
    );
    assert_eq!(
        derive_basis(&[1, 1, 1], 0),
        Err(RealizeError::BadSum {
            sum: 3,
            expected: -1
        })
    );
}

fn marks(w: i64, square: bool) -> (Option<MarkKind>, usize) {
    let r = mark_region("R", &[("γ".into(), w)], square.then_some("γ"));
    (r.curves[0].kind(), r.curves[0].count())
}

#[test]
fn marks_per_curve() {
    assert_eq!(marks(-3, true), (Some(MarkKind::Circle), 2));
    assert_eq!(marks(-3, false), (Some(MarkKind::Circle), 1));
    assert_eq!(marks(5, false), (Some(MarkKind::Dot), 3));
    assert_eq!(marks(1, true), (None, 0));
    assert_eq!(marks(1, false), (Some(MarkKind::Dot), 1));
}

#[test]
fn pants_with_two_circles_gets_two_arcs() {
    let r = mark_region(
        "R",
        &[("a".into(), -3), ("b".into(), 1), ("c".into(), 1)],
        Some("a"),
    );
    assert_eq!(
        r.curves.iter().map(|c| c.k).collect::<Vec<_>>(),
        vec![-2, 1, 1]
    );
    let plan = place_twisting_arcs(&[r]).unwrap();
    assert_eq!(plan.arcs.len(), 2);
    assert!(plan
        .arcs
        .iter()
        .all(|a| a.circle.curve == "a" && a.dot.curve != "a"));
    let zero = mark_region("Z", &[("a".into(), 1), ("b".into(), -1)], Some("a"));
    assert!(place_twisting_arcs(&[zero]).unwrap().is_empty());
    let bad = mark_region("B", &[("a".into(), 3), ("b".into(), -1)], Some("a"));
    assert_eq!(
        place_twisting_arcs(&[bad]),
        Err(RealizeError::UnbalancedMarks("B".into()))
    );
}

#[test]
fn thirteen_curve_edge_paths() {
    let cfg = models::thirteen_curve();
    let g = ltg_of(&cfg);
    let lab = Labeling::from_curves(&g, &["γ3", "γ5", "γ8", "γ12"]).unwrap();
    let regions = mark_regions(&g, &lab);
    let plan = place_twisting_arcs(&regions).unwrap();
    assert_eq!(plan.paths.len(), 3);
    let t = solve_weighting(&cfg).unwrap().singles(&cfg).unwrap();
    let weight = |c: &str| t[cfg.curve_index(c).unwrap()];
    let mut ends = Vec::new();
    for p in &plan.paths {
        assert!(!p.closed);
        for c in [p.curves.first().unwrap(), p.curves.last().unwrap()] {
            assert_eq!(weight(c), 1);
            ends.push(c.as_str());
        }
    }
    ends.sort();
    assert_eq!(ends, ["γ1", "γ10", "γ11", "γ13", "γ2", "γ4"]);
    for r in &regions {
        let n = plan.arcs.iter().filter(|a| a.region == r.region).count();
        assert_eq!(
            2 * n,
            r.curves.iter().map(|c| c.count()).sum::<usize>(),
            "{}",
            r.region
        );
    }
    assert!(plan.arcs.iter().all(|a| a.circle.curve != a.dot.curve));
    assert!(matches!(
        realize(&cfg, 16),
        Err(RealizeError::UnsupportedTwist(_))
    ));
}

#[test]
fn min_mark_labelings() {
    let g = ltg_of(&models::path3());
    assert_eq!(
        realization_labeling(&g).unwrap().curves(&g),
        vec!["γi", "γo"]
    );
    let g = ltg_of(&models::h_config());
    let lab = realization_labeling(&g).unwrap();
    assert_eq!(total_marks(&mark_regions(&g, &lab)), 4);
}

#[test]
fn stack_plans_share_circles() {
    let cfg = CreaseConfig::path(1);
    let r = realize(&cfg, 16).unwrap();
    assert_eq!(r.plan.slabs.len(), 2);
    assert_eq!(r.plan.circles.len(), 1);
    assert_ne!(r.plan.slabs[0].facing, r.plan.slabs[1].facing);

    let cfg = models::path3();
    let r = realize(&cfg, 16).unwrap();
    assert!(r.plan.check_shared_circles());
    let shared: Vec<&str> = r
        .plan
        .slabs
        .iter()
        .filter(|s| s.boundary.len() == 2)
        .flat_map(|s| s.boundary.iter().map(|c| c.as_str()))
        .collect();
    assert!(shared.contains(&"γm"));
    let m = r.plan.circle("γm").unwrap();
    assert!(!m.inside);

    let r = realize(&models::h_config(), 16).unwrap();
    assert!(matches!(r.plan.template, Template::SaucerPair(_)));
    assert_eq!(r.plan.arcs.len(), 2);
    assert_eq!(r.plan.arcs[0].segment, r.plan.arcs[1].segment);
    assert!(r.plan.check_shared_arcs(&r.twist));
}

#[test]
fn resolution_floor() {
    assert_eq!(
        realize(&CreaseConfig::path(1), 15).unwrap_err(),
        RealizeError::ResolutionTooLow(15)
    );
    let r = realize(&CreaseConfig::path(1), 16).unwrap();
    assert_eq!(
        emit_mesh(&r.plan, 8),
        Err(RealizeError::ResolutionTooLow(8))
    );
}

fn octahedron() -> TriMesh {
    let vertices = vec![
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut faces = Vec::new();
    for i in 0..4 {
        faces.push([i, (i + 1) % 4, 4]);
        faces.push([(i + 1) % 4, i, 5]);
    }
    TriMesh { vertices, faces }
}

#[test]
fn octahedron_and_prism() {
    let m = octahedron();
    assert!(m.is_closed_oriented());
    assert_eq!(m.euler_characteristic(), 2);
    assert!(m.signed_volume() > 0.0);
    let loops = extract_crease(&m).unwrap();
    assert_eq!(loops.len(), 1);
    assert_eq!(loops[0].vertices.len(), 4);
    assert_eq!(loops[0].sign, Sign::Plus);
    assert_eq!(discrete_turning(&loops[0].projected(&m)).unwrap(), 1);

    let mut p = TriMesh::default();
    for z in [0.0, 1.0] {
        for (x, y) in [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)] {
            p.vertices.push([x, y, z]);
        }
    }
    p.faces = vec![
        [0, 2, 1],
        [3, 4, 5],
        [0, 1, 4],
        [0, 4, 3],
        [1, 2, 5],
        [1, 5, 4],
        [2, 0, 3],
        [2, 3, 5],
    ];
    assert!(p.is_closed_oriented());
    assert!(matches!(
        extract_crease(&p),
        Err(CreaseError::DegenerateNormal(_))
    ));
}

#[test]
fn squares_and_curls() {
    let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
    assert_eq!(discrete_turning(&sq).unwrap(), 1);
    let mut cw = sq;
    cw.reverse();
    assert_eq!(discrete_turning(&cw).unwrap(), -1);
    let eight = [[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]];
    assert_eq!(discrete_turning(&eight).unwrap(), 0);
    assert!(matches!(
        discrete_turning(&[[0.0, 0.0], [1.0, 0.0], [0.5, 0.0]]),
        Err(TurningError::AntipodalEdges(_))
    ));
    // k laps of a circle, each lap slightly wider
    for k in 1..4 {
        let curl: Vec<[f64; 2]> = (0..50 * k)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / 50.0;
                let r = 1.0 + 0.01 * (j / 50) as f64;
                [r * t.cos(), r * t.sin()]
            })
            .collect();
        assert_eq!(discrete_turning(&curl).unwrap(), k as i64);
    }
    let quarter: Vec<[f64; 2]> = (0..=90)
        .map(|d| {
            let t = (d as f64).to_radians();
            [t.cos(), t.sin()]
        })
        .collect();
    assert!((partial_turning(&quarter).unwrap() - 89.0 / 360.0).abs() < 1e-9);
}

proptest! {
    #[test]
    fn convex_polygons_turn_once(mut angles in proptest::collection::vec(0.0f64..2.0 * PI, 3..40), radius in 0.1f64..100.0) {
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-6);
        prop_assume!(angles.len() >= 3);
        prop_assume!(angles.windows(2).all(|w| w[1] - w[0] < PI - 1e-3) && angles[0] + 2.0 * PI - angles[angles.len() - 1] < PI - 1e-3);
        let pts: Vec<[f64; 2]> = angles.iter().map(|t| [radius * t.cos(), radius * t.sin()]).collect();
        prop_assert_eq!(discrete_turning(&pts).unwrap(), 1);
    }

    #[test]
    fn bases_sum_to_zero(ts in proptest::collection::vec(-7i64..8, 1..8), square in 0usize..8) {
        let mut ts: Vec<i64> = ts.into_iter().map(|t| 2 * t + 1).collect();
        let n = ts.len() as i64 - 1;
        let fix = 1 - n - ts.iter().sum::<i64>();
        ts[0] += fix;
        let sq = square % ts.len();
        let k = derive_basis(&ts, sq).unwrap();
        prop_assert_eq!(k.iter().sum::<i64>(), 0);
        for (i, (&t, &k)) in ts.iter().zip(&k).enumerate() {
            prop_assert_eq!(t, if i == sq { 1 + 2 * k } else { -1 + 2 * k });
        }
    }
}

fn sphere(n: usize) -> TriMesh {
    let profile: Vec<[f64; 2]> = (0..=n)
        .map(|i| {
            let t = -PI / 2.0 + PI * i as f64 / n as f64;
            [t.cos().max(0.0), t.sin()]
        })
        .collect();
    revolve(&profile, 32)
}

fn mean_radius(m: &TriMesh, l: &CreaseLoop) -> f64 {
    let p = l.projected(m);
    p.iter().map(|q| q[0].hypot(q[1])).sum::<f64>() / p.len() as f64
}

#[test]
fn fold_signs() {
    let s = sphere(8);
    let loops = extract_crease(&s).unwrap();
    assert_eq!(loops.len(), 1);
    assert_eq!(fold_sign(&s, &loops[0]).unwrap(), Sign::Plus);

    // a dent pushed into the top: its floor is bounded by a negative fold
    let profile = [
        [0.0, -1.0],
        [0.7, -0.7],
        [1.0, 0.0],
        [0.7, 0.5],
        [0.4, 0.4],
        [0.5, 0.2],
        [0.0, 0.1],
    ];
    let d = revolve(&profile, 32);
    assert!(d.is_closed_oriented());
    let mut loops = extract_crease(&d).unwrap();
    loops.sort_by(|a, b| mean_radius(&d, a).total_cmp(&mean_radius(&d, b)));
    let signs: Vec<Sign> = loops.iter().map(|l| l.sign).collect();
    assert_eq!(signs, [Sign::Plus, Sign::Minus, Sign::Plus]);
    let turns: Vec<i64> = loops
        .iter()
        .map(|l| discrete_turning(&l.projected(&d)).unwrap())
        .collect();
    assert_eq!(turns, [-1, 1, 1]);

    // saucer pair: rims and waist positive, lips negative
    let cfg = models::h_config();
    let r = realize(&cfg, 16).unwrap();
    let Template::SaucerPair(roles) = &r.plan.template else {
        panic!()
    };
    let loops = extract_crease(&r.mesh).unwrap();
    let mut by_radius: Vec<(f64, Sign)> = loops
        .iter()
        .map(|l| {
            let p = l.projected(&r.mesh);
            let (lo, hi) = p
                .iter()
                .fold((f64::MAX, f64::MIN), |(a, b), q| (a.min(q[1]), b.max(q[1])));
            ((hi - lo) / 2.0, l.sign)
        })
        .collect();
    by_radius.sort_by(|a, b| a.0.total_cmp(&b.0));
    let signs: Vec<Sign> = by_radius.iter().map(|x| x.1).collect();
    assert_eq!(
        signs,
        [Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus, Sign::Plus]
    );
    assert_eq!(roles.lips.len(), 2);
}

#[test]
fn round_trip_up_to_five_curves() {
    for cfg in enumerate_configs(5, 0, true) {
        let r = realize(&cfg, 24).unwrap();
        let rep = verify_realization(&cfg, &r.weighting, &r.mesh);
        assert!(rep.pass, "{}: {:?}", canonical_form(&cfg), rep.checks);
        let t: i64 = rep.loops.iter().map(|l| l.turning.unwrap()).sum();
        assert_eq!(2 * t, 2);
    }
}

#[test]
fn path3_signs_and_turnings() {
    let cfg = models::path3();
    let r = realize(&cfg, 16).unwrap();
    let loops = extract_crease(&r.mesh).unwrap();
    let mut got: Vec<(i64, Sign)> = loops
        .iter()
        .map(|l| (discrete_turning(&l.projected(&r.mesh)).unwrap(), l.sign))
        .collect();
    got.sort();
    assert_eq!(got, [(-1, Sign::Minus), (1, Sign::Plus), (1, Sign::Plus)]);
}

#[test]
fn inverted_cap_is_reported() {
    let cfg = CreaseConfig::path(1);
    let r = realize(&cfg, 16).unwrap();
    let mut m = r.mesh.clone();
    let top: f64 = m.vertices.iter().map(|v| v[2]).fold(f64::MIN, f64::max);
    for t in &mut m.faces {
        if t.iter().all(|&v| m.vertices[v][2] > 0.5 * top) {
            t.swap(1, 2);
        }
    }
    let rep = verify_realization(&cfg, &r.weighting, &m);
    assert!(!rep.pass);
    assert!(!rep.check("closed").unwrap().pass);
    assert!(rep.check("turning").is_none_or(|c| !c.pass));
}

#[test]
fn obj_round_trip() {
    let r = realize(&models::path3(), 16).unwrap();
    let back = read_obj(&write_obj(&r.mesh)).unwrap();
    assert_eq!(back, r.mesh);
    assert!(read_obj("v 0 0 0\nf 1 2 3\n").is_err());
    assert!(r.mesh.signed_volume() > 0.0);
}
