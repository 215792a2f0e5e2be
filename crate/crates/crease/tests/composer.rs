use crease::composer::*;
use crease::signs::Sign::{Minus, Plus};
use crease::*;

fn sum(a: Model, ga: &str, b: Model, gb: &str) -> Result<DecoratedClass, ComposeError> {
    connect_sum(&DecoratedClass::model(a), ga, &DecoratedClass::model(b), gb)
}

fn known(c: &DecoratedClass, id: &str) -> Sign {
    match c.sign_of(id).unwrap() {
        CurveSign::Known(s) => s,
        CurveSign::Unknown => panic!("{id} unknown"),
    }
}

#[test]
fn model_sign_data() {
    assert_eq!(model_signs(Model::Saucer).to_string(), "[+,+,−]");
    assert_eq!(model_signs(Model::Mushroom).to_string(), "[+,−,+]");
    assert_eq!(model_signs(Model::Toric).to_string(), "[−,+,−]");
    for m in Model::ALL {
        let c = DecoratedClass::model(m);
        assert_eq!(
            sign_feasibility(&c.config, &model_signs(m)),
            Feasibility::NotRefuted
        );
    }
}

#[test]
fn mushroom_toric() {
    let c = sum(Model::Mushroom, "γm", Model::Toric, "γm").unwrap();
    assert_eq!(c.config.curves.len(), 5);
    for id in ["γi", "γo", "γi′", "γo′"] {
        assert_eq!(known(&c, id), Plus, "{id}");
    }
    assert_eq!(known(&c, "γm#γm"), Minus);
}

#[test]
fn toric_toric_forced() {
    let c = sum(Model::Toric, "γm", Model::Toric, "γm").unwrap();
    for id in ["γi", "γo", "γi′", "γo′"] {
        assert_eq!(known(&c, id), Minus);
    }
    assert_eq!(known(&c, "γm#γm"), Plus);
    assert_eq!(
        c.sources[c.config.curve_index("γm#γm").unwrap()],
        SignSource::Forced
    );
}

#[test]
fn saucer_saucer_open() {
    let c = sum(Model::Saucer, "γm", Model::Saucer, "γm").unwrap();
    let got: Vec<Sign> = ["γi", "γo", "γi′", "γo′"]
        .iter()
        .map(|id| known(&c, id))
        .collect();
    assert_eq!(got, vec![Plus, Minus, Plus, Minus]);
    assert_eq!(c.sign_of("γm#γm"), Some(CurveSign::Unknown));
    assert_eq!(c.feasible_completions().len(), 2);
}

#[test]
fn both_negative_rejected() {
    assert_eq!(
        sum(Model::Saucer, "γo", Model::Saucer, "γo").unwrap_err(),
        ComposeError::BothNegative
    );
}

#[test]
fn sum_is_the_h_configuration() {
    for (a, b) in [
        (Model::Mushroom, Model::Toric),
        (Model::Saucer, Model::Saucer),
        (Model::Toric, Model::Toric),
    ] {
        let c = sum(a, "γm", b, "γm").unwrap();
        c.config.validate().unwrap();
        assert!(config_isomorphic(&c.config, &models::h_config()));
        assert_eq!(c.weighting.single("γm#γm"), Some(-3));
        for id in ["γi", "γo", "γi′", "γo′"] {
            assert_eq!(c.weighting.single(id), Some(1));
        }
    }
}

#[test]
fn curve_count_law_over_all_pairs() {
    for a in Model::ALL {
        for b in Model::ALL {
            for ga in ["γi", "γm", "γo"] {
                for gb in ["γi", "γm", "γo"] {
                    match sum(a, ga, b, gb) {
                        Ok(c) => {
                            assert_eq!(c.config.curves.len(), 5);
                            c.config.validate().unwrap();
                            verify_weighting(&c.config, &c.weighting).unwrap();
                            assert!(!c.feasible_completions().is_empty());
                        }
                        Err(ComposeError::BothNegative) => {
                            let s = |m: Model, g: &str| {
                                model_signs(m).0
                                    [["γi", "γm", "γo"].iter().position(|x| *x == g).unwrap()]
                            };
                            assert_eq!((s(a, ga), s(b, gb)), (Minus, Minus));
                        }
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}

#[test]
fn mirror_keeps_signs() {
    for m in Model::ALL {
        let c = DecoratedClass::model(m);
        let r = c.mirror();
        assert_eq!(r.signs, c.signs);
        assert!(r.mirrored);
        assert_eq!(r.mirror().signs, c.signs);
    }
    let e = DecoratedClass::model(Model::Toric);
    let x = connect_sum(&e, "γm", &e.mirror(), "γm").unwrap();
    let y = connect_sum(&e, "γm", &e, "γm").unwrap();
    assert_eq!(x.signs, y.signs);
}

#[test]
fn table_rows() {
    let t = five_curve_table();
    let rows: Vec<([Sign; 4], &str, Sign, bool)> = t
        .iter()
        .map(|r| (r.disks, r.realization.as_str(), r.gamma5, r.forced))
        .collect();
    assert_eq!(rows[0], ([Plus, Plus, Plus, Plus], "M#E", Minus, true));
    assert_eq!(rows[1], ([Minus, Minus, Minus, Minus], "E#E", Plus, true));
    assert_eq!(rows[2].1, "M#S");
    assert_eq!((rows[2].0[0], rows[2].0[1]), (Plus, Plus));
    assert_ne!(rows[2].0[2], rows[2].0[3]);
    assert_eq!((rows[2].2, rows[2].3), (Minus, false));
    assert_eq!((rows[3].0[0], rows[3].0[1]), (Minus, Minus));
    assert_ne!(rows[3].0[2], rows[3].0[3]);
    assert_eq!((rows[3].1, rows[3].2, rows[3].3), ("S#E", Plus, true));
    assert!(t[3].swapped);
    assert_ne!(rows[4].0[0], rows[4].0[1]);
    assert_ne!(rows[4].0[2], rows[4].0[3]);
    assert_eq!((rows[4].1, rows[4].2, rows[4].3), ("S#S", Minus, false));
    assert_eq!(t[4].gamma5_source, SignSource::Open);
    for r in &t {
        assert_eq!(r.weights, [1, 1, 1, 1, -3]);
    }
    assert!(render_table(&t).lines().count() == 6);
}
