//! Named configurations used throughout the tests, the CLI and the guide.

use crate::config::{CornerAngle, CornerData, CreaseConfig, Curve, Region};

fn build(curves: &[&str], regions: &[(&str, &[&str])]) -> CreaseConfig {
    CreaseConfig {
        curves: curves
            .iter()
            .map(|c| Curve {
                id: c.to_string(),
                corners: 0,
                angles: None,
            })
            .collect(),
        regions: regions
            .iter()
            .map(|(id, b)| Region {
                id: id.to_string(),
                boundary: b.iter().map(|s| s.to_string()).collect(),
            })
            .collect(),
    }
}

/// Three nested curves `γi, γm, γo`: disk, two annuli, disk.
pub fn path3() -> CreaseConfig {
    build(
        &["γi", "γm", "γo"],
        &[
            ("Ki", &["γi"]),
            ("Kim", &["γi", "γm"]),
            ("Kmo", &["γm", "γo"]),
            ("Ko", &["γo"]),
        ],
    )
}

/// Three curves bounding disks around one pair of pants.
pub fn star3() -> CreaseConfig {
    build(
        &["γ1", "γ2", "γ3"],
        &[
            ("K0", &["γ1", "γ2", "γ3"]),
            ("K1", &["γ1"]),
            ("K2", &["γ2"]),
            ("K3", &["γ3"]),
        ],
    )
}

/// One curve, two corners of opposite type.
pub fn dimpled_sphere() -> CreaseConfig {
    let mut cfg = build(&["γ"], &[("Kin", &["γ"]), ("Kout", &["γ"])]);
    cfg.curves[0].corners = 2;
    cfg.curves[0].angles = Some(CornerData {
        reference: "Kin".into(),
        angles: vec![CornerAngle::Quarter, CornerAngle::ThreeQuarter],
    });
    cfg
}

/// Five curves: `γ5` joins two pants, each carrying two disk-bounding curves.
pub fn h_config() -> CreaseConfig {
    build(
        &["γ1", "γ2", "γ3", "γ4", "γ5"],
        &[
            ("K1", &["γ1"]),
            ("K2", &["γ2"]),
            ("K3", &["γ3"]),
            ("K4", &["γ4"]),
            ("A", &["γ1", "γ2", "γ5"]),
            ("B", &["γ3", "γ4", "γ5"]),
        ],
    )
}

/// Thirteen curves. `γ7` joins two pants; each of those carries two more
/// pants (through `γ5, γ6` and `γ8, γ9`), and each of those four carries two
/// disk-bounding curves.
pub fn thirteen_curve() -> CreaseConfig {
    build(
        &[
            "γ1", "γ2", "γ3", "γ4", "γ5", "γ6", "γ7", "γ8", "γ9", "γ10", "γ11", "γ12", "γ13",
        ],
        &[
            ("K1", &["γ1"]),
            ("K2", &["γ2"]),
            ("K3", &["γ3"]),
            ("K4", &["γ4"]),
            ("A", &["γ1", "γ2", "γ5"]),
            ("B", &["γ3", "γ4", "γ6"]),
            ("R", &["γ5", "γ6", "γ7"]),
            ("S", &["γ7", "γ8", "γ9"]),
            ("C", &["γ8", "γ10", "γ11"]),
            ("D", &["γ9", "γ12", "γ13"]),
            ("K10", &["γ10"]),
            ("K11", &["γ11"]),
            ("K12", &["γ12"]),
            ("K13", &["γ13"]),
        ],
    )
}
