//! Connect sums of decorated classes and the five-curve sign table.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{CreaseConfig, Curve, Region};
use crate::models;
use crate::signs::{sign_feasibility, Feasibility, Sign, SignAssignment};
use crate::weighting::{solve_weighting, verify_weighting, SolveError, Weighting};

/// The three classes of three-curve embeddings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    Saucer,
    Mushroom,
    Toric,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Saucer, Model::Mushroom, Model::Toric];

    /// Short name used in sum expressions.
    pub fn letter(self) -> char {
        match self {
            Model::Saucer => 'S',
            Model::Mushroom => 'M',
            Model::Toric => 'E',
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Folding signs over `(γi, γm, γo)`.
pub fn model_signs(model: Model) -> SignAssignment {
    use Sign::*;
    SignAssignment(match model {
        Model::Saucer => vec![Plus, Plus, Minus],
        Model::Mushroom => vec![Plus, Minus, Plus],
        Model::Toric => vec![Minus, Plus, Minus],
    })
}

/// A sign that may be unknown, with where it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveSign {
    Known(Sign),
    Unknown,
}

impl fmt::Display for CurveSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveSign::Known(s) => write!(f, "{s}"),
            CurveSign::Unknown => write!(f, "?"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignSource {
    /// Given by a model or inherited through the flip rule.
    Rule,
    /// The only value the feasibility predicate leaves.
    Forced,
    /// Neither rule nor predicate decides it.
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedClass {
    pub config: CreaseConfig,
    pub weighting: Weighting,
    /// Per curve, in the curve order of `config`.
    pub signs: Vec<CurveSign>,
    pub sources: Vec<SignSource>,
    pub provenance: String,
    pub mirrored: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("both curves fold negatively")]
    BothNegative,
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("sign of {0} is unknown")]
    UnknownSign(String),
    #[error(transparent)]
    Weighting(#[from] SolveError),
    #[error("sign data is refuted")]
    Refuted,
}

impl DecoratedClass {
    /// A three-curve model; curves are `γi, γm, γo`.
    pub fn model(model: Model) -> Self {
        let config = models::path3();
        let weighting = solve_weighting(&config).expect("path-3 is weightable");
        DecoratedClass {
            config,
            weighting,
            signs: model_signs(model)
                .0
                .into_iter()
                .map(CurveSign::Known)
                .collect(),
            sources: vec![SignSource::Rule; 3],
            provenance: model.letter().to_string(),
            mirrored: false,
        }
    }

    pub fn sign_of(&self, curve: &str) -> Option<CurveSign> {
        self.config.curve_index(curve).map(|i| self.signs[i])
    }

    /// Reflection through the horizontal plane. Outward normals reflect with
    /// the surface, so every folding sign is kept.
    pub fn mirror(&self) -> Self {
        let mut m = self.clone();
        m.mirrored = !m.mirrored;
        m.provenance = format!("mirror({})", self.provenance);
        m
    }

    /// Completions of unknown signs that the feasibility predicate accepts.
    pub fn feasible_completions(&self) -> Vec<SignAssignment> {
        let unknown: Vec<usize> = (0..self.signs.len())
            .filter(|&i| self.signs[i] == CurveSign::Unknown)
            .collect();
        let mut out = Vec::new();
        for mask in 0u32..1 << unknown.len() {
            let mut v: Vec<Sign> = self
                .signs
                .iter()
                .map(|s| match s {
                    CurveSign::Known(x) => *x,
                    CurveSign::Unknown => Sign::Plus,
                })
                .collect();
            for (j, &i) in unknown.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    v[i] = Sign::Minus;
                }
            }
            let a = SignAssignment(v);
            if sign_feasibility(&self.config, &a) == Feasibility::NotRefuted {
                out.push(a);
            }
        }
        out
    }

    /// Fixes every unknown sign that only one feasible completion allows.
    fn settle(&mut self) -> Result<(), ComposeError> {
        let comps = self.feasible_completions();
        if comps.is_empty() {
            return Err(ComposeError::Refuted);
        }
        for i in 0..self.signs.len() {
            if self.signs[i] == CurveSign::Unknown && comps.iter().all(|c| c.0[i] == comps[0].0[i])
            {
                self.signs[i] = CurveSign::Known(comps[0].0[i]);
                self.sources[i] = SignSource::Forced;
            }
        }
        Ok(())
    }
}

fn fresh(id: &str, taken: &dyn Fn(&str) -> bool) -> String {
    let mut s = id.to_string();
    while taken(&s) {
        s.push('′');
    }
    s
}

/// Connect sum along `gamma` in `a` and `gamma_b` in `b`. Regions are merged
/// pairwise: the first-listed region of each curve together, and the second
/// together. Curves of `b` keep their ids unless they clash, in which case a
/// prime is appended.
pub fn connect_sum(
    a: &DecoratedClass,
    gamma: &str,
    b: &DecoratedClass,
    gamma_b: &str,
) -> Result<DecoratedClass, ComposeError> {
    let ia = a
        .config
        .curve_index(gamma)
        .ok_or_else(|| ComposeError::UnknownCurve(gamma.into()))?;
    let ib = b
        .config
        .curve_index(gamma_b)
        .ok_or_else(|| ComposeError::UnknownCurve(gamma_b.into()))?;
    let sa = match a.signs[ia] {
        CurveSign::Known(s) => s,
        CurveSign::Unknown => return Err(ComposeError::UnknownSign(gamma.into())),
    };
    let sb = match b.signs[ib] {
        CurveSign::Known(s) => s,
        CurveSign::Unknown => return Err(ComposeError::UnknownSign(gamma_b.into())),
    };
    if sa == Sign::Minus && sb == Sign::Minus {
        return Err(ComposeError::BothNegative);
    }
    let merged_id = format!("{gamma}#{gamma_b}");
    let a_curve = |s: &str| a.config.curve_index(s).is_some() || s == merged_id;
    let a_region = |s: &str| a.config.region_index(s).is_some();
    let cname: Vec<String> = b
        .config
        .curves
        .iter()
        .map(|c| fresh(&c.id, &a_curve))
        .collect();
    let rname: Vec<String> = b
        .config
        .regions
        .iter()
        .map(|r| fresh(&r.id, &a_region))
        .collect();
    let ends_a = a.config.ends()[ia];
    let ends_b = b.config.ends()[ib];
    let partner = |rb: usize| -> Option<usize> {
        if rb == ends_b.0 {
            Some(ends_a.0)
        } else if rb == ends_b.1 {
            Some(ends_a.1)
        } else {
            None
        }
    };

    let mut curves: Vec<Curve> = a.config.curves.clone();
    curves[ia].id = merged_id.clone();
    let mut signs = a.signs.clone();
    let mut sources = a.sources.clone();
    for (j, c) in b.config.curves.iter().enumerate() {
        if j == ib {
            continue;
        }
        curves.push(Curve {
            id: cname[j].clone(),
            corners: c.corners,
            angles: None,
        });
        let flip = sa == Sign::Minus;
        signs.push(match b.signs[j] {
            CurveSign::Known(s) if flip => CurveSign::Known(s.flip()),
            other => other,
        });
        sources.push(b.sources[j]);
    }
    let rename_a = |c: &String| {
        if c == gamma {
            merged_id.clone()
        } else {
            c.clone()
        }
    };
    let mut regions: Vec<Region> = a
        .config
        .regions
        .iter()
        .map(|r| Region {
            id: r.id.clone(),
            boundary: r.boundary.iter().map(rename_a).collect(),
        })
        .collect();
    for (rb, r) in b.config.regions.iter().enumerate() {
        let boundary: Vec<String> = r
            .boundary
            .iter()
            .filter(|c| c.as_str() != gamma_b)
            .map(|c| cname[b.config.curve_index(c).unwrap()].clone())
            .collect();
        match partner(rb) {
            Some(ra) => {
                let merged = &mut regions[ra];
                merged.id = format!("{}+{}", merged.id, rname[rb]);
                merged.boundary.extend(boundary);
            }
            None => regions.push(Region {
                id: rname[rb].clone(),
                boundary,
            }),
        }
    }
    signs[ia] = if sa == Sign::Minus || sb == Sign::Minus {
        CurveSign::Known(Sign::Minus)
    } else {
        CurveSign::Unknown
    };
    sources[ia] = SignSource::Rule;
    let config = CreaseConfig { curves, regions };
    let weighting = solve_weighting(&config)?;
    debug_assert!(verify_weighting(&config, &weighting).is_ok());
    let mut out = DecoratedClass {
        config,
        weighting,
        signs,
        sources,
        provenance: format!("{}#{}", a.provenance, b.provenance),
        mirrored: false,
    };
    out.settle()?;
    if out.signs[ia] == CurveSign::Unknown {
        out.sources[ia] = SignSource::Open;
    }
    Ok(out)
}

/// One row of the five-curve table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    /// Signs of the four disk-bounding curves γ1…γ4.
    pub disks: [Sign; 4],
    pub realization: String,
    /// Sign of γ5 in the realization, catalog value where no rule decides it.
    pub gamma5: Sign,
    /// Whether γ1…γ4 alone force γ5 through the feasibility predicate.
    pub forced: bool,
    /// How the realization's γ5 sign was obtained.
    pub gamma5_source: SignSource,
    /// Whether the factor pairs were swapped to match the column order.
    pub swapped: bool,
    pub weights: [i64; 5],
}

/// Signs recorded for sums where neither the flip rule nor the predicate
/// decides the merged curve.
const CATALOG: [(Model, Model, Sign); 1] = [(Model::Saucer, Model::Saucer, Sign::Minus)];

/// Rows in table order: column signs for γ1…γ4 (with `None` where the row is
/// a ± pair) and the factors.
const ROWS: [([Option<Sign>; 4], Model, Model); 5] = {
    use Sign::*;
    [
        (
            [Some(Plus), Some(Plus), Some(Plus), Some(Plus)],
            Model::Mushroom,
            Model::Toric,
        ),
        (
            [Some(Minus), Some(Minus), Some(Minus), Some(Minus)],
            Model::Toric,
            Model::Toric,
        ),
        (
            [Some(Plus), Some(Plus), None, None],
            Model::Mushroom,
            Model::Saucer,
        ),
        (
            [Some(Minus), Some(Minus), None, None],
            Model::Saucer,
            Model::Toric,
        ),
        ([None, None, None, None], Model::Saucer, Model::Saucer),
    ]
};

fn matches(pattern: &[Option<Sign>], got: &[Sign]) -> bool {
    // a `None` pair means one + and one −
    pattern
        .chunks(2)
        .zip(got.chunks(2))
        .all(|(p, g)| match (p[0], p[1]) {
            (Some(x), Some(y)) => g[0] == x && g[1] == y,
            _ => g[0] != g[1],
        })
}

/// Whether the γ1…γ4 signs of the H-configuration leave a single γ5 sign.
pub fn gamma5_forced(disks: [Sign; 4]) -> Option<Sign> {
    let cfg = models::h_config();
    let ok: Vec<Sign> = [Sign::Plus, Sign::Minus]
        .into_iter()
        .filter(|&s5| {
            let mut v = disks.to_vec();
            v.push(s5);
            sign_feasibility(&cfg, &SignAssignment(v)) == Feasibility::NotRefuted
        })
        .collect();
    if ok.len() == 1 {
        Some(ok[0])
    } else {
        None
    }
}

/// Builds every row from connect sums of the three models along their middle
/// curves.
pub fn five_curve_table() -> Vec<TableRow> {
    ROWS.iter()
        .map(|(pattern, fa, fb)| {
            let a = DecoratedClass::model(*fa);
            let b = DecoratedClass::model(*fb);
            let sum = connect_sum(&a, "γm", &b, "γm").expect("middle curves sum");
            let sign = |id: &str| match sum.sign_of(id).unwrap() {
                CurveSign::Known(s) => s,
                CurveSign::Unknown => panic!("{id} has no sign"),
            };
            let first = [sign("γi"), sign("γo")];
            let second = [sign("γi′"), sign("γo′")];
            let (disks, swapped) = if matches(pattern, &[first[0], first[1], second[0], second[1]])
            {
                ([first[0], first[1], second[0], second[1]], false)
            } else {
                assert!(
                    matches(pattern, &[second[0], second[1], first[0], first[1]]),
                    "row pattern"
                );
                ([second[0], second[1], first[0], first[1]], true)
            };
            let (gamma5, source) = match sum.sign_of("γm#γm").unwrap() {
                CurveSign::Known(s) => (s, sum.sources[sum.config.curve_index("γm#γm").unwrap()]),
                CurveSign::Unknown => {
                    let s = CATALOG
                        .iter()
                        .find(|(x, y, _)| (x, y) == (fa, fb))
                        .map(|c| c.2)
                        .expect("catalog entry");
                    (s, SignSource::Open)
                }
            };
            let w = |id: &str| sum.weighting.single(id).unwrap();
            let weights = if swapped {
                [w("γi′"), w("γo′"), w("γi"), w("γo"), w("γm#γm")]
            } else {
                [w("γi"), w("γo"), w("γi′"), w("γo′"), w("γm#γm")]
            };
            TableRow {
                disks,
                realization: format!("{}#{}", fa.letter(), fb.letter()),
                gamma5,
                forced: gamma5_forced(disks).is_some(),
                gamma5_source: source,
                swapped,
                weights,
            }
        })
        .collect()
}

/// Aligned text rendering of the table.
pub fn render_table(rows: &[TableRow]) -> String {
    let mut s = String::from("γ1 γ2 γ3 γ4  sum  γ5  forced\n");
    for r in rows {
        s.push_str(&format!(
            "{}  {}  {}  {}   {}  {}   {}\n",
            r.disks[0],
            r.disks[1],
            r.disks[2],
            r.disks[3],
            r.realization,
            r.gamma5,
            if r.forced { "yes" } else { "no" }
        ));
    }
    s
}
