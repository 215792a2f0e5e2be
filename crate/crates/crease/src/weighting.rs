//! Gauss–Bonnet weightings: solving, checking, and the corner side swap.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{CreaseConfig, Violation};

/// Weight of one region side of a cornered curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideWeight {
    pub region: String,
    pub t: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveWeight {
    Single(i64),
    /// (t_K, t_K′) keyed to the two incident regions, in region order.
    Pair([SideWeight; 2]),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub curve: String,
    pub weight: CurveWeight,
}

/// The turning number function 𝐓 of a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weighting {
    pub entries: Vec<WeightEntry>,
}

impl Weighting {
    pub fn from_singles(cfg: &CreaseConfig, ts: &[i64]) -> Self {
        Weighting {
            entries: cfg
                .curves
                .iter()
                .zip(ts)
                .map(|(c, &t)| WeightEntry {
                    curve: c.id.clone(),
                    weight: CurveWeight::Single(t),
                })
                .collect(),
        }
    }

    pub fn get(&self, curve: &str) -> Option<&CurveWeight> {
        self.entries
            .iter()
            .find(|e| e.curve == curve)
            .map(|e| &e.weight)
    }

    /// Weight of `curve` seen from `region`.
    pub fn side(&self, curve: &str, region: &str) -> Option<i64> {
        match self.get(curve)? {
            CurveWeight::Single(t) => Some(*t),
            CurveWeight::Pair(p) => p.iter().find(|s| s.region == region).map(|s| s.t),
        }
    }

    /// Corner-free weight of `curve`; `None` for pairs with differing sides.
    pub fn single(&self, curve: &str) -> Option<i64> {
        match self.get(curve)? {
            CurveWeight::Single(t) => Some(*t),
            CurveWeight::Pair([a, b]) if a.t == b.t => Some(a.t),
            CurveWeight::Pair(_) => None,
        }
    }

    /// Corner-free weights in curve order of `cfg`.
    pub fn singles(&self, cfg: &CreaseConfig) -> Option<Vec<i64>> {
        cfg.curves.iter().map(|c| self.single(&c.id)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("invalid configuration: {0:?}")]
    Invalid(Vec<Violation>),
    #[error("curve {0} has corners but no corner data")]
    MissingCornerData(String),
    #[error("infeasible: region {region} sums to {sum} but has Euler characteristic {chi}")]
    Infeasible { region: String, sum: i64, chi: i64 },
}

/// Weight on the far side of a curve whose near-side weight is `t_k`, given
/// the corner counts read from the near side. Each quarter corner on the near
/// side is a three-quarter corner on the far side and vice versa.
pub fn opposite_side_weight(t_k: i64, c_quarter: i64, c_threequarter: i64) -> i64 {
    t_k + (c_threequarter - c_quarter)
}

/// Offset from side `ends.0` to side `ends.1` of curve `c`.
fn side_delta(cfg: &CreaseConfig, c: usize, ends: (usize, usize)) -> Result<i64, SolveError> {
    let curve = &cfg.curves[c];
    if curve.corners == 0 {
        return Ok(0);
    }
    let cd = curve
        .angles
        .as_ref()
        .ok_or_else(|| SolveError::MissingCornerData(curve.id.clone()))?;
    let (q, t) = cd.counts_from(&cfg.regions[ends.0].id);
    Ok(opposite_side_weight(0, q, t))
}

/// Solves the region equations by peeling the tree from its leaves.
pub fn solve_weighting(cfg: &CreaseConfig) -> Result<Weighting, SolveError> {
    cfg.validate().map_err(SolveError::Invalid)?;
    let ends = cfg.ends();
    let deltas: Vec<i64> = (0..cfg.curves.len())
        .map(|c| side_delta(cfg, c, ends[c]))
        .collect::<Result<_, _>>()?;
    let region_curves = cfg.region_curves();
    // value[c] is the weight on the side of ends[c].0
    let mut value: Vec<Option<i64>> = vec![None; cfg.curves.len()];
    let side_value = |value: &[Option<i64>], c: usize, r: usize| -> Option<i64> {
        value[c].map(|v| if ends[c].0 == r { v } else { v + deltas[c] })
    };
    loop {
        let next = (0..cfg.regions.len()).find(|&r| {
            region_curves[r]
                .iter()
                .filter(|&&c| value[c].is_none())
                .count()
                == 1
        });
        let Some(r) = next else { break };
        let known: i64 = region_curves[r]
            .iter()
            .filter_map(|&c| side_value(&value, c, r))
            .sum();
        let c = *region_curves[r]
            .iter()
            .find(|&&c| value[c].is_none())
            .unwrap();
        let here = cfg.euler(r) - known;
        value[c] = Some(if ends[c].0 == r {
            here
        } else {
            here - deltas[c]
        });
    }
    for r in 0..cfg.regions.len() {
        let sum: i64 = region_curves[r]
            .iter()
            .map(|&c| side_value(&value, c, r).unwrap())
            .sum();
        if sum != cfg.euler(r) {
            return Err(SolveError::Infeasible {
                region: cfg.regions[r].id.clone(),
                sum,
                chi: cfg.euler(r),
            });
        }
    }
    let entries = cfg
        .curves
        .iter()
        .enumerate()
        .map(|(c, curve)| {
            let v = value[c].unwrap();
            let weight = if curve.corners == 0 {
                CurveWeight::Single(v)
            } else {
                CurveWeight::Pair([
                    SideWeight {
                        region: cfg.regions[ends[c].0].id.clone(),
                        t: v,
                    },
                    SideWeight {
                        region: cfg.regions[ends[c].1].id.clone(),
                        t: v + deltas[c],
                    },
                ])
            };
            WeightEntry {
                curve: curve.id.clone(),
                weight,
            }
        })
        .collect();
    Ok(Weighting { entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WeightIssue {
    MissingCurve(String),
    Region {
        region: String,
        sum: i64,
        chi: i64,
    },
    /// 2·Σt differs from 2 on a corner-free configuration.
    GlobalIdentity {
        twice_sum: i64,
    },
}

/// Checks every region equation and, without corners, the global identity.
pub fn verify_weighting(cfg: &CreaseConfig, w: &Weighting) -> Result<(), Vec<WeightIssue>> {
    let mut issues = Vec::new();
    for c in &cfg.curves {
        if w.get(&c.id).is_none() {
            issues.push(WeightIssue::MissingCurve(c.id.clone()));
        }
    }
    if !issues.is_empty() {
        return Err(issues);
    }
    for (r, region) in cfg.regions.iter().enumerate() {
        let mut sum = 0;
        for c in &region.boundary {
            match w.side(c, &region.id) {
                Some(t) => sum += t,
                None => issues.push(WeightIssue::MissingCurve(c.clone())),
            }
        }
        if sum != cfg.euler(r) {
            issues.push(WeightIssue::Region {
                region: region.id.clone(),
                sum,
                chi: cfg.euler(r),
            });
        }
    }
    if cfg.is_corner_free() {
        if let Some(ts) = w.singles(cfg) {
            let twice_sum = 2 * ts.iter().sum::<i64>();
            if twice_sum != 2 {
                issues.push(WeightIssue::GlobalIdentity { twice_sum });
            }
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(issues)
    }
}

/// Weights keyed by curve id, for corner-free configurations.
pub fn weight_map(cfg: &CreaseConfig, w: &Weighting) -> BTreeMap<String, i64> {
    cfg.curves
        .iter()
        .filter_map(|c| w.single(&c.id).map(|t| (c.id.clone(), t)))
        .collect()
}
