//! Explicit triangulated embeddings for weighted corner-free configurations,
//! and an independent check of what a mesh actually realizes.
//!
//! The combinatorial half (bases, marks, twisting arcs) lives here; the
//! geometry is in [`plan`], [`mesh`], [`verify`] and [`svg`].

pub mod mesh;
pub mod plan;
pub mod svg;
pub mod verify;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::config::CreaseConfig;
use crate::ltg::{all_labelings, build_ltg, Labeling, Ltg, LtgError};
use crate::weighting::{solve_weighting, Weighting};

pub use mesh::{emit_mesh, read_obj, revolve, write_obj, TriMesh};
pub use plan::{build_stack_plan, StackPlan};
pub use verify::{
    discrete_turning, extract_crease, fold_sign, partial_turning, verify_realization, CreaseError,
    CreaseLoop, TurningError, VerifyReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("weight at position {0} is even")]
    EvenWeight(usize),
    #[error("weights sum to {sum}, expected {expected}")]
    BadSum { sum: i64, expected: i64 },
    #[error("region {0} has unbalanced marks")]
    UnbalancedMarks(String),
    #[error("resolution {0} is below 16")]
    ResolutionTooLow(usize),
    #[error("no mesh template for this twist plan: {0}")]
    UnsupportedTwist(String),
    #[error("configuration is not weightable")]
    NotWeightable,
    #[error(transparent)]
    Ltg(#[from] LtgError),
}

/// `(k₀, …, k_n)` for an n-turning weight `(t₀, …, t_n)`, where `t₀` is the
/// entry at `square`. The result keeps the input order.
pub fn derive_basis(weights: &[i64], square: usize) -> Result<Vec<i64>, RealizeError> {
    if let Some(i) = weights.iter().position(|t| t % 2 == 0) {
        return Err(RealizeError::EvenWeight(i));
    }
    let n = weights.len() as i64 - 1;
    let sum: i64 = weights.iter().sum();
    if sum != 1 - n {
        return Err(RealizeError::BadSum {
            sum,
            expected: 1 - n,
        });
    }
    Ok(weights
        .iter()
        .enumerate()
        .map(|(i, t)| {
            if i == square {
                (t - 1) / 2
            } else {
                (t + 1) / 2
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MarkKind {
    Dot,
    Circle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveMarks {
    pub curve: String,
    pub weight: i64,
    pub square: bool,
    /// Basis entry; dots when positive, circles when negative.
    pub k: i64,
}

impl CurveMarks {
    pub fn kind(&self) -> Option<MarkKind> {
        match self.k {
            0 => None,
            k if k > 0 => Some(MarkKind::Dot),
            _ => Some(MarkKind::Circle),
        }
    }

    pub fn count(&self) -> usize {
        self.k.unsigned_abs() as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkedRegion {
    pub region: String,
    pub square: Option<String>,
    pub curves: Vec<CurveMarks>,
}

impl MarkedRegion {
    pub fn balanced(&self) -> bool {
        self.curves.iter().map(|c| c.k).sum::<i64>() == 0
    }
}

pub fn mark_region(region: &str, weights: &[(String, i64)], square: Option<&str>) -> MarkedRegion {
    let curves = weights
        .iter()
        .map(|(c, w)| {
            let sq = Some(c.as_str()) == square;
            CurveMarks {
                curve: c.clone(),
                weight: *w,
                square: sq,
                k: if sq { (w - 1) / 2 } else { (w + 1) / 2 },
            }
        })
        .collect();
    MarkedRegion {
        region: region.to_string(),
        square: square.map(str::to_string),
        curves,
    }
}

/// Marks for every region with χ ≤ 0 under `lab`.
pub fn mark_regions(ltg: &Ltg, lab: &Labeling) -> Vec<MarkedRegion> {
    let adj = ltg.adjacency();
    ltg.vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| v.chi <= 0)
        .map(|(v, vert)| {
            let ws: Vec<(String, i64)> = adj[v]
                .iter()
                .map(|&(_, e)| (ltg.edges[e].curve.clone(), ltg.edges[e].weight))
                .collect();
            let sq = lab.square_at(ltg, v).map(|e| ltg.edges[e].curve.as_str());
            mark_region(&vert.region, &ws, sq)
        })
        .collect()
}

pub fn total_marks(regions: &[MarkedRegion]) -> usize {
    regions
        .iter()
        .flat_map(|r| &r.curves)
        .map(CurveMarks::count)
        .sum()
}

/// The consistent labeling with the fewest marks; ties go to the first in
/// [`all_labelings`] order.
pub fn realization_labeling(ltg: &Ltg) -> Option<Labeling> {
    all_labelings(ltg)
        .into_iter()
        .min_by_key(|lab| total_marks(&mark_regions(ltg, lab)))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MarkRef {
    pub curve: String,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistArc {
    pub region: String,
    pub circle: MarkRef,
    pub dot: MarkRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgePath {
    /// Indices into [`TwistPlan::arcs`], in order along the path.
    pub arcs: Vec<usize>,
    /// Curves visited, one more than arcs unless `closed`.
    pub curves: Vec<String>,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistPlan {
    pub regions: Vec<MarkedRegion>,
    pub arcs: Vec<TwistArc>,
    pub paths: Vec<EdgePath>,
}

impl TwistPlan {
    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

/// Pairs circles with dots inside each region, in boundary order, then
/// chains arcs through shared marks into edge-paths.
pub fn place_twisting_arcs(regions: &[MarkedRegion]) -> Result<TwistPlan, RealizeError> {
    let mut arcs = Vec::new();
    for r in regions {
        if !r.balanced() {
            return Err(RealizeError::UnbalancedMarks(r.region.clone()));
        }
        let refs = |kind| {
            r.curves
                .iter()
                .filter(move |c| c.kind() == Some(kind))
                .flat_map(|c| {
                    (0..c.count()).map(move |index| MarkRef {
                        curve: c.curve.clone(),
                        index,
                    })
                })
        };
        for (circle, dot) in refs(MarkKind::Circle).zip(refs(MarkKind::Dot)) {
            arcs.push(TwistArc {
                region: r.region.clone(),
                circle,
                dot,
            });
        }
    }
    let mut at: BTreeMap<&MarkRef, Vec<usize>> = BTreeMap::new();
    for (i, a) in arcs.iter().enumerate() {
        at.entry(&a.circle).or_default().push(i);
        at.entry(&a.dot).or_default().push(i);
    }
    let other = |arc: &TwistArc, m: &MarkRef| {
        if arc.circle == *m {
            arc.dot.clone()
        } else {
            arc.circle.clone()
        }
    };
    let mut used = vec![false; arcs.len()];
    let mut paths = Vec::new();
    let starts: Vec<&MarkRef> = at
        .iter()
        .filter(|(_, v)| v.len() == 1)
        .map(|(m, _)| *m)
        .collect();
    let walk = |start: MarkRef, used: &mut Vec<bool>| {
        let mut path = EdgePath {
            arcs: vec![],
            curves: vec![start.curve.clone()],
            closed: false,
        };
        let mut mark = start.clone();
        while let Some(&i) = at[&mark].iter().find(|&&i| !used[i]) {
            used[i] = true;
            path.arcs.push(i);
            mark = other(&arcs[i], &mark);
            path.curves.push(mark.curve.clone());
        }
        path.closed = mark == start && !path.arcs.is_empty();
        if path.closed {
            path.curves.pop();
        }
        path
    };
    for s in starts {
        if at[s].iter().all(|&i| !used[i]) {
            paths.push(walk(s.clone(), &mut used));
        }
    }
    while let Some(i) = used.iter().position(|u| !u) {
        paths.push(walk(arcs[i].circle.clone(), &mut used));
    }
    Ok(TwistPlan {
        regions: regions.to_vec(),
        arcs,
        paths,
    })
}

/// Everything computed on the way from a configuration to its mesh.
#[derive(Clone, Debug)]
pub struct Realization {
    pub weighting: Weighting,
    pub labeling: Labeling,
    pub twist: TwistPlan,
    pub plan: StackPlan,
    pub mesh: TriMesh,
}

pub fn realize(cfg: &CreaseConfig, resolution: usize) -> Result<Realization, RealizeError> {
    if resolution < 16 {
        return Err(RealizeError::ResolutionTooLow(resolution));
    }
    let weighting = solve_weighting(cfg).map_err(|_| RealizeError::NotWeightable)?;
    let ltg = build_ltg(cfg, &weighting)?;
    let labeling = realization_labeling(&ltg).ok_or(LtgError::NoLabelingFound)?;
    let twist = place_twisting_arcs(&mark_regions(&ltg, &labeling))?;
    let plan = build_stack_plan(cfg, &ltg, &labeling, &twist)?;
    let mesh = emit_mesh(&plan, resolution)?;
    Ok(Realization {
        weighting,
        labeling,
        twist,
        plan,
        mesh,
    })
}
