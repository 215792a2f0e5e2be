//! Stacking plans: a level and a planar footprint per region, one projected
//! circle per curve.
//!
//! Two templates are supported. With no twisting arcs every region pairs up
//! with the region across its square curve (a leaf pairs with its
//! neighbour); each pair is a lens whose rim is the square curve, and the
//! remaining curves, all of weight −1, are necks joining lenses through
//! holes. The H-configuration is two saucers joined by a tube between their
//! middle folds.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{RealizeError, TwistPlan};
use crate::canon::config_isomorphic;
use crate::config::CreaseConfig;
use crate::ltg::{Labeling, Ltg};
use crate::models;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Facing {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CirclePlan {
    pub curve: String,
    pub center: [f64; 2],
    pub radius: f64,
    pub fold_height: f64,
    /// Both sheets lie inside the circle (a rim) rather than outside (a neck).
    pub inside: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlabPlan {
    pub region: String,
    pub level: f64,
    pub facing: Facing,
    pub boundary: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcPlan {
    pub arc: usize,
    pub region: String,
    pub segment: [[f64; 2]; 2],
}

/// Role names for the saucer-pair template.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaucerPair {
    pub lower: String,
    pub upper: String,
    pub tops: [String; 2],
    pub dents: [String; 2],
    pub rims: [String; 2],
    pub lips: [String; 2],
    pub waist: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Template {
    Units,
    SaucerPair(SaucerPair),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StackPlan {
    pub template: Template,
    pub slabs: Vec<SlabPlan>,
    /// Every curve except a saucer-pair waist.
    pub circles: Vec<CirclePlan>,
    pub arcs: Vec<ArcPlan>,
}

impl StackPlan {
    pub fn circle(&self, curve: &str) -> Option<&CirclePlan> {
        self.circles.iter().find(|c| c.curve == curve)
    }

    pub fn slab(&self, region: &str) -> Option<&SlabPlan> {
        self.slabs.iter().find(|s| s.region == region)
    }

    /// Each curve bounds exactly two slabs and has one footprint.
    pub fn check_shared_circles(&self) -> bool {
        let mut uses: BTreeMap<&str, usize> = BTreeMap::new();
        for s in &self.slabs {
            for c in &s.boundary {
                *uses.entry(c).or_default() += 1;
            }
        }
        let waist = match &self.template {
            Template::SaucerPair(p) => Some(p.waist.as_str()),
            Template::Units => None,
        };
        uses.values().all(|&n| n == 2)
            && uses.keys().all(|c| {
                let n = self.circles.iter().filter(|p| p.curve == *c).count();
                if Some(*c) == waist {
                    n == 0
                } else {
                    n == 1
                }
            })
    }

    /// Arcs meeting at a shared mark have the same projected segment.
    pub fn check_shared_arcs(&self, twist: &TwistPlan) -> bool {
        self.arcs.iter().all(|a| {
            self.arcs.iter().all(|b| {
                let (x, y) = (&twist.arcs[a.arc], &twist.arcs[b.arc]);
                let meet = x.circle == y.circle || x.dot == y.dot;
                !meet || a.segment == b.segment
            })
        })
    }
}

/// Root lens radius for the unit template.
const ROOT_RADIUS: f64 = 8.0;

pub fn build_stack_plan(
    cfg: &CreaseConfig,
    ltg: &Ltg,
    lab: &Labeling,
    twist: &TwistPlan,
) -> Result<StackPlan, RealizeError> {
    let plan = if twist.is_empty() {
        units_plan(ltg, lab)?
    } else if config_isomorphic(cfg, &models::h_config()) {
        saucer_pair_plan(ltg, lab, twist)
    } else {
        return Err(RealizeError::UnsupportedTwist(format!(
            "{} arcs in {} edge-paths",
            twist.arcs.len(),
            twist.paths.len()
        )));
    };
    assert!(plan.check_shared_circles(), "P1 violated");
    assert!(plan.check_shared_arcs(twist), "P2 violated");
    Ok(plan)
}

struct Unit {
    /// (lower, upper) vertices; fixed once the parent is known.
    pair: (usize, usize),
    rim: usize,
}

fn units_plan(ltg: &Ltg, lab: &Labeling) -> Result<StackPlan, RealizeError> {
    let adj = ltg.adjacency();
    let n = ltg.vertices.len();
    let mut unit_of = vec![usize::MAX; n];
    let mut units: Vec<Unit> = Vec::new();
    for v in 0..n {
        if unit_of[v] != usize::MAX {
            continue;
        }
        let rim = if ltg.vertices[v].chi > 0 {
            adj[v][0].1
        } else {
            lab.square_at(ltg, v)
                .ok_or_else(|| RealizeError::UnsupportedTwist("unlabeled region".into()))?
        };
        let u = ltg.other_end(rim, v);
        let u_rim = if ltg.vertices[u].chi > 0 {
            Some(adj[u][0].1)
        } else {
            lab.square_at(ltg, u)
        };
        if unit_of[u] != usize::MAX || u_rim != Some(rim) {
            return Err(RealizeError::UnsupportedTwist(format!(
                "{} is not paired",
                ltg.vertices[v].region
            )));
        }
        unit_of[v] = units.len();
        unit_of[u] = units.len();
        units.push(Unit { pair: (v, u), rim });
    }

    let mut plan = StackPlan {
        template: Template::Units,
        slabs: vec![],
        circles: vec![],
        arcs: vec![],
    };
    let mut order = Vec::new();
    let root = unit_of[ltg.root];
    stack(ltg, &adj, &unit_of, &mut units, root, None, &mut order);
    let level: BTreeMap<usize, f64> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as f64))
        .collect();
    let mut boundary: Vec<Vec<String>> = vec![vec![]; n];
    for edge in &ltg.edges {
        boundary[edge.ends.0].push(edge.curve.clone());
        boundary[edge.ends.1].push(edge.curve.clone());
    }
    for u in &units {
        for (v, facing) in [(u.pair.0, Facing::Down), (u.pair.1, Facing::Up)] {
            plan.slabs.push(SlabPlan {
                region: ltg.vertices[v].region.clone(),
                level: level[&v],
                facing,
                boundary: boundary[v].clone(),
            });
        }
    }
    place(
        ltg,
        &adj,
        &unit_of,
        &units,
        &level,
        root,
        None,
        [0.0, 0.0],
        ROOT_RADIUS,
        &mut plan,
    );
    plan.slabs.sort_by(|a, b| a.level.total_cmp(&b.level));
    Ok(plan)
}

/// Necks of unit `u` at vertex `v`, other than the edge `skip`.
fn necks(
    adj: &[Vec<(usize, usize)>],
    units: &[Unit],
    u: usize,
    v: usize,
    skip: Option<usize>,
) -> Vec<(usize, usize)> {
    adj[v]
        .iter()
        .copied()
        .filter(|&(_, e)| e != units[u].rim && Some(e) != skip)
        .collect()
}

/// Fixes each unit's lower/upper vertices and lists vertices bottom to top.
fn stack(
    ltg: &Ltg,
    adj: &[Vec<(usize, usize)>],
    unit_of: &[usize],
    units: &mut [Unit],
    u: usize,
    parent: Option<(usize, bool)>,
    out: &mut Vec<usize>,
) {
    // parent = (neck edge, parent lies below)
    if let Some((e, below)) = parent {
        let (a, b) = ltg.edges[e].ends;
        let v = if unit_of[a] == u { a } else { b };
        let w = ltg.other_end(units[u].rim, v);
        units[u].pair = if below { (v, w) } else { (w, v) };
    }
    let skip = parent.map(|p| p.0);
    let (lo, hi) = units[u].pair;
    for (x, e) in necks(adj, units, u, lo, skip) {
        stack(ltg, adj, unit_of, units, unit_of[x], Some((e, false)), out);
    }
    out.push(lo);
    out.push(hi);
    for (x, e) in necks(adj, units, u, hi, skip) {
        stack(ltg, adj, unit_of, units, unit_of[x], Some((e, true)), out);
    }
}

/// Lays out unit `u` as a lens of radius `r`; children sit in a row of slots
/// inside it, the slot for the parent neck first. Returns the parent neck's
/// circle.
#[allow(clippy::too_many_arguments)]
fn place(
    ltg: &Ltg,
    adj: &[Vec<(usize, usize)>],
    unit_of: &[usize],
    units: &[Unit],
    level: &BTreeMap<usize, f64>,
    u: usize,
    parent: Option<usize>,
    center: [f64; 2],
    r: f64,
    plan: &mut StackPlan,
) -> Option<([f64; 2], f64)> {
    let (lo, hi) = units[u].pair;
    plan.circles.push(CirclePlan {
        curve: ltg.edges[units[u].rim].curve.clone(),
        center,
        radius: r,
        fold_height: (level[&lo] + level[&hi]) / 2.0,
        inside: true,
    });
    let kids: Vec<(usize, usize)> = necks(adj, units, u, lo, parent)
        .into_iter()
        .chain(necks(adj, units, u, hi, parent))
        .collect();
    let m = kids.len() + parent.is_some() as usize;
    let span = 0.8 * r;
    let slot_r = 0.7 * span / m.max(1) as f64;
    let slot = |j: usize| {
        [
            center[0] - span + (2 * j + 1) as f64 * span / m as f64,
            center[1],
        ]
    };
    let mut j = 0;
    let mut own = None;
    if parent.is_some() {
        own = Some((slot(0), slot_r / 2.0));
        j = 1;
    }
    for (x, e) in kids {
        let (c, rad) = place(
            ltg,
            adj,
            unit_of,
            units,
            level,
            unit_of[x],
            Some(e),
            slot(j),
            slot_r,
            plan,
        )
        .unwrap();
        let (a, b) = ltg.edges[e].ends;
        plan.circles.push(CirclePlan {
            curve: ltg.edges[e].curve.clone(),
            center: c,
            radius: rad,
            fold_height: (level[&a] + level[&b]) / 2.0,
            inside: false,
        });
        j += 1;
    }
    own
}

/// Saucer centres sit at (∓`SAUCER_GAP`, 0).
pub const SAUCER_GAP: f64 = 6.0;

fn saucer_pair_plan(ltg: &Ltg, lab: &Labeling, twist: &TwistPlan) -> StackPlan {
    let adj = ltg.adjacency();
    let mids: Vec<usize> = (0..ltg.vertices.len())
        .filter(|&v| ltg.vertices[v].chi < 0)
        .collect();
    let (lower, upper) = (mids[0], mids[1]);
    let waist = adj[lower].iter().find(|&&(x, _)| x == upper).unwrap().1;
    // leaf curves of a pants region, square first
    let leaves = |v: usize| {
        let mut out: Vec<(usize, usize)> = adj[v]
            .iter()
            .copied()
            .filter(|&(_, e)| e != waist)
            .collect();
        out.sort_by_key(|&(_, e)| !lab.squares[e]);
        out
    };
    let (lw, up) = (leaves(lower), leaves(upper));
    let name = |v: usize| ltg.vertices[v].region.clone();
    let curve = |e: usize| ltg.edges[e].curve.clone();
    let roles = SaucerPair {
        lower: name(lower),
        upper: name(upper),
        tops: [name(lw[0].0), name(lw[1].0)],
        dents: [name(up[0].0), name(up[1].0)],
        rims: [curve(lw[0].1), curve(lw[1].1)],
        lips: [curve(up[0].1), curve(up[1].1)],
        waist: curve(waist),
    };
    let mut slabs = vec![
        SlabPlan {
            region: roles.lower.clone(),
            level: 0.0,
            facing: Facing::Down,
            boundary: vec![
                roles.rims[0].clone(),
                roles.rims[1].clone(),
                roles.waist.clone(),
            ],
        },
        SlabPlan {
            region: roles.upper.clone(),
            level: 1.0,
            facing: Facing::Up,
            boundary: vec![
                roles.lips[0].clone(),
                roles.lips[1].clone(),
                roles.waist.clone(),
            ],
        },
    ];
    let mut circles = vec![];
    for i in 0..2 {
        let c = [if i == 0 { -SAUCER_GAP } else { SAUCER_GAP }, 0.0];
        slabs.push(SlabPlan {
            region: roles.dents[i].clone(),
            level: 2.0,
            facing: Facing::Down,
            boundary: vec![roles.lips[i].clone()],
        });
        slabs.push(SlabPlan {
            region: roles.tops[i].clone(),
            level: 3.0,
            facing: Facing::Up,
            boundary: vec![roles.rims[i].clone()],
        });
        circles.push(CirclePlan {
            curve: roles.rims[i].clone(),
            center: c,
            radius: 4.0,
            fold_height: 1.5,
            inside: true,
        });
        circles.push(CirclePlan {
            curve: roles.lips[i].clone(),
            center: c,
            radius: 2.0,
            fold_height: 1.5,
            inside: true,
        });
    }
    let axis = [[-SAUCER_GAP - 1.0, 0.0], [SAUCER_GAP + 1.0, 0.0]];
    let arcs = twist
        .arcs
        .iter()
        .enumerate()
        .map(|(i, a)| ArcPlan {
            arc: i,
            region: a.region.clone(),
            segment: axis,
        })
        .collect();
    StackPlan {
        template: Template::SaucerPair(roles),
        slabs,
        circles,
        arcs,
    }
}
