//! Enumeration of crease configurations up to decorated-tree isomorphism.

use std::collections::BTreeSet;

use crate::canon::DecoratedTree;
use crate::config::{CornerAngle, CornerData, CreaseConfig};
use crate::weighting::solve_weighting;

/// Unlabeled trees with exactly `edges` edges, as canonical edge lists.
pub fn unlabeled_trees(edges: usize) -> Vec<DecoratedTree> {
    let mut level = vec![DecoratedTree {
        n: 1,
        edges: vec![],
    }];
    for _ in 0..edges {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n {
                let mut e = t.edges.clone();
                e.push((v, t.n, 0));
                let grown = DecoratedTree {
                    n: t.n + 1,
                    edges: e,
                };
                if seen.insert(grown.canonical()) {
                    next.push(grown.canonical_relabel());
                }
            }
        }
        level = next;
    }
    level
}

/// All ways to put even corner counts on `k` edges with total at most `budget`.
fn even_distributions(k: usize, budget: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0; k];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let mut c = 0;
        while c <= left {
            cur[i] = c;
            rec(i + 1, left - c, cur, out);
            c += 2;
        }
        cur[i] = 0;
    }
    rec(0, budget, &mut cur, &mut out);
    out
}

/// Searches corner angle types making a cornered configuration weightable.
/// Returns the configuration with the first witness attached.
pub fn corner_witness(cfg: &CreaseConfig) -> Option<CreaseConfig> {
    let cornered: Vec<usize> = (0..cfg.curves.len())
        .filter(|&c| cfg.curves[c].corners > 0)
        .collect();
    let ends = cfg.ends();
    let mut quarters = vec![0u32; cornered.len()];
    loop {
        let mut trial = cfg.clone();
        for (j, &c) in cornered.iter().enumerate() {
            let m = trial.curves[c].corners;
            let mut angles = vec![CornerAngle::Quarter; quarters[j] as usize];
            angles.extend(std::iter::repeat_n(
                CornerAngle::ThreeQuarter,
                (m - quarters[j]) as usize,
            ));
            trial.curves[c].angles = Some(CornerData {
                reference: cfg.regions[ends[c].0].id.clone(),
                angles,
            });
        }
        if solve_weighting(&trial).is_ok() {
            return Some(trial);
        }
        // odometer
        let mut j = 0;
        loop {
            if j == cornered.len() {
                return None;
            }
            if quarters[j] < cfg.curves[cornered[j]].corners {
                quarters[j] += 1;
                break;
            }
            quarters[j] = 0;
            j += 1;
        }
    }
}

/// One representative per decorated isomorphism class with 1..=`max_curves`
/// curves and total corner count at most `max_corners`, in canonical order
/// (curve count, then canonical string).
pub fn enumerate_configs(
    max_curves: usize,
    max_corners: u32,
    weightable_only: bool,
) -> Vec<CreaseConfig> {
    let mut out = Vec::new();
    for k in 1..=max_curves {
        let mut classes: Vec<(String, DecoratedTree)> = Vec::new();
        let mut seen = BTreeSet::new();
        for tree in unlabeled_trees(k) {
            for dist in even_distributions(k, max_corners) {
                let edges = tree
                    .edges
                    .iter()
                    .zip(&dist)
                    .map(|(&(a, b, _), &d)| (a, b, d))
                    .collect();
                let t = DecoratedTree { n: tree.n, edges };
                let key = t.canonical();
                if seen.insert(key.clone()) {
                    classes.push((key, t.canonical_relabel()));
                }
            }
        }
        classes.sort_by(|a, b| a.0.cmp(&b.0));
        for (_, t) in classes {
            let cfg = CreaseConfig::from_decorated_edges(t.n, &t.edges);
            if !weightable_only {
                out.push(cfg);
            } else if cfg.is_corner_free() {
                if solve_weighting(&cfg).is_ok() {
                    out.push(cfg);
                }
            } else if let Some(w) = corner_witness(&cfg) {
                out.push(w);
            }
        }
    }
    out
}
