//! Crease configurations: regions of the sphere as tree vertices, crease
//! curves as tree edges.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// External angle type of a corner, read from the reference side of its curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CornerAngle {
    /// +π/2
    Quarter,
    /// −3π/2
    ThreeQuarter,
}

impl CornerAngle {
    pub fn swapped(self) -> Self {
        match self {
            CornerAngle::Quarter => CornerAngle::ThreeQuarter,
            CornerAngle::ThreeQuarter => CornerAngle::Quarter,
        }
    }
}

/// Per-corner angle types of one curve, relative to `reference` (a region id).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerData {
    pub reference: String,
    pub angles: Vec<CornerAngle>,
}

impl CornerData {
    /// (quarter, three-quarter) counts as seen from `region`.
    pub fn counts_from(&self, region: &str) -> (i64, i64) {
        let q = self
            .angles
            .iter()
            .filter(|a| **a == CornerAngle::Quarter)
            .count() as i64;
        let t = self.angles.len() as i64 - q;
        if region == self.reference {
            (q, t)
        } else {
            (t, q)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub id: String,
    #[serde(default)]
    pub corners: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<CornerData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub id: String,
    pub boundary: Vec<String>,
}

/// A pair (S², 𝒞) recorded combinatorially.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreaseConfig {
    pub curves: Vec<Curve>,
    pub regions: Vec<Region>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum Violation {
    #[error("curve and region incidence contains a cycle")]
    CyclicIncidence,
    #[error("curve {0} has an odd corner count")]
    OddCornerCount(String),
    #[error("curve {0} does not join exactly two distinct regions")]
    DanglingCurve(String),
    #[error("region {region} lists unknown curve {curve}")]
    UnknownCurve { region: String, curve: String },
    #[error("incidence graph is disconnected")]
    Disconnected,
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("corner data of curve {0} does not match its corner count or regions")]
    CornerDataMismatch(String),
    #[error("configuration has no curves")]
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("unknown region {0}")]
    UnknownRegion(String),
    #[error("unknown curve {0}")]
    UnknownCurve(String),
}

impl CreaseConfig {
    /// Builds a configuration from an edge list over regions `0..n_regions`.
    /// Curves are named `γ1, γ2, …` and regions `K0, K1, …`.
    pub fn from_edges(n_regions: usize, edges: &[(usize, usize)]) -> Self {
        Self::from_decorated_edges(
            n_regions,
            &edges.iter().map(|&(a, b)| (a, b, 0)).collect::<Vec<_>>(),
        )
    }

    pub fn from_decorated_edges(n_regions: usize, edges: &[(usize, usize, u32)]) -> Self {
        let curves = edges
            .iter()
            .enumerate()
            .map(|(i, &(_, _, c))| Curve {
                id: format!("γ{}", i + 1),
                corners: c,
                angles: None,
            })
            .collect();
        let mut regions: Vec<Region> = (0..n_regions)
            .map(|i| Region {
                id: format!("K{i}"),
                boundary: Vec::new(),
            })
            .collect();
        for (i, &(a, b, _)) in edges.iter().enumerate() {
            regions[a].boundary.push(format!("γ{}", i + 1));
            regions[b].boundary.push(format!("γ{}", i + 1));
        }
        CreaseConfig { curves, regions }
    }

    /// Path of `n` curves: disk, n−1 annuli, disk.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
        Self::from_edges(n + 1, &edges)
    }

    /// Star of `n` curves around one central region.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
        Self::from_edges(n + 1, &edges)
    }

    pub fn curve_index(&self, id: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.id == id)
    }

    pub fn region_index(&self, id: &str) -> Option<usize> {
        self.regions.iter().position(|r| r.id == id)
    }

    pub fn is_corner_free(&self) -> bool {
        self.curves.iter().all(|c| c.corners == 0)
    }

    /// For each curve, the indices of the regions listing it, in region order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let index: HashMap<&str, usize> = self
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.as_str(), i))
            .collect();
        let mut inc = vec![Vec::new(); self.curves.len()];
        for (r, region) in self.regions.iter().enumerate() {
            for cid in &region.boundary {
                if let Some(&c) = index.get(cid.as_str()) {
                    inc[c].push(r);
                }
            }
        }
        inc
    }

    /// The two regions of every curve. Only meaningful on valid configurations.
    pub fn ends(&self) -> Vec<(usize, usize)> {
        self.incidence()
            .into_iter()
            .map(|v| {
                (
                    v.first().copied().unwrap_or(0),
                    v.get(1).copied().unwrap_or(0),
                )
            })
            .collect()
    }

    /// Curve indices on the boundary of each region.
    pub fn region_curves(&self) -> Vec<Vec<usize>> {
        self.regions
            .iter()
            .map(|r| {
                r.boundary
                    .iter()
                    .filter_map(|c| self.curve_index(c))
                    .collect()
            })
            .collect()
    }

    pub fn degree(&self, region: usize) -> usize {
        self.regions[region].boundary.len()
    }

    /// χ of a region: a sphere minus `deg` disks.
    pub fn region_euler(&self, region: &str) -> Result<i64, ConfigError> {
        let r = self
            .region_index(region)
            .ok_or_else(|| ConfigError::UnknownRegion(region.to_string()))?;
        Ok(2 - self.degree(r) as i64)
    }

    pub fn euler(&self, region: usize) -> i64 {
        2 - self.degree(region) as i64
    }

    /// Structural check. Returns every violation found, in a fixed order.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if self.curves.is_empty() {
            out.push(Violation::Empty);
        }
        let mut seen = BTreeSet::new();
        for id in self
            .curves
            .iter()
            .map(|c| &c.id)
            .chain(self.regions.iter().map(|r| &r.id))
        {
            if !seen.insert(id.clone()) {
                out.push(Violation::DuplicateId(id.clone()));
            }
        }
        for r in &self.regions {
            for c in &r.boundary {
                if self.curve_index(c).is_none() {
                    out.push(Violation::UnknownCurve {
                        region: r.id.clone(),
                        curve: c.clone(),
                    });
                }
            }
        }
        let inc = self.incidence();
        let mut dangling = false;
        for (c, curve) in self.curves.iter().enumerate() {
            if curve.corners % 2 == 1 {
                out.push(Violation::OddCornerCount(curve.id.clone()));
            }
            let ends = &inc[c];
            if ends.len() != 2 || ends[0] == ends[1] {
                out.push(Violation::DanglingCurve(curve.id.clone()));
                dangling = true;
                continue;
            }
            if let Some(cd) = &curve.angles {
                let ok = cd.angles.len() == curve.corners as usize
                    && ends.iter().any(|&r| self.regions[r].id == cd.reference);
                if !ok {
                    out.push(Violation::CornerDataMismatch(curve.id.clone()));
                }
            }
        }
        if !dangling && !self.regions.is_empty() {
            // Union-find over regions; a repeated union means a cycle.
            let mut parent: Vec<usize> = (0..self.regions.len()).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                let mut y = x;
                while p[y] != r {
                    let n = p[y];
                    p[y] = r;
                    y = n;
                }
                r
            }
            let mut cyclic = false;
            for e in &inc {
                let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
                if a == b {
                    cyclic = true;
                } else {
                    parent[a] = b;
                }
            }
            if cyclic {
                out.push(Violation::CyclicIncidence);
            }
            let roots: BTreeSet<usize> = (0..self.regions.len())
                .map(|r| find(&mut parent, r))
                .collect();
            if roots.len() > 1 {
                out.push(Violation::Disconnected);
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Region adjacency as (neighbour region, curve) lists.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.regions.len()];
        for (c, (a, b)) in self.ends().into_iter().enumerate() {
            adj[a].push((b, c));
            adj[b].push((a, c));
        }
        adj
    }

    /// Same configuration with ids renamed and lists permuted; used by tests
    /// and by id-independent checks.
    pub fn relabeled(&self, curve_perm: &[usize], region_perm: &[usize]) -> Self {
        let cname: BTreeMap<&str, String> = self
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.as_str(), format!("c{}", curve_perm[i])))
            .collect();
        let rname: BTreeMap<&str, String> = self
            .regions
            .iter()
            .enumerate()
            .map(|(i, r)| (r.id.as_str(), format!("r{}", region_perm[i])))
            .collect();
        let mut curves: Vec<(usize, Curve)> = self
            .curves
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let angles = c.angles.as_ref().map(|a| CornerData {
                    reference: rname[a.reference.as_str()].clone(),
                    angles: a.angles.clone(),
                });
                (
                    curve_perm[i],
                    Curve {
                        id: cname[c.id.as_str()].clone(),
                        corners: c.corners,
                        angles,
                    },
                )
            })
            .collect();
        curves.sort_by_key(|(k, _)| *k);
        let mut regions: Vec<(usize, Region)> = self
            .regions
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut boundary: Vec<String> = r
                    .boundary
                    .iter()
                    .map(|c| cname[c.as_str()].clone())
                    .collect();
                boundary.sort();
                (
                    region_perm[i],
                    Region {
                        id: rname[r.id.as_str()].clone(),
                        boundary,
                    },
                )
            })
            .collect();
        regions.sort_by_key(|(k, _)| *k);
        CreaseConfig {
            curves: curves.into_iter().map(|(_, c)| c).collect(),
            regions: regions.into_iter().map(|(_, r)| r).collect(),
        }
    }
}
