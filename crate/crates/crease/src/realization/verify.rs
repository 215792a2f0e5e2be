//! What a mesh realizes, measured from the mesh alone.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use super::mesh::TriMesh;
use crate::canon::config_isomorphic;
use crate::config::CreaseConfig;
use crate::signs::Sign;
use crate::weighting::{solve_weighting, Weighting};

/// Faces with a smaller |n_z| count as vertical.
pub const MIN_NZ: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CreaseError {
    #[error("face {0} is vertical")]
    DegenerateNormal(usize),
    #[error("edge ({0}, {1}) does not have exactly two faces")]
    NotManifold(usize, usize),
    #[error("crease branches at vertex {0}")]
    Branching(usize),
    #[error("no unambiguous probe near the crease loop")]
    AmbiguousProbe,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TurningError {
    #[error("edges reverse direction at vertex {0}")]
    AntipodalEdges(usize),
    #[error("turning {0} is not an integer")]
    NonIntegerTurning(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CreaseLoop {
    /// Oriented so the adjacent faces project to its left.
    pub vertices: Vec<usize>,
    pub sign: Sign,
}

impl CreaseLoop {
    pub fn projected(&self, mesh: &TriMesh) -> Vec<[f64; 2]> {
        self.vertices
            .iter()
            .map(|&v| [mesh.vertices[v][0], mesh.vertices[v][1]])
            .collect()
    }
}

fn exterior_angles(pts: &[[f64; 2]], closed: bool) -> Result<f64, TurningError> {
    let mut p: Vec<[f64; 2]> = Vec::with_capacity(pts.len());
    for &q in pts {
        if p.last() != Some(&q) {
            p.push(q);
        }
    }
    if closed {
        while p.len() > 1 && p.first() == p.last() {
            p.pop();
        }
    }
    let n = p.len();
    let range = if closed { 0..n } else { 1..n.saturating_sub(1) };
    let mut sum = 0.0;
    for i in range {
        let (a, b, c) = (p[(i + n - 1) % n], p[i], p[(i + 1) % n]);
        let (e1, e2) = ([b[0] - a[0], b[1] - a[1]], [c[0] - b[0], c[1] - b[1]]);
        let cr = e1[0] * e2[1] - e1[1] * e2[0];
        let dot = e1[0] * e2[0] + e1[1] * e2[1];
        let scale = (e1[0].hypot(e1[1])) * (e2[0].hypot(e2[1]));
        if dot < 0.0 && cr.abs() <= 1e-12 * scale {
            return Err(TurningError::AntipodalEdges(i));
        }
        sum += cr.atan2(dot);
    }
    Ok(sum / (2.0 * PI))
}

/// Turning number of a closed polygon (last point joins the first).
pub fn discrete_turning(points: &[[f64; 2]]) -> Result<i64, TurningError> {
    let t = exterior_angles(points, true)?;
    let r = t.round();
    if (t - r).abs() > 1e-6 {
        return Err(TurningError::NonIntegerTurning(t));
    }
    Ok(r as i64)
}

/// Total exterior angle of an open polyline over 2π.
pub fn partial_turning(points: &[[f64; 2]]) -> Result<f64, TurningError> {
    exterior_angles(points, false)
}

fn face_nz(mesh: &TriMesh) -> Result<Vec<f64>, CreaseError> {
    (0..mesh.faces.len())
        .map(|f| {
            let nz = mesh.unit_normal(f)[2];
            if nz.abs() < MIN_NZ {
                Err(CreaseError::DegenerateNormal(f))
            } else {
                Ok(nz)
            }
        })
        .collect()
}

fn third(mesh: &TriMesh, f: usize, a: usize, b: usize) -> usize {
    *mesh.faces[f].iter().find(|&&v| v != a && v != b).unwrap()
}

fn xy(mesh: &TriMesh, v: usize) -> [f64; 2] {
    [mesh.vertices[v][0], mesh.vertices[v][1]]
}

fn cross2(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Crease edges and the faces on each.
fn crease_edges(mesh: &TriMesh) -> Result<HashMap<(usize, usize), [usize; 2]>, CreaseError> {
    let nz = face_nz(mesh)?;
    let mut out = HashMap::new();
    for (&(a, b), fs) in &mesh.edge_faces() {
        if fs.len() != 2 {
            return Err(CreaseError::NotManifold(a, b));
        }
        if (nz[fs[0]] > 0.0) != (nz[fs[1]] > 0.0) {
            out.insert((a, b), [fs[0], fs[1]]);
        }
    }
    Ok(out)
}

pub fn extract_crease(mesh: &TriMesh) -> Result<Vec<CreaseLoop>, CreaseError> {
    let edges = crease_edges(mesh)?;
    let mut nbrs: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in edges.keys() {
        nbrs.entry(a).or_default().push(b);
        nbrs.entry(b).or_default().push(a);
    }
    let mut starts: Vec<usize> = nbrs.keys().copied().collect();
    starts.sort();
    for &v in &starts {
        if nbrs[&v].len() != 2 {
            return Err(CreaseError::Branching(v));
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut loops = Vec::new();
    for s in starts {
        if !seen.insert(s) {
            continue;
        }
        let mut vs = vec![s];
        let (mut prev, mut cur) = (s, nbrs[&s][0]);
        while cur != s {
            seen.insert(cur);
            vs.push(cur);
            let n = &nbrs[&cur];
            let next = if n[0] == prev { n[1] } else { n[0] };
            prev = cur;
            cur = next;
        }
        let (a, b) = (vs[0], vs[1]);
        let f = edges[&(a.min(b), a.max(b))][0];
        if cross2(xy(mesh, a), xy(mesh, b), xy(mesh, third(mesh, f, a, b))) < 0.0 {
            vs.reverse();
            vs.rotate_right(1);
        }
        let mut l = CreaseLoop {
            vertices: vs,
            sign: Sign::Plus,
        };
        l.sign = fold_sign(mesh, &l)?;
        loops.push(l);
    }
    Ok(loops)
}

/// Height of face `f` above `p`, if `p` projects strictly inside it.
fn height_on(mesh: &TriMesh, f: usize, p: [f64; 2]) -> Option<f64> {
    let [a, b, c] = mesh.faces[f].map(|i| mesh.vertices[i]);
    let d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    let l1 = ((b[0] - p[0]) * (c[1] - p[1]) - (b[1] - p[1]) * (c[0] - p[0])) / d;
    let l2 = ((c[0] - p[0]) * (a[1] - p[1]) - (c[1] - p[1]) * (a[0] - p[0])) / d;
    let l3 = 1.0 - l1 - l2;
    (l1 > 1e-9 && l2 > 1e-9 && l3 > 1e-9).then(|| l1 * a[2] + l2 * b[2] + l3 * c[2])
}

/// Ray-parity inside test; `None` when the ray grazes an edge.
fn inside_solid(mesh: &TriMesh, o: [f64; 3], dir: [f64; 3]) -> Option<bool> {
    let mut hits = 0;
    for t in &mesh.faces {
        let [a, b, c] = t.map(|i| mesh.vertices[i]);
        let e1 = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let e2 = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let p = [
            dir[1] * e2[2] - dir[2] * e2[1],
            dir[2] * e2[0] - dir[0] * e2[2],
            dir[0] * e2[1] - dir[1] * e2[0],
        ];
        let det = e1[0] * p[0] + e1[1] * p[1] + e1[2] * p[2];
        if det.abs() < 1e-15 {
            continue;
        }
        let s = [o[0] - a[0], o[1] - a[1], o[2] - a[2]];
        let u = (s[0] * p[0] + s[1] * p[1] + s[2] * p[2]) / det;
        let q = [
            s[1] * e1[2] - s[2] * e1[1],
            s[2] * e1[0] - s[0] * e1[2],
            s[0] * e1[1] - s[1] * e1[0],
        ];
        let v = (dir[0] * q[0] + dir[1] * q[1] + dir[2] * q[2]) / det;
        let t = (e2[0] * q[0] + e2[1] * q[1] + e2[2] * q[2]) / det;
        if t <= 0.0 || u < -1e-9 || v < -1e-9 || u + v > 1.0 + 1e-9 {
            continue;
        }
        if u < 1e-9 || v < 1e-9 || u + v > 1.0 - 1e-9 || t < 1e-12 {
            return None;
        }
        hits += 1;
    }
    Some(hits % 2 == 1)
}

const RAYS: [[f64; 3]; 3] = [
    [0.3178, 0.5471, 0.7743],
    [-0.6113, 0.2017, 0.7653],
    [0.1291, -0.8412, -0.5250],
];

/// `+` when the midpoint of the vertical segment between the two sheets
/// just inside the fold lies in the solid.
pub fn fold_sign(mesh: &TriMesh, l: &CreaseLoop) -> Result<Sign, CreaseError> {
    let ef = mesh.edge_faces();
    let n = l.vertices.len();
    for i in 0..n {
        let (a, b) = (l.vertices[i], l.vertices[(i + 1) % n]);
        let Some(fs) = ef.get(&(a.min(b), a.max(b))) else {
            continue;
        };
        if fs.len() != 2 {
            continue;
        }
        let (pa, pb) = (xy(mesh, a), xy(mesh, b));
        let (dx, dy) = (pb[0] - pa[0], pb[1] - pa[1]);
        let len = dx.hypot(dy);
        if len == 0.0 {
            continue;
        }
        let m = [(pa[0] + pb[0]) / 2.0, (pa[1] + pb[1]) / 2.0];
        let left = [-dy / len, dx / len];
        let mut eps = 0.1 * len;
        for _ in 0..20 {
            let p = [m[0] + eps * left[0], m[1] + eps * left[1]];
            if let (Some(z1), Some(z2)) = (height_on(mesh, fs[0], p), height_on(mesh, fs[1], p)) {
                if (z1 - z2).abs() > 1e-9 {
                    let o = [p[0], p[1], (z1 + z2) / 2.0];
                    if let Some(inside) = RAYS.iter().find_map(|&d| inside_solid(mesh, o, d)) {
                        return Ok(if inside { Sign::Plus } else { Sign::Minus });
                    }
                }
                break;
            }
            eps /= 2.0;
        }
    }
    Err(CreaseError::AmbiguousProbe)
}

/// Face components separated by crease edges, and the two components on
/// either side of each loop.
fn regions(
    mesh: &TriMesh,
    loops: &[CreaseLoop],
) -> Result<(usize, Vec<(usize, usize)>), CreaseError> {
    let creases = crease_edges(mesh)?;
    let mut parent: Vec<usize> = (0..mesh.faces.len()).collect();
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
    for (k, fs) in mesh.edge_faces() {
        if fs.len() == 2 && !creases.contains_key(&k) {
            let (a, b) = (find(&mut parent, fs[0]), find(&mut parent, fs[1]));
            parent[a] = b;
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let comp: Vec<usize> = (0..mesh.faces.len())
        .map(|f| {
            let r = find(&mut parent, f);
            let n = ids.len();
            *ids.entry(r).or_insert(n)
        })
        .collect();
    let ends = loops
        .iter()
        .map(|l| {
            let (a, b) = (l.vertices[0], l.vertices[1]);
            let fs = creases[&(a.min(b), a.max(b))];
            (comp[fs[0]], comp[fs[1]])
        })
        .collect();
    Ok((ids.len(), ends))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LoopReport {
    pub vertices: usize,
    pub sign: Sign,
    pub turning: Option<i64>,
    pub expected: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<Check>,
    pub loops: Vec<LoopReport>,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn verify_realization(cfg: &CreaseConfig, w: &Weighting, mesh: &TriMesh) -> VerifyReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            pass,
            detail,
        });
    };
    push(
        "closed",
        mesh.is_closed_oriented(),
        format!("{} faces", mesh.faces.len()),
    );
    let chi = mesh.euler_characteristic();
    push("euler", chi == 2, format!("V − E + F = {chi}"));
    let mut loops_out = Vec::new();
    match extract_crease(mesh) {
        Err(e) => push("crease", false, e.to_string()),
        Ok(loops) => {
            push("crease", true, format!("{} loops", loops.len()));
            push(
                "loop_count",
                loops.len() == cfg.curves.len(),
                format!("{} loops, {} curves", loops.len(), cfg.curves.len()),
            );
            let turnings: Vec<Option<i64>> = loops
                .iter()
                .map(|l| discrete_turning(&l.projected(mesh)).ok())
                .collect();
            let mut expected = vec![None; loops.len()];
            match regions(mesh, &loops) {
                Err(e) => push("tree", false, e.to_string()),
                Ok((n, ends)) if n == ends.len() + 1 => {
                    let got = CreaseConfig::from_edges(n, &ends);
                    let ok = got.validate().is_ok() && config_isomorphic(&got, cfg);
                    push("tree", ok, crate::canon::canonical_form(&got));
                    if let Some(t) = solve_weighting(&got).ok().and_then(|gw| gw.singles(&got)) {
                        expected = t.into_iter().map(Some).collect();
                    }
                }
                Ok((n, ends)) => push(
                    "tree",
                    false,
                    format!("{n} regions for {} loops", ends.len()),
                ),
            }
            let mut want = w.singles(cfg).unwrap_or_default();
            let mut have: Vec<i64> = turnings.iter().flatten().copied().collect();
            want.sort();
            have.sort();
            let per_loop = turnings
                .iter()
                .zip(&expected)
                .all(|(t, e)| t.is_some() && t == e);
            push(
                "turning",
                per_loop && have == want,
                format!("measured {have:?}, weights {want:?}"),
            );
            let total: i64 = have.iter().sum();
            push(
                "sum",
                turnings.iter().all(Option::is_some) && 2 * total == 2,
                format!("2Σt = {}", 2 * total),
            );
            loops_out = loops
                .iter()
                .zip(turnings.iter().zip(&expected))
                .map(|(l, (&turning, &expected))| LoopReport {
                    vertices: l.vertices.len(),
                    sign: l.sign,
                    turning,
                    expected,
                })
                .collect();
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    VerifyReport {
        pass,
        checks,
        loops: loops_out,
    }
}
