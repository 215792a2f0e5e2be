//! Triangle meshes and the emitter.
//!
//! Every region becomes a sheet: a graph `z = h(x, y)` over a planar domain,
//! flat at its level and easing into the fold height within a fixed distance
//! of each boundary curve. Sheets that face up are wound counter-clockwise in
//! projection, sheets that face down clockwise, so the winding is outward
//! and the crease is exactly where the facing flips.

use std::collections::HashMap;
use std::f64::consts::PI;

use spade::{ConstrainedDelaunayTriangulation, Point2, Triangulation};

use super::plan::{Facing, SaucerPair, StackPlan, Template, SAUCER_GAP};
use super::RealizeError;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TriMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

impl TriMesh {
    /// Unnormalized normal (twice the area).
    pub fn area_normal(&self, f: usize) -> [f64; 3] {
        let [a, b, c] = self.faces[f].map(|i| self.vertices[i]);
        cross(sub(b, a), sub(c, a))
    }

    pub fn unit_normal(&self, f: usize) -> [f64; 3] {
        let n = self.area_normal(f);
        let l = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if l == 0.0 {
            [0.0; 3]
        } else {
            n.map(|x| x / l)
        }
    }

    /// Faces on each undirected edge, keyed by (min, max).
    pub fn edge_faces(&self) -> HashMap<(usize, usize), Vec<usize>> {
        let mut out: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (f, t) in self.faces.iter().enumerate() {
            for i in 0..3 {
                let (a, b) = (t[i], t[(i + 1) % 3]);
                out.entry((a.min(b), a.max(b))).or_default().push(f);
            }
        }
        out
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_faces().len() as i64 + self.faces.len() as i64
    }

    /// Every edge has two faces that traverse it in opposite directions.
    pub fn is_closed_oriented(&self) -> bool {
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &self.faces {
            for i in 0..3 {
                *directed.entry((t[i], t[(i + 1) % 3])).or_default() += 1;
            }
        }
        directed
            .iter()
            .all(|(&(a, b), &n)| n == 1 && directed.get(&(b, a)) == Some(&1))
    }

    pub fn signed_volume(&self) -> f64 {
        self.faces
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| self.vertices[i]);
                let n = cross(b, c);
                (a[0] * n[0] + a[1] * n[1] + a[2] * n[2]) / 6.0
            })
            .sum()
    }

    pub fn flip(&mut self) {
        for t in &mut self.faces {
            t.swap(1, 2);
        }
    }
}

pub fn write_obj(mesh: &TriMesh) -> String {
    let mut s = String::new();
    for v in &mesh.vertices {
        s += &format!("v {} {} {}\n", v[0], v[1], v[2]);
    }
    for f in &mesh.faces {
        s += &format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    s
}

/// Reads `v` and triangular `f` lines; `f` entries may carry `/vt/vn`.
pub fn read_obj(text: &str) -> Result<TriMesh, String> {
    let mut m = TriMesh::default();
    for (no, line) in text.lines().enumerate() {
        let mut it = line.split_whitespace();
        let err = |what: &str| format!("line {}: {what}", no + 1);
        match it.next() {
            Some("v") => {
                let xs: Vec<f64> = it
                    .map(|t| t.parse().map_err(|_| err("bad number")))
                    .collect::<Result<_, _>>()?;
                if xs.len() < 3 {
                    return Err(err("vertex needs three coordinates"));
                }
                m.vertices.push([xs[0], xs[1], xs[2]]);
            }
            Some("f") => {
                let ix: Vec<usize> = it
                    .map(|t| {
                        t.split('/')
                            .next()
                            .unwrap()
                            .parse::<usize>()
                            .map_err(|_| err("bad index"))
                    })
                    .collect::<Result<_, _>>()?;
                if ix.len() != 3 || ix.iter().any(|&i| i == 0 || i > m.vertices.len()) {
                    return Err(err("face must have three valid 1-based indices"));
                }
                m.faces.push([ix[0] - 1, ix[1] - 1, ix[2] - 1]);
            }
            _ => {}
        }
    }
    Ok(m)
}

/// Surface of revolution about the z axis. The profile runs in the (r, z)
/// half-plane from a point on the axis to another point on the axis.
/// Faces are wound outward.
pub fn revolve(profile: &[[f64; 2]], resolution: usize) -> TriMesh {
    let n = profile.len();
    let mut m = TriMesh::default();
    m.vertices.push([0.0, 0.0, profile[0][1]]);
    for p in &profile[1..n - 1] {
        for j in 0..resolution {
            let t = 2.0 * PI * j as f64 / resolution as f64;
            m.vertices.push([p[0] * t.cos(), p[0] * t.sin(), p[1]]);
        }
    }
    let top = m.vertices.len();
    m.vertices.push([0.0, 0.0, profile[n - 1][1]]);
    let ring = |i: usize, j: usize| 1 + i * resolution + j % resolution;
    for j in 0..resolution {
        m.faces.push([0, ring(0, j + 1), ring(0, j)]);
        m.faces.push([top, ring(n - 3, j), ring(n - 3, j + 1)]);
        for i in 0..n - 3 {
            m.faces
                .push([ring(i, j), ring(i, j + 1), ring(i + 1, j + 1)]);
            m.faces
                .push([ring(i, j), ring(i + 1, j + 1), ring(i + 1, j)]);
        }
    }
    if m.signed_volume() < 0.0 {
        m.flip();
    }
    m
}

/// Mesh under construction; vertices are welded by exact coordinates.
#[derive(Default)]
struct Builder {
    mesh: TriMesh,
    index: HashMap<[u64; 3], usize>,
}

impl Builder {
    fn vertex(&mut self, p: [f64; 3]) -> usize {
        let key = p.map(|x| (x + 0.0).to_bits());
        *self.index.entry(key).or_insert_with(|| {
            self.mesh.vertices.push(p);
            self.mesh.vertices.len() - 1
        })
    }

    fn xy(&self, v: usize) -> [f64; 2] {
        let p = self.mesh.vertices[v];
        [p[0], p[1]]
    }
}

/// One region's sheet: boundary loops (outer and holes, by even-odd rule),
/// extra constraint rings, and optional Steiner grid spacing.
struct Sheet<'a> {
    loops: Vec<Vec<usize>>,
    rings: Vec<Vec<[f64; 2]>>,
    grid: Option<f64>,
    height: &'a dyn Fn([f64; 2]) -> f64,
    facing: Facing,
}

fn inside(loops: &[Vec<[f64; 2]>], p: [f64; 2]) -> bool {
    let mut odd = false;
    for l in loops {
        for i in 0..l.len() {
            let (a, b) = (l[i], l[(i + 1) % l.len()]);
            if (a[1] > p[1]) != (b[1] > p[1])
                && p[0] < a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1])
            {
                odd = !odd;
            }
        }
    }
    odd
}

fn seg_dist(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let l2 = dx * dx + dy * dy;
    let t = if l2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / l2).clamp(0.0, 1.0)
    };
    ((p[0] - a[0] - t * dx).powi(2) + (p[1] - a[1] - t * dy).powi(2)).sqrt()
}

fn mesh_sheet(b: &mut Builder, s: &Sheet) {
    let loops2: Vec<Vec<[f64; 2]>> = s
        .loops
        .iter()
        .map(|l| l.iter().map(|&v| b.xy(v)).collect())
        .collect();
    let mut cdt: ConstrainedDelaunayTriangulation<Point2<f64>> =
        ConstrainedDelaunayTriangulation::new();
    let mut ids: Vec<usize> = Vec::new();
    let mut put =
        |cdt: &mut ConstrainedDelaunayTriangulation<Point2<f64>>, p: [f64; 2], id: usize| {
            let h = cdt.insert(Point2::new(p[0], p[1])).expect("finite point");
            if ids.len() <= h.index() {
                ids.resize(h.index() + 1, usize::MAX);
            }
            ids[h.index()] = id;
            h
        };
    let constrain = |cdt: &mut ConstrainedDelaunayTriangulation<Point2<f64>>,
                     hs: &[spade::handles::FixedVertexHandle]| {
        for i in 0..hs.len() {
            let (p, q) = (hs[i], hs[(i + 1) % hs.len()]);
            assert!(cdt.can_add_constraint(p, q), "crossing constraint");
            cdt.add_constraint(p, q);
        }
    };
    for (l, l2) in s.loops.iter().zip(&loops2) {
        let hs: Vec<_> = l
            .iter()
            .zip(l2)
            .map(|(&v, &p)| put(&mut cdt, p, v))
            .collect();
        constrain(&mut cdt, &hs);
    }
    for ring in &s.rings {
        let hs: Vec<_> = ring
            .iter()
            .map(|&p| {
                let id = b.vertex([p[0], p[1], (s.height)(p)]);
                put(&mut cdt, p, id)
            })
            .collect();
        constrain(&mut cdt, &hs);
    }
    if let Some(h) = s.grid {
        let pts = loops2.iter().flatten();
        let (mut lo, mut hi) = ([f64::MAX; 2], [f64::MIN; 2]);
        for p in pts {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let segs: Vec<([f64; 2], [f64; 2])> = loops2
            .iter()
            .flat_map(|l| (0..l.len()).map(move |i| (l[i], l[(i + 1) % l.len()])))
            .collect();
        let (nx, ny) = (
            ((hi[0] - lo[0]) / h) as usize,
            ((hi[1] - lo[1]) / h) as usize,
        );
        for i in 1..nx {
            for j in 1..ny {
                // stagger rows to avoid cocircular lattices
                let off = if j % 2 == 0 { 0.0 } else { 0.5 * h };
                let p = [lo[0] + i as f64 * h + off, lo[1] + j as f64 * h];
                if inside(&loops2, p) && segs.iter().all(|&(a, q)| seg_dist(p, a, q) > 0.5 * h) {
                    let id = b.vertex([p[0], p[1], (s.height)(p)]);
                    put(&mut cdt, p, id);
                }
            }
        }
    }
    for f in cdt.inner_faces() {
        let vs = f.vertices();
        let ps = vs.map(|v| v.position());
        let c = [
            (ps[0].x + ps[1].x + ps[2].x) / 3.0,
            (ps[0].y + ps[1].y + ps[2].y) / 3.0,
        ];
        if !inside(&loops2, c) {
            continue;
        }
        let mut t = vs.map(|v| {
            let i = v.fix().index();
            if ids.get(i).copied().unwrap_or(usize::MAX) == usize::MAX {
                // a split constraint can add vertices of its own
                let p = [v.position().x, v.position().y];
                b.vertex([p[0], p[1], (s.height)(p)])
            } else {
                ids[i]
            }
        });
        let ccw = (ps[1].x - ps[0].x) * (ps[2].y - ps[0].y)
            - (ps[1].y - ps[0].y) * (ps[2].x - ps[0].x)
            > 0.0;
        if ccw != (s.facing == Facing::Up) {
            t.swap(1, 2);
        }
        b.mesh.faces.push(t);
    }
}

fn ease(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    1.0 - (1.0 - t) * (1.0 - t)
}

fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

/// Ramp rings per circle in the unit template.
const RINGS: usize = 4;

pub fn emit_mesh(plan: &StackPlan, resolution: usize) -> Result<TriMesh, RealizeError> {
    if resolution < 16 {
        return Err(RealizeError::ResolutionTooLow(resolution));
    }
    let mesh = match &plan.template {
        Template::Units => units_mesh(plan, resolution),
        Template::SaucerPair(roles) => saucer_pair_mesh(plan, roles, resolution),
    };
    Ok(mesh)
}

fn circle_points(c: [f64; 2], r: f64, n: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|j| {
            let t = 2.0 * PI * j as f64 / n as f64;
            [c[0] + r * t.cos(), c[1] + r * t.sin()]
        })
        .collect()
}

fn units_mesh(plan: &StackPlan, n: usize) -> TriMesh {
    let mut b = Builder::default();
    let mut fold: HashMap<&str, Vec<usize>> = HashMap::new();
    for c in &plan.circles {
        let ids = circle_points(c.center, c.radius, n)
            .into_iter()
            .map(|p| b.vertex([p[0], p[1], c.fold_height]))
            .collect();
        fold.insert(&c.curve, ids);
    }
    for slab in &plan.slabs {
        let circles: Vec<_> = slab
            .boundary
            .iter()
            .map(|c| plan.circle(c).unwrap())
            .collect();
        let z = slab.level;
        let height = |p: [f64; 2]| {
            for c in &circles {
                let r = ((p[0] - c.center[0]).powi(2) + (p[1] - c.center[1]).powi(2)).sqrt();
                let d = if c.inside { c.radius - r } else { r - c.radius };
                let delta = 0.1 * c.radius;
                if d < delta {
                    return c.fold_height + (z - c.fold_height) * ease(d / delta);
                }
            }
            z
        };
        let rings = circles
            .iter()
            .flat_map(|c| {
                (1..=RINGS).map(move |k| {
                    let d = 0.1 * c.radius * k as f64 / RINGS as f64;
                    circle_points(
                        c.center,
                        if c.inside { c.radius - d } else { c.radius + d },
                        n,
                    )
                })
            })
            .collect();
        let sheet = Sheet {
            loops: slab
                .boundary
                .iter()
                .map(|c| fold[c.as_str()].clone())
                .collect(),
            rings,
            grid: None,
            height: &height,
            facing: slab.facing,
        };
        mesh_sheet(&mut b, &sheet);
    }
    b.mesh
}

/// Saucer-pair dimensions: rim, lip and waist radii, tube half-width, ramp
/// width, and how far the tube's seam sits inside the waist.
const RIM: f64 = 4.0;
const LIP: f64 = 2.0;
const WAIST: f64 = 1.0;
const HALF_WIDTH: f64 = 0.3;
const RAMP: f64 = 0.3;
const SEAM: f64 = 0.8;
const GRID: f64 = 0.1;

/// Tube centre height and half-thickness at `x`.
fn tube_profile(x: f64) -> (f64, f64) {
    let end = SAUCER_GAP + SEAM;
    let s = smoothstep((end - x.abs()) / 1.6);
    (0.5 - 0.85 * s, 0.5 - 0.35 * s)
}

fn saucer_pair_mesh(plan: &StackPlan, roles: &SaucerPair, n: usize) -> TriMesh {
    let mut b = Builder::default();
    let level = |r: &str| plan.slab(r).unwrap().level;
    let (z_lo, z_hi) = (level(&roles.lower), level(&roles.upper));
    let z_waist = (z_lo + z_hi) / 2.0;
    let ny = 8;
    let ys: Vec<f64> = (0..=ny)
        .map(|j| -HALF_WIDTH + 2.0 * HALF_WIDTH * j as f64 / ny as f64)
        .collect();
    let band = |x: f64, y: f64, up: bool| {
        let (m, tau) = tube_profile(x);
        let e = ease((HALF_WIDTH - y.abs()) / HALF_WIDTH);
        if up {
            m + tau * e
        } else {
            m - tau * e
        }
    };
    // tube columns, including both seams
    let end = SAUCER_GAP + SEAM;
    let nx = (2.0 * end / GRID).round() as usize;
    let xs: Vec<f64> = (0..=nx)
        .map(|i| -end + 2.0 * end * i as f64 / nx as f64)
        .collect();
    let grid_ids = |b: &mut Builder, up: bool| -> Vec<Vec<usize>> {
        xs.iter()
            .map(|&x| {
                ys.iter()
                    .map(|&y| b.vertex([x, y, band(x, y, up)]))
                    .collect()
            })
            .collect()
    };
    let lower_tube = grid_ids(&mut b, false);
    let upper_tube = grid_ids(&mut b, true);
    for (ids, facing) in [(&lower_tube, Facing::Down), (&upper_tube, Facing::Up)] {
        for i in 0..nx {
            for j in 0..ny {
                let (a, q, c, d) = (ids[i][j], ids[i + 1][j], ids[i + 1][j + 1], ids[i][j + 1]);
                for mut t in [[a, q, c], [a, c, d]] {
                    if facing == Facing::Down {
                        t.swap(1, 2);
                    }
                    b.mesh.faces.push(t);
                }
            }
        }
    }

    for side in 0..2 {
        // side 0: saucer at −GAP, tube leaves eastward; side 1 mirrored
        let sx = if side == 0 { 1.0 } else { -1.0 };
        let c = [-sx * SAUCER_GAP, 0.0];
        let at = |p: [f64; 2]| [c[0] + sx * p[0], c[1] + p[1]];
        let circle = |b: &mut Builder, r: f64, z: f64| -> Vec<usize> {
            circle_points([0.0, 0.0], r, n)
                .into_iter()
                .map(&at)
                .map(|p| b.vertex([p[0], p[1], z]))
                .collect()
        };
        let rim = circle(
            &mut b,
            RIM,
            plan.circle(&roles.rims[side]).unwrap().fold_height,
        );
        let lip = circle(
            &mut b,
            LIP,
            plan.circle(&roles.lips[side]).unwrap().fold_height,
        );
        // waist: long arc from the top junction corner through the far side
        let tw = (HALF_WIDTH / WAIST).asin();
        let arc: Vec<[f64; 2]> = (0..=n)
            .map(|j| {
                let t = PI - tw - (2.0 * PI - 2.0 * tw) * j as f64 / n as f64;
                at([WAIST * t.cos(), WAIST * t.sin()])
            })
            .collect();
        let arc_ids: Vec<usize> = arc
            .iter()
            .map(|p| b.vertex([p[0], p[1], z_waist]))
            .collect();
        let seam_col = if side == 0 { 0 } else { nx };
        let waist_loop = |tube: &Vec<Vec<usize>>| -> Vec<usize> {
            let mut l = arc_ids.clone();
            // arc ends at y = −w, seam runs back up to y = +w
            l.extend(tube[seam_col].iter().copied());
            l
        };
        let mut fold_segs: Vec<([f64; 2], [f64; 2])> =
            arc.windows(2).map(|w| (w[0], w[1])).collect();
        let seam_x = at([-SEAM, 0.0])[0];
        fold_segs.push((arc[n], [seam_x, -HALF_WIDTH]));
        fold_segs.push(([seam_x, HALF_WIDTH], arc[0]));
        let waist_dist = |p: [f64; 2]| {
            fold_segs
                .iter()
                .map(|&(a, q)| seg_dist(p, a, q))
                .fold(f64::MAX, f64::min)
        };
        let r_of = |p: [f64; 2]| ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt();
        let ramp = |z: f64, zf: f64, d: f64| zf + (z - zf) * ease(d / RAMP);

        let lower = |p: [f64; 2]| {
            let d_rim = RIM - r_of(p);
            if d_rim < RAMP {
                return ramp(z_lo, 1.5, d_rim);
            }
            let d = waist_dist(p);
            if d < RAMP {
                ramp(z_lo, z_waist, d)
            } else {
                z_lo
            }
        };
        let upper = |p: [f64; 2]| {
            let d_lip = LIP - r_of(p);
            if d_lip < RAMP {
                return ramp(z_hi, 1.5, d_lip);
            }
            let d = waist_dist(p);
            if d < RAMP {
                ramp(z_hi, z_waist, d)
            } else {
                z_hi
            }
        };
        let z_top = level(&roles.tops[side]);
        let z_dent = level(&roles.dents[side]);
        let top = |p: [f64; 2]| {
            let d = RIM - r_of(p);
            if d < RAMP {
                ramp(z_top, 1.5, d)
            } else {
                z_top
            }
        };
        let dent = |p: [f64; 2]| {
            let d = LIP - r_of(p);
            if d < RAMP {
                ramp(z_dent, 1.5, d)
            } else {
                z_dent
            }
        };
        let sheets = [
            Sheet {
                loops: vec![rim.clone(), waist_loop(&lower_tube)],
                rings: vec![],
                grid: Some(GRID),
                height: &lower,
                facing: Facing::Down,
            },
            Sheet {
                loops: vec![lip.clone(), waist_loop(&upper_tube)],
                rings: vec![],
                grid: Some(GRID),
                height: &upper,
                facing: Facing::Up,
            },
            Sheet {
                loops: vec![rim],
                rings: vec![],
                grid: Some(GRID),
                height: &top,
                facing: Facing::Up,
            },
            Sheet {
                loops: vec![lip],
                rings: vec![],
                grid: Some(GRID),
                height: &dent,
                facing: Facing::Down,
            },
        ];
        for s in &sheets {
            mesh_sheet(&mut b, s);
        }
    }
    b.mesh
}
