//! Face tracing on one component's trace graph.
//!
//! The graph is closed up with a left end `−∞` before the first instance, a
//! right end `+∞` after the last, the line segments between them, and a sky
//! edge from `+∞` back to `−∞` over everything. Faces are traced with the
//! face on the left of each dart.

use super::{ChordComponent, DiagramViolation, End};

pub(crate) struct Faces {
    /// Per boundary position: on the face under the sky edge.
    pub on_top: Vec<bool>,
}

struct Map {
    ends: Vec<[usize; 2]>,
    rot: Vec<Vec<usize>>,
    sky: usize,
}

fn tail(m: &Map, d: usize) -> usize {
    m.ends[d / 2][d % 2]
}

fn build(c: &ChordComponent) -> Result<Map, Vec<DiagramViolation>> {
    let n = c.boundary.len();
    let nv = n + 2 + c.interior.vertices.len();
    let hv = |e: End| match e {
        End::B(i) if i < n => Some(i + 1),
        End::V(k) if k < c.interior.vertices.len() => Some(n + 2 + k),
        _ => None,
    };
    let mut bad = Vec::new();
    let mut ends: Vec<[usize; 2]> = (0..=n).map(|j| [j, j + 1]).collect();
    let sky = ends.len();
    ends.push([n + 1, 0]);
    let base = ends.len();
    for (i, e) in c.interior.edges.iter().enumerate() {
        match (hv(e[0]), hv(e[1])) {
            (Some(a), Some(b)) => ends.push([a, b]),
            _ => {
                bad.push(DiagramViolation::BadEnd {
                    component: c.name,
                    edge: i,
                });
                ends.push([0, 0]);
            }
        }
    }
    if !bad.is_empty() {
        return Err(bad);
    }

    let interior_darts = |v: End| -> Option<Vec<usize>> {
        let at = hv(v)?;
        let listed: Vec<usize> = match c.interior.rotation.get(&v) {
            Some(r) => r.clone(),
            None if c.interior.degree(v) >= 2 => return None,
            None => (0..c.interior.edges.len())
                .filter(|&e| count_at(c, e, v) > 0)
                .collect(),
        };
        let mut used_first = vec![false; c.interior.edges.len()];
        let mut darts = Vec::new();
        for e in listed {
            if e >= c.interior.edges.len() {
                return None;
            }
            let [a, b] = ends[base + e];
            let d = if a == at && b == at {
                let first = !used_first[e];
                used_first[e] = true;
                2 * (base + e) + (!first) as usize
            } else if a == at {
                2 * (base + e)
            } else if b == at {
                2 * (base + e) + 1
            } else {
                return None;
            };
            darts.push(d);
        }
        let mut sorted = darts.clone();
        sorted.sort();
        let mut want: Vec<usize> = (0..c.interior.edges.len())
            .flat_map(|e| {
                let [a, b] = ends[base + e];
                let mut v = Vec::new();
                if a == at {
                    v.push(2 * (base + e));
                }
                if b == at {
                    v.push(2 * (base + e) + 1);
                }
                v
            })
            .collect();
        want.sort();
        (sorted == want).then_some(darts)
    };

    let mut rot = vec![Vec::new(); nv];
    rot[0] = vec![0, 2 * sky + 1];
    rot[n + 1] = vec![2 * sky, 2 * n + 1];
    for i in 0..n {
        let mut r = vec![2 * (i + 1)];
        match interior_darts(End::B(i)) {
            Some(ds) => r.extend(ds),
            None => bad.push(DiagramViolation::Rotation {
                component: c.name,
                vertex: End::B(i),
            }),
        }
        r.push(2 * i + 1);
        rot[i + 1] = r;
    }
    for k in 0..c.interior.vertices.len() {
        match interior_darts(End::V(k)) {
            Some(ds) => rot[n + 2 + k] = ds,
            None => bad.push(DiagramViolation::Rotation {
                component: c.name,
                vertex: End::V(k),
            }),
        }
    }
    if bad.is_empty() {
        Ok(Map { ends, rot, sky })
    } else {
        Err(bad)
    }
}

fn count_at(c: &ChordComponent, e: usize, v: End) -> usize {
    let x = c.interior.edges[e];
    (x[0] == v) as usize + (x[1] == v) as usize
}

fn trace(m: &Map) -> (usize, Vec<usize>) {
    let nd = 2 * m.ends.len();
    let mut pos = vec![0; nd];
    for r in &m.rot {
        for (i, &d) in r.iter().enumerate() {
            pos[d] = i;
        }
    }
    let mut face = vec![usize::MAX; nd];
    let mut count = 0;
    for start in 0..nd {
        if face[start] != usize::MAX {
            continue;
        }
        let mut d = start;
        while face[d] == usize::MAX {
            face[d] = count;
            let back = d ^ 1;
            let r = &m.rot[tail(m, back)];
            d = r[(pos[back] + r.len() - 1) % r.len()];
        }
        count += 1;
    }
    (count, face)
}

fn connected(m: &Map, nv: usize) -> bool {
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &[a, b] in &m.ends {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let r = find(&mut parent, 0);
    (0..nv).all(|v| find(&mut parent, v) == r)
}

pub(crate) fn faces(c: &ChordComponent) -> Option<Faces> {
    let m = build(c).ok()?;
    let (_, face) = trace(&m);
    let top = face[2 * m.sky];
    let mut on_top = vec![false; c.boundary.len()];
    for (d, &f) in face.iter().enumerate() {
        let t = tail(&m, d);
        if f == top && (1..=c.boundary.len()).contains(&t) {
            on_top[t - 1] = true;
        }
    }
    Some(Faces { on_top })
}

/// Structural checks of one component's map.
pub(crate) fn check_map(c: &ChordComponent) -> Vec<DiagramViolation> {
    let m = match build(c) {
        Ok(m) => m,
        Err(v) => return v,
    };
    let mut out = Vec::new();
    for k in 0..c.interior.vertices.len() {
        if c.interior.degree(End::V(k)) == 0 {
            out.push(DiagramViolation::Isolated {
                component: c.name,
                vertex: k,
            });
        }
    }
    let nv = c.boundary.len() + 2 + c.interior.vertices.len();
    if !connected(&m, nv) {
        out.push(DiagramViolation::Floating { component: c.name });
        return out;
    }
    let (f, _) = trace(&m);
    if nv + f != m.ends.len() + 2 {
        out.push(DiagramViolation::NonPlanar { component: c.name });
    }
    out
}

pub(crate) fn close_positions(c: &ChordComponent) -> Vec<usize> {
    if !c.on_locus() || !c.sees_boundary() {
        return Vec::new();
    }
    let Some(f) = faces(c) else { return Vec::new() };
    (0..c.boundary.len())
        .filter(|&i| f.on_top[i] && c.interior.degree(End::B(i)) == 0)
        .collect()
}
