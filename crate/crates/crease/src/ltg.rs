//! Labeled tree graphs, black-square labelings and (★) height layouts.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::DecoratedTree;
use crate::config::CreaseConfig;
use crate::weighting::{verify_weighting, Weighting};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LtgVertex {
    pub region: String,
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LtgEdge {
    pub curve: String,
    pub weight: i64,
    pub ends: (usize, usize),
}

/// Regions as vertices labeled by χ, curves as edges labeled by weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ltg {
    pub vertices: Vec<LtgVertex>,
    pub edges: Vec<LtgEdge>,
    /// Edge indices in canonical order.
    pub canonical_order: Vec<usize>,
    /// Vertex where the canonical order starts.
    pub root: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LtgError {
    #[error("configuration has corners")]
    CorneredConfig,
    #[error("weighting does not satisfy the region equations")]
    BadWeighting,
    #[error("no consistent labeling exists")]
    NoLabelingFound,
    #[error("labeling is not consistent")]
    InvalidLabeling,
}

impl Ltg {
    /// Incident (neighbour, edge) pairs per vertex.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            adj[edge.ends.0].push((edge.ends.1, e));
            adj[edge.ends.1].push((edge.ends.0, e));
        }
        adj
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn edge_index(&self, curve: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.curve == curve)
    }
}

pub fn build_ltg(cfg: &CreaseConfig, w: &Weighting) -> Result<Ltg, LtgError> {
    if !cfg.is_corner_free() {
        return Err(LtgError::CorneredConfig);
    }
    verify_weighting(cfg, w).map_err(|_| LtgError::BadWeighting)?;
    let ts = w.singles(cfg).ok_or(LtgError::BadWeighting)?;
    let vertices = cfg
        .regions
        .iter()
        .enumerate()
        .map(|(r, reg)| LtgVertex {
            region: reg.id.clone(),
            chi: cfg.euler(r),
        })
        .collect();
    let edges: Vec<LtgEdge> = cfg
        .ends()
        .into_iter()
        .zip(&cfg.curves)
        .zip(ts)
        .map(|((ends, c), weight)| LtgEdge {
            curve: c.id.clone(),
            weight,
            ends,
        })
        .collect();
    let tree = DecoratedTree {
        n: cfg.regions.len(),
        edges: edges.iter().map(|e| (e.ends.0, e.ends.1, 0)).collect(),
    };
    let (ids, canonical_order) = tree.canonical_numbering();
    let root = ids.iter().position(|&i| i == 0).unwrap();
    Ok(Ltg {
        vertices,
        edges,
        canonical_order,
        root,
    })
}

/// Edges carrying a black square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub squares: Vec<bool>,
}

impl Labeling {
    pub fn curves<'a>(&self, ltg: &'a Ltg) -> Vec<&'a str> {
        (0..self.squares.len())
            .filter(|&e| self.squares[e])
            .map(|e| ltg.edges[e].curve.as_str())
            .collect()
    }

    pub fn from_curves(ltg: &Ltg, curves: &[&str]) -> Option<Labeling> {
        let mut squares = vec![false; ltg.edges.len()];
        for c in curves {
            squares[ltg.edge_index(c)?] = true;
        }
        Some(Labeling { squares })
    }

    /// Every vertex with χ ≤ 0 touches exactly one square.
    pub fn is_consistent(&self, ltg: &Ltg) -> bool {
        let adj = ltg.adjacency();
        self.squares.len() == ltg.edges.len()
            && ltg.vertices.iter().enumerate().all(|(v, vert)| {
                vert.chi > 0 || adj[v].iter().filter(|&&(_, e)| self.squares[e]).count() == 1
            })
    }

    /// The square edge of `v`, if any.
    pub fn square_at(&self, ltg: &Ltg, v: usize) -> Option<usize> {
        ltg.adjacency()[v]
            .iter()
            .map(|&(_, e)| e)
            .find(|&e| self.squares[e])
    }
}

/// All consistent labelings, in increasing order of their indicator vectors
/// over the canonical edge order (unmarked before marked).
pub fn all_labelings(ltg: &Ltg) -> Vec<Labeling> {
    let mut out = Vec::new();
    search(ltg, usize::MAX, &mut out);
    out
}

fn search(ltg: &Ltg, limit: usize, out: &mut Vec<Labeling>) {
    let n = ltg.vertices.len();
    let order = &ltg.canonical_order;
    // remaining[v]: canonical positions of v's edges not yet decided
    let mut last_pos = vec![0usize; n];
    for (pos, &e) in order.iter().enumerate() {
        let (a, b) = ltg.edges[e].ends;
        last_pos[a] = pos;
        last_pos[b] = pos;
    }
    let mut count = vec![0u32; n];
    let mut squares = vec![false; ltg.edges.len()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        ltg: &Ltg,
        pos: usize,
        last_pos: &[usize],
        count: &mut Vec<u32>,
        squares: &mut [bool],
        limit: usize,
        out: &mut Vec<Labeling>,
    ) {
        if out.len() >= limit {
            return;
        }
        if pos == ltg.canonical_order.len() {
            out.push(Labeling {
                squares: squares.to_vec(),
            });
            return;
        }
        let e = ltg.canonical_order[pos];
        let (a, b) = ltg.edges[e].ends;
        let needs = |v: usize, c: &[u32]| ltg.vertices[v].chi <= 0 && c[v] == 0;
        for mark in [false, true] {
            if mark {
                if [a, b]
                    .iter()
                    .any(|&v| ltg.vertices[v].chi <= 0 && count[v] == 1)
                {
                    continue;
                }
                count[a] += 1;
                count[b] += 1;
                squares[e] = true;
            }
            // a vertex whose last edge is this one must be satisfied now
            let dead = [a, b]
                .iter()
                .any(|&v| last_pos[v] == pos && needs(v, count));
            if !dead {
                rec(ltg, pos + 1, last_pos, count, squares, limit, out);
            }
            if mark {
                count[a] -= 1;
                count[b] -= 1;
                squares[e] = false;
            }
        }
    }
    rec(ltg, 0, &last_pos, &mut count, &mut squares, limit, out);
}

/// Candidate labelings from the alternating edge-path procedure, trying
/// every start vertex, initial square and path end.
pub fn alternating_path_labelings(ltg: &Ltg) -> Vec<Labeling> {
    let mut out: Vec<Labeling> = Vec::new();
    let all: Vec<usize> = (0..ltg.vertices.len()).collect();
    let mut squares = vec![false; ltg.edges.len()];
    decompose_all(ltg, &all, &mut squares, &mut out, 4096);
    out.retain(|l| l.is_consistent(ltg));
    out.sort_by_key(|a| key(ltg, a));
    out.dedup();
    out
}

fn key(ltg: &Ltg, l: &Labeling) -> Vec<bool> {
    ltg.canonical_order.iter().map(|&e| l.squares[e]).collect()
}

/// Sign-alternating simple paths from `v` inside `comp` (a vertex set).
fn alternating_paths(ltg: &Ltg, comp: &[bool], v: usize) -> Vec<Vec<usize>> {
    let adj = ltg.adjacency();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(v, vec![])];
    while let Some((u, path)) = stack.pop() {
        if !path.is_empty() {
            out.push(path.clone());
        }
        for &(w, e) in &adj[u] {
            if !comp[w] || path.contains(&e) || path.last().map(|&p| ltg.other_end(p, u)) == Some(w)
            {
                continue;
            }
            if let Some(&p) = path.last() {
                if (ltg.edges[p].weight > 0) == (ltg.edges[e].weight > 0) {
                    continue;
                }
            }
            let mut next = path.clone();
            next.push(e);
            stack.push((w, next));
        }
    }
    out
}

fn decompose_all(
    ltg: &Ltg,
    comp_vertices: &[usize],
    squares: &mut [bool],
    out: &mut Vec<Labeling>,
    budget: usize,
) {
    if out.len() >= budget {
        return;
    }
    let adj = ltg.adjacency();
    let mut in_comp = vec![false; ltg.vertices.len()];
    for &v in comp_vertices {
        in_comp[v] = true;
    }
    let comps = components(ltg, &in_comp);
    let Some(pos) = comps.iter().position(|c| c.len() > 1) else {
        out.push(Labeling {
            squares: squares.to_vec(),
        });
        return;
    };
    let comp = &comps[pos];
    let mut mask = vec![false; ltg.vertices.len()];
    for &v in comp {
        mask[v] = true;
    }
    // a vertex is an endpoint candidate if inside the component its edges
    // are all of one sign, or all +1 save one negative edge
    let local = |v: usize| {
        adj[v]
            .iter()
            .filter(|&&(w, _)| mask[w])
            .map(|&(_, e)| e)
            .collect::<Vec<_>>()
    };
    let is_end = |v: usize| {
        let es = local(v);
        let neg = es.iter().filter(|&&e| ltg.edges[e].weight < 0).count();
        let plus_one = es.iter().filter(|&&e| ltg.edges[e].weight == 1).count();
        neg == es.len() || neg == 0 || (neg == 1 && plus_one == es.len() - 1)
    };
    for &v in comp {
        if !is_end(v) {
            continue;
        }
        for path in alternating_paths(ltg, &mask, v) {
            let mut walk = vec![v];
            for &e in &path {
                walk.push(ltg.other_end(e, *walk.last().unwrap()));
            }
            let end = *walk.last().unwrap();
            if !is_end(end) {
                continue;
            }
            for first in [true, false] {
                let mut trial = squares.to_vec();
                for (i, &e) in path.iter().enumerate() {
                    trial[e] = (i % 2 == 0) == first;
                }
                // close off the far end with a +1 edge when it lacks a square
                let mut ok = true;
                let touches = |t: &[bool], x: usize| adj[x].iter().any(|&(_, e)| t[e]);
                for &x in [v, end].iter() {
                    if ltg.vertices[x].chi <= 0 && !touches(&trial, x) {
                        match local(x)
                            .into_iter()
                            .find(|&e| ltg.edges[e].weight == 1 && !path.contains(&e))
                        {
                            Some(e) => trial[e] = true,
                            None => ok = false,
                        }
                    }
                }
                if !ok {
                    continue;
                }
                // remove the link of the path
                let mut rest = mask.clone();
                for &x in &walk {
                    rest[x] = false;
                }
                let mut remaining: Vec<usize> = comps
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != pos)
                    .flat_map(|(_, c)| c.clone())
                    .collect();
                remaining.extend(comp.iter().copied().filter(|&x| rest[x]));
                // drop link edges by marking vertices adjacent to the walk as
                // belonging to separate components is implicit: the walk is gone
                decompose_all(ltg, &remaining, &mut trial, out, budget);
                if out.len() >= budget {
                    return;
                }
            }
        }
    }
}

fn components(ltg: &Ltg, mask: &[bool]) -> Vec<Vec<usize>> {
    let adj = ltg.adjacency();
    let mut seen = vec![false; mask.len()];
    let mut out = Vec::new();
    for s in 0..mask.len() {
        if !mask[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &(w, _) in &adj[u] {
                if mask[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// The labeling used downstream: the least, by indicator vector over the
/// canonical edge order, among the outputs of the alternating edge-path
/// procedure. Falls back to the least labeling overall when the procedure
/// yields nothing.
pub fn black_square_labeling(ltg: &Ltg) -> Result<Labeling, LtgError> {
    let chosen = match alternating_path_labelings(ltg).into_iter().next() {
        Some(l) => l,
        None => {
            let mut exhaustive = Vec::new();
            search(ltg, 1, &mut exhaustive);
            exhaustive
                .into_iter()
                .next()
                .ok_or(LtgError::NoLabelingFound)?
        }
    };
    assert!(chosen.is_consistent(ltg), "labeling postcondition");
    Ok(chosen)
}

/// Which half of (★)-2 a vertex satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StarSide {
    /// Positive edges reach up, negative edges down.
    A,
    /// Positive edges reach down, negative edges up.
    B,
}

/// A black-square edge-path: vertices in increasing height.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LtgLayout {
    /// Integer level per vertex.
    pub heights: Vec<i64>,
    /// [min, max] of endpoint heights per edge.
    pub intervals: Vec<(i64, i64)>,
    /// Sign of z(ends.1) − z(ends.0) per edge.
    pub slopes: Vec<i8>,
    pub sides: Vec<StarSide>,
    /// Edge-paths in the order they were stacked.
    pub paths: Vec<EdgePath>,
}

/// Splits a consistent labeling into sign-alternating edge-paths. Squares are
/// joined through unmarked connector edges whose sign differs from the
/// squares at both ends; vertices on no path form one-vertex paths.
pub fn edge_paths(ltg: &Ltg, lab: &Labeling) -> Vec<EdgePath> {
    let n = ltg.vertices.len();
    let adj = ltg.adjacency();
    let sq: Vec<Option<usize>> = (0..n).map(|v| lab.square_at(ltg, v)).collect();
    let mut used = vec![false; ltg.edges.len()];
    let mut deg = vec![0usize; n];
    for e in 0..ltg.edges.len() {
        if lab.squares[e] {
            used[e] = true;
            deg[ltg.edges[e].ends.0] += 1;
            deg[ltg.edges[e].ends.1] += 1;
        }
    }
    for &e in &ltg.canonical_order {
        if used[e] {
            continue;
        }
        let (a, b) = ltg.edges[e].ends;
        let s = ltg.edges[e].weight > 0;
        let fits = |v: usize, d: &[usize]| {
            d[v] == 1
                && ltg.vertices[v].chi <= 0
                && sq[v].is_some_and(|q| (ltg.edges[q].weight > 0) != s)
        };
        if fits(a, &deg) && fits(b, &deg) {
            used[e] = true;
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut starts: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    starts.sort_by_key(|&v| deg[v]);
    for s in starts {
        if seen[s] {
            continue;
        }
        let mut vertices = vec![s];
        let mut edges = Vec::new();
        seen[s] = true;
        let mut cur = s;
        while let Some(&(w, e)) = adj[cur].iter().find(|&&(w, e)| used[e] && !seen[w]) {
            seen[w] = true;
            vertices.push(w);
            edges.push(e);
            cur = w;
        }
        out.push(EdgePath { vertices, edges });
    }
    out
}

/// Two-colours the tree from `root` (side A) and returns each vertex's side.
fn sides(ltg: &Ltg, root: usize) -> Vec<StarSide> {
    let adj = ltg.adjacency();
    let mut side = vec![None; ltg.vertices.len()];
    side[root] = Some(StarSide::A);
    let mut q = VecDeque::from([root]);
    while let Some(v) = q.pop_front() {
        for &(w, _) in &adj[v] {
            if side[w].is_none() {
                side[w] = Some(if side[v] == Some(StarSide::A) {
                    StarSide::B
                } else {
                    StarSide::A
                });
                q.push_back(w);
            }
        }
    }
    side.into_iter().map(|s| s.unwrap()).collect()
}

/// Whether `w` must sit above `v` along edge `e` given `v`'s side.
fn goes_up(ltg: &Ltg, e: usize, side_v: StarSide) -> bool {
    (ltg.edges[e].weight > 0) == (side_v == StarSide::A)
}

/// Heights from the edge-path decomposition: the first path is stacked in
/// order, and every later path is inserted as a block right next to the
/// vertex it hangs from, on the side its linking edge demands. When that
/// vertex has a path edge of the same sign as the linking edge, the block lies
/// inside that edge's height interval.
pub fn layout_ltg(ltg: &Ltg, lab: &Labeling) -> Result<LtgLayout, LtgError> {
    if !lab.is_consistent(ltg) {
        return Err(LtgError::InvalidLabeling);
    }
    let n = ltg.vertices.len();
    let adj = ltg.adjacency();
    let side = sides(ltg, ltg.root);
    let mut paths = edge_paths(ltg, lab);
    // orient every path upward
    for p in &mut paths {
        if !p.edges.is_empty() && !goes_up(ltg, p.edges[0], side[p.vertices[0]]) {
            p.vertices.reverse();
            p.edges.reverse();
        }
    }
    let mut path_of = vec![0usize; n];
    for (i, p) in paths.iter().enumerate() {
        for &v in &p.vertices {
            path_of[v] = i;
        }
    }
    let first = path_of[ltg.root];
    let mut order: Vec<usize> = paths[first].vertices.clone();
    let mut placed = vec![false; paths.len()];
    placed[first] = true;
    let mut stacked = vec![first];
    let mut queue = VecDeque::from([first]);
    let canon_pos: Vec<usize> = {
        let mut p = vec![0; ltg.edges.len()];
        for (i, &e) in ltg.canonical_order.iter().enumerate() {
            p[e] = i;
        }
        p
    };
    while let Some(pi) = queue.pop_front() {
        let mut links: Vec<(usize, usize, usize)> = Vec::new();
        for &v in &paths[pi].vertices {
            for &(w, e) in &adj[v] {
                if !placed[path_of[w]] {
                    links.push((canon_pos[e], v, e));
                }
            }
        }
        links.sort();
        for (_, v, e) in links {
            let w = ltg.other_end(e, v);
            let qi = path_of[w];
            if placed[qi] {
                continue;
            }
            placed[qi] = true;
            let at = order.iter().position(|&x| x == v).unwrap();
            let ins = if goes_up(ltg, e, side[v]) { at + 1 } else { at };
            let block = paths[qi].vertices.clone();
            order.splice(ins..ins, block);
            stacked.push(qi);
            queue.push_back(qi);
        }
    }
    let mut heights = vec![0i64; n];
    for (z, &v) in order.iter().enumerate() {
        heights[v] = z as i64;
    }
    let layout = finish(
        ltg,
        heights,
        side,
        stacked.into_iter().map(|i| paths[i].clone()).collect(),
    );
    assert!(verify_star(ltg, &layout).is_ok(), "(★) postcondition");
    Ok(layout)
}

fn finish(ltg: &Ltg, heights: Vec<i64>, sides: Vec<StarSide>, paths: Vec<EdgePath>) -> LtgLayout {
    let intervals = ltg
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (heights[e.ends.0], heights[e.ends.1]);
            (a.min(b), a.max(b))
        })
        .collect();
    let slopes = ltg
        .edges
        .iter()
        .map(|e| (heights[e.ends.1] - heights[e.ends.0]).signum() as i8)
        .collect();
    LtgLayout {
        heights,
        intervals,
        slopes,
        sides,
        paths,
    }
}

/// Layout from explicit heights, for checking hand-made stackings.
pub fn layout_from_heights(ltg: &Ltg, heights: Vec<i64>) -> LtgLayout {
    let side = sides(ltg, ltg.root);
    finish(ltg, heights, side, Vec::new())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StarViolation {
    /// (★)-0
    SharedHeight(usize, usize),
    /// (★)-1
    FlatEdge(usize),
    /// (★)-2
    MixedVertex(usize),
    /// Both ends of an edge satisfy the same half of (★)-2.
    SameSide(usize),
}

pub fn verify_star(ltg: &Ltg, layout: &LtgLayout) -> Result<(), Vec<StarViolation>> {
    let mut out = Vec::new();
    let n = ltg.vertices.len();
    for u in 0..n {
        for v in u + 1..n {
            if layout.heights[u] == layout.heights[v] {
                out.push(StarViolation::SharedHeight(u, v));
            }
        }
    }
    for (e, edge) in ltg.edges.iter().enumerate() {
        if layout.heights[edge.ends.0] == layout.heights[edge.ends.1] {
            out.push(StarViolation::FlatEdge(e));
        }
    }
    let adj = ltg.adjacency();
    let side_of = |v: usize| -> Option<StarSide> {
        let z = layout.heights[v];
        let a = adj[v]
            .iter()
            .all(|&(_, e)| (layout.intervals[e].0 >= z) == (ltg.edges[e].weight > 0));
        let b = adj[v]
            .iter()
            .all(|&(_, e)| (layout.intervals[e].1 <= z) == (ltg.edges[e].weight > 0));
        match (a, b) {
            (true, false) => Some(StarSide::A),
            (false, true) => Some(StarSide::B),
            _ => None,
        }
    };
    let found: Vec<Option<StarSide>> = (0..n).map(side_of).collect();
    for v in 0..n {
        if found[v].is_none() {
            out.push(StarViolation::MixedVertex(v));
        }
    }
    for (e, edge) in ltg.edges.iter().enumerate() {
        if let (Some(x), Some(y)) = (found[edge.ends.0], found[edge.ends.1]) {
            if x == y {
                out.push(StarViolation::SameSide(e));
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}
