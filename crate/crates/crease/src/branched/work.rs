//! Editable copy of a trace graph with stable node keys.

use std::collections::{BTreeMap, BTreeSet};

use super::{ChordComponent, End, Interior};

#[derive(Clone, Debug)]
pub(crate) struct Work {
    /// Boundary keys in word order.
    pub bound: Vec<usize>,
    /// Interior keys in vertex order.
    pub verts: Vec<usize>,
    pub id: Vec<u32>,
    pub edges: Vec<Option<[usize; 2]>>,
    /// Counterclockwise edge list per key.
    pub rot: BTreeMap<usize, Vec<usize>>,
}

/// A connected piece of the interior graph.
#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub verts: Vec<usize>,
    pub edges: Vec<usize>,
    /// Boundary positions it attaches to, sorted.
    pub attach: Vec<usize>,
}

impl Piece {
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.verts.len() + self.attach.len()
    }

    pub fn span(&self) -> (usize, usize) {
        (self.attach[0], *self.attach.last().unwrap())
    }
}

impl Work {
    pub fn new() -> Self {
        Work {
            bound: Vec::new(),
            verts: Vec::new(),
            id: Vec::new(),
            edges: Vec::new(),
            rot: BTreeMap::new(),
        }
    }

    pub fn from_component(c: &ChordComponent) -> Self {
        let n = c.boundary.len();
        let key = |e: End| match e {
            End::B(i) => i,
            End::V(k) => n + k,
        };
        let mut w = Work {
            bound: (0..n).collect(),
            verts: (n..n + c.interior.vertices.len()).collect(),
            id: c
                .boundary
                .iter()
                .chain(&c.interior.vertices)
                .copied()
                .collect(),
            edges: c
                .interior
                .edges
                .iter()
                .map(|e| Some([key(e[0]), key(e[1])]))
                .collect(),
            rot: BTreeMap::new(),
        };
        for k in 0..w.id.len() {
            let v = if k < n { End::B(k) } else { End::V(k - n) };
            let r = match c.interior.rotation.get(&v) {
                Some(r) => r.clone(),
                None => w.incident_by_index(k),
            };
            if !r.is_empty() {
                w.rot.insert(k, r);
            }
        }
        w
    }

    fn incident_by_index(&self, k: usize) -> Vec<usize> {
        let mut r = Vec::new();
        for (e, x) in self.edges.iter().enumerate() {
            if let Some([a, b]) = x {
                if *a == k {
                    r.push(e);
                }
                if *b == k {
                    r.push(e);
                }
            }
        }
        r
    }

    /// Writes the graph back into `c`, keeping its name and membership.
    pub fn store(&self, c: &mut ChordComponent) {
        let mut end = BTreeMap::new();
        for (i, &k) in self.bound.iter().enumerate() {
            end.insert(k, End::B(i));
        }
        for (i, &k) in self.verts.iter().enumerate() {
            end.insert(k, End::V(i));
        }
        let mut renum = BTreeMap::new();
        let mut edges = Vec::new();
        for (e, x) in self.edges.iter().enumerate() {
            if let Some([a, b]) = x {
                renum.insert(e, edges.len());
                edges.push([end[a], end[b]]);
            }
        }
        let mut rotation = BTreeMap::new();
        for (k, r) in &self.rot {
            if r.len() >= 2 {
                if let Some(&v) = end.get(k) {
                    rotation.insert(v, r.iter().map(|e| renum[e]).collect());
                }
            }
        }
        c.boundary = self.bound.iter().map(|&k| self.id[k]).collect();
        c.interior = Interior {
            vertices: self.verts.iter().map(|&k| self.id[k]).collect(),
            edges,
            rotation,
        };
    }

    pub fn fresh(&mut self, id: u32) -> usize {
        self.id.push(id);
        self.id.len() - 1
    }

    pub fn push_boundary(&mut self, id: u32) -> usize {
        let k = self.fresh(id);
        self.bound.push(k);
        k
    }

    pub fn push_vertex(&mut self, id: u32) -> usize {
        let k = self.fresh(id);
        self.verts.push(k);
        k
    }

    pub fn is_boundary(&self, k: usize) -> bool {
        self.bound.contains(&k)
    }

    pub fn position(&self, k: usize) -> Option<usize> {
        self.bound.iter().position(|&x| x == k)
    }

    pub fn incident(&self, k: usize) -> &[usize] {
        self.rot.get(&k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn degree(&self, k: usize) -> usize {
        self.incident(k).len()
    }

    pub fn other_end(&self, e: usize, k: usize) -> usize {
        let [a, b] = self.edges[e].expect("live edge");
        if a == k {
            b
        } else {
            a
        }
    }

    /// Adds an edge at the end of both rotation lists.
    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        let e = self.edges.len();
        self.edges.push(Some([a, b]));
        self.rot.entry(a).or_default().push(e);
        self.rot.entry(b).or_default().push(e);
        e
    }

    pub fn remove_edge(&mut self, e: usize) {
        if let Some([a, b]) = self.edges[e].take() {
            for k in [a, b] {
                if let Some(r) = self.rot.get_mut(&k) {
                    if let Some(i) = r.iter().position(|&x| x == e) {
                        r.remove(i);
                    }
                }
            }
        }
    }

    pub fn remove_node(&mut self, k: usize) {
        for e in self.incident(k).to_vec() {
            self.remove_edge(e);
        }
        self.rot.remove(&k);
        self.bound.retain(|&x| x != k);
        self.verts.retain(|&x| x != k);
    }

    /// Moves the `from` end of edge `e` to `to`, appending it there.
    pub fn move_end(&mut self, e: usize, from: usize, to: usize) {
        let x = self.edges[e].as_mut().expect("live edge");
        if x[0] == from {
            x[0] = to;
        } else {
            x[1] = to;
        }
        if let Some(r) = self.rot.get_mut(&from) {
            if let Some(i) = r.iter().position(|&y| y == e) {
                r.remove(i);
            }
        }
        self.rot.entry(to).or_default().push(e);
    }

    /// Replaces an interior vertex of degree two by a single edge.
    fn smooth(&mut self, v: usize) -> bool {
        let inc = self.incident(v).to_vec();
        if inc.len() != 2 || inc[0] == inc[1] {
            return false;
        }
        let x = self.other_end(inc[0], v);
        let y = self.other_end(inc[1], v);
        let e = self.edges.len();
        self.edges.push(Some([x, y]));
        let slot = |r: &mut Vec<usize>, old: usize| {
            if let Some(i) = r.iter().position(|&z| z == old) {
                r[i] = e;
            }
        };
        slot(self.rot.get_mut(&x).unwrap(), inc[0]);
        slot(self.rot.get_mut(&y).unwrap(), inc[1]);
        self.edges[inc[0]] = None;
        self.edges[inc[1]] = None;
        self.rot.remove(&v);
        self.verts.retain(|&z| z != v);
        true
    }

    /// Deletes every instance of the given double points. Edges at deleted
    /// boundary instances go with them; a deleted interior vertex left with
    /// two edges is smoothed, otherwise its edges go too. Interior vertices
    /// left without edges are dropped.
    pub fn delete_ids(&mut self, ids: &BTreeSet<u32>) {
        for k in self.bound.clone() {
            if ids.contains(&self.id[k]) {
                self.remove_node(k);
            }
        }
        for k in self.verts.clone() {
            if ids.contains(&self.id[k]) && !self.smooth(k) {
                self.remove_node(k);
            }
        }
        for k in self.verts.clone() {
            if self.degree(k) == 0 {
                self.remove_node(k);
            }
        }
    }

    /// Connected pieces of the interior graph that carry at least one edge.
    pub fn pieces(&self) -> Vec<Piece> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let nodes: Vec<usize> = self.bound.iter().chain(&self.verts).copied().collect();
        for &s in &nodes {
            if seen.contains(&s) || self.degree(s) == 0 {
                continue;
            }
            let mut stack = vec![s];
            let mut members = BTreeSet::new();
            let mut edges = BTreeSet::new();
            seen.insert(s);
            while let Some(k) = stack.pop() {
                members.insert(k);
                for &e in self.incident(k) {
                    edges.insert(e);
                    let o = self.other_end(e, k);
                    if seen.insert(o) {
                        stack.push(o);
                    }
                }
            }
            let mut attach: Vec<usize> = members.iter().filter_map(|&k| self.position(k)).collect();
            attach.sort();
            let verts = members
                .iter()
                .copied()
                .filter(|k| !self.is_boundary(*k))
                .collect();
            out.push(Piece {
                verts,
                edges: edges.into_iter().collect(),
                attach,
            });
        }
        out
    }

    /// Boundary positions reachable from `k` through `e` without passing `k`.
    pub fn reach(&self, k: usize, e: usize) -> Vec<usize> {
        let start = self.other_end(e, k);
        let mut seen = BTreeSet::from([k, start]);
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            if let Some(p) = self.position(x) {
                out.push(p);
            }
            for &f in self.incident(x) {
                if f == e {
                    continue;
                }
                let o = self.other_end(f, x);
                if seen.insert(o) {
                    stack.push(o);
                }
            }
        }
        out.sort();
        out
    }

    /// Orders the edges at a boundary node counterclockwise, from the one
    /// reaching furthest right.
    pub fn sort_boundary_rotation(&mut self, k: usize) {
        let mut r = self.incident(k).to_vec();
        let keyed: BTreeMap<usize, usize> = r
            .iter()
            .map(|&e| (e, self.reach(k, e).last().copied().unwrap_or(0)))
            .collect();
        r.sort_by_key(|e| std::cmp::Reverse(keyed[e]));
        self.rot.insert(k, r);
    }

    /// Whether the gap before position `g` lies under some piece.
    pub fn gap_covered(&self, g: usize) -> bool {
        self.pieces().iter().any(|p| {
            let (a, b) = p.span();
            a < g && g <= b
        })
    }
}
