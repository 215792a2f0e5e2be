//! Canonical forms of edge-decorated trees, rooted at the centroid.

use crate::config::CreaseConfig;

/// An edge-decorated tree on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedTree {
    pub n: usize,
    pub edges: Vec<(usize, usize, u32)>,
}

impl DecoratedTree {
    pub fn from_config(cfg: &CreaseConfig) -> Self {
        let edges = cfg
            .ends()
            .into_iter()
            .zip(&cfg.curves)
            .map(|((a, b), c)| (a, b, c.corners))
            .collect();
        DecoratedTree {
            n: cfg.regions.len(),
            edges,
        }
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b, d) in &self.edges {
            adj[a].push((b, d));
            adj[b].push((a, d));
        }
        adj
    }

    /// One or two centroid vertices.
    pub fn centroids(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let n = self.n;
        // iterative post-order from vertex 0
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![0];
        parent[0] = 0;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &(u, _) in &adj[v] {
                if parent[u] == usize::MAX {
                    parent[u] = v;
                    stack.push(u);
                }
            }
        }
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if v != 0 {
                size[parent[v]] += size[v];
            }
        }
        let mut best = Vec::new();
        let mut best_load = usize::MAX;
        for v in 0..n {
            let mut load = n - size[v];
            for &(u, _) in &adj[v] {
                if u != v && parent[u] == v {
                    load = load.max(size[u]);
                }
            }
            if load < best_load {
                best_load = load;
                best = vec![v];
            } else if load == best_load {
                best.push(v);
            }
        }
        best
    }

    fn encode(&self, adj: &[Vec<(usize, u32)>], v: usize, from: usize) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&(u, _)| u != from)
            .map(|&(u, d)| format!("{d}{}", self.encode(adj, u, v)))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }

    /// Canonical string; equal strings iff isomorphic decorated trees.
    pub fn canonical(&self) -> String {
        self.canonical_rooting().0
    }

    fn canonical_rooting(&self) -> (String, usize) {
        let adj = self.adjacency();
        self.centroids()
            .into_iter()
            .map(|c| (self.encode(&adj, c, usize::MAX), c))
            .min()
            .unwrap()
    }

    /// New vertex ids in breadth-first order from the canonical root, children
    /// visited in canonical order, together with the discovery order of edges
    /// as indices into `self.edges`. Isomorphic inputs give the same pattern.
    pub fn canonical_numbering(&self) -> (Vec<usize>, Vec<usize>) {
        let adj = self.adjacency();
        let (_, root) = self.canonical_rooting();
        let mut edge_of = std::collections::HashMap::new();
        for (i, &(a, b, _)) in self.edges.iter().enumerate() {
            edge_of.insert((a.min(b), a.max(b)), i);
        }
        let mut new_id = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::from([(root, usize::MAX)]);
        new_id[root] = 0;
        let mut next = 1;
        let mut order = Vec::new();
        while let Some((v, from)) = queue.pop_front() {
            let mut kids: Vec<(String, usize)> = adj[v]
                .iter()
                .filter(|&&(u, _)| u != from)
                .map(|&(u, d)| (format!("{d}{}", self.encode(&adj, u, v)), u))
                .collect();
            kids.sort();
            for (_, u) in kids {
                new_id[u] = next;
                next += 1;
                order.push(edge_of[&(u.min(v), u.max(v))]);
                queue.push_back((u, v));
            }
        }
        (new_id, order)
    }

    /// Relabels vertices by [`Self::canonical_numbering`]; edges are listed
    /// parent first, in discovery order. Isomorphic inputs give identical output.
    pub fn canonical_relabel(&self) -> DecoratedTree {
        let (new_id, order) = self.canonical_numbering();
        let edges = order
            .into_iter()
            .map(|i| {
                let (a, b, d) = self.edges[i];
                let (p, c) = if new_id[a] < new_id[b] {
                    (a, b)
                } else {
                    (b, a)
                };
                (new_id[p], new_id[c], d)
            })
            .collect();
        DecoratedTree { n: self.n, edges }
    }
}

/// Canonical form of a configuration, decorated by corner counts.
pub fn canonical_form(cfg: &CreaseConfig) -> String {
    DecoratedTree::from_config(cfg).canonical()
}

/// Isomorphism of decorated trees. Both inputs are assumed valid.
pub fn config_isomorphic(a: &CreaseConfig, b: &CreaseConfig) -> bool {
    a.curves.len() == b.curves.len() && canonical_form(a) == canonical_form(b)
}
