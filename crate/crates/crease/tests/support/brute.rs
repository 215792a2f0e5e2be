//! Brute-force oracle: Prüfer codes for labeled trees, an all-roots tree
//! string, and exact rational elimination for the region equations.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn prufer_tree(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in code {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

pub fn all_labeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let len = n - 2;
    let mut out = Vec::new();
    let mut code = vec![0usize; len];
    loop {
        out.push(prufer_tree(n, &code));
        let mut i = 0;
        while i < len {
            code[i] += 1;
            if code[i] < n {
                break;
            }
            code[i] = 0;
            i += 1;
        }
        if i == len {
            return out;
        }
    }
}

fn rooted_string(adj: &[Vec<usize>], v: usize, from: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != from)
        .map(|&u| rooted_string(adj, u, v))
        .collect();
    kids.sort();
    format!("[{}]", kids.concat())
}

/// Minimum rooted string over every root.
pub fn brute_form(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    (0..n)
        .map(|r| rooted_string(&adj, r, usize::MAX))
        .min()
        .unwrap()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Q(i128, i128);

impl Q {
    fn new(n: i128, d: i128) -> Q {
        let g = gcd(n, d).max(1);
        let s = if d < 0 { -1 } else { 1 };
        Q(s * n / g, s * d / g)
    }
    fn zero(self) -> bool {
        self.0 == 0
    }
    fn sub(self, o: Q) -> Q {
        Q::new(self.0 * o.1 - o.0 * self.1, self.1 * o.1)
    }
    fn mul(self, o: Q) -> Q {
        Q::new(self.0 * o.0, self.1 * o.1)
    }
    fn div(self, o: Q) -> Q {
        Q::new(self.0 * o.1, self.1 * o.0)
    }
}

/// Integer weights solving Σ_{c∋r} t_c = 2 − deg r, by Gauss–Jordan elimination.
pub fn brute_weights(n: usize, edges: &[(usize, usize)]) -> Option<Vec<i64>> {
    let k = edges.len();
    let mut deg = vec![0i128; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|r| {
            let mut row: Vec<Q> = edges
                .iter()
                .map(|&(a, b)| Q::new((a == r || b == r) as i128, 1))
                .collect();
            row.push(Q::new(2 - deg[r], 1));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(p) = (pivot_row..n).find(|&r| !m[r][col].zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let pv = m[pivot_row][col];
        for j in 0..=k {
            m[pivot_row][j] = m[pivot_row][j].div(pv);
        }
        for r in 0..n {
            if r != pivot_row && !m[r][col].zero() {
                let f = m[r][col];
                for j in 0..=k {
                    let v = m[pivot_row][j].mul(f);
                    m[r][j] = m[r][j].sub(v);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    for row in &m[pivot_row..] {
        if !row[k].zero() {
            return None;
        }
    }
    let mut t = vec![0i64; k];
    for (r, &col) in pivots.iter().enumerate() {
        let v = m[r][k];
        if v.1 != 1 {
            return None;
        }
        t[col] = v.0 as i64;
    }
    Some(t)
}

pub fn brute_counts(k: usize) -> (usize, usize) {
    let n = k + 1;
    let mut all = BTreeSet::new();
    let mut good = BTreeSet::new();
    for edges in all_labeled_trees(n) {
        let form = brute_form(n, &edges);
        if all.insert(form.clone()) && brute_weights(n, &edges).is_some() {
            good.insert(form);
        }
    }
    (all.len(), good.len())
}
