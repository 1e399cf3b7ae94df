//! Independent reference computations for tests. Nothing here calls into the
//! crate's BFS or index code.

#![allow(dead_code)]

use myciel::Graph;

/// Floyd–Warshall over an adjacency matrix; `None` for unreachable pairs.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<u64>>> {
    let n = g.order();
    let mut d = vec![vec![None; n]; n];
    for (u, row) in d.iter_mut().enumerate() {
        row[u] = Some(0);
    }
    for &(u, v) in g.edges() {
        d[u][v] = Some(1);
        d[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

pub fn degrees(g: &Graph) -> Vec<u64> {
    let n = g.order();
    let mut deg = vec![0; n];
    for &(u, v) in g.edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg
}

/// (W, DD, Gut) by double loops over unordered pairs.
pub fn brute_indices(g: &Graph) -> (u64, u64, u64) {
    let d = floyd_warshall(g);
    let deg = degrees(g);
    let (mut w, mut dd, mut gut) = (0, 0, 0);
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            let duv = d[u][v].expect("connected");
            w += duv;
            dd += duv * (deg[u] + deg[v]);
            gut += duv * deg[u] * deg[v];
        }
    }
    (w, dd, gut)
}

pub fn brute_diameter(g: &Graph) -> u64 {
    floyd_warshall(g)
        .into_iter()
        .flatten()
        .map(|d| d.expect("connected"))
        .max()
        .unwrap_or(0)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Tries every vertex bijection.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.size() != b.size() {
        return false;
    }
    let mut perm: Vec<usize> = (0..a.order()).collect();
    loop {
        if a.edges().iter().all(|&(u, v)| b.has_edge(perm[u], perm[v])) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}
