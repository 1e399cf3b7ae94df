//! Test corpora: every labeled graph on a fixed vertex count, and seeded
//! streams of random connected graphs.

use crate::graph::{random_graph, Graph};

/// Every labeled graph on `n` vertices, one per subset of the `C(n, 2)`
/// vertex pairs, in subset-bitmask order. Intended for `n <= 7`.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(
        slots.len() < 32,
        "labeled enumeration on {n} vertices is too large"
    );
    (0u32..1 << slots.len()).map(move |mask| {
        let edges = slots
            .iter()
            .enumerate()
            .filter(|&(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &e)| e);
        Graph::new(n, edges).expect("slots are valid pairs")
    })
}

/// Connected labeled graphs with `min_n <= n <= max_n` vertices, by
/// increasing `n`.
pub fn connected_labeled(min_n: usize, max_n: usize) -> impl Iterator<Item = Graph> {
    (min_n..=max_n)
        .flat_map(labeled_graphs)
        .filter(Graph::is_connected)
}

/// `count` connected random graphs. Graph `k` has `2 + (k mod (max_n - 1))`
/// vertices and edge probability cycling through a fixed schedule; seeds start
/// at `seed` and advance past disconnected draws.
pub fn random_connected(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    const PROBS: [f64; 4] = [0.2, 0.35, 0.5, 0.8];
    assert!(max_n >= 2);
    let mut out = Vec::with_capacity(count);
    let mut state = seed;
    while out.len() < count {
        let k = out.len();
        let n = 2 + k % (max_n - 1);
        let p = PROBS[k % PROBS.len()];
        let g = random_graph(n, p, state);
        state = state.wrapping_add(1);
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}
