//! Simple undirected graphs on vertices `0..n`, the standard families used
//! throughout the crate, complements and the Mycielskian construction.
//!
//! Graphs are immutable once built. Every constructor normalizes edges to
//! `(u, v)` with `u < v`, drops duplicates and rejects loops or endpoints
//! outside `0..n`.

use std::collections::VecDeque;
use std::fmt;

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge ({0}, {0}) is not allowed in a simple graph")]
    Loop(usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("invalid {family} parameters: {reason}")]
    InvalidFamily {
        family: &'static str,
        reason: String,
    },
}

/// A finite simple undirected graph.
///
/// Equality is labeled equality: same vertex count and same edge set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// Sorted, deduplicated, each pair with `u < v`.
    edges: Vec<(usize, usize)>,
    /// Sorted neighbour lists.
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an arbitrary edge list.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        Ok(Self::from_normalized(n, normalized))
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, Vec::new())
    }

    // Callers guarantee u < v < n for every pair.
    fn from_normalized(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        self.adj
            .get(v)
            .map(Vec::len)
            .ok_or(GraphError::VertexOutOfRange { v, n: self.n })
    }

    /// Degrees of all vertices, indexed by vertex id.
    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Returns false for out-of-range or equal endpoints.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// BFS reachability from vertex 0. Graphs with zero or one vertex are
    /// connected.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    pub fn complement(&self) -> Graph {
        let mut edges = Vec::with_capacity(pairs(self.n) - self.size());
        for u in 0..self.n {
            let mut present = self.adj[u].iter().peekable();
            for v in u + 1..self.n {
                while present.next_if(|&&w| w < v).is_some() {}
                if present.next_if_eq(&&v).is_none() {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_normalized(self.n, edges)
    }

    /// The Mycielskian on `2n + 1` vertices: originals keep ids `0..n`,
    /// shadow `i` is `n + i` and the apex is `2n`.
    pub fn mycielskian(&self) -> Graph {
        let n = self.n;
        let mut edges = Vec::with_capacity(3 * self.size() + n);
        for &(u, v) in &self.edges {
            edges.push((u, v));
            edges.push((u, n + v));
            edges.push((v, n + u));
        }
        edges.extend((0..n).map(|i| (n + i, 2 * n)));
        Graph::from_normalized(2 * n + 1, edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

pub(crate) fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The position of a vertex in a Mycielskian-shaped graph built from a base
/// graph on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexRole {
    Original(usize),
    Shadow(usize),
    Apex,
}

impl VertexRole {
    /// Vertex id under the fixed labeling `Original(i) = i`,
    /// `Shadow(i) = n + i`, `Apex = 2n`.
    pub fn index(self, n: usize) -> Result<usize, GraphError> {
        match self {
            VertexRole::Original(i) if i < n => Ok(i),
            VertexRole::Shadow(i) if i < n => Ok(n + i),
            VertexRole::Apex => Ok(2 * n),
            VertexRole::Original(i) | VertexRole::Shadow(i) => {
                Err(GraphError::VertexOutOfRange { v: i, n })
            }
        }
    }

    pub fn from_index(n: usize, idx: usize) -> Result<Self, GraphError> {
        match idx {
            i if i < n => Ok(VertexRole::Original(i)),
            i if i < 2 * n => Ok(VertexRole::Shadow(i - n)),
            i if i == 2 * n => Ok(VertexRole::Apex),
            v => Err(GraphError::VertexOutOfRange { v, n: 2 * n + 1 }),
        }
    }

    /// All `2n + 1` roles in vertex-id order.
    pub fn all(n: usize) -> impl Iterator<Item = VertexRole> {
        (0..n)
            .map(VertexRole::Original)
            .chain((0..n).map(VertexRole::Shadow))
            .chain(std::iter::once(VertexRole::Apex))
    }
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexRole::Original(i) => write!(f, "v{i}"),
            VertexRole::Shadow(i) => write!(f, "x{i}"),
            VertexRole::Apex => f.write_str("x"),
        }
    }
}

/// Which derived graph an analysis runs on: the Mycielskian or its
/// complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Mu,
    MuBar,
}

impl Target {
    pub fn build(self, g: &Graph) -> Graph {
        match self {
            Target::Mu => g.mycielskian(),
            Target::MuBar => g.mycielskian().complement(),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Target::Mu => "mu",
            Target::MuBar => "mu_bar",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Graph families understood by [`generate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Path,
    Cycle,
    Star,
    Complete,
    /// Erdős–Rényi `G(n, p)`, see [`random_graph`].
    Random {
        p: f64,
        seed: u64,
    },
}

/// Canonical labeled members of each family: paths use edges `{i, i+1}`,
/// cycles add `{0, n-1}`, stars are centered at 0.
pub fn generate(family: Family, n: usize) -> Result<Graph, GraphError> {
    let invalid = |family, reason: &str| GraphError::InvalidFamily {
        family,
        reason: reason.to_string(),
    };
    match family {
        Family::Path | Family::Star | Family::Complete | Family::Random { .. } if n == 0 => {
            Err(invalid(family_name(family), "n must be at least 1"))
        }
        Family::Path => Ok(Graph::from_normalized(
            n,
            (1..n).map(|i| (i - 1, i)).collect(),
        )),
        Family::Cycle => {
            if n < 3 {
                return Err(invalid("cycle", "n must be at least 3"));
            }
            let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            edges.push((0, n - 1));
            Ok(Graph::from_normalized(n, edges))
        }
        Family::Star => Ok(Graph::from_normalized(n, (1..n).map(|i| (0, i)).collect())),
        Family::Complete => Ok(Graph::from_normalized(
            n,
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect(),
        )),
        Family::Random { p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid("random", "p must lie in [0, 1]"));
            }
            Ok(random_graph(n, p, seed))
        }
    }
}

fn family_name(family: Family) -> &'static str {
    match family {
        Family::Path => "path",
        Family::Cycle => "cycle",
        Family::Star => "star",
        Family::Complete => "complete",
        Family::Random { .. } => "random",
    }
}

/// `G(n, p)` from a ChaCha8 stream seeded with `seed_from_u64(seed)`.
///
/// Pairs are visited in lexicographic order `(0,1), (0,2), ..., (n-2,n-1)`.
/// For each pair one `u64` is drawn; its top 53 bits scaled by `2^-53` give
/// a uniform value in `[0, 1)` and the edge is kept when that value is below
/// `p`. ChaCha8 output is fixed by its algorithm, so the same `(n, p, seed)`
/// yields the same graph on every platform.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 / (1u64 << 53) as f64;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let draw = (rng.next_u64() >> 11) as f64 * scale;
            if draw < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_normalized(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn build_graph_normalizes_and_dedups() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        assert_eq!(p3.size(), 2);

        let k2_plus = g(3, &[(0, 1), (1, 0)]);
        assert_eq!(k2_plus.size(), 1);
        assert_eq!(k2_plus.edges(), &[(0, 1)]);
        assert_eq!(k2_plus.degree(2), Ok(0));
    }

    #[test]
    fn build_graph_rejects_bad_edges() {
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::EndpointOutOfRange { u: 0, v: 2, n: 2 })
        );
        assert_eq!(Graph::new(2, [(1, 1)]), Err(GraphError::Loop(1)));
    }

    #[test]
    fn degrees() {
        let p3 = generate(Family::Path, 3).unwrap();
        assert_eq!(p3.degree(1), Ok(2));
        assert_eq!(generate(Family::Complete, 4).unwrap().degree(0), Ok(3));
        assert_eq!(generate(Family::Star, 4).unwrap().degree(0), Ok(3));
        assert_eq!(
            p3.degree(3),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        );
    }

    #[test]
    fn complements() {
        let k3 = generate(Family::Complete, 3).unwrap();
        assert_eq!(k3.complement(), Graph::empty(3));

        let p3 = generate(Family::Path, 3).unwrap();
        assert_eq!(p3.complement().edges(), &[(0, 2)]);

        let c4 = generate(Family::Cycle, 4).unwrap();
        assert_eq!(c4.complement().edges(), &[(0, 2), (1, 3)]);
        assert_eq!(Graph::empty(0).complement(), Graph::empty(0));
    }

    #[test]
    fn mycielskian_of_p3() {
        let p3 = generate(Family::Path, 3).unwrap();
        let mu = p3.mycielskian();
        assert_eq!(mu.order(), 7);
        assert_eq!(mu.size(), 9);
        let v0 = VertexRole::Original(0).index(3).unwrap();
        let x0 = VertexRole::Shadow(0).index(3).unwrap();
        let x1 = VertexRole::Shadow(1).index(3).unwrap();
        assert!(mu.has_edge(v0, x1));
        assert!(!mu.has_edge(x0, x1));
        assert_eq!(mu.degree(6), Ok(3));
    }

    #[test]
    fn mycielskian_of_k1_is_p3() {
        let mu = Graph::empty(1).mycielskian();
        assert_eq!(mu.edges(), &[(1, 2)]);
        assert_eq!(mu.order(), 3);
    }

    #[test]
    fn connectivity() {
        assert!(generate(Family::Path, 3).unwrap().is_connected());
        assert!(!g(4, &[(0, 1), (2, 3)]).is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(Graph::empty(0).is_connected());
        assert!(!Graph::empty(2).is_connected());
    }

    #[test]
    fn families() {
        assert_eq!(generate(Family::Cycle, 4).unwrap().size(), 4);
        assert_eq!(generate(Family::Complete, 4).unwrap().size(), 6);
        assert!(generate(Family::Cycle, 2).is_err());
        assert!(generate(Family::Path, 0).is_err());
        assert!(generate(Family::Random { p: 1.5, seed: 0 }, 4).is_err());
        assert_eq!(
            generate(Family::Random { p: 1.0, seed: 3 }, 6)
                .unwrap()
                .size(),
            15
        );
        assert_eq!(
            generate(Family::Random { p: 0.0, seed: 3 }, 6)
                .unwrap()
                .size(),
            0
        );
    }

    #[test]
    fn random_is_deterministic() {
        let fam = Family::Random { p: 0.5, seed: 7 };
        let a = generate(fam, 20).unwrap();
        let b = generate(fam, 20).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate(Family::Random { p: 0.5, seed: 8 }, 20).unwrap());
    }

    #[test]
    fn role_labels() {
        assert_eq!(VertexRole::Apex.index(3), Ok(6));
        assert_eq!(VertexRole::Shadow(2).index(3), Ok(5));
        assert!(VertexRole::Shadow(3).index(3).is_err());
        let roles: Vec<_> = VertexRole::all(2).collect();
        for (i, r) in roles.iter().enumerate() {
            assert_eq!(VertexRole::from_index(2, i), Ok(*r));
        }
        assert_eq!(VertexRole::Shadow(4).to_string(), "x4");
    }
}
