//! All-pairs BFS distances and the degree/distance indices built on them.
//!
//! Sums accumulate in `u128`; a result that does not fit `u64` is reported as
//! [`MetricsError::Overflow`] instead of wrapping.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("graph is disconnected: no path between {u} and {v}")]
    Disconnected { u: usize, v: usize },
    #[error("distance matrix has dimension {matrix}, graph has {graph} vertices")]
    DimensionMismatch { matrix: usize, graph: usize },
    #[error("{0} does not fit in 64 bits")]
    Overflow(&'static str),
}

/// Exact hop distances of a connected graph, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    /// Largest entry; 0 for graphs with fewer than two vertices.
    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    /// Unordered pairs `(u, v, d(u, v))` with `u < v`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            let row = self.row(u);
            (u + 1..self.n).map(move |v| (u, v, row[v]))
        })
    }
}

fn bfs_row(g: &Graph, src: usize, row: &mut [u32], queue: &mut VecDeque<usize>) {
    row.fill(UNREACHED);
    row[src] = 0;
    queue.clear();
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let next = row[u] + 1;
        for &w in g.neighbors(u) {
            if row[w] == UNREACHED {
                row[w] = next;
                queue.push_back(w);
            }
        }
    }
}

/// One BFS per source vertex, rows computed in parallel.
pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix, MetricsError> {
    let n = g.order();
    let mut d = vec![0u32; n * n];
    if n > 0 {
        d.par_chunks_mut(n)
            .enumerate()
            .for_each_init(VecDeque::new, |queue, (src, row)| {
                bfs_row(g, src, row, queue)
            });
    }
    if let Some(pos) = d.iter().position(|&x| x == UNREACHED) {
        return Err(MetricsError::Disconnected {
            u: pos / n,
            v: pos % n,
        });
    }
    Ok(DistanceMatrix { n, d })
}

fn check_dims(g: &Graph, dm: &DistanceMatrix) -> Result<(), MetricsError> {
    if g.order() == dm.n {
        Ok(())
    } else {
        Err(MetricsError::DimensionMismatch {
            matrix: dm.n,
            graph: g.order(),
        })
    }
}

fn narrow(value: u128, what: &'static str) -> Result<u64, MetricsError> {
    u64::try_from(value).map_err(|_| MetricsError::Overflow(what))
}

/// Sum of distances over unordered pairs.
pub fn wiener(dm: &DistanceMatrix) -> Result<u64, MetricsError> {
    let total: u128 = dm.pairs().map(|(_, _, d)| u128::from(d)).sum();
    narrow(total, "Wiener index")
}

/// First Zagreb index, the sum of squared degrees.
pub fn zagreb1(g: &Graph) -> Result<u64, MetricsError> {
    let total: u128 = g
        .degrees()
        .into_iter()
        .map(|d| (d as u128) * (d as u128))
        .sum();
    narrow(total, "first Zagreb index")
}

/// Second Zagreb index, the sum over edges of endpoint degree products.
pub fn zagreb2(g: &Graph) -> Result<u64, MetricsError> {
    let deg = g.degrees();
    let total: u128 = g
        .edges()
        .iter()
        .map(|&(u, v)| deg[u] as u128 * deg[v] as u128)
        .sum();
    narrow(total, "second Zagreb index")
}

pub fn degree_distance(g: &Graph, dm: &DistanceMatrix) -> Result<u64, MetricsError> {
    check_dims(g, dm)?;
    let deg = g.degrees();
    let total: u128 = dm
        .pairs()
        .map(|(u, v, d)| u128::from(d) * (deg[u] + deg[v]) as u128)
        .sum();
    narrow(total, "degree distance")
}

pub fn gutman(g: &Graph, dm: &DistanceMatrix) -> Result<u64, MetricsError> {
    check_dims(g, dm)?;
    let deg = g.degrees();
    let total: u128 = dm
        .pairs()
        .map(|(u, v, d)| u128::from(d) * deg[u] as u128 * deg[v] as u128)
        .sum();
    narrow(total, "Gutman index")
}

/// Every index of one connected graph, from a single distance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub n: u64,
    pub m: u64,
    pub diameter: u64,
    pub wiener: u64,
    pub m1: u64,
    pub m2: u64,
    pub dd: u64,
    pub gutman: u64,
}

pub fn index_report(g: &Graph) -> Result<IndexReport, MetricsError> {
    let dm = distance_matrix(g)?;
    Ok(IndexReport {
        n: g.order() as u64,
        m: g.size() as u64,
        diameter: u64::from(dm.diameter()),
        wiener: wiener(&dm)?,
        m1: zagreb1(g)?,
        m2: zagreb2(g)?,
        dd: degree_distance(g, &dm)?,
        gutman: gutman(g, &dm)?,
    })
}
