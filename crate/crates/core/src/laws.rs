//! Predicted degrees and distances in the Mycielskian and in its complement,
//! expressed through the base graph alone, and a verifier that compares the
//! predictions with BFS on the explicitly constructed graph.

use serde::Serialize;
use thiserror::Error;

use crate::formats::write_graph6;
use crate::graph::{pairs, Graph, GraphError, Target, VertexRole};
use crate::metrics::{distance_matrix, DistanceMatrix, MetricsError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LawError {
    #[error(transparent)]
    Role(#[from] GraphError),
    #[error("structure laws need at least 2 base vertices, got {0}")]
    TooSmall(usize),
    #[error("base graph is disconnected")]
    Disconnected,
    #[error("constructed {0} graph is disconnected")]
    TargetDisconnected(Target),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

fn base_index(role: VertexRole, n: usize) -> Result<Option<usize>, LawError> {
    role.index(n)?;
    Ok(match role {
        VertexRole::Original(i) | VertexRole::Shadow(i) => Some(i),
        VertexRole::Apex => None,
    })
}

fn deg(g: &Graph, i: usize) -> u64 {
    g.neighbors(i).len() as u64
}

/// Degree of `role` in the Mycielskian of `g`.
pub fn mu_degree(g: &Graph, role: VertexRole) -> Result<u64, LawError> {
    let n = g.order();
    base_index(role, n)?;
    Ok(match role {
        VertexRole::Apex => n as u64,
        VertexRole::Shadow(i) => 1 + deg(g, i),
        VertexRole::Original(i) => 2 * deg(g, i),
    })
}

/// Degree of `role` in the complement of the Mycielskian of `g`.
pub fn mu_bar_degree(g: &Graph, role: VertexRole) -> Result<u64, LawError> {
    let n = g.order() as u64;
    base_index(role, g.order())?;
    Ok(match role {
        VertexRole::Apex => n,
        VertexRole::Shadow(i) => 2 * n - 1 - deg(g, i),
        VertexRole::Original(i) => 2 * n - 2 * deg(g, i),
    })
}

/// Distance between two roles in the Mycielskian, predicted from the base
/// graph's distances. Original pairs cap at 4, original/shadow pairs at 3.
pub fn mu_distance(dm: &DistanceMatrix, a: VertexRole, b: VertexRole) -> Result<u32, LawError> {
    use VertexRole::*;
    let n = dm.order();
    base_index(a, n)?;
    base_index(b, n)?;
    if a == b {
        return Ok(0);
    }
    Ok(match (a, b) {
        (Apex, Shadow(_)) | (Shadow(_), Apex) => 1,
        (Apex, Original(_)) | (Original(_), Apex) => 2,
        (Shadow(_), Shadow(_)) => 2,
        (Original(i), Original(j)) => dm.get(i, j).min(4),
        (Original(i), Shadow(j)) | (Shadow(j), Original(i)) => {
            if i == j {
                2
            } else {
                dm.get(i, j).min(3)
            }
        }
        (Apex, Apex) => unreachable!("equal roles handled above"),
    })
}

/// Distance between two roles in the complement of the Mycielskian, keyed
/// on adjacency in the base graph.
pub fn mu_bar_distance(g: &Graph, a: VertexRole, b: VertexRole) -> Result<u32, LawError> {
    use VertexRole::*;
    let n = g.order();
    base_index(a, n)?;
    base_index(b, n)?;
    if a == b {
        return Ok(0);
    }
    let by_adjacency = |i, j| if g.has_edge(i, j) { 2 } else { 1 };
    Ok(match (a, b) {
        (Apex, Shadow(_)) | (Shadow(_), Apex) => 2,
        (Apex, Original(_)) | (Original(_), Apex) => 1,
        (Shadow(_), Shadow(_)) => 1,
        (Original(i), Original(j)) => by_adjacency(i, j),
        (Original(i), Shadow(j)) | (Shadow(j), Original(i)) => {
            if i == j {
                1
            } else {
                by_adjacency(i, j)
            }
        }
        (Apex, Apex) => unreachable!("equal roles handled above"),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeMismatch {
    pub role: VertexRole,
    pub predicted: u64,
    pub actual: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceMismatch {
    pub roles: (VertexRole, VertexRole),
    pub predicted: u32,
    pub actual: u32,
}

/// Outcome of checking every vertex degree and every pair distance of one
/// derived graph against the predictions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    /// graph6 encoding of the base graph.
    pub graph_id: String,
    pub target: Target,
    pub degree_mismatches: Vec<DegreeMismatch>,
    pub distance_mismatches: Vec<DistanceMismatch>,
    /// Vertices plus unordered pairs compared.
    pub checked_pairs: usize,
    /// Diameter of the constructed graph.
    pub diameter: u32,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.degree_mismatches.is_empty() && self.distance_mismatches.is_empty()
    }
}

pub(crate) fn require_base(g: &Graph) -> Result<(), LawError> {
    if g.order() < 2 {
        return Err(LawError::TooSmall(g.order()));
    }
    if !g.is_connected() {
        return Err(LawError::Disconnected);
    }
    Ok(())
}

/// Builds the target graph, computes its real degrees and BFS distances and
/// records every disagreement with the predicted values.
pub fn verify_structure(g: &Graph, target: Target) -> Result<LawReport, LawError> {
    require_base(g)?;
    let n = g.order();
    let derived = target.build(g);
    let actual = distance_matrix(&derived).map_err(|e| match e {
        MetricsError::Disconnected { .. } => LawError::TargetDisconnected(target),
        other => other.into(),
    })?;
    let base_dm = distance_matrix(g)?;
    let roles: Vec<VertexRole> = VertexRole::all(n).collect();

    let mut degree_mismatches = Vec::new();
    for (idx, &role) in roles.iter().enumerate() {
        let predicted = match target {
            Target::Mu => mu_degree(g, role)?,
            Target::MuBar => mu_bar_degree(g, role)?,
        };
        let real = derived.neighbors(idx).len() as u64;
        if predicted != real {
            degree_mismatches.push(DegreeMismatch {
                role,
                predicted,
                actual: real,
            });
        }
    }

    let mut distance_mismatches = Vec::new();
    for (u, v, real) in actual.pairs() {
        let (a, b) = (roles[u], roles[v]);
        let predicted = match target {
            Target::Mu => mu_distance(&base_dm, a, b)?,
            Target::MuBar => mu_bar_distance(g, a, b)?,
        };
        if predicted != real {
            distance_mismatches.push(DistanceMismatch {
                roles: (a, b),
                predicted,
                actual: real,
            });
        }
    }

    Ok(LawReport {
        graph_id: write_graph6(g),
        target,
        degree_mismatches,
        distance_mismatches,
        checked_pairs: roles.len() + pairs(roles.len()),
        diameter: actual.diameter(),
    })
}
