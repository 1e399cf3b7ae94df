//! Topological indices of Mycielskian graphs and their complements.
//!
//! The crate builds `μ(G)` and its complement explicitly, measures Wiener,
//! Zagreb, degree-distance and Gutman indices by BFS, predicts degrees and
//! distances in the derived graphs from `G` alone, and audits closed-form
//! Gutman-index expressions case by case against brute force.
//!
//! ```
//! use myciel::graph::{generate, Family, Target};
//! use myciel::closed_forms::audit;
//!
//! let p3 = generate(Family::Path, 3).unwrap();
//! let record = audit(&p3, Target::Mu).unwrap();
//! assert_eq!(record.brute_force, 209);
//! assert_eq!(record.printed_theorem, 179);
//! ```

pub mod cli;
pub mod closed_forms;
pub mod corpus;
pub mod formats;
pub mod graph;
pub mod laws;
pub mod metrics;

pub use graph::{Graph, GraphError, Target, VertexRole};
