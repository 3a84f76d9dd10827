//! Exact solvers for degree sequence optimization.
//!
//! Given a host graph `H = ([n], E)`, find a subgraph `G = ([n], F)` whose
//! degree sequence `d(G)` maximizes an objective. Two problem families are
//! solved exactly:
//!
//! * convex multi-criteria objectives `f(w_1 . d(G), ..., w_r . d(G))`, with
//!   or without a prescribed edge count ([`multicriteria`]);
//! * separable objectives `sum_i f_i(d_i(G))` with per-color edge counts, on
//!   hosts of bounded tree-depth ([`colored`]).
//!
//! Brute-force oracles, reduction gadgets and random instance generators
//! support validation.

pub mod bruteforce;
pub mod colored;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod instance;
pub mod linalg;
pub mod multicriteria;
pub mod objective;
pub mod oracles;
pub mod random;
pub mod treedepth;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{degree_sequence, edge_degree_vector, DegreeSequence, EdgeColoring, EdgeSubset, Graph};
pub use objective::{AffineForm, ConvexFunction, MultiCriteriaObjective, SeparableObjective, VertexFunction};
