//! Graph construction and local search for the order/degree problem:
//! given an order `n` and a degree `d`, build an `n`-node graph of maximum
//! degree `d` with small diameter and small average shortest path length
//! (ASPL).
//!
//! The pipeline has three stages, each usable on its own:
//!
//! 1. [`seed::create_base_graph`] chains Petersen-graph blocks (plus 11-node
//!    filler blocks when `n` is not a multiple of ten) into a connected,
//!    roughly degree-5 base graph.
//! 2. [`grow::add_edges`] greedily raises every node to degree `d`, picking
//!    endpoints so that each new edge closes many pentagons and few squares.
//! 3. [`two_opt::multiple_2opt`] refines the result with 2-opt edge swaps,
//!    trying low-importance edges first and maintaining the all-pairs
//!    distance matrix incrementally.

pub mod cli;
pub mod cycles;
pub mod dist;
pub mod graph;
pub mod grow;
pub mod importance;
pub mod report;
pub mod seed;
pub mod two_opt;

pub use dist::{apsp, bfs_distances, lower_bounds, metrics, DistanceMatrix, GraphMetrics};
pub use graph::{Edge, Graph, GraphError, Node};
