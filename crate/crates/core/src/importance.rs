//! Edge importance: a per-edge score measuring how much of the
//! shortest-path structure routes through the edge. Low-importance edges are
//! the cheapest to rewire, so the 2-opt search tries them first.
//!
//! For a node `i` and an edge `j-k`, the contribution `f1(i, j-k)` is zero
//! when `j` and `k` are equidistant from `i`, and otherwise `1/|J|` where
//! `J` is the set of neighbors of the farther endpoint sitting at the nearer
//! endpoint's distance — i.e. the edge's share of the parallel shortest
//! routes into the farther endpoint. The importance of the edge is the sum
//! over all nodes `i`.

use std::collections::HashMap;

use thiserror::Error;

use crate::dist::{self, DistanceMatrix};
use crate::graph::{Edge, Graph, Node};

#[derive(Error, Debug, PartialEq)]
pub enum ImportanceError {
    #[error("edge {0}-{1} not present")]
    MissingEdge(Node, Node),
    #[error("graph is disconnected; edge importance needs finite distances")]
    Disconnected,
}

/// Importance of edge `j-k` as seen from node `i`.
pub fn f1(dm: &DistanceMatrix, g: &Graph, i: Node, j: Node, k: Node) -> Result<f64, ImportanceError> {
    if !g.has_edge(j, k) {
        return Err(ImportanceError::MissingEdge(j.min(k), j.max(k)));
    }
    let dj = dm.get(i, j);
    let dk = dm.get(i, k);
    if dj == dk {
        return Ok(0.0);
    }
    // Distances across an edge differ by at most one.
    debug_assert_eq!(dj.abs_diff(dk), 1, "edge {j}-{k} spans distance gap > 1");
    let (near_dist, far) = if dj < dk { (dj, k) } else { (dk, j) };
    let routes = g
        .neighbors(far)
        .iter()
        .filter(|&&w| dm.get(i, w) == near_dist)
        .count();
    debug_assert!(routes >= 1, "the near endpoint itself is always a route");
    Ok(1.0 / routes as f64)
}

/// Importance of an edge: the sum of [`f1`] over every node of the graph.
pub fn importance(dm: &DistanceMatrix, g: &Graph, edge: Edge) -> Result<f64, ImportanceError> {
    let mut total = 0.0;
    for i in 0..g.order() as Node {
        total += f1(dm, g, i, edge.u, edge.v)?;
    }
    Ok(total)
}

/// All edges of a graph sorted ascending by importance, ties broken by
/// `(u, v)` so that rank indices are reproducible.
#[derive(Clone, Debug)]
pub struct EdgeRank {
    edges: Vec<(Edge, f64)>,
    index: HashMap<Edge, usize>,
}

impl EdgeRank {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_at(&self, rank: usize) -> Edge {
        self.edges[rank].0
    }

    pub fn importance_at(&self, rank: usize) -> f64 {
        self.edges[rank].1
    }

    pub fn rank_of(&self, edge: Edge) -> Option<usize> {
        self.index.get(&edge).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.edges.iter().copied()
    }

    /// Re-points a rank slot at a different edge. Used by the 2-opt search:
    /// between recomputations, a swapped-in edge inherits the slot (and the
    /// stale importance value) of the edge it replaced.
    pub(crate) fn replace_slot(&mut self, rank: usize, new_edge: Edge) {
        let (old_edge, _) = self.edges[rank];
        self.index.remove(&old_edge);
        self.edges[rank].0 = new_edge;
        self.index.insert(new_edge, rank);
    }
}

/// Computes the full ranking for a connected graph.
pub fn rank_edges(g: &Graph) -> Result<EdgeRank, ImportanceError> {
    let n = g.order();
    let mut dist = vec![0u16; n];
    let mut preds = vec![0u8; n];
    let mut queue = Vec::with_capacity(n);
    let mut acc: Vec<f64> = vec![0.0; g.edge_count()];
    let edges: Vec<Edge> = g.edges().collect();
    for i in 0..n as Node {
        dist::bfs_with_preds(g.adjacency(), i, &mut dist, &mut preds, &mut queue);
        if queue.len() < n {
            return Err(ImportanceError::Disconnected);
        }
        accumulate_source(&edges, &dist, &preds, &mut acc);
    }
    Ok(build_rank(edges, acc))
}

/// One source's contribution to every edge, bucketed through predecessor
/// counts: for an edge whose endpoints sit on consecutive BFS levels, the
/// per-source share is `1 / preds(farther endpoint)`. Equivalent to summing
/// [`f1`], at a fraction of the cost.
pub(crate) fn accumulate_source(edges: &[Edge], dist: &[u16], preds: &[u8], acc: &mut [f64]) {
    for (slot, e) in edges.iter().enumerate() {
        let du = dist[e.u as usize];
        let dv = dist[e.v as usize];
        if du == dv {
            continue;
        }
        let far = if du < dv { e.v } else { e.u };
        acc[slot] += 1.0 / preds[far as usize] as f64;
    }
}

pub(crate) fn build_rank(edges: Vec<Edge>, importances: Vec<f64>) -> EdgeRank {
    let mut ranked: Vec<(Edge, f64)> = edges.into_iter().zip(importances).collect();
    ranked.sort_by(|(ea, fa), (eb, fb)| fa.partial_cmp(fb).unwrap().then(ea.cmp(eb)));
    let index = ranked
        .iter()
        .enumerate()
        .map(|(rank, (e, _))| (*e, rank))
        .collect();
    EdgeRank {
        edges: ranked,
        index,
    }
}
