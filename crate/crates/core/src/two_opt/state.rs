//! Incremental all-pairs distance maintenance under 2-opt swaps.
//!
//! A swap removes two edges and adds two. The BFS row of a source `s` can
//! only change when
//!
//! * a removed edge `u-v` was tight from `s` (`d(s,u) + 1 = d(s,v)`) and the
//!   head `v` had no other predecessor edge at that level, or
//! * an added edge `a-c` bridges a distance gap from `s`
//!   (`|d(s,a) - d(s,c)| > 1`).
//!
//! Every other row keeps both its distances and (up to local adjustments)
//! its predecessor counts: surviving predecessor edges rebuild every old
//! shortest path, and no path through the new edges can undercut the old
//! distances when the endpoints sit on adjacent levels. Only the rows
//! failing the test are recomputed.

use thiserror::Error;

use crate::dist::{self, DistanceMatrix, UNREACHABLE};
use crate::graph::{Edge, Graph, Node};
use crate::importance::{self, EdgeRank};

use super::swap::{self, SwapProposal};

#[derive(Error, Debug, PartialEq)]
pub enum SwapError {
    #[error("removed edge {0} is not in the graph")]
    MissingRemoved(Edge),
    #[error("added edge {0} is already in the graph")]
    PresentAdded(Edge),
    #[error("proposal endpoints are not four distinct nodes")]
    SharedEndpoint,
    #[error("distance matrix order {dm} does not match graph order {graph}")]
    OrderMismatch { dm: usize, graph: usize },
}

/// Candidate metrics of a swapped graph: diameter and the ordered sum of all
/// pair distances (the exact ASPL numerator).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CandidateEval {
    pub diameter: u16,
    pub total: u64,
}

/// Connected graph plus its distance matrix, predecessor counts and metric
/// aggregates, all maintained incrementally across swaps.
pub(crate) struct ApspState {
    n: usize,
    graph: Graph,
    /// Row-major distances, `dist[s*n + v] = d(s, v)`.
    dist: Vec<u16>,
    /// Transposed predecessor counts: `preds[v*n + s]` is the number of
    /// neighbors `w` of `v` with `d(s,w) + 1 = d(s,v)`. Transposed so the
    /// per-swap dirty test streams rows.
    preds: Vec<u8>,
    rowsum: Vec<u64>,
    rowmax: Vec<u16>,
    /// `max_hist[d]` counts sources whose row maximum is `d`.
    max_hist: Vec<u32>,
    total: u64,
    diameter: u16,
    commits: u64,
    /// Adjacency as bitmask rows (`words` u64 words per node); candidate
    /// evaluation runs level-synchronous BFS over these, which only needs
    /// per-level population counts, not per-node distances.
    words: usize,
    bits: Vec<u64>,
    // Scratch buffers reused across evaluations.
    queue: Vec<Node>,
    dirty: Vec<Node>,
    dirty_flags: Vec<bool>,
    row_scratch: Vec<u16>,
    pred_scratch: Vec<u8>,
    hist_scratch: Vec<u32>,
    visited: Vec<u64>,
    frontier: Vec<u64>,
    next_frontier: Vec<u64>,
}

impl ApspState {
    /// Full BFS build. Fails on disconnected input.
    pub fn new(g: &Graph) -> Result<Self, DisconnectedError> {
        let n = g.order();
        let mut dist = vec![0u16; n * n];
        let mut preds = vec![0u8; n * n];
        let mut rowsum = vec![0u64; n];
        let mut rowmax = vec![0u16; n];
        let mut queue = Vec::with_capacity(n);
        let mut pred_row = vec![0u8; n];
        let mut total = 0u64;
        let mut diameter = 0u16;
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            dist::bfs_with_preds(g.adjacency(), s as Node, row, &mut pred_row, &mut queue);
            if queue.len() < n {
                return Err(DisconnectedError);
            }
            let mut sum = 0u64;
            let mut max = 0u16;
            for &d in row.iter() {
                sum += d as u64;
                max = max.max(d);
            }
            rowsum[s] = sum;
            rowmax[s] = max;
            total += sum;
            diameter = diameter.max(max);
            for v in 0..n {
                preds[v * n + s] = pred_row[v];
            }
        }
        let mut max_hist = vec![0u32; diameter as usize + 1];
        for &m in &rowmax {
            max_hist[m as usize] += 1;
        }
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for u in 0..n {
            for &v in g.neighbors(u as Node) {
                bits[u * words + v as usize / 64] |= 1 << (v % 64);
            }
        }
        Ok(ApspState {
            n,
            graph: g.clone(),
            dist,
            preds,
            rowsum,
            rowmax,
            max_hist,
            total,
            diameter,
            commits: 0,
            words,
            bits,
            queue: Vec::with_capacity(n),
            dirty: Vec::new(),
            dirty_flags: vec![false; n],
            row_scratch: vec![0u16; n],
            pred_scratch: vec![0u8; n],
            hist_scratch: Vec::new(),
            visited: vec![0u64; words],
            frontier: vec![0u64; words],
            next_frontier: vec![0u64; words],
        })
    }

    fn toggle_edge_bits(&mut self, e: Edge) {
        let words = self.words;
        self.bits[e.u as usize * words + e.v as usize / 64] ^= 1 << (e.v % 64);
        self.bits[e.v as usize * words + e.u as usize / 64] ^= 1 << (e.u % 64);
    }

    fn toggle_swap_bits(&mut self, p: &SwapProposal) {
        for e in p.removed.iter().chain(p.added.iter()) {
            self.toggle_edge_bits(*e);
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn diameter(&self) -> u16 {
        self.diameter
    }

    /// Ordered sum of all pair distances.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn aspl(&self) -> f64 {
        self.total as f64 / (self.n as f64 * (self.n as f64 - 1.0))
    }

    #[cfg(test)]
    pub fn to_distance_matrix(&self) -> DistanceMatrix {
        DistanceMatrix::from_parts(self.n, self.dist.clone())
    }

    /// Edge ranking from the maintained matrices; bit-identical to
    /// [`importance::rank_edges`] on the same graph.
    pub fn rank(&self) -> EdgeRank {
        let n = self.n;
        let edges: Vec<Edge> = self.graph.edges().collect();
        let mut acc = vec![0.0f64; edges.len()];
        for (slot, e) in edges.iter().enumerate() {
            let row_u = &self.dist[e.u as usize * n..(e.u as usize + 1) * n];
            let row_v = &self.dist[e.v as usize * n..(e.v as usize + 1) * n];
            let pred_u = &self.preds[e.u as usize * n..(e.u as usize + 1) * n];
            let pred_v = &self.preds[e.v as usize * n..(e.v as usize + 1) * n];
            let mut sum = 0.0f64;
            for s in 0..n {
                let du = row_u[s];
                let dv = row_v[s];
                if du == dv {
                    continue;
                }
                let far_preds = if du < dv { pred_v[s] } else { pred_u[s] };
                sum += 1.0 / far_preds as f64;
            }
            acc[slot] = sum;
        }
        importance::build_rank(edges, acc)
    }

    /// Marks the sources whose BFS row the proposal can change.
    fn collect_dirty(&mut self, p: &SwapProposal) {
        let n = self.n;
        let Self {
            dist,
            preds,
            dirty_flags,
            dirty,
            ..
        } = self;
        dirty_flags[..n].fill(false);
        for e in &p.added {
            let row_a = &dist[e.u as usize * n..(e.u as usize + 1) * n];
            let row_c = &dist[e.v as usize * n..(e.v as usize + 1) * n];
            for (s, flag) in dirty_flags[..n].iter_mut().enumerate() {
                let (da, dc) = (row_a[s], row_c[s]);
                let bridges = if da == UNREACHABLE || dc == UNREACHABLE {
                    da != dc
                } else {
                    da.abs_diff(dc) > 1
                };
                if bridges {
                    *flag = true;
                }
            }
        }
        for e in &p.removed {
            for (tail, head) in [(e.u, e.v), (e.v, e.u)] {
                let row_tail = &dist[tail as usize * n..(tail as usize + 1) * n];
                let row_head = &dist[head as usize * n..(head as usize + 1) * n];
                let pred_head = &preds[head as usize * n..(head as usize + 1) * n];
                for (s, flag) in dirty_flags[..n].iter_mut().enumerate() {
                    let dt = row_tail[s];
                    if dt != UNREACHABLE && dt + 1 == row_head[s] && pred_head[s] <= 1 {
                        *flag = true;
                    }
                }
            }
        }
        dirty.clear();
        dirty.extend((0..n as Node).filter(|&s| dirty_flags[s as usize]));
    }

    /// Metrics of the swapped graph, or `None` when the swap disconnects the
    /// graph or grows the diameter (neither is ever acceptable). The state
    /// itself is unchanged.
    pub fn evaluate(&mut self, p: &SwapProposal) -> Option<CandidateEval> {
        self.collect_dirty(p);
        self.toggle_swap_bits(p);
        let result = self.evaluate_dirty_rows();
        self.toggle_swap_bits(p);
        result
    }

    fn evaluate_dirty_rows(&mut self) -> Option<CandidateEval> {
        let n = self.n;
        self.hist_scratch.clone_from(&self.max_hist);
        for &s in &self.dirty {
            self.hist_scratch[self.rowmax[s as usize] as usize] -= 1;
        }
        let clean_max = self
            .hist_scratch
            .iter()
            .rposition(|&c| c > 0)
            .unwrap_or(0) as u16;
        let mut total = self.total;
        let mut cand_max = clean_max;
        let limit = self.diameter as u64;
        let words = self.words;
        let Self {
            bits,
            visited,
            frontier,
            next_frontier,
            dirty,
            rowsum,
            ..
        } = self;
        for &s in dirty.iter() {
            visited.fill(0);
            frontier.fill(0);
            visited[s as usize / 64] |= 1 << (s % 64);
            frontier[s as usize / 64] |= 1 << (s % 64);
            let mut level = 1u64;
            let mut sum = 0u64;
            let mut reached = 1usize;
            loop {
                next_frontier.fill(0);
                for (w, &f) in frontier.iter().enumerate() {
                    let mut f = f;
                    while f != 0 {
                        let u = w * 64 + f.trailing_zeros() as usize;
                        f &= f - 1;
                        let row = &bits[u * words..(u + 1) * words];
                        for (nw, &r) in next_frontier.iter_mut().zip(row) {
                            *nw |= r;
                        }
                    }
                }
                let mut count = 0usize;
                for (nw, &vis) in next_frontier.iter_mut().zip(visited.iter()) {
                    *nw &= !vis;
                    count += nw.count_ones() as usize;
                }
                if count == 0 {
                    break;
                }
                // A pair past the current diameter can never be accepted.
                if level > limit {
                    return None;
                }
                sum += level * count as u64;
                reached += count;
                for (vis, &nw) in visited.iter_mut().zip(next_frontier.iter()) {
                    *vis |= nw;
                }
                std::mem::swap(frontier, next_frontier);
                level += 1;
            }
            if reached < n {
                return None; // disconnected
            }
            total = total + sum - rowsum[s as usize];
            cand_max = cand_max.max((level - 1) as u16);
        }
        Some(CandidateEval {
            diameter: cand_max,
            total,
        })
    }

    /// Applies the proposal for real: recompute the dirty rows, patch the
    /// clean rows' predecessor counts, refresh the aggregates.
    ///
    /// Panics if the swapped graph is disconnected; callers gate commits on
    /// [`ApspState::evaluate`] or replay previously accepted swaps.
    pub fn commit(&mut self, p: &SwapProposal) {
        let n = self.n;
        #[cfg(debug_assertions)]
        let degrees_before: Vec<usize> = [p.removed[0], p.removed[1]]
            .iter()
            .flat_map(|e| [e.u, e.v])
            .map(|v| self.graph.degree(v))
            .collect();

        self.collect_dirty(p);
        // Clean rows keep their distances, but the four swapped edges enter
        // or leave their predecessor counts where they sit on consecutive
        // levels. Pre-swap distances are authoritative here.
        for e in &p.removed {
            self.adjust_clean_preds(*e, -1);
        }
        for e in &p.added {
            self.adjust_clean_preds(*e, 1);
        }
        swap::apply_to_graph(&mut self.graph, p);
        self.toggle_swap_bits(p);

        {
            let Self {
                graph,
                dist,
                preds,
                rowsum,
                rowmax,
                max_hist,
                total,
                queue,
                dirty,
                row_scratch,
                pred_scratch,
                ..
            } = self;
            let adj = graph.adjacency();
            for &s in dirty.iter() {
                dist::bfs_with_preds(adj, s, row_scratch, pred_scratch, queue);
                assert_eq!(queue.len(), n, "committed swap disconnected the graph");
                let mut sum = 0u64;
                let mut max = 0u16;
                for &d in &row_scratch[..n] {
                    sum += d as u64;
                    max = max.max(d);
                }
                let s = s as usize;
                *total = *total + sum - rowsum[s];
                rowsum[s] = sum;
                max_hist[rowmax[s] as usize] -= 1;
                if max as usize >= max_hist.len() {
                    max_hist.resize(max as usize + 1, 0);
                }
                max_hist[max as usize] += 1;
                rowmax[s] = max;
                dist[s * n..(s + 1) * n].copy_from_slice(&row_scratch[..n]);
                for v in 0..n {
                    preds[v * n + s] = pred_scratch[v];
                }
            }
        }
        self.diameter = self.max_hist.iter().rposition(|&c| c > 0).unwrap_or(0) as u16;
        self.commits += 1;

        #[cfg(debug_assertions)]
        {
            let degrees_after: Vec<usize> = [p.removed[0], p.removed[1]]
                .iter()
                .flat_map(|e| [e.u, e.v])
                .map(|v| self.graph.degree(v))
                .collect();
            debug_assert_eq!(degrees_before, degrees_after, "swap changed a degree");
        }
        self.verify_after_commit();
    }

    fn adjust_clean_preds(&mut self, e: Edge, delta: i16) {
        let n = self.n;
        for (tail, head) in [(e.u, e.v), (e.v, e.u)] {
            let tail_base = tail as usize * n;
            let head_base = head as usize * n;
            for s in 0..n {
                if self.dirty_flags[s] {
                    continue;
                }
                let dt = self.dist[tail_base + s];
                if dt != UNREACHABLE && dt + 1 == self.dist[head_base + s] {
                    let slot = &mut self.preds[head_base + s];
                    *slot = (*slot as i16 + delta) as u8;
                }
            }
        }
    }

    /// Drift insurance: full matrix comparison on small graphs in debug
    /// builds, one sampled row otherwise.
    fn verify_after_commit(&mut self) {
        if cfg!(debug_assertions) && self.n <= 64 {
            let fresh = dist::apsp(&self.graph);
            assert_eq!(
                fresh.as_slice(),
                &self.dist[..],
                "incremental matrix drifted from a full recompute"
            );
            return;
        }
        let probe = ((self.commits.wrapping_mul(0x9E3779B97F4A7C15)) % self.n as u64) as Node;
        let n = self.n;
        let Self {
            graph,
            queue,
            row_scratch,
            dist,
            ..
        } = self;
        dist::bfs_adj(graph.adjacency(), probe, row_scratch, queue);
        assert_eq!(
            &row_scratch[..n],
            &dist[probe as usize * n..(probe as usize + 1) * n],
            "incremental matrix drifted at sampled row {probe}"
        );
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
#[error("graph is disconnected")]
pub struct DisconnectedError;

/// One-shot incremental swap application: returns the swapped graph and a
/// distance matrix exactly equal to a from-scratch recomputation, reusing
/// every BFS row the swap cannot have changed.
///
/// Unlike the search path this tolerates disconnecting swaps; unreachable
/// pairs come back as sentinels for the caller to reject.
pub fn apply_swap_incremental(
    g: &Graph,
    dm: &DistanceMatrix,
    p: &SwapProposal,
) -> Result<(Graph, DistanceMatrix), SwapError> {
    let n = g.order();
    if dm.order() != n {
        return Err(SwapError::OrderMismatch {
            dm: dm.order(),
            graph: n,
        });
    }
    let endpoints = [p.removed[0].u, p.removed[0].v, p.removed[1].u, p.removed[1].v];
    for (i, &a) in endpoints.iter().enumerate() {
        if endpoints[i + 1..].contains(&a) {
            return Err(SwapError::SharedEndpoint);
        }
    }
    for e in &p.removed {
        if !g.has_edge(e.u, e.v) {
            return Err(SwapError::MissingRemoved(*e));
        }
    }
    for e in &p.added {
        if g.has_edge(e.u, e.v) {
            return Err(SwapError::PresentAdded(*e));
        }
    }

    let mut dirty = vec![false; n];
    for e in &p.added {
        let row_a = dm.row(e.u);
        let row_c = dm.row(e.v);
        for s in 0..n {
            let (da, dc) = (row_a[s], row_c[s]);
            let bridges = if da == UNREACHABLE || dc == UNREACHABLE {
                da != dc
            } else {
                da.abs_diff(dc) > 1
            };
            if bridges {
                dirty[s] = true;
            }
        }
    }
    for e in &p.removed {
        for (tail, head) in [(e.u, e.v), (e.v, e.u)] {
            let row_tail = dm.row(tail);
            let row_head = dm.row(head);
            for s in 0..n {
                if dirty[s] {
                    continue;
                }
                let dt = row_tail[s];
                if dt != UNREACHABLE && dt + 1 == row_head[s] {
                    // Critical only when head has no parallel shortest route.
                    let level = row_head[s];
                    let routes = g
                        .neighbors(head)
                        .iter()
                        .filter(|&&w| {
                            let dw = dm.get(s as Node, w);
                            dw != UNREACHABLE && dw + 1 == level
                        })
                        .count();
                    if routes <= 1 {
                        dirty[s] = true;
                    }
                }
            }
        }
    }

    let mut new_graph = g.clone();
    swap::apply_to_graph(&mut new_graph, p);
    let mut new_dm = dm.clone();
    let flat = new_dm.dist_mut();
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        if dirty[s] {
            dist::bfs_adj(
                new_graph.adjacency(),
                s as Node,
                &mut flat[s * n..(s + 1) * n],
                &mut queue,
            );
        }
    }
    Ok((new_graph, new_dm))
}
