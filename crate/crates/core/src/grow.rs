//! Greedy edge growth: raise every node to the target degree, one edge at a
//! time, preferring endpoints whose connection closes pentagons rather than
//! squares.
//!
//! An edge is only ever added between nodes at distance greater than two.
//! For a candidate pair the score `count_paths` counts length-3 connections;
//! picking the far endpoint `j` that minimizes `count_paths(i, j)` avoids
//! creating 4-cycles, and among those, maximizing the best
//! `count_paths(i, k)` over neighbors `k` of `j` creates 5-cycles through
//! the new edge.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dist::{apsp, DistanceMatrix, UNREACHABLE};
use crate::graph::{Graph, Node};

#[derive(Error, Debug, PartialEq)]
pub enum GrowError {
    #[error("count_paths needs two distinct nodes, got {0} twice")]
    SameNode(Node),
    #[error("target degree {target} below base-graph maximum degree {max}")]
    DegreeBelowBase { target: usize, max: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TieBreak {
    /// Always pick the lowest node id; fully deterministic.
    #[default]
    LowestId,
    /// Shuffle equally-deep candidates with the configured seed.
    Seeded,
}

#[derive(Clone, Debug)]
pub struct GrowConfig {
    pub tie_break: TieBreak,
    /// Full matrix recompute every this many insertions, as drift insurance
    /// for the incremental relaxation. The relaxation is exact, so this is
    /// belt and braces; 0 disables it.
    pub recompute_cadence: usize,
    pub seed: u64,
    pub workers: usize,
}

impl Default for GrowConfig {
    fn default() -> Self {
        GrowConfig {
            tie_break: TieBreak::LowestId,
            recompute_cadence: 64,
            seed: 1,
            workers: 1,
        }
    }
}

/// Result of growing a graph, with the distance matrix already up to date.
#[derive(Debug)]
pub struct GrowOutcome {
    pub graph: Graph,
    pub dist: DistanceMatrix,
    /// Edges added by the distance-driven main loop.
    pub added_main: usize,
    /// Edges added by the final deficiency fill.
    pub added_fill: usize,
    /// Nodes left below the target degree (at most a parity leftover unless
    /// the deficient nodes are all mutually adjacent).
    pub deficient: Vec<Node>,
}

/// `|D1(i) ∩ D2(j)| + |D2(i) ∩ D1(j)|` where `Dm(x)` is the set of nodes at
/// distance exactly `m` from `x`: a proxy for the number of 3-hop paths
/// between `i` and `j`.
pub fn count_paths(dm: &DistanceMatrix, g: &Graph, i: Node, j: Node) -> Result<u32, GrowError> {
    if i == j {
        return Err(GrowError::SameNode(i));
    }
    let row_i = dm.row(i);
    let row_j = dm.row(j);
    let mut count = 0u32;
    for &k in g.neighbors(i) {
        if row_j[k as usize] == 2 {
            count += 1;
        }
    }
    for &k in g.neighbors(j) {
        if row_i[k as usize] == 2 {
            count += 1;
        }
    }
    Ok(count)
}

/// Picks the far endpoint for a new edge out of `i`: among nodes at distance
/// greater than two with degree below the cap, minimize `count_paths(i, j)`,
/// then maximize `max_k count_paths(i, k)` over neighbors `k` of `j`; ties
/// fall to the lowest id. `None` when no such node exists.
pub fn select_target(g: &Graph, dm: &DistanceMatrix, i: Node, degree_cap: usize) -> Option<Node> {
    let mut scratch = SelectScratch::new(g.order());
    select_target_inner(g, dm, i, degree_cap, &mut scratch)
}

struct SelectScratch {
    candidates: Vec<Node>,
    memo_value: Vec<u32>,
    memo_epoch: Vec<u32>,
    epoch: u32,
}

impl SelectScratch {
    fn new(n: usize) -> Self {
        SelectScratch {
            candidates: Vec::with_capacity(n),
            memo_value: vec![0; n],
            memo_epoch: vec![0; n],
            epoch: 0,
        }
    }
}

fn select_target_inner(
    g: &Graph,
    dm: &DistanceMatrix,
    i: Node,
    degree_cap: usize,
    scratch: &mut SelectScratch,
) -> Option<Node> {
    let n = g.order();
    let row_i = dm.row(i);
    scratch.candidates.clear();
    let mut best_p1 = u32::MAX;
    for j in 0..n as Node {
        // UNREACHABLE compares greater than 2, which is the intended
        // reading: a disconnected candidate is as far as it gets.
        if row_i[j as usize] <= 2 || g.degree(j) >= degree_cap {
            continue;
        }
        let p1 = count_paths(dm, g, i, j).expect("j != i since d(i,j) > 2");
        match p1.cmp(&best_p1) {
            std::cmp::Ordering::Less => {
                best_p1 = p1;
                scratch.candidates.clear();
                scratch.candidates.push(j);
            }
            std::cmp::Ordering::Equal => scratch.candidates.push(j),
            std::cmp::Ordering::Greater => {}
        }
    }
    if scratch.candidates.is_empty() {
        return None;
    }
    // Evaluate p2 lazily, only for the p1-minimizers; memoize
    // count_paths(i, k) across candidates sharing neighbors.
    scratch.epoch += 1;
    let mut best: Option<(u32, Node)> = None;
    for idx in 0..scratch.candidates.len() {
        let j = scratch.candidates[idx];
        let mut p2 = 0u32;
        for &k in g.neighbors(j) {
            if k == i {
                continue;
            }
            let cached = if scratch.memo_epoch[k as usize] == scratch.epoch {
                scratch.memo_value[k as usize]
            } else {
                let value = count_paths(dm, g, i, k).expect("k != i");
                scratch.memo_epoch[k as usize] = scratch.epoch;
                scratch.memo_value[k as usize] = value;
                value
            };
            p2 = p2.max(cached);
        }
        // Candidates arrive in ascending id order; strict improvement keeps
        // the lowest id on ties.
        if best.map_or(true, |(bp2, _)| p2 > bp2) {
            best = Some((p2, j));
        }
    }
    best.map(|(_, j)| j)
}

/// Exact distance-matrix update for inserting edge `u-v`.
///
/// Only pairs `(s, t)` with `s` strictly closer to `u` and `t` strictly
/// closer to `v` (by at least two) can improve, and their new distance is
/// `d(s,u) + 1 + d(v,t)`; everything else is untouched.
pub(crate) fn relax_insert(dm: &mut DistanceMatrix, u: Node, v: Node) {
    let n = dm.order();
    let mut side_u: Vec<Node> = Vec::new();
    let mut side_v: Vec<Node> = Vec::new();
    {
        let row_u = dm.row(u);
        let row_v = dm.row(v);
        for s in 0..n {
            let du = row_u[s];
            let dv = row_v[s];
            if du != UNREACHABLE && (dv == UNREACHABLE || du as u32 + 1 < dv as u32) {
                side_u.push(s as Node);
            } else if dv != UNREACHABLE && (du == UNREACHABLE || dv as u32 + 1 < du as u32) {
                side_v.push(s as Node);
            }
        }
    }
    let dist = dm.dist_mut();
    for &s in &side_u {
        let base = dist[s as usize * n + u as usize] as u32 + 1;
        for &t in &side_v {
            let cand = base + dist[v as usize * n + t as usize] as u32;
            let cur = dist[s as usize * n + t as usize] as u32;
            if cand < cur {
                dist[s as usize * n + t as usize] = cand as u16;
                dist[t as usize * n + s as usize] = cand as u16;
            }
        }
    }
}

/// Grows `g0` toward a `degree`-regular graph (policy: never remove edges,
/// grow the lowest-degree side first). Returns the graph, its exact distance
/// matrix and bookkeeping about the fill phase.
pub fn add_edges(g0: &Graph, degree: usize, cfg: &GrowConfig) -> Result<GrowOutcome, GrowError> {
    if g0.max_degree() > degree {
        return Err(GrowError::DegreeBelowBase {
            target: degree,
            max: g0.max_degree(),
        });
    }
    let n = g0.order();
    let mut graph = g0.clone();
    let mut dm = apsp(&graph);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut scratch = SelectScratch::new(n);
    let mut level: Vec<Node> = Vec::new();
    let mut added_main = 0usize;
    let mut since_recompute = 0usize;

    'outer: loop {
        // Scan degree levels from the bottom; the first node that still has
        // a legal target wins this round.
        let mut degrees_seen: Vec<usize> = (0..n as Node)
            .map(|u| graph.degree(u))
            .filter(|&d| d < degree)
            .collect();
        degrees_seen.sort_unstable();
        degrees_seen.dedup();
        for deg in degrees_seen {
            level.clear();
            level.extend((0..n as Node).filter(|&u| graph.degree(u) == deg));
            if cfg.tie_break == TieBreak::Seeded {
                level.shuffle(&mut rng);
            }
            for &i in &level {
                if let Some(j) = select_target_inner(&graph, &dm, i, degree, &mut scratch) {
                    graph.add_edge(i, j).expect("target is non-adjacent");
                    relax_insert(&mut dm, i, j);
                    added_main += 1;
                    since_recompute += 1;
                    if cfg.recompute_cadence > 0 && since_recompute >= cfg.recompute_cadence {
                        let fresh = crate::dist::apsp_with_workers(&graph, cfg.workers);
                        debug_assert_eq!(fresh, dm, "insertion relaxation drifted");
                        dm = fresh;
                        since_recompute = 0;
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }

    let (added_fill, deficient) = final_fill_inner(&mut graph, &mut dm, degree);
    Ok(GrowOutcome {
        graph,
        dist: dm,
        added_main,
        added_fill,
        deficient,
    })
}

/// Pairs up remaining below-degree nodes: distance > 2 pairs first, then any
/// non-adjacent pair, lowest ids on ties. Stops when no legal pair remains.
pub fn final_fill(g: &Graph, degree: usize) -> Result<GrowOutcome, GrowError> {
    if g.max_degree() > degree {
        return Err(GrowError::DegreeBelowBase {
            target: degree,
            max: g.max_degree(),
        });
    }
    let mut graph = g.clone();
    let mut dm = apsp(&graph);
    let (added_fill, deficient) = final_fill_inner(&mut graph, &mut dm, degree);
    Ok(GrowOutcome {
        graph,
        dist: dm,
        added_main: 0,
        added_fill,
        deficient,
    })
}

fn final_fill_inner(graph: &mut Graph, dm: &mut DistanceMatrix, degree: usize) -> (usize, Vec<Node>) {
    let n = graph.order();
    let mut added = 0usize;
    loop {
        let deficient: Vec<Node> = (0..n as Node).filter(|&u| graph.degree(u) < degree).collect();
        let mut chosen: Option<(Node, Node)> = None;
        let mut fallback: Option<(Node, Node)> = None;
        'pairs: for (a, &u) in deficient.iter().enumerate() {
            for &v in &deficient[a + 1..] {
                if graph.has_edge(u, v) {
                    continue;
                }
                if dm.get(u, v) > 2 {
                    chosen = Some((u, v));
                    break 'pairs;
                }
                if fallback.is_none() {
                    fallback = Some((u, v));
                }
            }
        }
        match chosen.or(fallback) {
            Some((u, v)) => {
                graph.add_edge(u, v).expect("pair checked non-adjacent");
                relax_insert(dm, u, v);
                added += 1;
            }
            None => {
                return (added, deficient);
            }
        }
    }
}
