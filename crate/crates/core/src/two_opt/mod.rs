//! 2-opt local search over (diameter, ASPL), prioritized by edge importance.
//!
//! Edges are ranked ascending by importance; pairs of rank indices are then
//! visited in one of two orders, each pair proposing up to two rewirings.
//! A swap is accepted when it improves the graph lexicographically on
//! (diameter, exact distance sum). In threshold mode an occasional
//! equal-diameter worsening within `eps` ASPL is also taken, rate-limited to
//! one per window of evaluations, with the best graph tracked separately and
//! a seeded restart from it after too many fruitless passes.
//!
//! ASPL comparisons never touch floating point: the ordered sum of pair
//! distances is compared as integers.

mod pairs;
mod state;
mod swap;

pub use pairs::{PairOrdering, PairSequence};
pub use state::{apply_swap_incremental, CandidateEval, SwapError};
pub use swap::{propose, SwapProposal, SwapVariant};

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dist::GraphMetrics;
use crate::graph::Graph;

use state::ApspState;
use swap::{build_variant, propose_into};

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SearchError {
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("history references rank {rank} but only {edges} edges exist")]
    BadHistoryRank { rank: usize, edges: usize },
}

#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub enum Acceptance {
    /// Improvements only; a full pass without one means convergence.
    #[default]
    Strict,
    /// Additionally allow equal-diameter ASPL increases up to `eps`,
    /// rate-limited by the worse-acceptance window.
    Threshold { eps: f64 },
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub ordering: PairOrdering,
    pub acceptance: Acceptance,
    pub timeout: Duration,
    /// Accepted swaps between importance recomputations.
    pub rerank_cadence: usize,
    pub seed: u64,
    /// Evaluations that must pass between two worse acceptances; defaults to
    /// one full pass over all edge pairs.
    pub worse_window: Option<u64>,
    /// Passes without improving the best graph before restarting from it
    /// (threshold mode only).
    pub restart_after: usize,
    /// Stop as soon as the best ASPL reaches this value.
    pub target_aspl: Option<f64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            ordering: PairOrdering::default(),
            acceptance: Acceptance::default(),
            timeout: Duration::from_secs(60),
            rerank_cadence: 50,
            seed: 1,
            worse_window: None,
            restart_after: 3,
            target_aspl: None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HistoryVariant {
    AcBd,
    AdBc,
    /// Search reset to the best graph seen so far; not a swap.
    Restart,
}

impl From<SwapVariant> for HistoryVariant {
    fn from(v: SwapVariant) -> Self {
        match v {
            SwapVariant::AcBd => HistoryVariant::AcBd,
            SwapVariant::AdBc => HistoryVariant::AdBc,
        }
    }
}

impl HistoryVariant {
    fn as_str(self) -> &'static str {
        match self {
            HistoryVariant::AcBd => "AC_BD",
            HistoryVariant::AdBc => "AD_BC",
            HistoryVariant::Restart => "RESTART",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SwapRecord {
    pub step: u64,
    pub aspl_before: f64,
    pub aspl_after: f64,
    pub diameter_after: u16,
    pub rank_i: usize,
    pub rank_j: usize,
    pub variant: HistoryVariant,
    pub accepted_worse: bool,
}

/// Log of every accepted swap (and restart), in order.
#[derive(Clone, Debug, Default)]
pub struct SwapHistory {
    pub records: Vec<SwapRecord>,
    /// Swap evaluations performed over the whole search.
    pub evaluations: u64,
}

impl SwapHistory {
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("step,aspl_before,aspl_after,diameter_after,rank_i,rank_j,variant,accepted_worse\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{:.9},{:.9},{},{},{},{},{}\n",
                r.step,
                r.aspl_before,
                r.aspl_after,
                r.diameter_after,
                r.rank_i,
                r.rank_j,
                r.variant.as_str(),
                r.accepted_worse
            ));
        }
        out
    }
}

/// Acceptance test on already-computed metrics, exact-sum based. Strict
/// mode takes lexicographic (diameter, ASPL) improvements; threshold mode is
/// additionally willing to take an equal-diameter ASPL increase of at most
/// `eps` (the search loop rate-limits how often that fires).
pub fn accept(current: &GraphMetrics, candidate: &GraphMetrics, acceptance: Acceptance) -> bool {
    if !candidate.connected {
        return false;
    }
    debug_assert_eq!(current.pairs, candidate.pairs);
    match decide(
        (current.diameter, current.dist_sum),
        (candidate.diameter, candidate.dist_sum),
        current.pairs,
        acceptance,
        true,
    ) {
        Some(_) => true,
        None => false,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum AcceptKind {
    Improvement,
    Worse,
}

fn decide(
    current: (u16, u64),
    candidate: (u16, u64),
    pairs: u64,
    acceptance: Acceptance,
    worse_allowed: bool,
) -> Option<AcceptKind> {
    let (cur_diam, cur_sum) = current;
    let (cand_diam, cand_sum) = candidate;
    if cand_diam < cur_diam || (cand_diam == cur_diam && cand_sum < cur_sum) {
        return Some(AcceptKind::Improvement);
    }
    if let Acceptance::Threshold { eps } = acceptance {
        if worse_allowed && cand_diam == cur_diam {
            let increase = (cand_sum - cur_sum) as f64 / pairs as f64;
            if increase <= eps {
                return Some(AcceptKind::Worse);
            }
        }
    }
    None
}

/// The full local search. Returns the best graph found (never worse than
/// the input) and the swap history that leads to it.
pub fn multiple_2opt(g: &Graph, cfg: &SearchConfig) -> Result<(Graph, SwapHistory), SearchError> {
    let mut state = ApspState::new(g).map_err(|_| SearchError::Disconnected)?;
    let mut history = SwapHistory::default();
    let m = g.edge_count();
    if m < 2 {
        return Ok((g.clone(), history));
    }
    let n = g.order() as u64;
    let ordered_pairs = n * (n - 1);

    let mut rank = state.rank();
    let mut seq = PairSequence::new(cfg.ordering, m);
    let worse_window = cfg.worse_window.unwrap_or_else(|| seq.pair_count());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let start = Instant::now();

    let mut best_graph = state.graph().clone();
    let mut best_key = (state.diameter(), state.total());
    let mut step = 0u64;
    let mut accepted_since_rerank = 0usize;
    let mut evals_since_worse = 0u64;
    let mut pass_accepted = false;
    let mut pass_improved_best = false;
    let mut fruitless_passes = 0usize;
    let mut proposals: Vec<SwapProposal> = Vec::with_capacity(2);

    let target_sum = cfg
        .target_aspl
        .map(|t| (t * ordered_pairs as f64).floor() as u64);
    let reached_target = |key: (u16, u64)| target_sum.is_some_and(|t| key.1 <= t);

    'search: loop {
        if start.elapsed() >= cfg.timeout || reached_target(best_key) {
            break;
        }
        let Some((ri, rj)) = seq.next() else {
            // Pass boundary.
            if !pass_accepted && cfg.acceptance == Acceptance::Strict {
                break; // converged
            }
            if pass_improved_best {
                fruitless_passes = 0;
            } else {
                fruitless_passes += 1;
                let stuck_off_best = (state.diameter(), state.total()) != best_key;
                if matches!(cfg.acceptance, Acceptance::Threshold { .. })
                    && fruitless_passes >= cfg.restart_after
                    && stuck_off_best
                {
                    step += 1;
                    let aspl_before = state.aspl();
                    state = ApspState::new(&best_graph).map_err(|_| SearchError::Disconnected)?;
                    rank = state.rank();
                    accepted_since_rerank = 0;
                    // Jitter the worse-acceptance window so the next descent
                    // explores a different branch.
                    evals_since_worse = rng.gen_range(0..=worse_window / 2);
                    history.records.push(SwapRecord {
                        step,
                        aspl_before,
                        aspl_after: state.aspl(),
                        diameter_after: state.diameter(),
                        rank_i: 0,
                        rank_j: 0,
                        variant: HistoryVariant::Restart,
                        accepted_worse: false,
                    });
                    fruitless_passes = 0;
                }
            }
            seq.reset();
            pass_accepted = false;
            pass_improved_best = false;
            continue;
        };

        let e1 = rank.edge_at(ri);
        let e2 = rank.edge_at(rj);
        propose_into(state.graph(), e1, e2, &mut proposals);
        if proposals.is_empty() {
            continue;
        }

        // Evaluate the variants, keep the lexicographically best candidate;
        // acceptance is monotone, so only the best can be accepted.
        let mut chosen: Option<(SwapProposal, CandidateEval)> = None;
        for p in &proposals {
            history.evaluations += 1;
            let Some(eval) = state.evaluate(p) else {
                evals_since_worse += 1;
                continue;
            };
            evals_since_worse += 1;
            let better = match &chosen {
                None => true,
                Some((_, cur)) => (eval.diameter, eval.total) < (cur.diameter, cur.total),
            };
            if better {
                chosen = Some((*p, eval));
            }
        }
        let Some((p, eval)) = chosen else { continue };
        let current = (state.diameter(), state.total());
        let worse_allowed = evals_since_worse >= worse_window;
        let Some(kind) = decide(
            current,
            (eval.diameter, eval.total),
            ordered_pairs,
            cfg.acceptance,
            worse_allowed,
        ) else {
            continue;
        };

        let aspl_before = state.aspl();
        state.commit(&p);
        step += 1;
        rank.replace_slot(ri, p.added[0]);
        rank.replace_slot(rj, p.added[1]);
        history.records.push(SwapRecord {
            step,
            aspl_before,
            aspl_after: state.aspl(),
            diameter_after: state.diameter(),
            rank_i: ri,
            rank_j: rj,
            variant: p.variant.into(),
            accepted_worse: kind == AcceptKind::Worse,
        });
        if kind == AcceptKind::Worse {
            evals_since_worse = 0;
        }
        pass_accepted = true;
        let key = (state.diameter(), state.total());
        if key < best_key {
            best_key = key;
            best_graph = state.graph().clone();
            pass_improved_best = true;
            if reached_target(best_key) {
                break 'search;
            }
        }
        accepted_since_rerank += 1;
        if accepted_since_rerank >= cfg.rerank_cadence {
            rank = state.rank();
            accepted_since_rerank = 0;
            seq.reset();
            if pass_improved_best {
                fruitless_passes = 0;
            }
            pass_accepted = false;
            pass_improved_best = false;
        }
    }
    Ok((best_graph, history))
}

/// Re-applies a history against its input graph, reproducing the search's
/// rank bookkeeping (slot inheritance, reranks every `rerank_cadence`
/// accepted swaps, restarts). Returns the best graph, which must equal the
/// one the original search returned.
pub fn replay(
    g: &Graph,
    history: &SwapHistory,
    rerank_cadence: usize,
) -> Result<Graph, SearchError> {
    let mut state = ApspState::new(g).map_err(|_| SearchError::Disconnected)?;
    let mut rank = state.rank();
    let mut best_graph = state.graph().clone();
    let mut best_key = (state.diameter(), state.total());
    let mut accepted_since_rerank = 0usize;
    for rec in &history.records {
        match rec.variant {
            HistoryVariant::Restart => {
                state = ApspState::new(&best_graph).map_err(|_| SearchError::Disconnected)?;
                rank = state.rank();
                accepted_since_rerank = 0;
            }
            HistoryVariant::AcBd | HistoryVariant::AdBc => {
                let edges = rank.len();
                for r in [rec.rank_i, rec.rank_j] {
                    if r >= edges {
                        return Err(SearchError::BadHistoryRank { rank: r, edges });
                    }
                }
                let e1 = rank.edge_at(rec.rank_i);
                let e2 = rank.edge_at(rec.rank_j);
                let variant = match rec.variant {
                    HistoryVariant::AcBd => SwapVariant::AcBd,
                    _ => SwapVariant::AdBc,
                };
                let p = build_variant(e1, e2, variant);
                state.commit(&p);
                rank.replace_slot(rec.rank_i, p.added[0]);
                rank.replace_slot(rec.rank_j, p.added[1]);
                let key = (state.diameter(), state.total());
                if key < best_key {
                    best_key = key;
                    best_graph = state.graph().clone();
                }
                accepted_since_rerank += 1;
                if accepted_since_rerank >= rerank_cadence {
                    rank = state.rank();
                    accepted_since_rerank = 0;
                }
            }
        }
    }
    Ok(best_graph)
}
