//! Swap proposals: removing two edges `a-b`, `c-d` and reconnecting the four
//! endpoints either as `a-c`/`b-d` or as `a-d`/`b-c`. Degrees are unchanged
//! by construction; a variant is skipped when an endpoint would be shared
//! (self-loop) or an added edge already exists, since either would silently
//! drop a degree.

use crate::graph::{Edge, Graph};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SwapVariant {
    /// Add `a-c` and `b-d`.
    AcBd,
    /// Add `a-d` and `b-c`.
    AdBc,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SwapProposal {
    pub removed: [Edge; 2],
    pub added: [Edge; 2],
    pub variant: SwapVariant,
}

impl SwapProposal {
    /// The proposal that undoes this one.
    pub fn inverse(&self) -> SwapProposal {
        SwapProposal {
            removed: self.added,
            added: self.removed,
            variant: self.variant,
        }
    }
}

/// Builds the proposal for one variant without validity checks. The caller
/// must ensure all four endpoints are distinct.
pub(crate) fn build_variant(e1: Edge, e2: Edge, variant: SwapVariant) -> SwapProposal {
    let (a, b) = e1.endpoints();
    let (c, d) = e2.endpoints();
    let added = match variant {
        SwapVariant::AcBd => [Edge::new(a, c), Edge::new(b, d)],
        SwapVariant::AdBc => [Edge::new(a, d), Edge::new(b, c)],
    };
    SwapProposal {
        removed: [e1, e2],
        added,
        variant,
    }
}

/// Yields the valid rewirings of edge pair `(e1, e2)`: up to two proposals.
pub fn propose(g: &Graph, e1: Edge, e2: Edge) -> Vec<SwapProposal> {
    let mut out = Vec::with_capacity(2);
    propose_into(g, e1, e2, &mut out);
    out
}

pub(crate) fn propose_into(g: &Graph, e1: Edge, e2: Edge, out: &mut Vec<SwapProposal>) {
    out.clear();
    debug_assert!(g.has_edge(e1.u, e1.v) && g.has_edge(e2.u, e2.v));
    debug_assert_ne!(e1, e2);
    let (a, b) = e1.endpoints();
    let (c, d) = e2.endpoints();
    // Any shared endpoint makes both variants degenerate.
    if a == c || a == d || b == c || b == d {
        return;
    }
    if !g.has_edge(a, c) && !g.has_edge(b, d) {
        out.push(build_variant(e1, e2, SwapVariant::AcBd));
    }
    if !g.has_edge(a, d) && !g.has_edge(b, c) {
        out.push(build_variant(e1, e2, SwapVariant::AdBc));
    }
}

/// Applies a proposal to the graph. Panics if the proposal is stale.
pub(crate) fn apply_to_graph(g: &mut Graph, p: &SwapProposal) {
    for e in &p.removed {
        g.remove_edge(e.u, e.v).expect("removed edge vanished");
    }
    for e in &p.added {
        g.add_edge(e.u, e.v).expect("added edge collided");
    }
}
