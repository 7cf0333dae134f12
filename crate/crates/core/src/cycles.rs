//! Short-cycle diagnostics. Triangle/square/pentagon counts through an edge
//! are cheap to enumerate and tell whether a construction keeps the girth
//! high, which is what the whole seeding strategy is about.

use crate::graph::{Graph, GraphError, Node};

/// Number of distinct simple cycles of exactly `length` edges containing the
/// edge `u-v`.
///
/// A cycle through `u-v` is a simple `u`-to-`v` path of `length - 1` edges
/// that avoids the edge itself, so the count is a bounded DFS.
pub fn count_cycles_through_edge(
    g: &Graph,
    u: Node,
    v: Node,
    length: usize,
) -> Result<u64, GraphError> {
    if !g.has_edge(u, v) {
        return Err(GraphError::MissingEdge(u.min(v), u.max(v)));
    }
    assert!(length >= 3, "cycles have at least 3 edges");
    let mut on_path = vec![false; g.order()];
    on_path[u as usize] = true;
    Ok(count_paths_to(g, u, v, length - 1, &mut on_path))
}

fn count_paths_to(g: &Graph, from: Node, target: Node, steps: usize, on_path: &mut [bool]) -> u64 {
    if steps == 1 {
        // Direct closing step; the skipped edge `u-v` can never close here
        // because `v` is only accepted as the final node.
        return u64::from(g.has_edge(from, target) && !on_path[target as usize]);
    }
    let mut total = 0;
    for &w in g.neighbors(from) {
        if w == target || on_path[w as usize] {
            continue;
        }
        on_path[w as usize] = true;
        total += count_paths_to(g, w, target, steps - 1, on_path);
        on_path[w as usize] = false;
    }
    total
}
