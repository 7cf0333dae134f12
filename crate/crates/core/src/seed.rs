//! Base-graph construction: a chain of Petersen blocks (size 10) and 11-node
//! filler blocks, each block wired to its successor by a ten-edge matching.
//!
//! The result is connected with degree 5 on interior connectable nodes and
//! degree 4 on end-block and spare nodes, which leaves room to grow toward
//! any target degree of at least five.

use thiserror::Error;

use crate::graph::{Graph, Node};

#[derive(Error, Debug, PartialEq)]
pub enum SeedError {
    #[error("base graph needs order >= 20, got {0}")]
    OrderTooSmall(usize),
    #[error("order {n}: {fillers} filler blocks exceed {blocks} total blocks")]
    TooManyFillers { n: usize, fillers: usize, blocks: usize },
    #[error("matching is not a bijection on 0..10")]
    BadMatching,
    #[error("matching would duplicate edge {0}-{1}")]
    MatchingCollision(Node, Node),
}

/// How consecutive blocks are wired together. Each variant is a bijection
/// `m` on local ids `0..10`; block `k`'s node `i` connects to block `k+1`'s
/// node `m(i)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Matching {
    /// Sends outer-ring nodes onto inner-ring nodes (and back) so that no
    /// block edge maps onto another block edge; adjacent identical blocks
    /// then share no 4-cycle through a pair of matching edges.
    #[default]
    Cross,
    /// `i -> (i + 5) mod 10`.
    Offset5,
    /// `i -> i`.
    Identity,
}

impl Matching {
    pub fn permutation(self) -> [Node; 10] {
        match self {
            // Outer i -> inner 5 + (2i + 1 mod 5); inner 5 + x -> outer 3x mod 5.
            Matching::Cross => [6, 8, 5, 7, 9, 0, 3, 1, 4, 2],
            Matching::Offset5 => [5, 6, 7, 8, 9, 0, 1, 2, 3, 4],
            Matching::Identity => [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockKind {
    Petersen,
    Filler11,
}

impl BlockKind {
    pub fn size(self) -> usize {
        match self {
            BlockKind::Petersen => 10,
            BlockKind::Filler11 => 11,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Block {
    pub kind: BlockKind,
    pub offset: Node,
}

/// The block layout for a given order: `n mod 10` filler blocks replace
/// Petersen blocks at the tail of the chain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockPlan {
    pub blocks: Vec<Block>,
    pub n: usize,
}

impl BlockPlan {
    pub fn for_order(n: usize) -> Result<Self, SeedError> {
        if n < 20 {
            return Err(SeedError::OrderTooSmall(n));
        }
        let blocks_total = n / 10;
        let fillers = n % 10;
        if fillers >= blocks_total {
            return Err(SeedError::TooManyFillers {
                n,
                fillers,
                blocks: blocks_total,
            });
        }
        let mut blocks = Vec::with_capacity(blocks_total);
        let mut offset = 0u32;
        for idx in 0..blocks_total {
            let kind = if idx < blocks_total - fillers {
                BlockKind::Petersen
            } else {
                BlockKind::Filler11
            };
            blocks.push(Block { kind, offset });
            offset += kind.size() as u32;
        }
        debug_assert_eq!(offset as usize, n);
        Ok(BlockPlan { blocks, n })
    }
}

/// The Petersen graph: 10 nodes, 15 edges, 3-regular, girth 5, diameter 2.
///
/// Edges, for `i` in `0..5` and `j` in `5..10`:
/// `(i, (i+1) mod 5)`, `(i, (2i mod 5) + 5)`, `(j, ((j+1) mod 5) + 5)`.
pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5u32 {
        g.add_edge(i, (i + 1) % 5).unwrap();
        g.add_edge(i, (2 * i) % 5 + 5).unwrap();
        let j = i + 5;
        g.add_edge(j, (j + 1) % 5 + 5).unwrap();
    }
    g
}

/// Local id of the filler block's spare node, excluded from inter-block
/// matchings.
pub const SPARE_NODE: Node = 10;

/// An 11-node filler block: a Petersen graph on local ids 0..10 plus a spare
/// apex node 10 adjacent to {0, 2, 5, 7}. Max degree 4, diameter 3,
/// connected; the apex keeps exactly four edges.
pub fn filler11() -> (Graph, Node) {
    let base = petersen();
    let mut g = Graph::new(11);
    for e in base.edges() {
        g.add_edge(e.u, e.v).unwrap();
    }
    for v in [0, 2, 5, 7] {
        g.add_edge(SPARE_NODE, v).unwrap();
    }
    (g, SPARE_NODE)
}

/// Adds the ten edges `offset_a + i` to `offset_b + matching[i]`.
pub fn connect_blocks(
    g: &mut Graph,
    offset_a: Node,
    offset_b: Node,
    matching: &[Node; 10],
) -> Result<(), SeedError> {
    let mut seen = [false; 10];
    for &m in matching {
        if m >= 10 || seen[m as usize] {
            return Err(SeedError::BadMatching);
        }
        seen[m as usize] = true;
    }
    for (i, &m) in matching.iter().enumerate() {
        let (u, v) = (offset_a + i as Node, offset_b + m);
        if g.has_edge(u, v) {
            return Err(SeedError::MatchingCollision(u, v));
        }
    }
    for (i, &m) in matching.iter().enumerate() {
        g.add_edge(offset_a + i as Node, offset_b + m)
            .expect("collision checked above");
    }
    Ok(())
}

/// Builds the order-`n` base graph: blocks laid out per [`BlockPlan`], each
/// block's connectable nodes (local 0..10) matched to the next block's.
pub fn create_base_graph(n: usize, matching: Matching) -> Result<Graph, SeedError> {
    let plan = BlockPlan::for_order(n)?;
    let perm = matching.permutation();
    let mut g = Graph::new(n);
    for block in &plan.blocks {
        let local = match block.kind {
            BlockKind::Petersen => petersen(),
            BlockKind::Filler11 => filler11().0,
        };
        for e in local.edges() {
            g.add_edge(block.offset + e.u, block.offset + e.v).unwrap();
        }
    }
    for pair in plan.blocks.windows(2) {
        connect_blocks(&mut g, pair[0].offset, pair[1].offset, &perm)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{apsp, metrics};

    #[test]
    fn petersen_shape() {
        let g = petersen();
        assert_eq!(g.order(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|u| g.degree(u) == 3));
        for (u, v) in [(0, 1), (0, 5), (1, 7), (3, 6), (5, 6), (9, 5)] {
            assert!(g.has_edge(u, v), "expected edge {u}-{v}");
        }
        let m = metrics(&apsp(&g)).unwrap();
        assert_eq!(m.diameter, 2);
        // ASPL 5/3, exactly.
        assert_eq!(m.dist_sum * 3, 5 * m.pairs);
    }

    #[test]
    fn filler_shape() {
        let (g, spare) = filler11();
        assert_eq!(spare, 10);
        assert_eq!(g.order(), 11);
        assert_eq!(g.edge_count(), 19);
        assert_eq!(g.degree(10), 4);
        assert_eq!(g.max_degree(), 4);
        let m = metrics(&apsp(&g)).unwrap();
        assert!(m.connected);
        assert!(m.diameter <= 3);
    }

    #[test]
    fn cross_matching_never_maps_edge_onto_edge() {
        let p = petersen();
        let perm = Matching::Cross.permutation();
        for e in p.edges() {
            assert!(
                !p.has_edge(perm[e.u as usize], perm[e.v as usize]),
                "edge {e} maps onto an edge"
            );
        }
    }

    #[test]
    fn connect_identity() {
        let mut g = Graph::new(20);
        for block in [0u32, 10] {
            for e in petersen().edges() {
                g.add_edge(block + e.u, block + e.v).unwrap();
            }
        }
        connect_blocks(&mut g, 0, 10, &Matching::Identity.permutation()).unwrap();
        assert_eq!(g.edge_count(), 40);
        for i in 0..10u32 {
            assert!(g.has_edge(i, i + 10));
            assert_eq!(g.degree(i), 4);
            assert_eq!(g.degree(i + 10), 4);
        }
    }

    #[test]
    fn connect_rejects_bad_matchings() {
        let mut g = Graph::new(20);
        let double: [Node; 10] = [0, 0, 1, 2, 3, 4, 5, 6, 7, 8];
        assert_eq!(
            connect_blocks(&mut g, 0, 10, &double).unwrap_err(),
            SeedError::BadMatching
        );
    }

    #[test]
    fn plan_counts() {
        let plan = BlockPlan::for_order(256).unwrap();
        assert_eq!(plan.blocks.len(), 25);
        let fillers = plan
            .blocks
            .iter()
            .filter(|b| b.kind == BlockKind::Filler11)
            .count();
        assert_eq!(fillers, 6);
        assert_eq!(BlockPlan::for_order(15).unwrap_err(), SeedError::OrderTooSmall(15));
        assert!(matches!(
            BlockPlan::for_order(25),
            Err(SeedError::TooManyFillers { .. })
        ));
    }

    #[test]
    fn base_graph_30() {
        let g = create_base_graph(30, Matching::Cross).unwrap();
        assert_eq!(g.order(), 30);
        // 3 Petersen blocks and 2 inter-block matchings.
        assert_eq!(g.edge_count(), 3 * 15 + 2 * 10);
        let deg4 = (0..30).filter(|&u| g.degree(u) == 4).count();
        let deg5 = (0..30).filter(|&u| g.degree(u) == 5).count();
        assert_eq!((deg4, deg5), (20, 10));
        assert!(metrics(&apsp(&g)).unwrap().connected);
    }

    #[test]
    fn base_graph_31_with_filler() {
        let g = create_base_graph(31, Matching::Cross).unwrap();
        assert_eq!(g.order(), 31);
        assert!(metrics(&apsp(&g)).unwrap().connected);
        // Spare node of the trailing filler block keeps its four apex edges.
        assert_eq!(g.degree(20 + SPARE_NODE), 4);
    }
}
