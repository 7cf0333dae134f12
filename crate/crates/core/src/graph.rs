//! Simple undirected graphs over dense 0-based node ids, plus the edge-list
//! interchange format used by every CLI command.

use std::fmt;
use std::io::{BufRead, Write};

use thiserror::Error;

/// Node identifier. Graphs here are dense, so ids are `0..n`.
pub type Node = u32;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at node {0}")]
    SelfLoop(Node),
    #[error("node {node} out of range for order {order}")]
    OutOfRange { node: Node, order: usize },
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(Node, Node),
    #[error("edge {0}-{1} not present")]
    MissingEdge(Node, Node),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    pub u: Node,
    pub v: Node,
}

impl Edge {
    /// Normalizes endpoint order. Panics on a self-loop; edges between equal
    /// endpoints never exist in a valid [`Graph`].
    pub fn new(a: Node, b: Node) -> Self {
        assert_ne!(a, b, "self-loop is not an edge");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn endpoints(&self) -> (Node, Node) {
        (self.u, self.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph: no self-loops, no parallel edges.
///
/// Adjacency lists are kept sorted so that neighbor iteration, edge
/// iteration and serialization are deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<Node>>,
    edge_count: usize,
}

impl Graph {
    /// Creates an edgeless graph on `n` nodes.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Node, Node)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, u: Node) -> usize {
        self.adjacency[u as usize].len()
    }

    pub fn neighbors(&self, u: Node) -> &[Node] {
        &self.adjacency[u as usize]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<Node>] {
        &self.adjacency
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn check_pair(&self, u: Node, v: Node) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        for node in [u, v] {
            if node as usize >= self.n {
                return Err(GraphError::OutOfRange {
                    node,
                    order: self.n,
                });
            }
        }
        Ok(())
    }

    pub fn has_edge(&self, u: Node, v: Node) -> bool {
        if u == v || u as usize >= self.n || v as usize >= self.n {
            return false;
        }
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn add_edge(&mut self, u: Node, v: Node) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        let pos_u = match self.adjacency[u as usize].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => pos,
        };
        self.adjacency[u as usize].insert(pos_u, v);
        let pos_v = self.adjacency[v as usize]
            .binary_search(&u)
            .expect_err("adjacency symmetry violated");
        self.adjacency[v as usize].insert(pos_v, u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Node, v: Node) -> Result<(), GraphError> {
        self.check_pair(u, v)?;
        let pos_u = match self.adjacency[u as usize].binary_search(&v) {
            Ok(pos) => pos,
            Err(_) => return Err(GraphError::MissingEdge(u.min(v), u.max(v))),
        };
        self.adjacency[u as usize].remove(pos_u);
        let pos_v = self.adjacency[v as usize]
            .binary_search(&u)
            .expect("adjacency symmetry violated");
        self.adjacency[v as usize].remove(pos_v);
        self.edge_count -= 1;
        Ok(())
    }

    /// Iterates edges as `Edge { u < v }` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as Node;
            nbrs.iter()
                .filter(move |&&v| v > u)
                .map(move |&v| Edge { u, v })
        })
    }

    /// Panics if any representation invariant is broken. Test support.
    pub fn assert_valid(&self) {
        let mut half_edges = 0usize;
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            let u = u as Node;
            assert!(
                nbrs.windows(2).all(|w| w[0] < w[1]),
                "adjacency of {u} not sorted/deduplicated"
            );
            for &v in nbrs {
                assert_ne!(v, u, "self-loop at {u}");
                assert!((v as usize) < self.n, "neighbor {v} out of range");
                assert!(
                    self.adjacency[v as usize].binary_search(&u).is_ok(),
                    "edge {u}-{v} not symmetric"
                );
            }
            half_edges += nbrs.len();
        }
        assert_eq!(half_edges % 2, 0);
        assert_eq!(self.edge_count, half_edges / 2, "edge_count drifted");
    }
}

/// Parses the edge-list format: one `u v` pair per non-empty line.
///
/// The order is `1 + max node id`; use [`parse_edge_list_with_order`] when
/// trailing isolated nodes must be representable.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    parse_edge_list_with_order(reader, None)
}

pub fn parse_edge_list_with_order<R: BufRead>(
    reader: R,
    order: Option<usize>,
) -> Result<Graph, GraphError> {
    let mut pairs: Vec<(Node, Node)> = Vec::new();
    let mut max_id: Option<Node> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| GraphError::Parse {
            line: line_no,
            reason: e.to_string(),
        })?;
        let mut tokens = line.split_whitespace();
        let (u, v) = match (tokens.next(), tokens.next()) {
            (None, _) => continue, // blank line
            (Some(a), Some(b)) => {
                let u = a.parse::<Node>().map_err(|_| GraphError::Parse {
                    line: line_no,
                    reason: format!("bad node id {a:?}"),
                })?;
                let v = b.parse::<Node>().map_err(|_| GraphError::Parse {
                    line: line_no,
                    reason: format!("bad node id {b:?}"),
                })?;
                (u, v)
            }
            (Some(a), None) => {
                return Err(GraphError::Parse {
                    line: line_no,
                    reason: format!("expected two node ids, got {a:?}"),
                })
            }
        };
        if let Some(extra) = tokens.next() {
            return Err(GraphError::Parse {
                line: line_no,
                reason: format!("trailing token {extra:?}"),
            });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        pairs.push((u, v));
    }
    let n = match order {
        Some(n) => n,
        None => max_id.map_or(0, |m| m as usize + 1),
    };
    let mut g = Graph::new(n);
    for (u, v) in pairs {
        // Duplicate lines collapse to a single edge.
        if !g.has_edge(u, v) {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Writes one `u v` line per edge, `u < v`, sorted by `(u, v)`, LF-terminated.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u, e.v));
    }
    out
}

pub fn write_edge_list<W: Write>(g: &Graph, mut writer: W) -> std::io::Result<()> {
    writer.write_all(serialize_edge_list(g).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn parse_basic() {
        let g = parse_edge_list("0 1\n1 2\n".as_bytes()).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn parse_collapses_duplicates() {
        let g = parse_edge_list("0 1\n1 0\n".as_bytes()).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_rejects_self_loop() {
        assert_eq!(
            parse_edge_list("0 0\n".as_bytes()).unwrap_err(),
            GraphError::SelfLoop(0)
        );
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = parse_edge_list("0 1\n1 x\n".as_bytes()).unwrap_err();
        match err {
            GraphError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
        let err = parse_edge_list("0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, GraphError::Parse { line: 1, .. }));
    }

    #[test]
    fn parse_order_override() {
        let g = parse_edge_list_with_order("0 1\n".as_bytes(), Some(5)).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.degree(4), 0);
    }

    #[test]
    fn serialize_sorted() {
        let g = Graph::from_edges(3, [(1, 2), (0, 1)]).unwrap();
        assert_eq!(serialize_edge_list(&g), "0 1\n1 2\n");
        assert_eq!(serialize_edge_list(&Graph::new(2)), "");
    }

    #[test]
    fn add_edge_errors() {
        let mut g = path3();
        assert_eq!(g.add_edge(0, 1).unwrap_err(), GraphError::DuplicateEdge(0, 1));
        assert_eq!(g.add_edge(2, 2).unwrap_err(), GraphError::SelfLoop(2));
        assert_eq!(
            g.add_edge(0, 3).unwrap_err(),
            GraphError::OutOfRange { node: 3, order: 3 }
        );
        assert_eq!(g.remove_edge(0, 2).unwrap_err(), GraphError::MissingEdge(0, 2));
    }

    #[test]
    fn add_then_remove_roundtrips() {
        let mut g = path3();
        let before = g.clone();
        g.add_edge(0, 2).unwrap();
        assert_eq!(g.edge_count(), 3); // now a triangle
        g.remove_edge(0, 2).unwrap();
        assert_eq!(g, before);
        g.assert_valid();
    }
}
