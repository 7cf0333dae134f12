//! Hop-distance computations: BFS rows, the all-pairs distance matrix,
//! diameter/ASPL metrics and Moore-style lower bounds.

use thiserror::Error;

use crate::graph::{Graph, GraphError, Node};

/// Sentinel distance for unreachable pairs.
pub const UNREACHABLE: u16 = u16::MAX;

#[derive(Error, Debug, PartialEq)]
pub enum MetricsError {
    #[error("ASPL undefined for order {0} < 2")]
    UndefinedAspl(usize),
}

/// Dense n-by-n matrix of hop distances, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u16>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Node, v: Node) -> u16 {
        self.dist[u as usize * self.n + v as usize]
    }

    #[inline]
    pub fn row(&self, u: Node) -> &[u16] {
        &self.dist[u as usize * self.n..(u as usize + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[u16] {
        &self.dist
    }

    #[cfg(test)]
    pub(crate) fn from_parts(n: usize, dist: Vec<u16>) -> Self {
        debug_assert_eq!(dist.len(), n * n);
        DistanceMatrix { n, dist }
    }

    pub(crate) fn dist_mut(&mut self) -> &mut [u16] {
        &mut self.dist
    }

    /// Panics if any matrix invariant is broken. Test support.
    pub fn assert_valid(&self) {
        for u in 0..self.n {
            assert_eq!(self.dist[u * self.n + u], 0, "nonzero diagonal at {u}");
            for v in 0..u {
                assert_eq!(
                    self.dist[u * self.n + v],
                    self.dist[v * self.n + u],
                    "asymmetry at ({u},{v})"
                );
            }
        }
    }
}

/// Flat adjacency (CSR layout); BFS over `Vec<Vec<_>>` wastes too much time
/// chasing pointers when the matrix is recomputed thousands of times.
struct Csr {
    offsets: Vec<u32>,
    targets: Vec<Node>,
}

impl Csr {
    fn build(g: &Graph) -> Self {
        let n = g.order();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * g.edge_count());
        offsets.push(0);
        for u in 0..n {
            targets.extend_from_slice(g.neighbors(u as Node));
            offsets.push(targets.len() as u32);
        }
        Csr { offsets, targets }
    }

    #[inline]
    fn neighbors(&self, u: Node) -> &[Node] {
        &self.targets[self.offsets[u as usize] as usize..self.offsets[u as usize + 1] as usize]
    }
}

fn bfs_into(csr: &Csr, n: usize, source: Node, row: &mut [u16], queue: &mut Vec<Node>) {
    row[..n].fill(UNREACHABLE);
    row[source as usize] = 0;
    queue.clear();
    queue.push(source);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let next = row[u as usize] + 1;
        for &v in csr.neighbors(u) {
            if row[v as usize] == UNREACHABLE {
                row[v as usize] = next;
                queue.push(v);
            }
        }
    }
}

/// Hop distances from `source` to every node; unreachable nodes carry
/// [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, source: Node) -> Result<Vec<u16>, GraphError> {
    let n = g.order();
    if source as usize >= n {
        return Err(GraphError::OutOfRange {
            node: source,
            order: n,
        });
    }
    let csr = Csr::build(g);
    let mut row = vec![0u16; n];
    let mut queue = Vec::with_capacity(n);
    bfs_into(&csr, n, source, &mut row, &mut queue);
    Ok(row)
}

/// All-pairs hop distances via one BFS per source.
pub fn apsp(g: &Graph) -> DistanceMatrix {
    apsp_with_workers(g, 1)
}

/// Same result as [`apsp`], bit for bit; `workers > 1` splits the sources
/// over that many threads.
pub fn apsp_with_workers(g: &Graph, workers: usize) -> DistanceMatrix {
    let n = g.order();
    let csr = Csr::build(g);
    let mut dist = vec![0u16; n * n];
    if workers <= 1 || n < 64 {
        let mut queue = Vec::with_capacity(n);
        for (s, row) in dist.chunks_mut(n.max(1)).enumerate() {
            bfs_into(&csr, n, s as Node, row, &mut queue);
        }
    } else {
        let workers = workers.min(n);
        let rows_per = n.div_ceil(workers);
        std::thread::scope(|scope| {
            let csr = &csr;
            for (chunk_idx, chunk) in dist.chunks_mut(rows_per * n).enumerate() {
                scope.spawn(move || {
                    let mut queue = Vec::with_capacity(n);
                    let first = chunk_idx * rows_per;
                    for (i, row) in chunk.chunks_mut(n).enumerate() {
                        bfs_into(csr, n, (first + i) as Node, row, &mut queue);
                    }
                });
            }
        });
    }
    DistanceMatrix { n, dist }
}

/// Plain BFS over nested adjacency lists, for callers that mutate the graph
/// between sweeps and cannot amortize a CSR build.
pub(crate) fn bfs_adj(adj: &[Vec<Node>], source: Node, row: &mut [u16], queue: &mut Vec<Node>) {
    let n = adj.len();
    row[..n].fill(UNREACHABLE);
    row[source as usize] = 0;
    queue.clear();
    queue.push(source);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let next = row[u as usize] + 1;
        for &v in &adj[u as usize] {
            if row[v as usize] == UNREACHABLE {
                row[v as usize] = next;
                queue.push(v);
            }
        }
    }
}

/// BFS that additionally counts, for every node `v`, the number of
/// predecessor edges `(w, v)` with `d(s,w) + 1 = d(s,v)`. The counts feed the
/// edge-importance buckets and the swap dirty-row test.
pub(crate) fn bfs_with_preds(
    adj: &[Vec<Node>],
    source: Node,
    row: &mut [u16],
    preds: &mut [u8],
    queue: &mut Vec<Node>,
) {
    let n = adj.len();
    row[..n].fill(UNREACHABLE);
    preds[..n].fill(0);
    row[source as usize] = 0;
    queue.clear();
    queue.push(source);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let next = row[u as usize] + 1;
        for &v in &adj[u as usize] {
            let dv = row[v as usize];
            if dv == UNREACHABLE {
                row[v as usize] = next;
                preds[v as usize] = 1;
                queue.push(v);
            } else if dv == next {
                preds[v as usize] = preds[v as usize].saturating_add(1);
            }
        }
    }
}

/// Summary metrics of a distance matrix. `dist_sum` is the exact sum of
/// distances over unordered pairs, the numerator used for all exact ASPL
/// comparisons; `aspl` is its floating-point quotient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphMetrics {
    pub diameter: u16,
    pub aspl: f64,
    pub connected: bool,
    pub degree_min: usize,
    pub degree_max: usize,
    pub dist_sum: u64,
    pub pairs: u64,
}

/// Diameter, ASPL (over unordered pairs) and degree range from a matrix.
///
/// On a disconnected graph `connected` is false and diameter/ASPL cover the
/// finite entries only.
pub fn metrics(dm: &DistanceMatrix) -> Result<GraphMetrics, MetricsError> {
    let n = dm.order();
    if n < 2 {
        return Err(MetricsError::UndefinedAspl(n));
    }
    let mut diameter = 0u16;
    let mut sum = 0u64;
    let mut finite_pairs = 0u64;
    let mut connected = true;
    let mut degree_min = usize::MAX;
    let mut degree_max = 0usize;
    for u in 0..n {
        let row = dm.row(u as Node);
        let mut degree = 0usize;
        for (v, &d) in row.iter().enumerate() {
            if d == 1 {
                degree += 1;
            }
            if v <= u {
                continue;
            }
            if d == UNREACHABLE {
                connected = false;
            } else {
                diameter = diameter.max(d);
                sum += d as u64;
                finite_pairs += 1;
            }
        }
        degree_min = degree_min.min(degree);
        degree_max = degree_max.max(degree);
    }
    let pairs = (n as u64) * (n as u64 - 1) / 2;
    let aspl_pairs = if connected { pairs } else { finite_pairs };
    Ok(GraphMetrics {
        diameter,
        aspl: if aspl_pairs > 0 {
            sum as f64 / aspl_pairs as f64
        } else {
            0.0
        },
        connected,
        degree_min,
        degree_max,
        dist_sum: sum,
        pairs: aspl_pairs,
    })
}

/// Moore-style lower bounds for a connected graph of given order and degree.
///
/// `aspl_sum / aspl_pairs` is the exact rational ASPL bound; `diameter` is
/// the smallest radius whose capacity covers the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerBounds {
    pub diameter: u16,
    pub aspl_sum: u64,
    pub aspl_pairs: u64,
}

impl LowerBounds {
    pub fn aspl(&self) -> f64 {
        self.aspl_sum as f64 / self.aspl_pairs as f64
    }
}

#[derive(Error, Debug, PartialEq)]
pub enum BoundsError {
    #[error("lower bounds require order >= 2 and degree >= 2, got n={n}, d={d}")]
    Invalid { n: usize, d: usize },
}

/// Fills distance shells greedily: at most `d*(d-1)^(m-1)` nodes can sit at
/// distance `m` from any node.
pub fn lower_bounds(n: usize, d: usize) -> Result<LowerBounds, BoundsError> {
    if n < 2 || d < 2 {
        return Err(BoundsError::Invalid { n, d });
    }
    let mut remaining = (n - 1) as u64;
    let mut capacity = d as u64;
    let mut level = 1u64;
    let mut sum = 0u64;
    while remaining > 0 {
        let here = capacity.min(remaining);
        sum += level * here;
        remaining -= here;
        level += 1;
        capacity = capacity.saturating_mul((d - 1) as u64);
    }
    Ok(LowerBounds {
        diameter: (level - 1) as u16,
        aspl_sum: sum,
        aspl_pairs: (n - 1) as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(
            n,
            (0..n).map(|i| (i as Node, ((i + 1) % n) as Node)),
        )
        .unwrap()
    }

    #[test]
    fn bfs_on_c4() {
        let g = cycle(4);
        assert_eq!(bfs_distances(&g, 0).unwrap(), vec![0, 1, 2, 1]);
    }

    #[test]
    fn bfs_source_out_of_range() {
        let g = cycle(4);
        assert!(matches!(
            bfs_distances(&g, 9),
            Err(GraphError::OutOfRange { node: 9, .. })
        ));
    }

    #[test]
    fn bfs_disconnected_sentinel() {
        let g = Graph::new(2);
        assert_eq!(bfs_distances(&g, 0).unwrap(), vec![0, UNREACHABLE]);
    }

    #[test]
    fn apsp_k4_and_p4() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let dm = apsp(&k4);
        for u in 0..4u32 {
            for v in 0..4u32 {
                assert_eq!(dm.get(u, v), u16::from(u != v));
            }
        }
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(apsp(&p4).get(0, 3), 3);
    }

    #[test]
    fn apsp_parallel_is_bit_identical() {
        let g = cycle(70);
        let seq = apsp_with_workers(&g, 1);
        let par = apsp_with_workers(&g, 4);
        assert_eq!(seq, par);
    }

    #[test]
    fn metrics_on_small_graphs() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let m = metrics(&apsp(&k4)).unwrap();
        assert_eq!(m.diameter, 1);
        assert_eq!(m.aspl, 1.0);
        assert!(m.connected);

        // Path on 3 nodes: distances 1, 1, 2.
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let m = metrics(&apsp(&p3)).unwrap();
        assert_eq!(m.diameter, 2);
        assert_eq!((m.dist_sum, m.pairs), (4, 3));
        assert_eq!(m.aspl, 4.0 / 3.0);
    }

    #[test]
    fn metrics_rejects_tiny_orders() {
        let g = Graph::new(1);
        assert_eq!(metrics(&apsp(&g)).unwrap_err(), MetricsError::UndefinedAspl(1));
    }

    #[test]
    fn metrics_disconnected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let m = metrics(&apsp(&g)).unwrap();
        assert!(!m.connected);
        assert_eq!(m.diameter, 1);
    }

    #[test]
    fn lower_bounds_examples() {
        // Complete graph K5.
        let lb = lower_bounds(5, 4).unwrap();
        assert_eq!(lb.diameter, 1);
        assert_eq!((lb.aspl_sum, lb.aspl_pairs), (4, 4));

        // Petersen parameters attain the bound: 3 nodes at 1, 6 at 2.
        let lb = lower_bounds(10, 3).unwrap();
        assert_eq!(lb.diameter, 2);
        assert_eq!((lb.aspl_sum, lb.aspl_pairs), (15, 9)); // 5/3

        // 16 at distance 1, 239 at distance 2.
        let lb = lower_bounds(256, 16).unwrap();
        assert_eq!(lb.diameter, 2);
        assert_eq!((lb.aspl_sum, lb.aspl_pairs), (494, 255));

        assert_eq!(
            lower_bounds(1, 3).unwrap_err(),
            BoundsError::Invalid { n: 1, d: 3 }
        );
    }
}
