//! Shared oracles for integration tests. Everything here recomputes from
//! first principles (Floyd–Warshall, exhaustive set construction) so that
//! the library's BFS-based fast paths are checked against an independent
//! route.

#![allow(dead_code)] // each test binary uses a subset

use odgraph::{Graph, Node};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const INF: u32 = u32::MAX / 4;

/// Independent all-pairs shortest paths by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.order();
    let mut d = vec![vec![INF; n]; n];
    for u in 0..n {
        d[u][u] = 0;
    }
    for e in g.edges() {
        d[e.u as usize][e.v as usize] = 1;
        d[e.v as usize][e.u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            if d[i][k] == INF {
                continue;
            }
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Exact `|D1(i) ∩ D2(j)| + |D2(i) ∩ D1(j)|` built from explicit node sets
/// over Floyd–Warshall distances.
pub fn brute_count_paths(g: &Graph, i: Node, j: Node) -> u32 {
    let d = floyd_warshall(g);
    let set = |x: Node, m: u32| -> Vec<Node> {
        (0..g.order() as Node)
            .filter(|&y| d[x as usize][y as usize] == m)
            .collect()
    };
    let inter = |a: &[Node], b: &[Node]| a.iter().filter(|x| b.contains(x)).count() as u32;
    inter(&set(i, 1), &set(j, 2)) + inter(&set(i, 2), &set(j, 1))
}

/// Edge importance straight from the definition, with its own distances.
pub fn brute_importance(g: &Graph, ju: Node, jv: Node) -> f64 {
    let d = floyd_warshall(g);
    let mut total = 0.0;
    for i in 0..g.order() as Node {
        let dju = d[i as usize][ju as usize];
        let djv = d[i as usize][jv as usize];
        if dju == djv {
            continue;
        }
        let (near, far) = if dju < djv { (dju, jv) } else { (djv, ju) };
        let routes = (0..g.order() as Node)
            .filter(|&w| d[i as usize][w as usize] == near && g.has_edge(w, far))
            .count();
        total += 1.0 / routes as f64;
    }
    total
}

/// Exhaustive count of simple cycles of `len` edges through `u-v`, by
/// checking every node subset of that size.
pub fn brute_cycles_through_edge(g: &Graph, u: Node, v: Node, len: usize) -> u64 {
    let nodes: Vec<Node> = (0..g.order() as Node).collect();
    let mut count = 0u64;
    let mut subset = Vec::with_capacity(len);
    fn recurse(
        nodes: &[Node],
        start: usize,
        subset: &mut Vec<Node>,
        len: usize,
        g: &Graph,
        u: Node,
        v: Node,
        count: &mut u64,
    ) {
        if subset.len() == len {
            *count += cycles_on_subset(g, subset, u, v);
            return;
        }
        for idx in start..nodes.len() {
            subset.push(nodes[idx]);
            recurse(nodes, idx + 1, subset, len, g, u, v, count);
            subset.pop();
        }
    }
    recurse(&nodes, 0, &mut subset, len, g, u, v, &mut count);
    count
}

/// Number of Hamiltonian cycles of `subset` that use edge `u-v` (0 or more,
/// counted once per undirected cycle).
fn cycles_on_subset(g: &Graph, subset: &[Node], u: Node, v: Node) -> u64 {
    if !subset.contains(&u) || !subset.contains(&v) {
        return 0;
    }
    // Fix the cycle to start at u; enumerate permutations of the rest with
    // v adjacent to u at one end; divide by 2 for direction via ordering.
    let rest: Vec<Node> = subset.iter().copied().filter(|&x| x != u).collect();
    let mut perm = rest.clone();
    let mut count = 0u64;
    permute(&mut perm, 0, &mut |p: &[Node]| {
        // Cycle u -> p[0] -> ... -> p[last] -> u; require the edge u-v to
        // appear, count each undirected cycle once (p[0] < p[last]).
        if p[0] > p[p.len() - 1] {
            return;
        }
        if !(p[0] == v || p[p.len() - 1] == v) {
            return;
        }
        if !g.has_edge(u, p[0]) || !g.has_edge(p[p.len() - 1], u) {
            return;
        }
        for w in p.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return;
            }
        }
        count += 1;
    });
    count
}

fn permute(items: &mut [Node], k: usize, visit: &mut impl FnMut(&[Node])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

pub fn cycle_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i as Node, ((i + 1) % n) as Node))).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n as Node {
        for v in u + 1..n as Node {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Connected random graph: a random spanning tree plus `extra` random
/// non-duplicate edges.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    let mut g = Graph::new(n);
    let mut order: Vec<Node> = (0..n as Node).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        g.add_edge(order[i], parent).unwrap();
    }
    let mut attempts = 0;
    let mut added = 0;
    while added < extra && attempts < extra * 20 {
        attempts += 1;
        let u = rng.gen_range(0..n) as Node;
        let v = rng.gen_range(0..n) as Node;
        if u != v && !g.has_edge(u, v) {
            g.add_edge(u, v).unwrap();
            added += 1;
        }
    }
    g
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
