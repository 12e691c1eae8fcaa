//! Undirected multigraphs built by stub matching, uniform node failure, and
//! the structural measurements used to check the subgraph formulas.

mod degree;
mod dsu;
mod edgelist;
mod percolation;

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::theory::TheoryError;

pub use degree::{fit_power_law_slope, realize_degree_sequence, DegreeHistogram, DegreeMode};
pub use dsu::DisjointSets;
pub use edgelist::{read_edge_list, write_edge_list, EdgeListHeader};
pub use percolation::{measure_survivors, percolate_report, PercolationReport, GIANT_SHARE_FLOOR};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("stub total {0} is odd")]
    Parity(u64),
    #[error("degree sequence is empty")]
    EmptySequence,
    #[error("a single stub cannot be matched")]
    SingleStub,
    #[error("sampled mode needs at least one node")]
    SampleSize,
    #[error("node {node} out of range for {nodes} nodes")]
    InvalidNode { node: usize, nodes: usize },
    #[error("need at least two nonzero histogram bins in range, found {0}")]
    InsufficientData(usize),
    #[error("node set is empty")]
    EmptySet,
    #[error("node {0} is not alive")]
    DeadNode(usize),
    #[error("alive mask has {got} entries, graph has {expected} nodes")]
    MaskLength { got: usize, expected: usize },
    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Theory(#[from] TheoryError),
}

pub type Result<T> = std::result::Result<T, GraphError>;

/// Undirected multigraph with per-node survival flags.
///
/// A self-loop on `u` appears twice in `u`'s neighbor list, so list length
/// equals degree. Structure is shared between a graph and its failed copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Arc<Vec<Vec<usize>>>,
    edges: Arc<Vec<(usize, usize)>>,
    alive: Vec<bool>,
}

/// Self-loop and parallel-edge statistics of a multigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MultigraphStats {
    pub self_loops: usize,
    pub nodes_with_self_loop: usize,
    /// Edges beyond the first between the same unordered pair.
    pub parallel_edges: usize,
}

impl Graph {
    pub fn from_edges(node_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in &edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(GraphError::InvalidNode {
                        node,
                        nodes: node_count,
                    });
                }
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self {
            adjacency: Arc::new(adjacency),
            edges: Arc::new(edges),
            alive: vec![true; node_count],
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbor multiset of `u`, dead neighbors included.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn is_alive(&self, u: usize) -> bool {
        self.alive[u]
    }

    pub fn alive(&self) -> &[bool] {
        &self.alive
    }

    pub fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn with_alive(&self, alive: Vec<bool>) -> Result<Self> {
        if alive.len() != self.node_count() {
            return Err(GraphError::MaskLength {
                got: alive.len(),
                expected: self.node_count(),
            });
        }
        Ok(Self {
            adjacency: Arc::clone(&self.adjacency),
            edges: Arc::clone(&self.edges),
            alive,
        })
    }

    pub fn stats(&self) -> MultigraphStats {
        let mut stats = MultigraphStats::default();
        let mut looped = vec![false; self.node_count()];
        let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(self.edges.len());
        for &(u, v) in self.edges.iter() {
            if u == v {
                stats.self_loops += 1;
                looped[u] = true;
            } else {
                pairs.push((u.min(v), u.max(v)));
            }
        }
        pairs.sort_unstable();
        stats.parallel_edges = pairs.windows(2).filter(|w| w[0] == w[1]).count();
        stats.nodes_with_self_loop = looped.iter().filter(|&&l| l).count();
        stats
    }

    /// Neighbor sets with parallel edges collapsed and self-loops dropped.
    /// Ignores survival flags.
    pub fn simple_neighbors(&self) -> Vec<Vec<usize>> {
        self.adjacency
            .iter()
            .enumerate()
            .map(|(u, list)| {
                let mut set: Vec<usize> = list.iter().copied().filter(|&v| v != u).collect();
                set.sort_unstable();
                set.dedup();
                set
            })
            .collect()
    }

    /// Like [`Graph::simple_neighbors`], restricted to alive-alive edges.
    /// Dead nodes get empty lists.
    pub fn alive_simple_neighbors(&self) -> Vec<Vec<usize>> {
        self.adjacency
            .iter()
            .enumerate()
            .map(|(u, list)| {
                if !self.alive[u] {
                    return Vec::new();
                }
                let mut set: Vec<usize> = list
                    .iter()
                    .copied()
                    .filter(|&v| v != u && self.alive[v])
                    .collect();
                set.sort_unstable();
                set.dedup();
                set
            })
            .collect()
    }
}

/// Uniform random stub matching. Self-loops and parallel edges are kept.
pub fn configuration_model<R: Rng + ?Sized>(degrees: &[usize], rng: &mut R) -> Result<Graph> {
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total % 2 == 1 {
        return Err(GraphError::Parity(total));
    }
    let mut stubs: Vec<usize> = Vec::with_capacity(total as usize);
    for (node, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(node, d));
    }
    stubs.shuffle(rng);
    let edges = stubs.chunks_exact(2).map(|pair| (pair[0], pair[1])).collect();
    Graph::from_edges(degrees.len(), edges)
}

/// Marks each node dead independently with probability `p`.
pub fn fail_uniform<R: Rng + ?Sized>(graph: &Graph, p: f64, rng: &mut R) -> Graph {
    let alive = (0..graph.node_count())
        .map(|_| rng.gen::<f64>() >= p)
        .collect();
    Graph {
        adjacency: Arc::clone(&graph.adjacency),
        edges: Arc::clone(&graph.edges),
        alive,
    }
}

/// Union of every alive-alive edge. Dead nodes stay singletons.
pub(crate) fn alive_components(graph: &Graph) -> DisjointSets {
    let mut sets = DisjointSets::new(graph.node_count());
    for &(u, v) in graph.edges.iter() {
        if graph.alive[u] && graph.alive[v] {
            sets.union(u, v);
        }
    }
    sets
}

/// Sizes of the connected components of the alive subgraph, largest first.
pub fn components(graph: &Graph) -> Vec<usize> {
    let mut sets = alive_components(graph);
    let mut sizes = Vec::new();
    for u in 0..graph.node_count() {
        if graph.alive[u] && sets.find(u) == u {
            sizes.push(sets.set_size(u));
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Outer-boundary expansion: alive nodes outside `node_set` adjacent to it,
/// divided by `|node_set|`.
pub fn expansion_boundary(graph: &Graph, node_set: &[usize]) -> Result<f64> {
    if node_set.is_empty() {
        return Err(GraphError::EmptySet);
    }
    let n = graph.node_count();
    let mut inside = vec![false; n];
    for &u in node_set {
        if u >= n {
            return Err(GraphError::InvalidNode { node: u, nodes: n });
        }
        if !graph.alive[u] {
            return Err(GraphError::DeadNode(u));
        }
        inside[u] = true;
    }
    let members = inside.iter().filter(|&&x| x).count();
    let mut boundary = vec![false; n];
    for u in (0..n).filter(|&u| inside[u]) {
        for &v in &graph.adjacency[u] {
            if !inside[v] && graph.alive[v] {
                boundary[v] = true;
            }
        }
    }
    let outside = boundary.iter().filter(|&&b| b).count();
    Ok(outside as f64 / members as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn clique(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn matching_small_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = configuration_model(&[1, 1], &mut rng).unwrap();
        assert_eq!(g.edges().len(), 1);
        let (u, v) = g.edges()[0];
        assert_eq!((u.min(v), u.max(v)), (0, 1));
        let g = configuration_model(&[2], &mut rng).unwrap();
        assert_eq!(g.edges(), &[(0, 0)]);
        assert_eq!(g.degree(0), 2);
        assert_eq!(g.stats().self_loops, 1);
        assert!(matches!(
            configuration_model(&[1, 1, 1], &mut rng),
            Err(GraphError::Parity(3))
        ));
    }

    #[test]
    fn simple_neighbors_collapse() {
        let g = Graph::from_edges(3, vec![(0, 1), (1, 0), (2, 2)]).unwrap();
        let s = g.simple_neighbors();
        assert_eq!(s[0], vec![1]);
        assert_eq!(s[1], vec![0]);
        assert!(s[2].is_empty());
        assert_eq!(g.stats().parallel_edges, 1);
        let k = clique(4);
        let s = k.simple_neighbors();
        for u in 0..4 {
            let mut expected: Vec<usize> = (0..4).filter(|&v| v != u).collect();
            expected.sort();
            assert_eq!(s[u], expected);
        }
    }

    #[test]
    fn failure_extremes() {
        let g = clique(50);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(fail_uniform(&g, 0.0, &mut rng).alive_count(), 50);
        assert_eq!(fail_uniform(&g, 1.0, &mut rng).alive_count(), 0);
    }

    #[test]
    fn failure_survivor_count_is_binomial() {
        let n = 100_000;
        let g = Graph::from_edges(n, Vec::new()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let survivors = fail_uniform(&g, 0.6, &mut rng).alive_count() as f64;
        let sd = (n as f64 * 0.4 * 0.6).sqrt();
        assert!((survivors - 0.4 * n as f64).abs() < 3.0 * sd);
    }

    #[test]
    fn failure_is_seed_deterministic() {
        let g = clique(30);
        let a = fail_uniform(&g, 0.5, &mut ChaCha8Rng::seed_from_u64(9));
        let b = fail_uniform(&g, 0.5, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a, b);
    }

    #[test]
    fn component_cases() {
        assert_eq!(components(&clique(5)), vec![5]);
        let g = Graph::from_edges(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(components(&g), vec![2, 2]);
        let path = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        let cut = path.with_alive(vec![true, false, true]).unwrap();
        assert_eq!(components(&cut), vec![1, 1]);
    }

    #[test]
    fn expansion_cases() {
        let k = clique(4);
        assert_eq!(expansion_boundary(&k, &[0, 1, 2, 3]).unwrap(), 0.0);
        let star = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(expansion_boundary(&star, &[0]).unwrap(), 3.0);
        // 5-clique plus a disjoint path
        let mut edges = clique(5).edges().to_vec();
        edges.extend([(5, 6), (6, 7)]);
        let g = Graph::from_edges(8, edges).unwrap();
        assert_eq!(expansion_boundary(&g, &[0, 1, 2, 3, 4]).unwrap(), 0.0);
        assert!(matches!(expansion_boundary(&g, &[]), Err(GraphError::EmptySet)));
        let dead = g.with_alive(vec![false; 8]).unwrap();
        assert!(matches!(expansion_boundary(&dead, &[0]), Err(GraphError::DeadNode(0))));
    }
}
