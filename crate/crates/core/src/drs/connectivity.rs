use super::{DrsError, Result, SigSpec};
use crate::graph::{expansion_boundary, DisjointSets, Graph};

/// Shape of a SIG inside a social graph.
#[derive(Debug, Clone, PartialEq)]
pub struct SigConnectivity {
    /// Component sizes of the member-induced subgraph, largest first.
    pub component_sizes: Vec<usize>,
    pub largest_component_fraction: f64,
    /// Members with no other member as a neighbor.
    pub orphan_fraction: f64,
    /// Outer-boundary expansion of the member set.
    pub gamma: f64,
}

/// Measures the subgraph induced by the SIG's members, placed by
/// `placement[user] = node`.
pub fn measure_sig_connectivity(
    graph: &Graph,
    sig: &SigSpec,
    placement: &[usize],
) -> Result<SigConnectivity> {
    let n = graph.node_count();
    let mut nodes = Vec::with_capacity(sig.members.len());
    let mut inside = vec![false; n];
    for &u in &sig.members {
        let node = *placement
            .get(u)
            .ok_or_else(|| DrsError::PlacementMismatch(format!("no node for user {u}")))?;
        if node >= n || !graph.is_alive(node) {
            return Err(DrsError::PlacementMismatch(format!(
                "user {u} placed on missing or dead node {node}"
            )));
        }
        inside[node] = true;
        nodes.push(node);
    }
    let gamma = expansion_boundary(graph, &nodes)?;

    let adjacency = graph.alive_simple_neighbors();
    let mut sets = DisjointSets::new(n);
    let mut orphans = 0;
    for &u in &nodes {
        let mut isolated = true;
        for &v in &adjacency[u] {
            if inside[v] {
                isolated = false;
                sets.union(u, v);
            }
        }
        if isolated {
            orphans += 1;
        }
    }
    let mut component_sizes = Vec::new();
    for &u in &nodes {
        if sets.find(u) == u {
            component_sizes.push(sets.set_size(u));
        }
    }
    component_sizes.sort_unstable_by(|a, b| b.cmp(a));
    let m = nodes.len() as f64;
    Ok(SigConnectivity {
        largest_component_fraction: component_sizes[0] as f64 / m,
        orphan_fraction: orphans as f64 / m,
        gamma,
        component_sizes,
    })
}
