use rand::Rng;

use super::{components, fail_uniform, fit_power_law_slope, DegreeHistogram, Graph};

/// Survivor share below which the largest component no longer counts as giant.
pub const GIANT_SHARE_FLOOR: f64 = 0.01;

/// Measured structure of one failed graph.
#[derive(Debug, Clone, PartialEq)]
pub struct PercolationReport {
    pub p: f64,
    pub seed: u64,
    pub nodes: usize,
    pub survivors: usize,
    pub orphans: usize,
    pub degree1: usize,
    pub largest_component: usize,
    pub largest_fraction_of_survivors: f64,
    /// Slope fitted to the non-orphan survivor degrees on `k in [1, 10]`.
    pub fitted_beta: Option<f64>,
}

impl PercolationReport {
    pub fn orphan_fraction(&self) -> f64 {
        ratio(self.orphans, self.survivors)
    }

    pub fn degree1_fraction(&self) -> f64 {
        ratio(self.degree1, self.survivors)
    }

    pub fn giant_collapsed(&self) -> bool {
        self.largest_fraction_of_survivors < GIANT_SHARE_FLOOR
    }
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Fails nodes at rate `p` and measures the survivors.
pub fn percolate_report<R: Rng + ?Sized>(
    graph: &Graph,
    p: f64,
    seed: u64,
    rng: &mut R,
) -> PercolationReport {
    let failed = fail_uniform(graph, p, rng);
    measure_survivors(&failed, p, seed)
}

/// Measures an already-failed graph. Degrees are counted on the collapsed
/// simple graph, so a survivor whose only edges are self-loops is an orphan.
pub fn measure_survivors(graph: &Graph, p: f64, seed: u64) -> PercolationReport {
    let simple = graph.alive_simple_neighbors();
    let mut survivors = 0;
    let mut orphans = 0;
    let mut degree1 = 0;
    let mut connected_degrees = Vec::new();
    for u in (0..graph.node_count()).filter(|&u| graph.is_alive(u)) {
        survivors += 1;
        match simple[u].len() {
            0 => orphans += 1,
            d => {
                if d == 1 {
                    degree1 += 1;
                }
                connected_degrees.push(d);
            }
        }
    }
    let largest_component = components(graph).first().copied().unwrap_or(0);
    let hist = DegreeHistogram::from_degrees(connected_degrees);
    PercolationReport {
        p,
        seed,
        nodes: graph.node_count(),
        survivors,
        orphans,
        degree1,
        largest_component,
        largest_fraction_of_survivors: ratio(largest_component, survivors),
        fitted_beta: fit_power_law_slope(&hist, 1, 10).ok(),
    }
}
