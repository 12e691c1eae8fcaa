//! Closed-form complexity estimates for the three recommender protocols.

use crate::drs::{DrsError, Scenario, SigConnectivity};
use crate::graph::Graph;
use crate::drs::ProtocolKind;

/// Predicted cost of one protocol run. `None` marks a quantity with no
/// closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityPrediction {
    pub model: ProtocolKind,
    pub samples: f64,
    pub messages: Option<f64>,
    pub spam: Option<f64>,
}

/// `eta / min_i |P(S_i)|`.
fn discovery_term(scenario: &Scenario) -> f64 {
    let min_common = scenario
        .sigs()
        .iter()
        .map(|s| s.common_items.len())
        .min()
        .unwrap_or(1);
    scenario.eta() as f64 / min_common as f64
}

/// `|S_i| * avg_{u in S_i} |P(u)| / |P(S_i)|` for each SIG.
fn broadcast_terms(scenario: &Scenario) -> Vec<f64> {
    scenario
        .sigs()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.members.len() as f64 * scenario.mean_member_interest(i) / s.common_items.len() as f64
        })
        .collect()
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

pub fn predict_mailing_list(scenario: &Scenario) -> ComplexityPrediction {
    let ell = scenario.ell() as f64;
    let terms = broadcast_terms(scenario);
    let avg = mean(&terms);
    ComplexityPrediction {
        model: ProtocolKind::MailingList,
        samples: ell * (discovery_term(scenario) + avg),
        messages: Some(ell * avg),
        spam: Some(ell * (avg - 1.0)),
    }
}

/// Sample and message counts of the alternating baseline. `spam` is the
/// floor `ell * eta / min |P(S)|`.
pub fn predict_baseline(scenario: &Scenario) -> ComplexityPrediction {
    let ell = scenario.ell() as f64;
    let max_size = scenario
        .sigs()
        .iter()
        .map(|s| s.members.len())
        .max()
        .unwrap_or(1);
    let per_sig = discovery_term(scenario) + scenario.mu() as f64 * (max_size as f64).ln();
    ComplexityPrediction {
        model: ProtocolKind::Baseline,
        samples: 2.0 * ell * per_sig,
        messages: Some(ell * per_sig),
        spam: Some(ell * discovery_term(scenario)),
    }
}

/// Word-of-mouth samples with boundary expansion `gamma`. Given a network,
/// `messages` is the edge bound `sum_i |P(S_i)| * (edges within S_i plus
/// edges leaving S_i)` on the collapsed alive graph.
pub fn predict_word_of_mouth(
    scenario: &Scenario,
    gamma: f64,
    network: Option<(&Graph, &[usize])>,
) -> Result<ComplexityPrediction, DrsError> {
    if !(gamma >= 0.0) {
        return Err(DrsError::Config(format!("gamma {gamma} must be nonnegative")));
    }
    let ell = scenario.ell() as f64;
    let avg = mean(&broadcast_terms(scenario));
    let messages = match network {
        Some((graph, placement)) => Some(edge_bound(scenario, graph, placement)?),
        None => None,
    };
    Ok(ComplexityPrediction {
        model: ProtocolKind::WordOfMouth,
        samples: ell * (discovery_term(scenario) + (1.0 + gamma) * avg),
        messages,
        spam: None,
    })
}

fn edge_bound(scenario: &Scenario, graph: &Graph, placement: &[usize]) -> Result<f64, DrsError> {
    let adjacency = graph.alive_simple_neighbors();
    let mut inside = vec![false; graph.node_count()];
    let mut total = 0.0;
    for sig in scenario.sigs() {
        let mut nodes = Vec::with_capacity(sig.members.len());
        for &u in &sig.members {
            let node = *placement
                .get(u)
                .filter(|&&n| n < graph.node_count())
                .ok_or_else(|| DrsError::PlacementMismatch(format!("no node for user {u}")))?;
            inside[node] = true;
            nodes.push(node);
        }
        let mut internal2 = 0usize;
        let mut leaving = 0usize;
        for &u in &nodes {
            for &v in &adjacency[u] {
                if inside[v] {
                    internal2 += 1;
                } else {
                    leaving += 1;
                }
            }
        }
        total += sig.common_items.len() as f64 * (internal2 / 2 + leaving) as f64;
        for &u in &nodes {
            inside[u] = false;
        }
    }
    Ok(total)
}

/// Expected satisfied share of a SIG under interested-only flooding for
/// `rounds` rounds, when each member's sample hits the common set with
/// probability `hit_prob`: a component of size `s` is reached once any of
/// its members hits, `sum_c (s_c/|S|) (1 - (1 - q)^(s_c * rounds))`.
pub fn predict_wom_reach(conn: &SigConnectivity, hit_prob: f64, rounds: usize) -> f64 {
    let members: usize = conn.component_sizes.iter().sum();
    if members == 0 {
        return 0.0;
    }
    conn.component_sizes
        .iter()
        .map(|&s| {
            let miss = (1.0 - hit_prob).powf((s * rounds) as f64);
            s as f64 / members as f64 * (1.0 - miss)
        })
        .sum()
}
