use std::collections::HashSet;

use rand::Rng;

use super::ledger::{sample_untested, Ledger};
use super::{DrsError, ProtocolConfig, Result, Scenario, SimRun};
use crate::graph::Graph;

/// Flooding over a social graph.
///
/// `placement[u]` is the node hosting user `u`; it must be a bijection onto
/// the alive nodes. Unsatisfied agents test one untested uniform item per
/// round. An agent that likes a tested item sends it over every incident
/// edge that has not carried that item in either direction; an agent that
/// does not like a received item forwards it with probability
/// `forward_prob_uninterested`. Duplicates are dropped untested. Seeded
/// pairs are tested in round 0.
pub fn run_word_of_mouth<R: Rng + ?Sized>(
    scenario: &Scenario,
    graph: &Graph,
    placement: &[usize],
    config: &ProtocolConfig,
    rng: &mut R,
) -> Result<SimRun> {
    config.validate()?;
    let neighbors = user_neighbors(scenario, graph, placement)?;
    let mu = scenario.mu();
    let eta = scenario.eta();
    let forward_prob = config.forward_prob_uninterested;
    let mut ledger = Ledger::new(scenario, config.record_log);
    let mut tested: Vec<HashSet<usize>> = vec![HashSet::new(); mu];
    let mut used_edges: HashSet<(usize, usize, usize)> = HashSet::new();
    let mut in_flight: Vec<(usize, usize)> = Vec::new();

    let mut send = |ledger: &mut Ledger, in_flight: &mut Vec<(usize, usize)>, round, from: usize, item| {
        let mut sent = false;
        for &v in &neighbors[from] {
            if used_edges.insert((from.min(v), from.max(v), item)) {
                ledger.deliver(round, from, v, item);
                in_flight.push((v, item));
                sent = true;
            }
        }
        if sent {
            ledger.broadcast();
        }
    };

    for &(agent, item) in &config.seeded {
        if agent >= mu || item >= eta {
            return Err(DrsError::Config(format!("seed ({agent}, {item}) out of range")));
        }
        if tested[agent].insert(item) && ledger.random_sample(0, agent, item) {
            send(&mut ledger, &mut in_flight, 0, agent, item);
        }
    }

    let mut capped = true;
    for round in 1..=config.max_rounds {
        for (receiver, item) in std::mem::take(&mut in_flight) {
            if !tested[receiver].insert(item) {
                continue;
            }
            let liked = ledger.test(round, receiver, item, true);
            if liked || (forward_prob > 0.0 && rng.gen::<f64>() < forward_prob) {
                send(&mut ledger, &mut in_flight, round, receiver, item);
            }
        }
        for agent in 0..mu {
            if ledger.is_satisfied(agent) {
                continue;
            }
            let Some(item) = sample_untested(rng, eta, &tested[agent]) else {
                continue;
            };
            tested[agent].insert(item);
            if ledger.random_sample(round, agent, item) {
                send(&mut ledger, &mut in_flight, round, agent, item);
            }
        }
        ledger.end_round(round);
        if ledger.target_met() {
            capped = false;
            break;
        }
        let idle = (0..mu).all(|a| ledger.is_satisfied(a) || tested[a].len() >= eta);
        if in_flight.is_empty() && idle {
            capped = false;
            break;
        }
    }
    Ok(ledger.finish(capped))
}

/// Collapsed alive neighbor lists translated to user ids.
fn user_neighbors(scenario: &Scenario, graph: &Graph, placement: &[usize]) -> Result<Vec<Vec<usize>>> {
    let mismatch = |m: String| Err(DrsError::PlacementMismatch(m));
    if placement.len() != scenario.mu() {
        return mismatch(format!("{} placements for {} users", placement.len(), scenario.mu()));
    }
    if graph.alive_count() != scenario.mu() {
        return mismatch(format!(
            "{} alive nodes for {} users",
            graph.alive_count(),
            scenario.mu()
        ));
    }
    let mut user_at = vec![usize::MAX; graph.node_count()];
    for (u, &node) in placement.iter().enumerate() {
        if node >= graph.node_count() || !graph.is_alive(node) {
            return mismatch(format!("user {u} placed on missing or dead node {node}"));
        }
        if user_at[node] != usize::MAX {
            return mismatch(format!("node {node} hosts two users"));
        }
        user_at[node] = u;
    }
    let adjacency = graph.alive_simple_neighbors();
    Ok(placement
        .iter()
        .map(|&node| {
            let mut list: Vec<usize> = adjacency[node].iter().map(|&v| user_at[v]).collect();
            list.sort_unstable();
            list
        })
        .collect())
}
