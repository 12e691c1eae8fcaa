use std::collections::HashSet;

use rand::Rng;

use super::ledger::{sample_untested, Ledger};
use super::{ProtocolConfig, Result, Scenario, SimRun};

/// Mailing-list protocol over the SIG cliques.
///
/// Each round every agent with an undisseminated SIG tests one untested
/// uniform item. A liked item is broadcast once to every agent sharing a
/// SIG with the sender; a common-set hit marks the SIG disseminated from the
/// next round on. Recipients test received items in the following round and
/// never rebroadcast them. The run stops once no agent samples and nothing
/// is in flight.
pub fn run_mailing_list<R: Rng + ?Sized>(
    scenario: &Scenario,
    config: &ProtocolConfig,
    rng: &mut R,
) -> Result<SimRun> {
    config.validate()?;
    let mu = scenario.mu();
    let eta = scenario.eta();
    let neighbors = clique_neighbors(scenario);
    let mut ledger = Ledger::new(scenario, config.record_log);
    let mut tested: Vec<HashSet<usize>> = vec![HashSet::new(); mu];
    let mut announced: Vec<HashSet<usize>> = vec![HashSet::new(); mu];
    let mut disseminated = vec![false; scenario.ell()];
    let mut in_flight: Vec<(usize, usize)> = Vec::new();

    let mut capped = true;
    for round in 1..=config.max_rounds {
        for (receiver, item) in std::mem::take(&mut in_flight) {
            if tested[receiver].insert(item) {
                ledger.test(round, receiver, item, true);
            }
        }

        let mut newly = Vec::new();
        for agent in 0..mu {
            if scenario.sigs_of(agent).iter().all(|&i| disseminated[i]) {
                continue;
            }
            let Some(item) = sample_untested(rng, eta, &tested[agent]) else {
                continue;
            };
            tested[agent].insert(item);
            if !ledger.random_sample(round, agent, item) || !announced[agent].insert(item) {
                continue;
            }
            ledger.broadcast();
            for &v in &neighbors[agent] {
                ledger.deliver(round, agent, v, item);
                in_flight.push((v, item));
            }
            for &i in scenario.sigs_of(agent) {
                if scenario.sigs()[i].common_items.contains(&item) {
                    newly.push(i);
                }
            }
        }
        for i in newly {
            disseminated[i] = true;
        }
        ledger.end_round(round);

        let will_sample = (0..mu).any(|a| {
            scenario.sigs_of(a).iter().any(|&i| !disseminated[i]) && tested[a].len() < eta
        });
        if in_flight.is_empty() && !will_sample {
            capped = false;
            break;
        }
    }
    Ok(ledger.finish(capped))
}

/// Union of the SIG cliques around each agent, self excluded, sorted.
fn clique_neighbors(scenario: &Scenario) -> Vec<Vec<usize>> {
    (0..scenario.mu())
        .map(|u| {
            let mut list: Vec<usize> = scenario
                .sigs_of(u)
                .iter()
                .flat_map(|&i| scenario.sigs()[i].members.iter().copied())
                .filter(|&v| v != u)
                .collect();
            list.sort_unstable();
            list.dedup();
            list
        })
        .collect()
}
