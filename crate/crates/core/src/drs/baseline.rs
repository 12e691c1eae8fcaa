use rand::Rng;

use super::ledger::Ledger;
use super::{ProtocolConfig, Result, Scenario, SimRun};

/// Alternating sample/query protocol without memory.
///
/// In odd rounds every unsatisfied agent tests a uniform item, drawn with
/// replacement. In even rounds it queries a uniform agent (itself
/// included); an agent that has liked something replies with a uniform pick
/// among its liked items, which the querier tests in the same round. Agents
/// stop once satisfied and the run stops when the satisfied share reaches
/// `lambda_target`.
pub fn run_baseline<R: Rng + ?Sized>(
    scenario: &Scenario,
    config: &ProtocolConfig,
    rng: &mut R,
) -> Result<SimRun> {
    config.validate()?;
    let mu = scenario.mu();
    let eta = scenario.eta();
    let mut ledger = Ledger::new(scenario, config.record_log);
    let mut liked: Vec<Vec<usize>> = vec![Vec::new(); mu];

    let mut capped = true;
    for round in 1..=config.max_rounds {
        for agent in 0..mu {
            if ledger.is_satisfied(agent) {
                continue;
            }
            if round % 2 == 1 {
                let item = rng.gen_range(0..eta);
                if ledger.random_sample(round, agent, item) {
                    note_liked(&mut liked, agent, item);
                }
            } else {
                let peer = rng.gen_range(0..mu);
                ledger.query(round, agent, peer);
                if liked[peer].is_empty() {
                    continue;
                }
                let item = liked[peer][rng.gen_range(0..liked[peer].len())];
                ledger.reply(round, peer, agent, item);
                if ledger.test(round, agent, item, true) {
                    note_liked(&mut liked, agent, item);
                }
            }
        }
        ledger.end_round(round);
        if ledger.target_met() {
            capped = false;
            break;
        }
    }
    Ok(ledger.finish(capped))
}

fn note_liked(liked: &mut [Vec<usize>], agent: usize, item: usize) {
    if !liked[agent].contains(&item) {
        liked[agent].push(item);
    }
}
