use std::collections::HashSet;

use rand::Rng;

use super::{MessageRecord, Scenario, SimMetrics, SimRun, TestRecord};

/// Shared accounting for every protocol: tests, deliveries, satisfaction
/// and the per-SIG random-sample trace.
pub(super) struct Ledger<'a> {
    scenario: &'a Scenario,
    record: bool,
    metrics: SimMetrics,
    satisfied: Vec<bool>,
    satisfied_count: usize,
    /// Parallel to `scenario.sigs_of(u)`.
    member_hit: Vec<Vec<bool>>,
    hit_pairs: usize,
    total_pairs: usize,
    trace_done: Vec<bool>,
    satisfied_by_round: Vec<usize>,
    messages: Vec<MessageRecord>,
    tests: Vec<TestRecord>,
}

impl<'a> Ledger<'a> {
    pub fn new(scenario: &'a Scenario, record: bool) -> Self {
        let member_hit: Vec<Vec<bool>> = (0..scenario.mu())
            .map(|u| vec![false; scenario.sigs_of(u).len()])
            .collect();
        let total_pairs = member_hit.iter().map(Vec::len).sum();
        Self {
            scenario,
            record,
            metrics: SimMetrics::default(),
            satisfied: vec![false; scenario.mu()],
            satisfied_count: 0,
            member_hit,
            hit_pairs: 0,
            total_pairs,
            trace_done: vec![false; scenario.ell()],
            satisfied_by_round: Vec::new(),
            messages: Vec::new(),
            tests: Vec::new(),
        }
    }

    pub fn is_satisfied(&self, u: usize) -> bool {
        self.satisfied[u]
    }

    pub fn target_met(&self) -> bool {
        self.satisfied_count as f64
            >= self.scenario.lambda_target() * self.scenario.mu() as f64 - 1e-9
    }

    /// Tests `item` for `agent` and returns whether the agent likes it.
    pub fn test(&mut self, round: usize, agent: usize, item: usize, recommended: bool) -> bool {
        if recommended {
            self.metrics.samples_recommended += 1;
        } else {
            self.metrics.samples_random += 1;
        }
        let liked = self.scenario.likes(agent, item);
        if liked {
            if !self.satisfied[agent] {
                self.satisfied[agent] = true;
                self.satisfied_count += 1;
            }
            for (j, &i) in self.scenario.sigs_of(agent).iter().enumerate() {
                if !self.member_hit[agent][j] && self.scenario.sigs()[i].common_items.contains(&item)
                {
                    self.member_hit[agent][j] = true;
                    self.hit_pairs += 1;
                }
            }
        }
        if self.record {
            self.tests.push(TestRecord {
                round,
                agent,
                item,
                recommended,
                liked,
            });
        }
        liked
    }

    /// A uniformly drawn item: extends the trace of every SIG of `agent`
    /// that has not been hit yet, then tests it.
    pub fn random_sample(&mut self, round: usize, agent: usize, item: usize) -> bool {
        for &i in self.scenario.sigs_of(agent) {
            if !self.trace_done[i] {
                self.metrics.trace_length += 1;
                if self.scenario.sigs()[i].common_items.contains(&item) {
                    self.trace_done[i] = true;
                }
            }
        }
        self.test(round, agent, item, false)
    }

    /// An item delivered to `receiver`; spam when the receiver does not like
    /// it.
    pub fn deliver(&mut self, round: usize, sender: usize, receiver: usize, item: usize) {
        let liked = self.scenario.likes(receiver, item);
        self.metrics.messages += 1;
        if !liked {
            self.metrics.spam += 1;
        }
        self.log(round, sender, receiver, Some(item), Some(liked));
    }

    /// A query without an item; spam when the receiver has nothing to offer.
    pub fn query(&mut self, round: usize, sender: usize, receiver: usize) {
        self.metrics.messages += 1;
        if !self.satisfied[receiver] {
            self.metrics.spam += 1;
        }
        self.log(round, sender, receiver, None, None);
    }

    /// A reply carrying an item the sender likes.
    pub fn reply(&mut self, round: usize, sender: usize, receiver: usize, item: usize) {
        self.metrics.messages += 1;
        let liked = self.scenario.likes(receiver, item);
        self.log(round, sender, receiver, Some(item), Some(liked));
    }

    pub fn broadcast(&mut self) {
        self.metrics.broadcasts += 1;
    }

    pub fn end_round(&mut self, round: usize) {
        self.metrics.rounds = round;
        self.satisfied_by_round.push(self.satisfied_count);
    }

    pub fn finish(mut self, capped: bool) -> SimRun {
        self.metrics.capped = capped;
        self.metrics.satisfied_users = self.satisfied_count;
        self.metrics.satisfied_sig_fraction = if self.total_pairs == 0 {
            0.0
        } else {
            self.hit_pairs as f64 / self.total_pairs as f64
        };
        SimRun {
            metrics: self.metrics,
            satisfied_by_round: self.satisfied_by_round,
            messages: self.messages,
            tests: self.tests,
        }
    }

    fn log(
        &mut self,
        round: usize,
        sender: usize,
        receiver: usize,
        item: Option<usize>,
        liked: Option<bool>,
    ) {
        if self.record {
            self.messages.push(MessageRecord {
                round,
                sender,
                receiver,
                item,
                liked,
            });
        }
    }
}

/// Uniform draw from the items of `0..eta` not in `tested`.
pub(super) fn sample_untested<R: Rng + ?Sized>(
    rng: &mut R,
    eta: usize,
    tested: &HashSet<usize>,
) -> Option<usize> {
    if tested.len() >= eta {
        return None;
    }
    if tested.len() * 2 <= eta {
        loop {
            let item = rng.gen_range(0..eta);
            if !tested.contains(&item) {
                return Some(item);
            }
        }
    }
    let rest: Vec<usize> = (0..eta).filter(|i| !tested.contains(i)).collect();
    Some(rest[rng.gen_range(0..rest.len())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn untested_draw_avoids_tested_items() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut tested: HashSet<usize> = HashSet::new();
        for _ in 0..10 {
            let item = sample_untested(&mut rng, 10, &tested).unwrap();
            assert!(tested.insert(item));
        }
        assert_eq!(sample_untested(&mut rng, 10, &tested), None);
    }
}
