//! Distributed recommender scenarios and the three round-based protocols
//! run over them.
//!
//! All engines are synchronous: a message sent in round `r` is tested by its
//! recipient in round `r + 1`. Agents are visited in id order within a
//! round, so a run is a pure function of the scenario, config and RNG state.

mod baseline;
mod connectivity;
mod ledger;
mod mailing_list;
mod scenario;
mod word_of_mouth;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::graph::Graph;

pub use baseline::run_baseline;
pub use connectivity::{measure_sig_connectivity, SigConnectivity};
pub use mailing_list::run_mailing_list;
pub use scenario::{build_scenario, PremiseWarning, Scenario, ScenarioSpec, SigSpec};
pub use word_of_mouth::run_word_of_mouth;

#[derive(Debug, Error)]
pub enum DrsError {
    #[error("infeasible scenario: {0}")]
    Infeasible(String),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("scenario parse error: {0}")]
    Parse(String),
    #[error("placement does not match the graph: {0}")]
    PlacementMismatch(String),
    #[error("invalid protocol config: {0}")]
    Config(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

pub type Result<T> = std::result::Result<T, DrsError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProtocolKind {
    Baseline,
    MailingList,
    WordOfMouth,
}

impl ProtocolKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProtocolKind::Baseline => "baseline",
            ProtocolKind::MailingList => "mailing_list",
            ProtocolKind::WordOfMouth => "word_of_mouth",
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProtocolKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "baseline" => Ok(ProtocolKind::Baseline),
            "mailing_list" => Ok(ProtocolKind::MailingList),
            "word_of_mouth" => Ok(ProtocolKind::WordOfMouth),
            other => Err(format!(
                "unknown protocol `{other}` (expected baseline, mailing_list or word_of_mouth)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolConfig {
    pub kind: ProtocolKind,
    /// Chance that an agent forwards an item it does not like.
    pub forward_prob_uninterested: f64,
    pub max_rounds: usize,
    pub seed: u64,
    /// Keep the per-message and per-test logs in the returned [`SimRun`].
    pub record_log: bool,
    /// `(agent, item)` pairs tested before round 1. Word of mouth only.
    pub seeded: Vec<(usize, usize)>,
}

impl ProtocolConfig {
    pub fn new(kind: ProtocolKind, seed: u64) -> Self {
        Self {
            kind,
            forward_prob_uninterested: 0.0,
            max_rounds: 10_000,
            seed,
            record_log: false,
            seeded: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_rounds == 0 {
            return Err(DrsError::Config("max_rounds must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.forward_prob_uninterested) {
            return Err(DrsError::Config(format!(
                "forward probability {} outside [0, 1]",
                self.forward_prob_uninterested
            )));
        }
        Ok(())
    }
}

/// Complexity counters for one protocol run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimMetrics {
    /// Tests of uniformly drawn items.
    pub samples_random: u64,
    /// Tests of items that arrived as recommendations.
    pub samples_recommended: u64,
    /// Point-to-point deliveries; a broadcast to `d` neighbors counts `d`.
    pub messages: u64,
    /// Broadcast events (one per agent per announced item).
    pub broadcasts: u64,
    pub spam: u64,
    pub satisfied_users: usize,
    /// Share of (SIG, member) pairs where the member tested an item of the
    /// SIG's common set.
    pub satisfied_sig_fraction: f64,
    pub rounds: usize,
    /// Pooled random samples of each SIG's members up to and including the
    /// SIG's first common-item hit, summed over SIGs.
    pub trace_length: u64,
    /// Stopped by `max_rounds` rather than by its own termination rule.
    pub capped: bool,
}

impl SimMetrics {
    pub fn samples_total(&self) -> u64 {
        self.samples_random + self.samples_recommended
    }
}

/// One point-to-point delivery. `item` and `liked` are empty for baseline
/// queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageRecord {
    pub round: usize,
    pub sender: usize,
    pub receiver: usize,
    pub item: Option<usize>,
    pub liked: Option<bool>,
}

/// One item test by one agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestRecord {
    pub round: usize,
    pub agent: usize,
    pub item: usize,
    pub recommended: bool,
    pub liked: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimRun {
    pub metrics: SimMetrics,
    /// Satisfied user count after each round.
    pub satisfied_by_round: Vec<usize>,
    pub messages: Vec<MessageRecord>,
    pub tests: Vec<TestRecord>,
}

/// Runs whichever protocol `config.kind` names. Word of mouth needs a graph
/// and a user-to-node placement.
pub fn run_protocol<R: Rng + ?Sized>(
    scenario: &Scenario,
    config: &ProtocolConfig,
    network: Option<(&Graph, &[usize])>,
    rng: &mut R,
) -> Result<SimRun> {
    match config.kind {
        ProtocolKind::Baseline => run_baseline(scenario, config, rng),
        ProtocolKind::MailingList => run_mailing_list(scenario, config, rng),
        ProtocolKind::WordOfMouth => {
            let (graph, placement) = network.ok_or_else(|| {
                DrsError::Config("word_of_mouth needs a graph and placement".into())
            })?;
            run_word_of_mouth(scenario, graph, placement, config, rng)
        }
    }
}

/// Writes the message log as `round,sender,receiver,item,liked`.
pub fn write_message_log<W: std::io::Write>(
    out: &mut W,
    log: &[MessageRecord],
) -> std::io::Result<()> {
    writeln!(out, "round,sender,receiver,item,liked")?;
    for m in log {
        let item = m.item.map(|i| i.to_string()).unwrap_or_default();
        let liked = m.liked.map(|l| l.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{},{},{}", m.round, m.sender, m.receiver, item, liked)?;
    }
    Ok(())
}
