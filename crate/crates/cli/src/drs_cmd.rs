use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sfnrec::drs::{
    build_scenario, measure_sig_connectivity, run_protocol, write_message_log, ProtocolConfig,
    ProtocolKind, Scenario, ScenarioSpec, SimRun,
};
use sfnrec::graph::{read_edge_list, DegreeMode};
use sfnrec::predictors::{
    predict_baseline, predict_mailing_list, predict_word_of_mouth, predict_wom_reach,
    ComplexityPrediction,
};
use sfnrec::{Graph, PowerLawParams};

use crate::args::SeedArgs;
use crate::error::{CliError, Result};
use crate::graph_cmd::build_graph;
use crate::output::{mean_stderr, num, opt_num, Table};

#[derive(Subcommand, Debug)]
pub enum DrsCommand {
    /// Draw a scenario file.
    Scenario(ScenarioArgs),
    /// Run one protocol, one metrics row per seed.
    Run(RunArgs),
    /// Measured means next to the closed-form predictions.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
pub struct ScenarioArgs {
    /// Member count per SIG.
    #[arg(long, value_delimiter = ',', default_value = "20")]
    pub sig_sizes: Vec<usize>,
    /// Common-set size per SIG.
    #[arg(long, value_delimiter = ',', default_value = "10")]
    pub common_sizes: Vec<usize>,
    /// Idiosyncratic items per user.
    #[arg(long, default_value_t = 20)]
    pub extras: usize,
    #[arg(long, default_value_t = 1000)]
    pub eta: usize,
    #[arg(long, default_value_t = 20)]
    pub mu: usize,
    /// Members shared by consecutive SIGs.
    #[arg(long, default_value_t = 0)]
    pub overlap: usize,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Social graph for word of mouth: a fresh scale-free graph per seed or a
/// fixed edge list.
#[derive(Args, Debug, Clone)]
pub struct NetworkArgs {
    /// Slope of a per-seed graph with one node per user.
    #[arg(long, conflicts_with = "edges")]
    pub graph_beta: Option<f64>,
    /// Node count of the per-seed graph; must equal the user count.
    #[arg(long, requires = "graph_beta")]
    pub graph_n: Option<usize>,
    /// Edge-list file with one alive node per user.
    #[arg(long)]
    pub edges: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ProtocolArgs {
    #[arg(long, default_value_t = 10_000)]
    pub max_rounds: usize,
    /// Forwarding chance for items a recipient does not like.
    #[arg(long, default_value_t = 0.0)]
    pub forward_prob: f64,
    #[command(flatten)]
    pub network: NetworkArgs,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long)]
    pub protocol: ProtocolKind,
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[command(flatten)]
    pub protocol_args: ProtocolArgs,
    /// Message log CSV for a single-seed run.
    #[arg(long)]
    pub message_log: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "baseline,mailing_list")]
    pub protocols: Vec<ProtocolKind>,
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[command(flatten)]
    pub protocol_args: ProtocolArgs,
    /// Boundary expansion for the word-of-mouth prediction; measured on the
    /// graph when absent.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cmd: DrsCommand) -> Result<()> {
    match cmd {
        DrsCommand::Scenario(a) => scenario(a),
        DrsCommand::Run(a) => run_seeds(a),
        DrsCommand::Compare(a) => compare(a),
    }
}

fn scenario(a: ScenarioArgs) -> Result<()> {
    let spec = ScenarioSpec {
        sig_sizes: a.sig_sizes,
        sig_common_sizes: a.common_sizes,
        user_extra_items: a.extras,
        eta: a.eta,
        mu: a.mu,
        overlap: a.overlap,
        lambda_target: a.lambda,
    };
    let s = build_scenario(&spec, &mut ChaCha8Rng::seed_from_u64(a.seed))?;
    for w in s.premise_warnings() {
        eprintln!(
            "warning: SIG {} member {}: own hit rate {} is not below SIG rate {}",
            w.sig, w.user, w.own_rate, w.sig_rate
        );
    }
    let text = s.to_text();
    match a.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_scenario(path: &PathBuf) -> Result<Scenario> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::ScenarioParse(format!("cannot read {}: {e}", path.display())))?;
    Ok(Scenario::from_text(&text)?)
}

fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Network source resolved once per command.
enum Network {
    None,
    PerSeed(PowerLawParams),
    Fixed(Graph),
}

impl Network {
    fn resolve(args: &NetworkArgs, scenario: &Scenario, kind: ProtocolKind) -> Result<Self> {
        if kind != ProtocolKind::WordOfMouth {
            return Ok(Network::None);
        }
        let mu = scenario.mu();
        if let Some(beta) = args.graph_beta {
            let n = args.graph_n.unwrap_or(mu);
            if n != mu {
                return Err(CliError::Usage(format!("--graph-n {n} differs from mu = {mu}")));
            }
            let params = PowerLawParams::for_node_count(beta, n as u64).map_err(CliError::generation)?;
            return Ok(Network::PerSeed(params));
        }
        if let Some(path) = &args.edges {
            let (_, graph) = read_edge_list(BufReader::new(File::open(path)?))?;
            if graph.alive_count() != mu {
                return Err(CliError::Usage(format!(
                    "edge list has {} nodes for {mu} users",
                    graph.alive_count()
                )));
            }
            return Ok(Network::Fixed(graph));
        }
        Err(CliError::Usage(
            "word_of_mouth needs --graph-beta or --edges".into(),
        ))
    }

    /// Graph and a random user-to-node placement for `seed`.
    fn realize(&self, mu: usize, seed: u64) -> Result<Option<(Graph, Vec<usize>)>> {
        let graph = match self {
            Network::None => return Ok(None),
            Network::PerSeed(params) => build_graph(params, DegreeMode::Sampled(mu), seed)?,
            Network::Fixed(g) => g.clone(),
        };
        let mut placement: Vec<usize> = (0..graph.node_count()).filter(|&u| graph.is_alive(u)).collect();
        placement.shuffle(&mut seeded(seed, 1));
        Ok(Some((graph, placement)))
    }
}

/// Size-weighted SIG structure of one placed network.
struct Coupling {
    gamma: f64,
    largest: f64,
    orphan: f64,
    predicted_reach: f64,
}

fn coupling(scenario: &Scenario, graph: &Graph, placement: &[usize], rounds: usize) -> Result<Coupling> {
    let (mut weight, mut gamma, mut largest, mut orphan, mut reach) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for sig in scenario.sigs() {
        let c = measure_sig_connectivity(graph, sig, placement)?;
        let w = sig.members.len() as f64;
        let q = sig.common_items.len() as f64 / scenario.eta() as f64;
        weight += w;
        gamma += w * c.gamma;
        largest += w * c.largest_component_fraction;
        orphan += w * c.orphan_fraction;
        reach += w * predict_wom_reach(&c, q, rounds);
    }
    Ok(Coupling {
        gamma: gamma / weight,
        largest: largest / weight,
        orphan: orphan / weight,
        predicted_reach: reach / weight,
    })
}

struct Outcome {
    seed: u64,
    run: SimRun,
    coupling: Option<Coupling>,
}

fn simulate(
    scenario: &Scenario,
    kind: ProtocolKind,
    seed: u64,
    args: &ProtocolArgs,
    network: &Network,
    record_log: bool,
) -> Result<Outcome> {
    let mut config = ProtocolConfig::new(kind, seed);
    config.max_rounds = args.max_rounds;
    config.forward_prob_uninterested = args.forward_prob;
    config.record_log = record_log;
    let placed = network.realize(scenario.mu(), seed)?;
    let mut rng = seeded(seed, 2);
    let run = run_protocol(
        scenario,
        &config,
        placed.as_ref().map(|(g, p)| (g, p.as_slice())),
        &mut rng,
    )?;
    let coupling = match &placed {
        Some((g, p)) => Some(coupling(scenario, g, p, run.metrics.rounds)?),
        None => None,
    };
    Ok(Outcome { seed, run, coupling })
}

fn simulate_all(
    scenario: &Scenario,
    kind: ProtocolKind,
    seeds: &[u64],
    args: &ProtocolArgs,
    record_log: bool,
) -> Result<Vec<Outcome>> {
    let network = Network::resolve(&args.network, scenario, kind)?;
    seeds
        .par_iter()
        .map(|&seed| simulate(scenario, kind, seed, args, &network, record_log))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

pub const RUN_HEADER: [&str; 18] = [
    "seed",
    "protocol",
    "samples_random",
    "samples_recommended",
    "samples_total",
    "messages",
    "broadcasts",
    "spam",
    "satisfied_users",
    "satisfied_fraction",
    "satisfied_sig_fraction",
    "rounds",
    "trace_length",
    "capped",
    "gamma",
    "largest_component_fraction",
    "sig_orphan_fraction",
    "predicted_reach",
];

fn run_seeds(a: RunArgs) -> Result<()> {
    let scenario = load_scenario(&a.scenario)?;
    let seeds = a.seeds.list()?;
    if a.message_log.is_some() && seeds.len() != 1 {
        return Err(CliError::Usage("--message-log needs a single seed".into()));
    }
    let outcomes = simulate_all(&scenario, a.protocol, &seeds, &a.protocol_args, a.message_log.is_some())?;
    if let Some(path) = &a.message_log {
        let mut w = BufWriter::new(File::create(path)?);
        write_message_log(&mut w, &outcomes[0].run.messages)?;
        w.flush()?;
    }
    let mut table = Table::open(a.out.as_deref(), &RUN_HEADER)?;
    let mu = scenario.mu() as f64;
    for o in &outcomes {
        let m = &o.run.metrics;
        let c = o.coupling.as_ref();
        table.row(vec![
            o.seed.to_string(),
            a.protocol.to_string(),
            m.samples_random.to_string(),
            m.samples_recommended.to_string(),
            m.samples_total().to_string(),
            m.messages.to_string(),
            m.broadcasts.to_string(),
            m.spam.to_string(),
            m.satisfied_users.to_string(),
            num(m.satisfied_users as f64 / mu),
            num(m.satisfied_sig_fraction),
            m.rounds.to_string(),
            m.trace_length.to_string(),
            m.capped.to_string(),
            opt_num(c.map(|c| c.gamma)),
            opt_num(c.map(|c| c.largest)),
            opt_num(c.map(|c| c.orphan)),
            opt_num(c.map(|c| c.predicted_reach)),
        ])?;
    }
    table.finish()
}

pub const COMPARE_HEADER: [&str; 7] = ["protocol", "metric", "runs", "mean", "stderr", "predicted", "ratio"];

fn compare(a: CompareArgs) -> Result<()> {
    let scenario = load_scenario(&a.scenario)?;
    let seeds = a.seeds.list()?;
    let discovery = scenario.eta() as f64
        / scenario
            .sigs()
            .iter()
            .map(|s| s.common_items.len())
            .min()
            .unwrap_or(1) as f64;
    let mut table = Table::open(a.out.as_deref(), &COMPARE_HEADER)?;
    for &kind in &a.protocols {
        let outcomes = simulate_all(&scenario, kind, &seeds, &a.protocol_args, false)?;
        let collect = |f: &dyn Fn(&Outcome) -> f64| outcomes.iter().map(f).collect::<Vec<f64>>();
        let couplings: Vec<&Coupling> = outcomes.iter().filter_map(|o| o.coupling.as_ref()).collect();
        let measured_gamma = mean_stderr(&couplings.iter().map(|c| c.gamma).collect::<Vec<_>>()).0;
        let prediction: ComplexityPrediction = match kind {
            ProtocolKind::Baseline => predict_baseline(&scenario),
            ProtocolKind::MailingList => predict_mailing_list(&scenario),
            ProtocolKind::WordOfMouth => {
                let gamma = a.gamma.or(measured_gamma).unwrap_or(0.0);
                predict_word_of_mouth(&scenario, gamma, None)?
            }
        };
        let reach = mean_stderr(&couplings.iter().map(|c| c.predicted_reach).collect::<Vec<_>>()).0;
        let broadcasts_pred = match kind {
            ProtocolKind::MailingList => prediction.messages,
            _ => None,
        };
        let metrics: Vec<(&str, Vec<f64>, Option<f64>)> = vec![
            (
                "samples",
                collect(&|o| o.run.metrics.samples_total() as f64),
                Some(prediction.samples),
            ),
            ("messages", collect(&|o| o.run.metrics.messages as f64), prediction.messages),
            ("broadcasts", collect(&|o| o.run.metrics.broadcasts as f64), broadcasts_pred),
            ("spam", collect(&|o| o.run.metrics.spam as f64), prediction.spam),
            ("trace_length", collect(&|o| o.run.metrics.trace_length as f64), Some(discovery)),
            ("rounds", collect(&|o| o.run.metrics.rounds as f64), None),
            (
                "satisfied_sig_fraction",
                collect(&|o| o.run.metrics.satisfied_sig_fraction),
                reach,
            ),
        ];
        for (name, values, predicted) in metrics {
            let (mean, se) = mean_stderr(&values);
            let ratio = match (mean, predicted) {
                (Some(m), Some(p)) if p != 0.0 => Some(m / p),
                _ => None,
            };
            table.row(vec![
                kind.to_string(),
                name.into(),
                values.len().to_string(),
                opt_num(mean),
                opt_num(se),
                opt_num(predicted),
                opt_num(ratio),
            ])?;
        }
        if let Some(g) = measured_gamma {
            table.row(vec![
                kind.to_string(),
                "gamma".into(),
                couplings.len().to_string(),
                num(g),
                String::new(),
                opt_num(a.gamma),
                String::new(),
            ])?;
        }
    }
    table.finish()
}
