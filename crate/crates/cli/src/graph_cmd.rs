use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use clap::{Args, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sfnrec::graph::{
    configuration_model, percolate_report, realize_degree_sequence, write_edge_list, DegreeMode,
    EdgeListHeader, PercolationReport,
};
use sfnrec::theory::{beta_prime, orphan_and_degree1_counts};
use sfnrec::{Graph, PowerLawParams};

use crate::args::{grid, Grid, SeedArgs, SizeArgs};
use crate::error::{CliError, Result};
use crate::output::{mean_stderr, num, opt_num, Table};

#[derive(Subcommand, Debug)]
pub enum GraphCommand {
    /// Build one configuration-model graph.
    Generate(GenerateArgs),
    /// Fail nodes at one rate and measure the survivors, one row per seed.
    Percolate(PercolateArgs),
    /// Per-seed and aggregate survivor measurements over a rate grid.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
pub struct GraphSpec {
    #[arg(long)]
    pub beta: f64,
    #[command(flatten)]
    pub size: SizeArgs,
    /// Draw i.i.d. degrees for exactly `--n` nodes instead of rounding the
    /// expected counts.
    #[arg(long)]
    pub sampled: bool,
}

impl GraphSpec {
    fn params(&self) -> Result<PowerLawParams> {
        self.size.params(self.beta).map_err(CliError::generation)
    }

    fn mode(&self) -> Result<DegreeMode> {
        if !self.sampled {
            return Ok(DegreeMode::Deterministic);
        }
        match self.size.n {
            Some(n) => Ok(DegreeMode::Sampled(n as usize)),
            None => Err(CliError::Usage("--sampled needs --n".into())),
        }
    }
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge-list destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PercolateArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    #[arg(long)]
    pub p: f64,
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub graph: GraphSpec,
    /// Inclusive grid start:stop:step.
    #[arg(long, value_parser = grid)]
    pub p: Grid,
    #[command(flatten)]
    pub seeds: SeedArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Graph for `seed`; failures draw from later streams of the same seed.
pub fn build_graph(params: &PowerLawParams, mode: DegreeMode, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degrees = realize_degree_sequence(params, mode, &mut rng)?;
    Ok(configuration_model(&degrees, &mut rng)?)
}

fn failure_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn check_rate(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("failure rate {p} outside [0, 1]")))
    }
}

pub fn run(cmd: GraphCommand) -> Result<()> {
    match cmd {
        GraphCommand::Generate(a) => generate(a),
        GraphCommand::Percolate(a) => percolate(a),
        GraphCommand::Sweep(a) => sweep(a),
    }
}

fn generate(a: GenerateArgs) -> Result<()> {
    let params = a.graph.params()?;
    let graph = build_graph(&params, a.graph.mode()?, a.seed)?;
    let header = EdgeListHeader {
        nodes: graph.node_count(),
        seed: a.seed,
        alpha: params.alpha(),
        beta: params.beta(),
    };
    match a.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_edge_list(&mut w, &graph, &header)?;
        }
        None => {
            let mut w = BufWriter::new(std::io::stdout().lock());
            write_edge_list(&mut w, &graph, &header)?;
        }
    }
    let stats = graph.stats();
    eprintln!(
        "nodes={} edges={} self_loops={} parallel_edges={}",
        graph.node_count(),
        graph.edge_count(),
        stats.self_loops,
        stats.parallel_edges
    );
    Ok(())
}

pub const PERCOLATE_HEADER: [&str; 14] = [
    "seed",
    "p",
    "nodes",
    "survivors",
    "orphans",
    "degree1",
    "orphan_fraction",
    "degree1_fraction",
    "largest_component",
    "largest_fraction",
    "fitted_beta",
    "predicted_orphan_fraction",
    "predicted_degree1_fraction",
    "predicted_beta_prime",
];

struct Prediction {
    orphan: f64,
    degree1: f64,
    slope: Option<f64>,
}

fn predict(params: &PowerLawParams, p: f64) -> Result<Prediction> {
    let counts = orphan_and_degree1_counts(params, p)?;
    let slope = if params.beta() > 2.0 {
        beta_prime(params, p)?.value()
    } else {
        None
    };
    Ok(Prediction {
        orphan: counts.orphan_fraction,
        degree1: counts.degree1_fraction,
        slope,
    })
}

fn report_row(r: &PercolationReport, pred: &Prediction) -> Vec<String> {
    vec![
        r.seed.to_string(),
        num(r.p),
        r.nodes.to_string(),
        r.survivors.to_string(),
        r.orphans.to_string(),
        r.degree1.to_string(),
        num(r.orphan_fraction()),
        num(r.degree1_fraction()),
        r.largest_component.to_string(),
        num(r.largest_fraction_of_survivors),
        opt_num(r.fitted_beta),
        num(pred.orphan),
        num(pred.degree1),
        opt_num(pred.slope),
    ]
}

fn percolate(a: PercolateArgs) -> Result<()> {
    check_rate(a.p)?;
    let params = a.graph.params()?;
    let mode = a.graph.mode()?;
    let pred = predict(&params, a.p)?;
    let reports: Vec<Result<PercolationReport>> = a
        .seeds
        .list()?
        .into_par_iter()
        .map(|seed| {
            let graph = build_graph(&params, mode, seed)?;
            Ok(percolate_report(&graph, a.p, seed, &mut failure_rng(seed, 1)))
        })
        .collect();
    let mut table = Table::open(a.out.as_deref(), &PERCOLATE_HEADER)?;
    for r in reports {
        table.row(report_row(&r?, &pred))?;
    }
    table.finish()
}

pub const SWEEP_HEADER: [&str; 14] = [
    "record",
    "p",
    "seed",
    "runs",
    "survivors",
    "orphan_fraction",
    "orphan_fraction_stderr",
    "largest_fraction",
    "largest_fraction_stderr",
    "fitted_beta",
    "fitted_beta_stderr",
    "predicted_orphan_fraction",
    "predicted_beta_prime",
    "giant_collapsed",
];

fn sweep(a: SweepArgs) -> Result<()> {
    if a.p.0.is_empty() {
        return Err(CliError::Usage("--p grid is required".into()));
    }
    for &p in &a.p.0 {
        check_rate(p)?;
    }
    let params = a.graph.params()?;
    let mode = a.graph.mode()?;
    let seeds = a.seeds.list()?;
    // one graph per seed, failed independently at every grid point
    let per_seed: Vec<Result<Vec<PercolationReport>>> = seeds
        .par_iter()
        .map(|&seed| {
            let graph = build_graph(&params, mode, seed)?;
            Ok(a.p
                .0
                .iter()
                .enumerate()
                .map(|(i, &p)| percolate_report(&graph, p, seed, &mut failure_rng(seed, 1 + i as u64)))
                .collect())
        })
        .collect();
    let per_seed: Vec<Vec<PercolationReport>> = per_seed.into_iter().collect::<Result<_>>()?;

    let mut table = Table::open(a.out.as_deref(), &SWEEP_HEADER)?;
    for (i, &p) in a.p.0.iter().enumerate() {
        let pred = predict(&params, p)?;
        let runs: Vec<&PercolationReport> = per_seed.iter().map(|reports| &reports[i]).collect();
        for r in &runs {
            table.row(vec![
                "run".into(),
                num(p),
                r.seed.to_string(),
                "1".into(),
                r.survivors.to_string(),
                num(r.orphan_fraction()),
                String::new(),
                num(r.largest_fraction_of_survivors),
                String::new(),
                opt_num(r.fitted_beta),
                String::new(),
                num(pred.orphan),
                opt_num(pred.slope),
                r.giant_collapsed().to_string(),
            ])?;
        }
        let survivors: Vec<f64> = runs.iter().map(|r| r.survivors as f64).collect();
        let orphan: Vec<f64> = runs.iter().map(|r| r.orphan_fraction()).collect();
        let largest: Vec<f64> = runs.iter().map(|r| r.largest_fraction_of_survivors).collect();
        let fitted: Vec<f64> = runs.iter().filter_map(|r| r.fitted_beta).collect();
        let (orphan_m, orphan_se) = mean_stderr(&orphan);
        let (largest_m, largest_se) = mean_stderr(&largest);
        let (fitted_m, fitted_se) = mean_stderr(&fitted);
        table.row(vec![
            "mean".into(),
            num(p),
            String::new(),
            runs.len().to_string(),
            opt_num(mean_stderr(&survivors).0),
            opt_num(orphan_m),
            opt_num(orphan_se),
            opt_num(largest_m),
            opt_num(largest_se),
            opt_num(fitted_m),
            opt_num(fitted_se),
            num(pred.orphan),
            opt_num(pred.slope),
            largest_m
                .map(|m| (m < sfnrec::graph::GIANT_SHARE_FLOOR).to_string())
                .unwrap_or_default(),
        ])?;
    }
    table.finish()
}
