use std::path::PathBuf;

use clap::{Args, Subcommand};
use sfnrec::theory::{critical_failure_rate, subgraph_report, SubgraphSlope};

use crate::args::{grid, Grid, SizeArgs};
use crate::error::{CliError, Result};
use crate::output::{num, opt_num, Table};

#[derive(Subcommand, Debug)]
pub enum TheoryCommand {
    /// Subgraph quantities per failure rate.
    Curve(CurveArgs),
    /// Critical failure rate per slope.
    Critical(CriticalArgs),
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// Comma-separated slopes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta: Vec<f64>,
    /// Single failure rate.
    #[arg(long, conflicts_with = "p_grid")]
    pub p: Option<f64>,
    /// Inclusive grid start:stop:step.
    #[arg(long, value_parser = grid)]
    pub p_grid: Option<Grid>,
    #[command(flatten)]
    pub size: SizeArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CriticalArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub beta: Vec<f64>,
    #[command(flatten)]
    pub size: SizeArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub const CURVE_HEADER: [&str; 14] = [
    "beta",
    "alpha",
    "max_degree",
    "regime",
    "p",
    "chi",
    "xi",
    "orphan_fraction",
    "degree1_fraction",
    "beta_prime",
    "alpha_prime",
    "survivor_fraction",
    "nonorphan_fraction",
    "critical",
];

pub fn run(cmd: TheoryCommand) -> Result<()> {
    match cmd {
        TheoryCommand::Curve(a) => curve(a),
        TheoryCommand::Critical(a) => critical(a),
    }
}

fn curve(a: CurveArgs) -> Result<()> {
    let grid = match (a.p, a.p_grid) {
        (Some(p), None) => vec![p],
        (None, Some(Grid(g))) => g,
        _ => return Err(CliError::Usage("give --p or --p-grid".into())),
    };
    let mut rows = Vec::new();
    for &beta in &a.beta {
        let params = a.size.params(beta)?;
        for &p in &grid {
            let r = subgraph_report(&params, p)?;
            let slope = match r.beta_prime {
                SubgraphSlope::Finite(b) => num(b),
                SubgraphSlope::Supercritical => "supercritical".into(),
            };
            rows.push(vec![
                num(beta),
                num(params.alpha()),
                params.max_degree().to_string(),
                params.regime().as_str().into(),
                num(p),
                num(r.chi),
                num(r.xi),
                num(r.orphan_fraction),
                num(r.degree1_fraction),
                slope,
                opt_num(r.alpha_prime),
                num(r.survivor_fraction),
                num(r.nonorphan_fraction),
                r.critical.to_string(),
            ]);
        }
    }
    write_rows(a.out.as_deref(), &CURVE_HEADER, rows)
}

fn write_rows(out: Option<&std::path::Path>, header: &[&str], rows: Vec<Vec<String>>) -> Result<()> {
    let mut table = Table::open(out, header)?;
    for row in rows {
        table.row(row)?;
    }
    table.finish()
}

fn critical(a: CriticalArgs) -> Result<()> {
    let mut rows = Vec::new();
    for &beta in &a.beta {
        let params = a.size.params(beta)?;
        let pc = critical_failure_rate(&params)?;
        rows.push(vec![
            num(beta),
            num(params.alpha()),
            params.max_degree().to_string(),
            num(pc),
        ]);
    }
    write_rows(a.out.as_deref(), &["beta", "alpha", "max_degree", "p_c"], rows)
}
