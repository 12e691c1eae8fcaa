mod args;
mod drs_cmd;
mod error;
mod graph_cmd;
mod output;
mod theory_cmd;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Scale-free subgraph theory, percolation experiments and distributed
/// recommender simulations. All output is CSV.
#[derive(Parser, Debug)]
#[command(name = "sfnrec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form subgraph quantities.
    #[command(subcommand)]
    Theory(theory_cmd::TheoryCommand),
    /// Configuration-model graphs and node-failure experiments.
    #[command(subcommand)]
    Graph(graph_cmd::GraphCommand),
    /// Recommender scenarios and protocol runs.
    #[command(subcommand)]
    Drs(drs_cmd::DrsCommand),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Theory(c) => theory_cmd::run(c),
        Command::Graph(c) => graph_cmd::run(c),
        Command::Drs(c) => drs_cmd::run(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sfnrec: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
