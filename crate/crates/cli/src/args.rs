use clap::Args;
use sfnrec::PowerLawParams;

use crate::error::{CliError, Result};

/// Points of an inclusive `start:stop:step` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// Clap parser for [`Grid`].
pub fn grid(text: &str) -> std::result::Result<Grid, String> {
    parse_grid(text).map(Grid)
}

/// Inclusive `start:stop:step` grid; points within 1e-12 of `stop` count.
pub fn parse_grid(text: &str) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid `{text}` is not start:stop:step"));
    }
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad number `{s}` in grid `{text}`"))
    };
    let (start, stop, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(format!("grid `{text}` needs start <= stop and step > 0"));
    }
    let mut out = Vec::new();
    let mut i = 0u64;
    loop {
        let raw = start + i as f64 * step;
        if raw > stop + 1e-12 {
            break;
        }
        let v = (raw * 1e12).round() / 1e12;
        out.push(v.min(stop));
        i += 1;
    }
    Ok(out)
}

/// Seeds `--seed S` or `0..N` for `--seeds N`.
#[derive(Args, Debug, Clone)]
pub struct SeedArgs {
    /// Single seed.
    #[arg(long, conflicts_with = "seeds")]
    pub seed: Option<u64>,
    /// Run seeds 0..N-1.
    #[arg(long)]
    pub seeds: Option<u64>,
}

impl SeedArgs {
    pub fn list(&self) -> Result<Vec<u64>> {
        match (self.seed, self.seeds) {
            (Some(s), None) => Ok(vec![s]),
            (None, Some(0)) => Err(CliError::Usage("--seeds must be at least 1".into())),
            (None, Some(n)) => Ok((0..n).collect()),
            (None, None) => Ok(vec![0]),
            (Some(_), Some(_)) => unreachable!("clap rejects both"),
        }
    }
}

/// `--alpha A` fixes the size parameter; otherwise it is fitted to `--n`.
#[derive(Args, Debug, Clone)]
pub struct SizeArgs {
    #[arg(long, conflicts_with = "n")]
    pub alpha: Option<f64>,
    /// Target node count when alpha is not given.
    #[arg(long)]
    pub n: Option<u64>,
}

impl SizeArgs {
    pub fn params(&self, beta: f64) -> std::result::Result<PowerLawParams, sfnrec::TheoryError> {
        match self.alpha {
            Some(alpha) => PowerLawParams::new(alpha, beta),
            None => PowerLawParams::for_node_count(beta, self.n.unwrap_or(100_000)),
        }
    }
}
