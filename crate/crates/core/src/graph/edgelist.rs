use std::io::{BufRead, Write};

use super::{Graph, GraphError, Result};

/// Metadata carried on the first line of an edge-list file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeListHeader {
    pub nodes: usize,
    pub seed: u64,
    pub alpha: f64,
    pub beta: f64,
}

/// Writes `# nodes=N seed=S alpha=A beta=B` followed by one `u v` line per edge.
pub fn write_edge_list<W: Write>(out: &mut W, graph: &Graph, header: &EdgeListHeader) -> Result<()> {
    writeln!(
        out,
        "# nodes={} seed={} alpha={} beta={}",
        header.nodes, header.seed, header.alpha, header.beta
    )?;
    for &(u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

fn parse_header(line: &str, lineno: usize) -> Result<EdgeListHeader> {
    let mut nodes = None;
    let (mut seed, mut alpha, mut beta) = (0u64, f64::NAN, f64::NAN);
    let bad = |msg: String| GraphError::Parse { line: lineno, msg };
    for field in line.trim_start_matches('#').split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| bad(format!("malformed header field `{field}`")))?;
        match key {
            "nodes" => nodes = Some(value.parse().map_err(|_| bad(format!("bad nodes `{value}`")))?),
            "seed" => seed = value.parse().map_err(|_| bad(format!("bad seed `{value}`")))?,
            "alpha" => alpha = value.parse().map_err(|_| bad(format!("bad alpha `{value}`")))?,
            "beta" => beta = value.parse().map_err(|_| bad(format!("bad beta `{value}`")))?,
            _ => {}
        }
    }
    Ok(EdgeListHeader {
        nodes: nodes.ok_or_else(|| bad("header lacks nodes=".into()))?,
        seed,
        alpha,
        beta,
    })
}

/// Reads the format produced by [`write_edge_list`]. Later `#` lines and
/// blank lines are ignored.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<(EdgeListHeader, Graph)> {
    let mut header = None;
    let mut edges = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('#') {
            if header.is_none() {
                header = Some(parse_header(trimmed, lineno)?);
            }
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let mut next = || -> Result<usize> {
            parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GraphError::Parse {
                    line: lineno,
                    msg: format!("expected `u v`, got `{trimmed}`"),
                })
        };
        let u = next()?;
        let v = next()?;
        edges.push((u, v));
    }
    let header = header.ok_or(GraphError::Parse {
        line: 1,
        msg: "missing `# nodes=` header".into(),
    })?;
    let graph = Graph::from_edges(header.nodes, edges)?;
    Ok((header, graph))
}
