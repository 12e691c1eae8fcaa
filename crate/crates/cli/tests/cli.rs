use std::path::Path;
use std::process::{Command, Output};

use sfnrec::graph::read_edge_list;

fn sfnrec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sfnrec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = sfnrec(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    sfnrec(args).status.code().unwrap()
}

fn reference_scn() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios/ref.scn")
        .to_string_lossy()
        .into_owned()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
}

#[test]
fn theory_critical_row() {
    let out = stdout(&["theory", "critical", "--beta", "2.5"]);
    assert!(out.starts_with("beta,alpha,max_degree,p_c\n"));
    let pc: f64 = column(&out, "p_c")[0].parse().unwrap();
    assert!((pc - 0.898).abs() < 0.005);
}

#[test]
fn theory_curve_at_zero_failure() {
    let out = stdout(&["theory", "curve", "--beta", "2.5", "--p", "0"]);
    assert_eq!(
        out.lines().next().unwrap(),
        "beta,alpha,max_degree,regime,p,chi,xi,orphan_fraction,degree1_fraction,beta_prime,alpha_prime,survivor_fraction,nonorphan_fraction,critical"
    );
    assert_eq!(column(&out, "nonorphan_fraction"), vec!["1"]);
    assert_eq!(column(&out, "beta_prime"), vec!["2.5"]);
}

#[test]
fn theory_figure2_grid() {
    let out = stdout(&[
        "theory", "curve", "--beta", "1.2,1.4,1.6,1.8,2.0,2.5,3.0,3.3", "--p-grid", "0:1:0.01",
    ]);
    assert_eq!(out.lines().count(), 1 + 8 * 101);
    let regimes = column(&out, "regime");
    assert!(regimes[..5 * 101].iter().all(|r| r == "truncated"));
    assert!(regimes[5 * 101..].iter().all(|r| r == "full"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["theory", "curve", "--beta", "2.5", "--p-grid", "1:0:0.1"]), 2);
    assert_eq!(code(&["theory", "curve", "--p", "0.5"]), 2);
    assert_eq!(code(&["theory", "curve", "--beta", "2.5", "--p", "2"]), 2);
    assert_eq!(code(&["graph", "percolate", "--beta", "2.5", "--p", "0.5", "--seed", "1", "--seeds", "2"]), 2);
    let scn = reference_scn();
    assert_eq!(
        code(&["drs", "run", "--scenario", &scn, "--protocol", "mailing_list", "--seeds", "2", "--message-log", "/dev/null"]),
        2
    );
    assert_eq!(code(&["drs", "run", "--scenario", &scn, "--protocol", "word_of_mouth"]), 2);
    assert_eq!(code(&["drs", "run", "--scenario", &scn, "--protocol", "gossip"]), 2);
}

#[test]
fn infeasible_generation_exits_3() {
    assert_eq!(code(&["graph", "generate", "--alpha", "0", "--beta", "2"]), 3);
    assert_eq!(code(&["graph", "generate", "--alpha=-1", "--beta", "2"]), 3);
    assert_eq!(code(&["drs", "scenario", "--eta", "15"]), 3);
    assert_eq!(code(&["drs", "scenario", "--mu", "100", "--lambda", "0.5"]), 3);
}

#[test]
fn bad_scenarios_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scn");
    std::fs::write(&bad, "eta = 10\nmu = [\n").unwrap();
    let bad = bad.to_string_lossy().into_owned();
    assert_eq!(code(&["drs", "run", "--scenario", &bad, "--protocol", "baseline"]), 4);
    let missing = dir.path().join("missing.scn").to_string_lossy().into_owned();
    assert_eq!(code(&["drs", "compare", "--scenario", &missing]), 4);
}

#[test]
fn generated_edge_list_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.edges");
    let p = path.to_string_lossy().into_owned();
    stdout(&["graph", "generate", "--alpha", "2.3", "--beta", "1.2", "--seed", "7", "--out", &p]);
    let (header, graph) = read_edge_list(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    assert_eq!(header.nodes, 21);
    assert_eq!(header.seed, 7);
    assert_eq!(graph.degrees().iter().sum::<usize>(), 46);
}

#[test]
fn sweep_emits_runs_and_means() {
    let out = stdout(&[
        "graph", "sweep", "--beta", "2.5", "--n", "5000", "--p", "0:0.5:0.25", "--seeds", "3",
    ]);
    let records = column(&out, "record");
    assert_eq!(records.len(), 3 * 4);
    assert_eq!(records.iter().filter(|r| *r == "mean").count(), 3);
    let runs = column(&out, "runs");
    assert_eq!(runs[3], "3");
}

#[test]
fn percolate_rows_follow_seed_order() {
    let out = stdout(&["graph", "percolate", "--beta", "2.5", "--n", "20000", "--p", "0.6", "--seeds", "6"]);
    assert_eq!(column(&out, "seed"), vec!["0", "1", "2", "3", "4", "5"]);
}

#[test]
fn scenario_file_round_trips_through_run() {
    let dir = tempfile::tempdir().unwrap();
    let scn = dir.path().join("s.scn").to_string_lossy().into_owned();
    stdout(&["drs", "scenario", "--sig-sizes", "6,6", "--common-sizes", "3,4", "--extras", "2", "--eta", "100", "--mu", "12", "--seed", "4", "--out", &scn]);
    let log = dir.path().join("log.csv").to_string_lossy().into_owned();
    let out = stdout(&["drs", "run", "--scenario", &scn, "--protocol", "mailing_list", "--seed", "2", "--message-log", &log]);
    let messages: usize = column(&out, "messages")[0].parse().unwrap();
    let spam: usize = column(&out, "spam")[0].parse().unwrap();
    let log = std::fs::read_to_string(&log).unwrap();
    assert!(log.starts_with("round,sender,receiver,item,liked\n"));
    assert_eq!(log.lines().count() - 1, messages);
    assert_eq!(log.lines().filter(|l| l.ends_with(",false")).count(), spam);
}

#[test]
fn word_of_mouth_on_an_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("g.edges").to_string_lossy().into_owned();
    stdout(&["graph", "generate", "--beta", "2.2", "--n", "300", "--sampled", "--seed", "1", "--out", &edges]);
    let scn = dir.path().join("s.scn").to_string_lossy().into_owned();
    stdout(&["drs", "scenario", "--sig-sizes", "120", "--common-sizes", "5", "--extras", "3", "--eta", "400", "--mu", "300", "--lambda", "0.2", "--out", &scn]);
    let out = stdout(&["drs", "run", "--scenario", &scn, "--protocol", "word_of_mouth", "--edges", &edges, "--seeds", "3", "--max-rounds", "40"]);
    assert_eq!(out.lines().count(), 4);
    assert!(column(&out, "gamma").iter().all(|g| g.parse::<f64>().unwrap() > 0.0));
    let cmp = stdout(&["drs", "compare", "--scenario", &scn, "--protocols", "word_of_mouth", "--edges", &edges, "--seeds", "3", "--max-rounds", "40"]);
    assert!(cmp.lines().any(|l| l.starts_with("word_of_mouth,gamma,3,")));
}

#[test]
fn compare_orders_protocols() {
    let scn = reference_scn();
    let out = stdout(&["drs", "compare", "--scenario", &scn, "--seeds", "100"]);
    let mean = |protocol: &str, metric: &str| -> f64 {
        let line = out
            .lines()
            .find(|l| l.starts_with(&format!("{protocol},{metric},")))
            .unwrap();
        line.split(',').nth(3).unwrap().parse().unwrap()
    };
    assert!(mean("mailing_list", "samples") < mean("baseline", "samples"));
    assert!(mean("mailing_list", "messages") < mean("baseline", "messages"));
}
