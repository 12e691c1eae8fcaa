use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sfnrec::graph::{
    configuration_model, percolate_report, read_edge_list, realize_degree_sequence,
    write_edge_list, DegreeMode, EdgeListHeader,
};
use sfnrec::theory::orphan_and_degree1_counts;
use sfnrec::graph::PercolationReport;
use sfnrec::{Graph, PowerLawParams};

fn fail(graph: &Graph, p: f64, seed: u64) -> PercolationReport {
    percolate_report(graph, p, seed, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn desk_graph(beta: f64, seed: u64) -> (PowerLawParams, Graph) {
    let params = PowerLawParams::for_node_count(beta, 100_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let degrees = realize_degree_sequence(&params, DegreeMode::Deterministic, &mut rng).unwrap();
    let graph = configuration_model(&degrees, &mut rng).unwrap();
    (params, graph)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matching_conserves_degrees(
        mut degrees in prop::collection::vec(0usize..12, 1..60),
        seed in any::<u64>(),
    ) {
        if degrees.iter().sum::<usize>() % 2 == 1 {
            degrees[0] += 1;
        }
        let g = configuration_model(&degrees, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(g.degrees(), degrees.clone());
        prop_assert_eq!(2 * g.edge_count(), degrees.iter().sum::<usize>());
    }

    #[test]
    fn realized_sequences_are_even(alpha in 1.0f64..8.0, beta in 1.1f64..3.5, seed in any::<u64>()) {
        let params = PowerLawParams::new(alpha, beta).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Ok(d) = realize_degree_sequence(&params, DegreeMode::Deterministic, &mut rng) {
            prop_assert_eq!(d.iter().sum::<usize>() % 2, 0);
            prop_assert!(d.len() as u64 == params.total_nodes());
        }
    }

    #[test]
    fn edge_list_round_trip(
        mut degrees in prop::collection::vec(0usize..6, 1..30),
        seed in any::<u64>(),
    ) {
        if degrees.iter().sum::<usize>() % 2 == 1 {
            degrees[0] += 1;
        }
        let g = configuration_model(&degrees, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let header = EdgeListHeader { nodes: g.node_count(), seed, alpha: 1.5, beta: 2.5 };
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &g, &header).unwrap();
        let (h, back) = read_edge_list(&buf[..]).unwrap();
        prop_assert_eq!(h, header);
        prop_assert_eq!(back.edges(), g.edges());
    }
}

#[test]
fn orphan_agreement_at_desk_scale() {
    for beta in [2.5, 3.0] {
        let (params, graph) = desk_graph(beta, 11);
        for p in [0.3, 0.6] {
            let r = fail(&graph, p, 3);
            let measured = r.orphan_fraction();
            let predicted = orphan_and_degree1_counts(&params, p).unwrap().orphan_fraction;
            let se = (predicted * (1.0 - predicted) / r.survivors as f64).sqrt();
            assert!(
                (measured - predicted).abs() < 3.0 * se,
                "beta {beta} p {p}: {measured} vs {predicted} (se {se})"
            );
        }
    }
}

#[test]
fn giant_share_shrinks_with_failures() {
    let (_, graph) = desk_graph(2.5, 5);
    let mut last = f64::INFINITY;
    for i in 0..=9 {
        let p = i as f64 / 10.0;
        let mean = (0..10)
            .map(|s| fail(&graph, p, s).largest_fraction_of_survivors)
            .sum::<f64>()
            / 10.0;
        assert!(mean <= last + 1e-3, "p {p}: {mean} > {last}");
        last = mean;
    }
}

#[test]
fn self_loops_are_rare() {
    for beta in [2.2, 2.5, 3.0] {
        let (_, graph) = desk_graph(beta, 21);
        let stats = graph.stats();
        let share = stats.nodes_with_self_loop as f64 / graph.node_count() as f64;
        assert!(share < 0.01, "beta {beta}: {share}");
    }
}

#[test]
fn percolation_is_deterministic() {
    let (_, a) = desk_graph(2.5, 8);
    let (_, b) = desk_graph(2.5, 8);
    assert_eq!(a.edges(), b.edges());
    assert_eq!(fail(&a, 0.45, 9), fail(&b, 0.45, 9));
}
