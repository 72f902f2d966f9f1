mod common;

use gals::{parse_edge_list, parse_ground_truth, parse_gml, modularity_q, Network};
use proptest::prelude::*;

fn edge_lists() -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((0u32..60, 0u32..60), 1..120)
        .prop_map(|v| v.into_iter().filter(|(a, b)| a != b).collect::<Vec<_>>())
        .prop_filter("needs an edge", |v| !v.is_empty())
}

fn as_text(edges: &[(u32, u32)]) -> String {
    edges.iter().map(|(a, b)| format!("{a} {b}\n")).collect()
}

fn as_gml(edges: &[(u32, u32)]) -> String {
    let mut nodes: Vec<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let mut out = String::from("graph [\n  directed 0\n");
    for v in nodes {
        out.push_str(&format!("  node [ id {v} label \"n{v}\" ]\n"));
    }
    for (a, b) in edges {
        out.push_str(&format!("  edge [ source {a} target {b} ]\n"));
    }
    out.push_str("]\n");
    out
}

fn same_graph_by_name(x: &Network, y: &Network) -> bool {
    if x.node_count() != y.node_count() || x.edge_count() != y.edge_count() {
        return false;
    }
    x.edges().all(|(i, j)| {
        match (y.node_id(x.name(i)), y.node_id(x.name(j))) {
            (Some(a), Some(b)) => y.has_edge(a, b),
            _ => false,
        }
    })
}

proptest! {
    #[test]
    fn canonical_edge_list_round_trips(edges in edge_lists()) {
        let net = parse_edge_list(&as_text(&edges)).unwrap();
        let again = parse_edge_list(&net.to_edge_list()).unwrap();
        prop_assert_eq!(&net, &again);
    }

    #[test]
    fn degree_sum_is_twice_edge_count(edges in edge_lists()) {
        let net = parse_edge_list(&as_text(&edges)).unwrap();
        prop_assert_eq!(net.degrees().iter().sum::<usize>(), 2 * net.edge_count());
    }

    #[test]
    fn gml_and_edge_list_agree(edges in edge_lists()) {
        let a = parse_edge_list(&as_text(&edges)).unwrap();
        let b = parse_gml(&as_gml(&edges)).unwrap();
        prop_assert!(same_graph_by_name(&a, &b));
    }

    #[test]
    fn line_order_does_not_matter(edges in edge_lists()) {
        let mut reversed = edges.clone();
        reversed.reverse();
        let a = parse_edge_list(&as_text(&edges)).unwrap();
        let b = parse_edge_list(&as_text(&reversed)).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn minimal_gml() {
    let net = parse_gml("graph [ node [ id 1 ] node [ id 2 ] edge [ source 1 target 2 ] ]").unwrap();
    assert_eq!((net.node_count(), net.edge_count()), (2, 1));
}

#[test]
fn karate_club_file() {
    let dir = common::data_dir();
    let net = parse_edge_list(&std::fs::read_to_string(dir.join("karate.txt")).unwrap()).unwrap();
    assert_eq!((net.node_count(), net.edge_count()), (34, 78));
    let truth = std::fs::read_to_string(dir.join("karate_factions.txt")).unwrap();
    let truth = parse_ground_truth(&truth, &net).unwrap();
    let sizes: Vec<usize> = truth.communities().iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![16, 18]);
    let q = modularity_q(&net, &truth).unwrap();
    assert!((q - 0.3715).abs() <= 1e-4, "{q}");
    assert!((q - common::q_direct(&net, truth.labels())).abs() < 1e-12);
}
