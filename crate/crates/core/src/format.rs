//! Text and JSON forms of partitions and run results.
//!
//! Partition text files hold one `node_token community_token` pair per line;
//! blank lines and `#` comments are skipped. Community tokens are arbitrary
//! strings and are renumbered by first appearance in node order.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::engine::RunResult;
use crate::error::{Error, Result};
use crate::graph::Network;
use crate::partition::Partition;

/// The `(node, community)` token pairs of a partition file, in file order.
/// A node listed twice is an error.
pub fn parse_assignments(text: &str) -> Result<Vec<(String, String)>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected `node community`, found {} fields", fields.len()),
            });
        }
        if !seen.insert(fields[0]) {
            return Err(Error::DuplicateNode(fields[0].to_string()));
        }
        out.push((fields[0].to_string(), fields[1].to_string()));
    }
    Ok(out)
}

/// Reads a partition file covering every node of `net`.
pub fn parse_ground_truth(text: &str, net: &Network) -> Result<Partition> {
    let n = net.node_count();
    let mut community: Vec<Option<usize>> = vec![None; n];
    let mut ids: HashMap<String, usize> = HashMap::new();
    for (node, label) in parse_assignments(text)? {
        let id = net.node_id(&node).ok_or(Error::UnknownNode(node))?;
        let next = ids.len();
        community[id] = Some(*ids.entry(label).or_insert(next));
    }
    let labels = community
        .iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| Error::MissingNode(net.name(i).to_string())))
        .collect::<Result<Vec<_>>>()?;
    Partition::from_labels(net, &labels)
}

/// Writes `node_token community_id` lines in node order.
pub fn write_partition(net: &Network, part: &Partition) -> String {
    let mut out = String::new();
    for i in 0..net.node_count() {
        out.push_str(net.name(i));
        out.push(' ');
        out.push_str(&part.label(i).to_string());
        out.push('\n');
    }
    out
}

/// The network in the GML subset that [`crate::parse_gml`] reads. Isolated
/// nodes are kept, unlike in an edge list.
pub fn write_gml(net: &Network) -> String {
    let quote = |name: &str| {
        if !name.is_empty() && name.chars().all(|c| c.is_ascii_digit() || c == '-') {
            name.to_string()
        } else {
            format!("\"{}\"", name.replace('"', "'"))
        }
    };
    let mut out = String::from("graph [\n  directed 0\n");
    for i in 0..net.node_count() {
        out.push_str(&format!("  node [ id {} ]\n", quote(net.name(i))));
    }
    for (i, j) in net.edges() {
        out.push_str(&format!(
            "  edge [ source {} target {} ]\n",
            quote(net.name(i)),
            quote(net.name(j))
        ));
    }
    out.push_str("]\n");
    out
}

/// Communities as lists of node tokens.
pub fn community_tokens(net: &Network, part: &Partition) -> Vec<Vec<String>> {
    part.communities()
        .iter()
        .map(|c| c.iter().map(|&i| net.name(i).to_string()).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub communities: Vec<Vec<String>>,
    pub q: f64,
}

impl PartitionJson {
    pub fn new(net: &Network, part: &Partition, q: f64) -> Self {
        Self {
            communities: community_tokens(net, part),
            q,
        }
    }

    /// Rebuilds the partition; every node must appear exactly once.
    pub fn to_partition(&self, net: &Network) -> Result<Partition> {
        let mut text = String::new();
        for (c, members) in self.communities.iter().enumerate() {
            for token in members {
                text.push_str(&format!("{token} {c}\n"));
            }
        }
        parse_ground_truth(&text, net)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResultJson {
    pub q: f64,
    pub communities: Vec<Vec<String>>,
    pub trace: Vec<(usize, f64)>,
    pub seed: u64,
    pub elapsed_ms: f64,
}

impl RunResultJson {
    pub fn new(net: &Network, result: &RunResult) -> Self {
        Self {
            q: result.best_q,
            communities: community_tokens(net, &result.best_partition),
            trace: result.q_trace.clone(),
            seed: result.seed,
            elapsed_ms: result.elapsed.as_secs_f64() * 1e3,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data always serializes")
}

pub fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn path3() -> Network {
        parse_edge_list("a b\nb c\n").unwrap()
    }

    #[test]
    fn one_community() {
        let part = parse_ground_truth("a c0\nb c0\nc c0\n", &path3()).unwrap();
        assert_eq!(part.community_count(), 1);
    }

    #[test]
    fn three_singletons() {
        let part = parse_ground_truth("# truth\na x\n\nb y\nc z\n", &path3()).unwrap();
        assert_eq!(part.community_count(), 3);
    }

    #[test]
    fn coverage_errors() {
        let net = path3();
        assert_eq!(
            parse_ground_truth("a 1\nb 1\n", &net).unwrap_err(),
            Error::MissingNode("c".into())
        );
        assert_eq!(
            parse_ground_truth("a 1\nb 1\nc 1\nd 2\n", &net).unwrap_err(),
            Error::UnknownNode("d".into())
        );
        assert_eq!(
            parse_ground_truth("a 1\nb 1\na 2\nc 1\n", &net).unwrap_err(),
            Error::DuplicateNode("a".into())
        );
        assert!(matches!(
            parse_ground_truth("a 1 extra\n", &net).unwrap_err(),
            Error::Parse { line: 1, .. }
        ));
    }

    #[test]
    fn text_round_trip() {
        let net = path3();
        let part = Partition::from_labels(&net, &[0, 0, 1]).unwrap();
        let back = parse_ground_truth(&write_partition(&net, &part), &net).unwrap();
        assert_eq!(back.labels(), part.labels());
    }

    #[test]
    fn gml_keeps_isolated_nodes() {
        let net = Network::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        let back = crate::graph::parse_gml(&write_gml(&net)).unwrap();
        assert_eq!(back, net);
        let named = parse_edge_list("alpha beta\nbeta \"g\"\n").unwrap();
        let back = crate::graph::parse_gml(&write_gml(&named)).unwrap();
        assert_eq!(back.node_count(), 3);
        assert!(back.node_id("alpha").is_some());
    }

    #[test]
    fn assignments_keep_file_order() {
        let pairs = parse_assignments("b 1\n# c\na 2\n").unwrap();
        assert_eq!(pairs, vec![("b".into(), "1".into()), ("a".into(), "2".into())]);
        assert!(parse_assignments("a 1\na 1\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let net = path3();
        let part = Partition::from_labels(&net, &[0, 1, 1]).unwrap();
        let json = to_json(&PartitionJson::new(&net, &part, 0.25));
        let back: PartitionJson = from_json(&json).unwrap();
        assert_eq!(back.communities, vec![vec!["a"], vec!["b", "c"]]);
        assert!(back.to_partition(&net).unwrap().same_grouping(&part));
    }
}
