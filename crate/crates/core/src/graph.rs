//! Undirected simple networks and the text formats they are read from.
//!
//! Node tokens from the input are mapped to contiguous ids `0..n`. Ids are
//! assigned in sorted token order (numeric when every token is an integer,
//! lexicographic otherwise), so the line order of an input file never changes
//! the resulting [`Network`].

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gml;

/// An immutable undirected graph without self-loops or parallel edges.
///
/// Adjacency is stored in compressed sparse row form with each neighbour
/// list sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    edge_count: usize,
    names: Vec<String>,
}

impl Network {
    /// Builds a network over `n` nodes named `"0".."n-1"`.
    ///
    /// Duplicate edges (in either orientation) are collapsed. Self-loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_named_edges(names, edges)
    }

    /// Builds a network whose node `i` is labelled `names[i]` in output.
    pub fn from_named_edges<I>(names: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = names.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut pairs = BTreeSet::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: 0,
                    node: names[u].clone(),
                });
            }
            pairs.insert((u.min(v), u.max(v)));
        }

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; 2 * pairs.len()];
        for &(u, v) in &pairs {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }

        Ok(Network {
            offsets,
            targets,
            edge_count: pairs.len(),
            names,
        })
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    /// Number of undirected edges `m`.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count()).map(|i| self.degree(i)).collect()
    }

    /// Whether `i` and `j` are adjacent. `O(log k_i)`.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors(i).binary_search(&j).is_ok()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Looks up the internal id of an original node token.
    pub fn node_id(&self, token: &str) -> Option<usize> {
        // Names are sorted by `token_order`, so a binary search works.
        self.names
            .binary_search_by(|probe| token_order(probe, token))
            .ok()
    }

    /// Iterates every edge once as `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .copied()
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// Canonical edge-list text: one `name_i name_j` line per edge, `i < j`,
    /// ordered by `(i, j)`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{} {}", self.names[i], self.names[j]);
        }
        out
    }

    /// Nodes without any incident edge.
    pub fn isolated_nodes(&self) -> Vec<usize> {
        (0..self.node_count())
            .filter(|&i| self.degree(i) == 0)
            .collect()
    }
}

/// Total order on node tokens: integers numerically first, then everything
/// else lexicographically.
fn token_order(a: &str, b: &str) -> std::cmp::Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Assigns ids to tokens in `token_order` and builds the network.
pub(crate) fn build_from_tokens(
    tokens: impl IntoIterator<Item = String>,
    edges: &[(String, String, usize)],
) -> Result<Network> {
    let mut names: Vec<String> = tokens.into_iter().collect();
    names.sort_by(|a, b| token_order(a, b));
    names.dedup();
    if names.is_empty() {
        return Err(Error::Empty);
    }
    let index: HashMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut pairs = Vec::with_capacity(edges.len());
    for (u, v, line) in edges {
        let iu = *index.get(u.as_str()).ok_or_else(|| Error::UnknownNode(u.clone()))?;
        let iv = *index.get(v.as_str()).ok_or_else(|| Error::UnknownNode(v.clone()))?;
        if iu == iv {
            return Err(Error::SelfLoop {
                line: *line,
                node: u.clone(),
            });
        }
        pairs.push((iu, iv));
    }
    drop(index);
    Network::from_named_edges(names, pairs)
}

/// Parses a whitespace-separated edge list.
///
/// Blank lines and lines starting with `#` are skipped. Every other line must
/// hold exactly two node tokens.
pub fn parse_edge_list(text: &str) -> Result<Network> {
    let mut edges = Vec::new();
    let mut tokens = BTreeSet::new();
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
                message: format!("expected 2 node tokens, found {}", fields.len()),
            });
        }
        if fields[0] == fields[1] {
            return Err(Error::SelfLoop {
                line,
                node: fields[0].to_string(),
            });
        }
        tokens.insert(fields[0].to_string());
        tokens.insert(fields[1].to_string());
        edges.push((fields[0].to_string(), fields[1].to_string(), line));
    }
    if edges.is_empty() {
        return Err(Error::Empty);
    }
    build_from_tokens(tokens, &edges)
}

/// Parses the `graph [ node [ id .. ] edge [ source .. target .. ] ]` subset
/// of GML. Node ids become the node tokens.
pub fn parse_gml(text: &str) -> Result<Network> {
    gml::GmlGraph::parse(text)?.into_network()
}
