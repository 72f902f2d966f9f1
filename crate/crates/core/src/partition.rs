//! Hard partitions of a network's nodes into communities.

use crate::error::{Error, Result};
use crate::graph::Network;

/// Where a single node is sent by [`Partition::move_node`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveTarget {
    /// An existing community id.
    Community(usize),
    /// A fresh community containing only the moved node.
    Singleton,
}

/// A partition with cached per-community membership and degree sums.
///
/// Community ids are always `0..k` with no empty community. Each node's
/// position inside its member list is tracked so single-node moves are
/// `O(1)` apart from relabelling when a community disappears.
#[derive(Debug, Clone)]
pub struct Partition {
    labels: Vec<usize>,
    members: Vec<Vec<usize>>,
    position: Vec<usize>,
    degree_sums: Vec<usize>,
}

impl Partition {
    /// Builds a partition from arbitrary per-node labels. Labels are
    /// renumbered `0..k` in order of first appearance.
    pub fn from_labels(net: &Network, raw: &[usize]) -> Result<Self> {
        if raw.len() != net.node_count() {
            return Err(Error::LengthMismatch {
                left: raw.len(),
                right: net.node_count(),
            });
        }
        let labels = canonical_labels(raw);
        Ok(Self::from_canonical(net, labels))
    }

    /// `labels` must already be `0..k` in first-appearance order.
    pub(crate) fn from_canonical(net: &Network, labels: Vec<usize>) -> Self {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut members = vec![Vec::new(); k];
        let mut position = vec![0; labels.len()];
        let mut degree_sums = vec![0; k];
        for (i, &c) in labels.iter().enumerate() {
            position[i] = members[c].len();
            members[c].push(i);
            degree_sums[c] += net.degree(i);
        }
        Partition {
            labels,
            members,
            position,
            degree_sums,
        }
    }

    /// Every node in one community.
    pub fn single(net: &Network) -> Self {
        Self::from_canonical(net, vec![0; net.node_count()])
    }

    /// Every node alone.
    pub fn singletons(net: &Network) -> Self {
        Self::from_canonical(net, (0..net.node_count()).collect())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn community_count(&self) -> usize {
        self.members.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn communities(&self) -> &[Vec<usize>] {
        &self.members
    }

    /// Sum of degrees of the nodes in community `c`.
    #[inline]
    pub fn degree_sum(&self, c: usize) -> usize {
        self.degree_sums[c]
    }

    pub fn degree_sums(&self) -> &[usize] {
        &self.degree_sums
    }

    /// Labels renumbered by first appearance. Two partitions group the same
    /// node pairs iff their canonical labels are equal.
    pub fn canonical(&self) -> Vec<usize> {
        canonical_labels(&self.labels)
    }

    pub fn same_grouping(&self, other: &Partition) -> bool {
        self.canonical() == other.canonical()
    }

    pub(crate) fn check_node(&self, i: usize) -> Result<()> {
        if i >= self.labels.len() {
            return Err(Error::NodeOutOfRange {
                node: i,
                n: self.labels.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_target(&self, target: MoveTarget) -> Result<()> {
        if let MoveTarget::Community(c) = target {
            if c >= self.members.len() {
                return Err(Error::LabelOutOfRange {
                    label: c,
                    k: self.members.len(),
                });
            }
        }
        Ok(())
    }

    /// Whether moving `i` to `target` leaves the grouping unchanged.
    pub fn is_noop(&self, i: usize, target: MoveTarget) -> bool {
        match target {
            MoveTarget::Community(c) => c == self.labels[i],
            MoveTarget::Singleton => self.members[self.labels[i]].len() == 1,
        }
    }

    /// Moves node `i` to `target`, keeping membership lists and degree sums
    /// current. A community emptied by the move is removed and the last
    /// community takes its id.
    pub fn move_node(&mut self, net: &Network, i: usize, target: MoveTarget) -> Result<()> {
        self.check_node(i)?;
        self.check_target(target)?;
        if self.is_noop(i, target) {
            return Ok(());
        }
        let k_i = net.degree(i);
        let old = self.labels[i];

        // Detach from the old community.
        let pos = self.position[i];
        self.members[old].swap_remove(pos);
        if let Some(&moved) = self.members[old].get(pos) {
            self.position[moved] = pos;
        }
        self.degree_sums[old] -= k_i;

        let new = match target {
            MoveTarget::Community(c) => c,
            MoveTarget::Singleton => {
                self.members.push(Vec::new());
                self.degree_sums.push(0);
                self.members.len() - 1
            }
        };
        self.position[i] = self.members[new].len();
        self.members[new].push(i);
        self.degree_sums[new] += k_i;
        self.labels[i] = new;

        if self.members[old].is_empty() {
            let last = self.members.len() - 1;
            self.members.swap_remove(old);
            self.degree_sums.swap_remove(old);
            if old != last {
                for &j in &self.members[old] {
                    self.labels[j] = old;
                }
            }
        }
        Ok(())
    }
}

/// Renumbers labels `0..k` in order of first appearance.
pub fn canonical_labels(raw: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    raw.iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}
