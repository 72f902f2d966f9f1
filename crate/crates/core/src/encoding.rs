//! Locus-based adjacency chromosomes.
//!
//! Gene `i` holding allele `j` stands for a link `i -- j` in the genotype
//! graph; communities are the connected components of that graph taken as
//! undirected. `alleles[i] == i` is a self-link and contributes no edge.

use crate::dsu::DisjointSet;
use crate::error::{Error, Result};
use crate::graph::Network;
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chromosome {
    alleles: Vec<usize>,
}

impl Chromosome {
    /// Wraps an allele vector, checking every allele is a valid node id.
    pub fn new(alleles: Vec<usize>) -> Result<Self> {
        let n = alleles.len();
        if let Some(&bad) = alleles.iter().find(|&&a| a >= n) {
            return Err(Error::NodeOutOfRange { node: bad, n });
        }
        Ok(Self { alleles })
    }

    /// Builds a chromosome from 1-based alleles, as they are usually printed.
    pub fn from_one_based(alleles: &[usize]) -> Result<Self> {
        let n = alleles.len();
        let zero_based = alleles
            .iter()
            .map(|&a| {
                a.checked_sub(1)
                    .ok_or(Error::NodeOutOfRange { node: 0, n })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(zero_based)
    }

    /// Every gene points at itself.
    pub fn identity(n: usize) -> Self {
        Self {
            alleles: (0..n).collect(),
        }
    }

    pub(crate) fn from_vec_unchecked(alleles: Vec<usize>) -> Self {
        debug_assert!(alleles.iter().all(|&a| a < alleles.len()));
        Self { alleles }
    }

    pub fn len(&self) -> usize {
        self.alleles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alleles.is_empty()
    }

    pub fn alleles(&self) -> &[usize] {
        &self.alleles
    }

    #[inline]
    pub fn allele(&self, i: usize) -> usize {
        self.alleles[i]
    }

    pub(crate) fn set(&mut self, i: usize, allele: usize) {
        self.alleles[i] = allele;
    }

    /// Number of genes whose allele is `j`, for every `j`. Self-alleles count.
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut counts = vec![0; self.alleles.len()];
        for &a in &self.alleles {
            counts[a] += 1;
        }
        counts
    }
}

/// Community label of every node, numbered by first appearance while
/// scanning nodes `0..n`.
pub fn decode_labels(chrom: &Chromosome) -> Vec<usize> {
    decode_labels_counted(chrom).0
}

/// [`decode_labels`] plus the number of elementary steps it took (one per
/// gene scanned, per union, and per parent-pointer hop).
pub fn decode_labels_counted(chrom: &Chromosome) -> (Vec<usize>, usize) {
    let n = chrom.len();
    let mut dsu = DisjointSet::new(n);
    for (i, &a) in chrom.alleles().iter().enumerate() {
        if a != i {
            dsu.union(i, a);
        }
    }
    let mut root_label = vec![usize::MAX; n];
    let mut labels = Vec::with_capacity(n);
    let mut next = 0;
    for i in 0..n {
        let root = dsu.find(i);
        if root_label[root] == usize::MAX {
            root_label[root] = next;
            next += 1;
        }
        labels.push(root_label[root]);
    }
    (labels, 2 * n + dsu.steps())
}

/// Decodes a chromosome into the partition it represents on `net`.
pub fn decode(net: &Network, chrom: &Chromosome) -> Result<Partition> {
    if chrom.len() != net.node_count() {
        return Err(Error::LengthMismatch {
            left: chrom.len(),
            right: net.node_count(),
        });
    }
    Ok(Partition::from_canonical(net, decode_labels(chrom)))
}

/// True iff every allele is the gene itself or one of its neighbours.
pub fn is_safe(chrom: &Chromosome, net: &Network) -> bool {
    first_unsafe_gene(chrom, net).is_none()
}

/// The first gene whose allele is neither itself nor a neighbour.
pub fn first_unsafe_gene(chrom: &Chromosome, net: &Network) -> Option<usize> {
    if chrom.len() != net.node_count() {
        return Some(0);
    }
    chrom
        .alleles()
        .iter()
        .enumerate()
        .position(|(i, &a)| a != i && !net.has_edge(i, a))
}

pub(crate) fn ensure_safe(chrom: &Chromosome, net: &Network) -> Result<()> {
    match first_unsafe_gene(chrom, net) {
        None => Ok(()),
        Some(gene) if gene < chrom.len() => Err(Error::Unsafe {
            gene,
            allele: chrom.allele(gene),
        }),
        Some(_) => Err(Error::LengthMismatch {
            left: chrom.len(),
            right: net.node_count(),
        }),
    }
}

/// Marginal genes: nodes that no gene (itself included) takes as allele.
pub fn marginal_genes(chrom: &Chromosome) -> Vec<usize> {
    chrom
        .in_degrees()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 0)
        .map(|(j, _)| j)
        .collect()
}

/// Fraction of marginal genes in `chrom`.
pub fn marginal_fraction(chrom: &Chromosome) -> f64 {
    if chrom.is_empty() {
        return 0.0;
    }
    marginal_genes(chrom).len() as f64 / chrom.len() as f64
}

/// Nodes reachable from `start` by following alleles (the directed view of
/// the genotype graph), `start` included.
pub fn reachable_from(chrom: &Chromosome, start: usize) -> Vec<usize> {
    let mut seen = vec![false; chrom.len()];
    let mut out = Vec::new();
    let mut node = start;
    while !seen[node] {
        seen[node] = true;
        out.push(node);
        node = chrom.allele(node);
    }
    out
}
