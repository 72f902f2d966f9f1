//! Genetic operators over locus-based chromosomes: random-walk
//! initialisation, uniform crossover, marginal-gene local-search mutation and
//! `(μ + λ)` survivor selection.
//!
//! All operators that can create alleles only ever pick a node's neighbour
//! (or the node itself), so a population that starts safe stays safe.

use rand::Rng;

use crate::encoding::{decode, ensure_safe, Chromosome};
use crate::error::{Error, Result};
use crate::graph::Network;
use crate::modularity::{local_f_if, modularity_unchecked};
use crate::partition::{MoveTarget, Partition};

/// A chromosome with its decoded partition and modularity.
#[derive(Debug, Clone)]
pub struct Individual {
    pub chromosome: Chromosome,
    pub partition: Partition,
    pub q: f64,
}

impl Individual {
    /// Decodes `chromosome` and scores it.
    pub fn evaluate(net: &Network, chromosome: Chromosome) -> Result<Self> {
        let partition = decode(net, &chromosome)?;
        Ok(Self::from_parts(net, chromosome, partition))
    }

    /// `partition` must be the decoding of `chromosome`.
    pub(crate) fn from_parts(net: &Network, chromosome: Chromosome, partition: Partition) -> Self {
        let q = if net.edge_count() == 0 {
            0.0
        } else {
            modularity_unchecked(net, &partition)
        };
        Individual {
            chromosome,
            partition,
            q,
        }
    }
}

/// Draws each gene's allele uniformly from the node's neighbours (a one-step
/// random walk). Isolated nodes point at themselves.
pub fn mrw_init<R: Rng + ?Sized>(net: &Network, rng: &mut R) -> Chromosome {
    let alleles = (0..net.node_count())
        .map(|i| {
            let nbrs = net.neighbors(i);
            if nbrs.is_empty() {
                i
            } else {
                nbrs[rng.random_range(0..nbrs.len())]
            }
        })
        .collect();
    Chromosome::from_vec_unchecked(alleles)
}

/// Child takes gene `i` from `a` where `mask[i]` is set and from `b`
/// otherwise.
pub fn crossover_with_mask(a: &Chromosome, b: &Chromosome, mask: &[bool]) -> Result<Chromosome> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if mask.len() != a.len() {
        return Err(Error::LengthMismatch {
            left: mask.len(),
            right: a.len(),
        });
    }
    let alleles = a
        .alleles()
        .iter()
        .zip(b.alleles())
        .zip(mask)
        .map(|((&x, &y), &take_a)| if take_a { x } else { y })
        .collect();
    Ok(Chromosome::from_vec_unchecked(alleles))
}

/// Uniform crossover with a fresh fair-coin mask.
pub fn uniform_crossover<R: Rng + ?Sized>(
    a: &Chromosome,
    b: &Chromosome,
    rng: &mut R,
) -> Result<Chromosome> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mask: Vec<bool> = (0..a.len()).map(|_| rng.random_bool(0.5)).collect();
    crossover_with_mask(a, b, &mask)
}

/// Output of [`lsma_mutate`]: the mutated chromosome, its decoded partition
/// and the number of nodes that changed community.
#[derive(Debug, Clone)]
pub struct Mutation {
    pub chromosome: Chromosome,
    pub partition: Partition,
    pub moves: usize,
}

/// Local-search mutation over marginal genes.
///
/// Genes are visited in ascending order. A gene is marginal when no gene
/// (itself included) currently takes it as allele; only marginal genes are
/// touched, so each change moves exactly one node between communities. The
/// node joins the community among its own and its neighbours' that maximises
/// its local term `f_i` (strict `>`, its current community considered first),
/// and its allele is redrawn uniformly from the neighbours in that
/// community. The partition is updated in place, so later genes see earlier
/// moves. Modularity never decreases.
pub fn lsma_mutate<R: Rng + ?Sized>(
    net: &Network,
    chrom: &Chromosome,
    rng: &mut R,
) -> Result<Mutation> {
    ensure_safe(chrom, net)?;
    let partition = decode(net, chrom)?;
    Ok(lsma_from_decoded(net, chrom.clone(), partition, rng))
}

/// [`lsma_mutate`] for a chromosome already known to be safe and decoded.
pub(crate) fn lsma_from_decoded<R: Rng + ?Sized>(
    net: &Network,
    mut genes: Chromosome,
    mut part: Partition,
    rng: &mut R,
) -> Mutation {
    let n = net.node_count();
    let two_m = 2.0 * net.edge_count() as f64;
    let mut in_degree = genes.in_degrees();
    // Scratch: neighbour counts per community, reset after every gene.
    let mut links = vec![0usize; part.community_count()];
    let mut candidates: Vec<usize> = Vec::new();
    let mut carriers: Vec<usize> = Vec::new();
    let mut moves = 0;

    for i in 0..n {
        if in_degree[i] != 0 {
            continue;
        }
        let nbrs = net.neighbors(i);
        let k_i = nbrs.len();
        if k_i == 0 {
            continue;
        }

        let own = part.label(i);
        candidates.clear();
        candidates.push(own);
        for &j in nbrs {
            let c = part.label(j);
            if links[c] == 0 && c != own {
                candidates.push(c);
            }
            links[c] += 1;
        }

        let mut best = own;
        let mut max = f64::NEG_INFINITY;
        for &c in &candidates {
            let f = local_f_if(&part, i, k_i, two_m, MoveTarget::Community(c), links[c]);
            if f > max {
                max = f;
                best = c;
            }
        }
        for &c in &candidates {
            links[c] = 0;
        }

        carriers.clear();
        carriers.extend(nbrs.iter().copied().filter(|&j| part.label(j) == best));
        let allele = if carriers.is_empty() {
            i
        } else {
            carriers[rng.random_range(0..carriers.len())]
        };

        in_degree[genes.allele(i)] -= 1;
        in_degree[allele] += 1;
        genes.set(i, allele);
        if best != own {
            // A marginal gene is a leaf of the genotype graph, so its old
            // community keeps its other members and stays connected.
            part.move_node(net, i, MoveTarget::Community(best))
                .expect("labels come from the partition itself");
            moves += 1;
        }
    }

    Mutation {
        chromosome: genes,
        partition: part,
        moves,
    }
}

/// Keeps the `mu` fittest of `parents ∪ offspring`. Ties prefer parents,
/// then the lower index.
pub fn mu_plus_lambda_select(
    parents: Vec<Individual>,
    offspring: Vec<Individual>,
    mu: usize,
) -> Result<Vec<Individual>> {
    let total = parents.len() + offspring.len();
    if mu == 0 || mu > total {
        return Err(Error::InvalidParameter(format!(
            "cannot select {mu} survivors from {total} individuals"
        )));
    }
    let mut pool = parents;
    pool.extend(offspring);
    // Stable sort keeps parents ahead of offspring on ties.
    pool.sort_by(|a, b| b.q.total_cmp(&a.q));
    pool.truncate(mu);
    Ok(pool)
}
