//! Newman–Girvan modularity and its per-node decomposition.
//!
//! For node `i` in community `c`, the local term is
//! `f_i = Σ_{j ∈ c} (A_ij − k_i k_j / 2m)`, which includes `j = i`, and
//! `Q = Σ_i f_i / 2m`. Moving one node while every other label stays fixed
//! changes `Q` by exactly `Δf_i / m`.

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::partition::{MoveTarget, Partition};

fn check(net: &Network, part: &Partition) -> Result<()> {
    if part.node_count() != net.node_count() {
        return Err(Error::LengthMismatch {
            left: part.node_count(),
            right: net.node_count(),
        });
    }
    if net.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    Ok(())
}

/// Modularity `Q` from community aggregates: `Σ_c e_c/m − (d_c/2m)²`, where
/// `e_c` counts edges inside `c` and `d_c` is its degree sum. `O(m + k)`.
pub fn modularity_q(net: &Network, part: &Partition) -> Result<f64> {
    check(net, part)?;
    Ok(modularity_unchecked(net, part))
}

pub(crate) fn modularity_unchecked(net: &Network, part: &Partition) -> f64 {
    let mut inside = vec![0usize; part.community_count()];
    for (i, j) in net.edges() {
        let c = part.label(i);
        if c == part.label(j) {
            inside[c] += 1;
        }
    }
    let m = net.edge_count() as f64;
    let two_m = 2.0 * m;
    inside
        .iter()
        .zip(part.degree_sums())
        .map(|(&e, &d)| {
            let share = d as f64 / two_m;
            e as f64 / m - share * share
        })
        .sum()
}

/// Number of neighbours of `i` labelled `c`.
#[inline]
fn links_to(net: &Network, part: &Partition, i: usize, c: usize) -> usize {
    net.neighbors(i)
        .iter()
        .filter(|&&j| part.label(j) == c)
        .count()
}

/// Local term `f_i` of node `i` in its current community. `O(k_i)`.
pub fn local_f(net: &Network, part: &Partition, i: usize) -> f64 {
    let c = part.label(i);
    let two_m = 2.0 * net.edge_count() as f64;
    let k_i = net.degree(i) as f64;
    links_to(net, part, i, c) as f64 - k_i * part.degree_sum(c) as f64 / two_m
}

/// `f_i` as it would be if `i` (and only `i`) joined `target`.
///
/// `links` is the number of neighbours of `i` in `target`; for the current
/// community the cached degree sum already contains `k_i`.
#[inline]
pub(crate) fn local_f_if(
    part: &Partition,
    i: usize,
    k_i: usize,
    two_m: f64,
    target: MoveTarget,
    links: usize,
) -> f64 {
    let k = k_i as f64;
    match target {
        MoveTarget::Community(c) if c == part.label(i) => {
            links as f64 - k * part.degree_sum(c) as f64 / two_m
        }
        MoveTarget::Community(c) => {
            links as f64 - k * (part.degree_sum(c) + k_i) as f64 / two_m
        }
        MoveTarget::Singleton => -k * k / two_m,
    }
}

/// `Q(after) − Q(before)` for moving only node `i` to `target`. `O(k_i)`.
pub fn delta_q_move(
    net: &Network,
    part: &Partition,
    i: usize,
    target: MoveTarget,
) -> Result<f64> {
    check(net, part)?;
    part.check_node(i)?;
    part.check_target(target)?;
    if part.is_noop(i, target) {
        return Ok(0.0);
    }
    let k_i = net.degree(i);
    let two_m = 2.0 * net.edge_count() as f64;
    let old = part.label(i);
    let f_old = local_f_if(part, i, k_i, two_m, MoveTarget::Community(old), links_to(net, part, i, old));
    let links_new = match target {
        MoveTarget::Community(c) => links_to(net, part, i, c),
        MoveTarget::Singleton => 0,
    };
    let f_new = local_f_if(part, i, k_i, two_m, target, links_new);
    Ok((f_new - f_old) / net.edge_count() as f64)
}

/// Returns a copy of `part` with node `i` moved to `target`.
pub fn apply_move(
    net: &Network,
    part: &Partition,
    i: usize,
    target: MoveTarget,
) -> Result<Partition> {
    let mut next = part.clone();
    next.move_node(net, i, target)?;
    Ok(next)
}
