//! Planted-partition benchmark graphs.
//!
//! `groups` groups of `group_size` nodes; every within-group pair is linked
//! with probability `z_in / (group_size − 1)` and every between-group pair with
//! probability `z_out / (group_size · (groups − 1))`, so a node's expected
//! degree is `z_in + z_out`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Network;
use crate::partition::Partition;
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq)]
pub struct NewmanParams {
    pub groups: usize,
    pub group_size: usize,
    /// Expected number of within-group neighbours.
    pub z_in: f64,
    /// Expected number of between-group neighbours.
    pub z_out: f64,
    pub seed: u64,
}

impl NewmanParams {
    /// The classic 4 × 32 layout with total expected degree 16.
    pub fn accuracy(z_out: f64, seed: u64) -> Self {
        Self {
            groups: 4,
            group_size: 32,
            z_in: 16.0 - z_out,
            z_out,
            seed,
        }
    }

    /// `groups` groups of 100 with `z_in = 10`, `z_out = 6`.
    pub fn scaling(groups: usize, seed: u64) -> Self {
        Self {
            groups,
            group_size: 100,
            z_in: 10.0,
            z_out: 6.0,
            seed,
        }
    }

    pub fn node_count(&self) -> usize {
        self.groups * self.group_size
    }

    pub fn p_in(&self) -> f64 {
        self.z_in / (self.group_size as f64 - 1.0)
    }

    pub fn p_out(&self) -> f64 {
        self.z_out / (self.group_size as f64 * (self.groups as f64 - 1.0))
    }

    pub fn validate(&self) -> Result<()> {
        if self.groups < 2 {
            return Err(Error::InvalidParameter("need at least 2 groups".into()));
        }
        if self.group_size < 2 {
            return Err(Error::InvalidParameter("groups need at least 2 nodes".into()));
        }
        if !(self.z_in.is_finite() && self.z_out.is_finite()) || self.z_in < 0.0 || self.z_out < 0.0 {
            return Err(Error::InvalidParameter("expected degrees must be non-negative".into()));
        }
        if self.z_in + self.z_out > (self.node_count() - 1) as f64 {
            return Err(Error::InvalidParameter(
                "z_in + z_out exceeds the number of other nodes".into(),
            ));
        }
        for (name, p) in [("within-group", self.p_in()), ("between-group", self.p_out())] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParameter(format!(
                    "{name} edge probability {p} is outside [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// Samples a benchmark graph and its planted partition.
pub fn newman_graph(params: &NewmanParams) -> Result<(Network, Partition)> {
    params.validate()?;
    let n = params.node_count();
    let s = params.group_size;
    let (p_in, p_out) = (params.p_in(), params.p_out());
    let mut rng = RngStream::new(params.seed).substream(&[]);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let p = if i / s == j / s { p_in } else { p_out };
            if p > 0.0 && rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    let net = Network::from_edges(n, edges)?;
    let truth: Vec<usize> = (0..n).map(|i| i / s).collect();
    let truth = Partition::from_labels(&net, &truth)?;
    Ok((net, truth))
}
