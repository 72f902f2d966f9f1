//! Normalized mutual information between two partitions.
//!
//! ```text
//!              −2 Σ_xy N_xy ln(N_xy n / (N_x N_y))
//! NMI(A, B) = ─────────────────────────────────────
//!             Σ_x N_x ln(N_x / n) + Σ_y N_y ln(N_y / n)
//! ```
//!
//! with natural logarithms. When both partitions put every node in one
//! community the denominator vanishes and NMI is 1.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Sparse contingency table of two labelings.
#[derive(Debug, Clone)]
pub struct ConfusionTable {
    pub counts: HashMap<(usize, usize), usize>,
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
    pub total: usize,
}

impl ConfusionTable {
    /// Labels are arbitrary non-negative ids; they are compacted internally.
    pub fn new(a: &[usize], b: &[usize]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        let a = crate::partition::canonical_labels(a);
        let b = crate::partition::canonical_labels(b);
        let rows = a.iter().max().map_or(0, |m| m + 1);
        let cols = b.iter().max().map_or(0, |m| m + 1);
        let mut counts = HashMap::new();
        let mut row_sums = vec![0; rows];
        let mut col_sums = vec![0; cols];
        for (&x, &y) in a.iter().zip(&b) {
            *counts.entry((x, y)).or_insert(0) += 1;
            row_sums[x] += 1;
            col_sums[y] += 1;
        }
        Ok(Self {
            counts,
            row_sums,
            col_sums,
            total: a.len(),
        })
    }
}

/// Sums after sorting so the result does not depend on iteration order.
fn stable_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.into_iter().sum()
}

fn entropy_term(sizes: &[usize], n: f64) -> f64 {
    stable_sum(
        sizes
            .iter()
            .filter(|&&s| s > 0)
            .map(|&s| s as f64 * (s as f64 / n).ln())
            .collect(),
    )
}

/// NMI of two labelings of the same nodes.
pub fn nmi_labels(a: &[usize], b: &[usize]) -> Result<f64> {
    let table = ConfusionTable::new(a, b)?;
    if table.total == 0 {
        return Err(Error::Empty);
    }
    let n = table.total as f64;
    let numerator = -2.0
        * stable_sum(
            table
                .counts
                .iter()
                .map(|(&(x, y), &nxy)| {
                    let nxy = nxy as f64;
                    nxy * (nxy * n / (table.row_sums[x] as f64 * table.col_sums[y] as f64)).ln()
                })
                .collect(),
        );
    let denominator = entropy_term(&table.row_sums, n) + entropy_term(&table.col_sums, n);
    if denominator == 0.0 {
        return Ok(1.0);
    }
    Ok((numerator / denominator).max(0.0))
}

pub fn nmi(a: &Partition, b: &Partition) -> Result<f64> {
    nmi_labels(a.labels(), b.labels())
}
