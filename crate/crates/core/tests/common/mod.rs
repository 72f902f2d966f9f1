//! Shared fixtures and independent oracles for the integration tests and the
//! acceptance harness.
#![allow(dead_code)]

use std::path::PathBuf;

use gals::encoding::{decode_labels, marginal_fraction};
use gals::modularity::local_f;
use gals::{
    delta_q_move, is_safe, lsma_mutate, modularity_q, mrw_init, run_gals_observed,
    uniform_crossover, Chromosome, Event, GaConfig, MoveTarget, Network, Partition,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn two_triangles() -> Network {
    Network::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap()
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// G(n, p) with at least one edge.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Network {
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        if !edges.is_empty() {
            return Network::from_edges(n, edges).unwrap();
        }
    }
}

/// A small random graph with size and density drawn from `rng`.
pub fn random_instance<R: Rng>(rng: &mut R) -> Network {
    let n = rng.random_range(4..=40);
    let p = rng.random_range(0.05..0.5);
    random_graph(rng, n, p)
}

pub fn random_labels<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let k = rng.random_range(1..=n);
    (0..n).map(|_| rng.random_range(0..k)).collect()
}

/// A safe chromosome where each gene keeps itself with probability 0.2 and
/// otherwise points at a uniform neighbour.
pub fn random_safe_chromosome<R: Rng>(rng: &mut R, net: &Network) -> Chromosome {
    let alleles = (0..net.node_count())
        .map(|i| {
            let nbrs = net.neighbors(i);
            if nbrs.is_empty() || rng.random_bool(0.2) {
                i
            } else {
                nbrs[rng.random_range(0..nbrs.len())]
            }
        })
        .collect();
    Chromosome::new(alleles).unwrap()
}

/// Modularity straight from the pairwise definition.
pub fn q_direct(net: &Network, labels: &[usize]) -> f64 {
    let n = net.node_count();
    let two_m = 2.0 * net.edge_count() as f64;
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                let a = if net.has_edge(i, j) { 1.0 } else { 0.0 };
                total += a - (net.degree(i) * net.degree(j)) as f64 / two_m;
            }
        }
    }
    total / two_m
}

/// Labels after moving only node `i` to `target`, built without `Partition`.
pub fn moved_labels(labels: &[usize], i: usize, target: MoveTarget) -> Vec<usize> {
    let mut out = labels.to_vec();
    out[i] = match target {
        MoveTarget::Community(c) => c,
        MoveTarget::Singleton => labels.iter().max().unwrap() + 1,
    };
    out
}

/// Best modularity over every set partition of the network's nodes.
pub fn brute_force_optimum(net: &Network) -> f64 {
    fn rec(net: &Network, labels: &mut Vec<usize>, next: usize, best: &mut f64) {
        if labels.len() == net.node_count() {
            *best = best.max(q_direct(net, labels));
            return;
        }
        for c in 0..=next {
            labels.push(c);
            rec(net, labels, next.max(c + 1), best);
            labels.pop();
        }
    }
    let mut best = f64::NEG_INFINITY;
    rec(net, &mut Vec::new(), 0, &mut best);
    best
}

/// Outcome of one property check: `Err` carries the first counterexample.
pub type Check = Result<String, String>;

/// `|Q − Σf_i / 2m| ≤ 1e−10` on random graphs and labelings.
pub fn check_decomposition(instances: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for t in 0..instances {
        let net = random_instance(&mut rng);
        let part = Partition::from_labels(&net, &random_labels(&mut rng, net.node_count())).unwrap();
        let q = modularity_q(&net, &part).unwrap();
        let sum: f64 = (0..net.node_count()).map(|i| local_f(&net, &part, i)).sum();
        let gap = (q - sum / (2.0 * net.edge_count() as f64)).abs();
        let oracle_gap = (q - q_direct(&net, part.labels())).abs();
        worst = worst.max(gap).max(oracle_gap);
        if gap > 1e-10 || oracle_gap > 1e-10 {
            return Err(format!("instance {t}: gap {gap:e}, oracle gap {oracle_gap:e}"));
        }
    }
    Ok(format!("{instances} instances, max gap {worst:.1e}"))
}

/// `delta_q_move` agrees with a from-scratch recompute within 1e−9 and never
/// disagrees on the sign.
pub fn check_delta_q(moves: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    while done < moves {
        let net = random_instance(&mut rng);
        let part = Partition::from_labels(&net, &random_labels(&mut rng, net.node_count())).unwrap();
        let before = q_direct(&net, part.labels());
        for _ in 0..50 {
            let i = rng.random_range(0..net.node_count());
            let target = if rng.random_bool(0.1) {
                MoveTarget::Singleton
            } else {
                MoveTarget::Community(rng.random_range(0..part.community_count()))
            };
            let delta = delta_q_move(&net, &part, i, target).unwrap();
            let oracle = q_direct(&net, &moved_labels(part.labels(), i, target)) - before;
            let gap = (delta - oracle).abs();
            worst = worst.max(gap);
            let sign_flip = oracle.abs() > 1e-9 && delta.signum() != oracle.signum();
            if gap > 1e-9 || sign_flip {
                return Err(format!("move {done}: node {i} to {target:?}, {delta} vs {oracle}"));
            }
            done += 1;
        }
    }
    Ok(format!("{moves} moves, max gap {worst:.1e}"))
}

/// LSMA never lowers modularity and keeps the chromosome safe.
pub fn check_lsma_monotone(pairs: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut moved = 0;
    for t in 0..pairs {
        let net = random_instance(&mut rng);
        let chrom = random_safe_chromosome(&mut rng, &net);
        let before = q_direct(&net, &decode_labels(&chrom));
        let out = lsma_mutate(&net, &chrom, &mut rng).unwrap();
        let after = q_direct(&net, &decode_labels(&out.chromosome));
        if after < before - 1e-12 {
            return Err(format!("pair {t}: Q {before} -> {after}"));
        }
        if !is_safe(&out.chromosome, &net) {
            return Err(format!("pair {t}: mutation produced an unsafe chromosome"));
        }
        if !out.partition.same_grouping(&Partition::from_labels(&net, &decode_labels(&out.chromosome)).unwrap()) {
            return Err(format!("pair {t}: returned partition is not the decoding"));
        }
        moved += out.moves;
    }
    Ok(format!("{pairs} pairs, {moved} nodes moved, no decrease"))
}

/// Crossover of two safe parents is safe.
pub fn check_crossover_safety(pairs: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    for t in 0..pairs {
        let net = random_instance(&mut rng);
        let a = random_safe_chromosome(&mut rng, &net);
        let b = mrw_init(&net, &mut rng);
        let child = uniform_crossover(&a, &b, &mut rng).unwrap();
        if !is_safe(&child, &net) {
            return Err(format!("pair {t}: unsafe child"));
        }
    }
    Ok(format!("{pairs} pairs, all children safe"))
}

/// Counts unsafe chromosomes seen by an observer across a whole run.
pub fn check_run_safety(net: &Network, cfg: &GaConfig) -> Check {
    let mut seen = 0usize;
    let mut unsafe_count = 0usize;
    run_gals_observed(net, cfg, |event| {
        let batch = match event {
            Event::Initial(pop) => pop,
            Event::Offspring { offspring, .. } => offspring,
            Event::Selected { population, .. } => population,
        };
        for ind in batch {
            seen += 1;
            if !is_safe(&ind.chromosome, net) {
                unsafe_count += 1;
            }
        }
    })
    .map_err(|e| e.to_string())?;
    if unsafe_count == 0 {
        Ok(format!("{seen} chromosomes checked, 0 unsafe"))
    } else {
        Err(format!("{unsafe_count} of {seen} chromosomes unsafe"))
    }
}

/// Mean marginal fraction of uniformly random chromosomes against
/// `(1 − 1/n)^n`, within 0.01.
pub fn check_uniform_marginal_fraction(seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut report = Vec::new();
    for (n, samples) in [(10usize, 40_000usize), (100, 4_000), (1000, 400)] {
        let mut total = 0.0;
        for _ in 0..samples {
            let alleles = (0..n).map(|_| rng.random_range(0..n)).collect();
            total += marginal_fraction(&Chromosome::new(alleles).unwrap());
        }
        let mean = total / samples as f64;
        let expected = (1.0 - 1.0 / n as f64).powi(n as i32);
        if (mean - expected).abs() > 0.01 {
            return Err(format!("n={n}: mean {mean:.4}, expected {expected:.4}"));
        }
        report.push(format!("n={n} {mean:.4}/{expected:.4}"));
    }
    Ok(report.join(", "))
}

/// Expected marginal fraction of a random-walk chromosome: node `j` is
/// marginal iff no neighbour `i` picks it, which happens with probability
/// `Π_{i ∈ N(j)} (1 − 1/k_i)`. Isolated nodes point at themselves.
pub fn expected_mrw_marginal_fraction(net: &Network) -> f64 {
    let n = net.node_count();
    let total: f64 = (0..n)
        .map(|j| {
            if net.degree(j) == 0 {
                return 0.0;
            }
            net.neighbors(j)
                .iter()
                .map(|&i| 1.0 - 1.0 / net.degree(i) as f64)
                .product::<f64>()
        })
        .sum();
    total / n as f64
}

pub fn mean_mrw_marginal_fraction(net: &Network, samples: usize, seed: u64) -> f64 {
    let mut rng = rng(seed);
    (0..samples)
        .map(|_| marginal_fraction(&mrw_init(net, &mut rng)))
        .sum::<f64>()
        / samples as f64
}

/// Sampled random-walk marginal fraction matches its exact expectation.
pub fn check_mrw_marginal_expectation(net: &Network, seed: u64) -> Check {
    let mean = mean_mrw_marginal_fraction(net, 4_000, seed);
    let expected = expected_mrw_marginal_fraction(net);
    let report = format!("n={} sampled {mean:.4}, exact {expected:.4}", net.node_count());
    if (mean - expected).abs() <= 0.005 {
        Ok(report)
    } else {
        Err(report)
    }
}

/// Marginal fraction of MRW-initialised and evolved chromosomes on `net`
/// lies strictly inside (0.30, 0.40).
pub fn check_mrw_marginal_band(net: &Network, seed: u64) -> Check {
    let mrw = mean_mrw_marginal_fraction(net, 2_000, seed);
    let cfg = GaConfig {
        seed,
        ..GaConfig::default()
    };
    let mut evolved = Vec::new();
    run_gals_observed(net, &cfg, |event| {
        if let Event::Selected { generation, population } = event {
            if generation == cfg.iterations {
                evolved.extend(population.iter().map(|ind| marginal_fraction(&ind.chromosome)));
            }
        }
    })
    .map_err(|e| e.to_string())?;
    let evolved = evolved.iter().sum::<f64>() / evolved.len() as f64;
    let inside = |x: f64| x > 0.30 && x < 0.40;
    let report = format!("n={} MRW {mrw:.4}, evolved {evolved:.4}", net.node_count());
    if inside(mrw) && inside(evolved) {
        Ok(report)
    } else {
        Err(report)
    }
}
