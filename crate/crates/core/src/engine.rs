//! The generational driver.
//!
//! A run seeds `μ` individuals by random walk, then for `L` generations
//! builds `λ` offspring (uniform crossover of two parents drawn uniformly with
//! replacement, followed by local-search mutation) and keeps the `μ` best of
//! parents and offspring. Offspring within a generation are independent and
//! may be built on the rayon pool; each draws from its own substream so the
//! outcome does not depend on scheduling.

use std::time::{Duration, Instant};

use log::debug;
use rand::Rng;

use crate::encoding::{decode, Chromosome};
use crate::error::{Error, Result};
use crate::exec::map_indexed;
use crate::graph::Network;
use crate::operators::{
    lsma_from_decoded, mrw_init, mu_plus_lambda_select, uniform_crossover, Individual,
};
use crate::partition::Partition;
use crate::rng::RngStream;

/// Parameters of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    /// Number of generations `L`.
    pub iterations: usize,
    /// Parent population size `μ`.
    pub mu: usize,
    /// Offspring per generation `λ`.
    pub lambda: usize,
    pub seed: u64,
    /// Record the best modularity every this many generations.
    pub trace_every: usize,
    /// Stop after this many generations without improvement. Off by default.
    pub stagnation: Option<usize>,
    /// Build offspring on the rayon pool (needs the `parallel` feature).
    pub parallel: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            iterations: 500,
            mu: 80,
            lambda: 60,
            seed: 0,
            trace_every: 1,
            stagnation: None,
            parallel: true,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::InvalidParameter(msg.to_string()));
        if self.iterations < 1 {
            return fail("iterations must be at least 1");
        }
        if self.mu < 2 {
            return fail("mu must be at least 2");
        }
        if self.lambda < 1 {
            return fail("lambda must be at least 1");
        }
        if self.trace_every < 1 {
            return fail("trace_every must be at least 1");
        }
        if self.stagnation == Some(0) {
            return fail("stagnation window must be at least 1");
        }
        Ok(())
    }
}

/// Outcome of [`run_gals`].
#[derive(Debug, Clone)]
pub struct RunResult {
    pub best_partition: Partition,
    pub best_chromosome: Chromosome,
    pub best_q: f64,
    pub generations_run: usize,
    /// `(generation, best Q)`; generation 0 is the initial population.
    pub q_trace: Vec<(usize, f64)>,
    pub elapsed: Duration,
    pub seed: u64,
}

/// What an observer sees during a run.
#[derive(Debug)]
pub enum Event<'a> {
    /// The seeded population, fittest first.
    Initial(&'a [Individual]),
    /// Offspring of a generation, before selection.
    Offspring {
        generation: usize,
        offspring: &'a [Individual],
    },
    /// The surviving population after selection, fittest first.
    Selected {
        generation: usize,
        population: &'a [Individual],
    },
}

/// Runs the genetic algorithm on `net`.
pub fn run_gals(net: &Network, cfg: &GaConfig) -> Result<RunResult> {
    run_gals_observed(net, cfg, |_| {})
}

/// [`run_gals`] with a callback invoked on the initial population and after
/// every generation.
pub fn run_gals_observed<F>(net: &Network, cfg: &GaConfig, mut observe: F) -> Result<RunResult>
where
    F: FnMut(Event<'_>),
{
    cfg.validate()?;
    if net.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let start = Instant::now();
    let stream = RngStream::new(cfg.seed);

    let mut population: Vec<Individual> = map_indexed(cfg.mu, cfg.parallel, |idx| {
        let mut rng = stream.substream(&[0, idx as u64]);
        let chromosome = mrw_init(net, &mut rng);
        Individual::evaluate(net, chromosome)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    sort_by_fitness(&mut population);
    observe(Event::Initial(&population));

    let mut best = population[0].q;
    let mut q_trace = vec![(0, best)];
    let mut since_improvement = 0;
    let mut generations_run = 0;

    for generation in 1..=cfg.iterations {
        let parents = &population;
        let offspring: Vec<Individual> = map_indexed(cfg.lambda, cfg.parallel, |idx| {
            let mut rng = stream.substream(&[generation as u64, idx as u64]);
            make_offspring(net, parents, &mut rng)
        })
        .into_iter()
        .collect::<Result<_>>()?;

        observe(Event::Offspring {
            generation,
            offspring: &offspring,
        });
        let parents = std::mem::take(&mut population);
        population = mu_plus_lambda_select(parents, offspring, cfg.mu)?;
        observe(Event::Selected {
            generation,
            population: &population,
        });
        generations_run = generation;

        let current = population[0].q;
        if current > best {
            best = current;
            since_improvement = 0;
        } else {
            since_improvement += 1;
        }
        let last = generation == cfg.iterations;
        let stalled = cfg.stagnation.is_some_and(|s| since_improvement >= s);
        if generation % cfg.trace_every == 0 || last || stalled {
            q_trace.push((generation, current));
        }
        if stalled {
            debug!("stopping after {generation} generations without improvement");
            break;
        }
    }

    let fittest = population.swap_remove(0);
    Ok(RunResult {
        best_q: fittest.q,
        best_partition: fittest.partition,
        best_chromosome: fittest.chromosome,
        generations_run,
        q_trace,
        elapsed: start.elapsed(),
        seed: cfg.seed,
    })
}

fn sort_by_fitness(population: &mut [Individual]) {
    population.sort_by(|a, b| b.q.total_cmp(&a.q));
}

fn make_offspring<R: Rng>(net: &Network, parents: &[Individual], rng: &mut R) -> Result<Individual> {
    let a = &parents[rng.random_range(0..parents.len())];
    let b = &parents[rng.random_range(0..parents.len())];
    let child = uniform_crossover(&a.chromosome, &b.chromosome, rng)?;
    let partition = decode(net, &child)?;
    let mutated = lsma_from_decoded(net, child, partition, rng);
    Ok(Individual::from_parts(net, mutated.chromosome, mutated.partition))
}

/// Aggregate of several independent runs.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub runs: usize,
    pub best_qs: Vec<f64>,
    pub mean_q: f64,
    pub min_q: f64,
    pub max_q: f64,
    /// Sample standard deviation (zero for a single run).
    pub std_q: f64,
    /// The run with the highest modularity (earliest on ties).
    pub best: RunResult,
    pub mean_elapsed: Duration,
}

/// Runs `runs` independent runs with seeds `cfg.seed, cfg.seed + 1, ..`.
pub fn run_many(net: &Network, cfg: &GaConfig, runs: usize) -> Result<RunSummary> {
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    cfg.validate()?;
    let results: Vec<RunResult> = map_indexed(runs, cfg.parallel, |r| {
        let cfg = GaConfig {
            seed: cfg.seed.wrapping_add(r as u64),
            ..cfg.clone()
        };
        run_gals(net, &cfg)
    })
    .into_iter()
    .collect::<Result<_>>()?;
    Ok(summarize(results))
}

fn summarize(results: Vec<RunResult>) -> RunSummary {
    let runs = results.len();
    let best_qs: Vec<f64> = results.iter().map(|r| r.best_q).collect();
    let mean_q = best_qs.iter().sum::<f64>() / runs as f64;
    let min_q = best_qs.iter().copied().fold(f64::INFINITY, f64::min);
    let max_q = best_qs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let std_q = if runs > 1 {
        let var = best_qs.iter().map(|q| (q - mean_q).powi(2)).sum::<f64>() / (runs - 1) as f64;
        var.sqrt()
    } else {
        0.0
    };
    let mean_elapsed = results.iter().map(|r| r.elapsed).sum::<Duration>() / runs as u32;
    let best_idx = best_qs
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &q)| if q > best_qs[acc] { i } else { acc });
    let best = results.into_iter().nth(best_idx).expect("at least one run");
    RunSummary {
        runs,
        best_qs,
        mean_q,
        min_q,
        max_q,
        std_q,
        best,
        mean_elapsed,
    }
}
