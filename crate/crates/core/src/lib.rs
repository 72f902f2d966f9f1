//! Community detection by a genetic algorithm over locus-based adjacency
//! chromosomes, with a marginal-gene local-search mutation.
//!
//! ```
//! use gals::{parse_edge_list, run_gals, GaConfig};
//!
//! let net = parse_edge_list("1 2\n2 3\n1 3\n3 4\n4 5\n5 6\n4 6\n").unwrap();
//! let cfg = GaConfig { iterations: 30, mu: 20, lambda: 10, seed: 7, ..GaConfig::default() };
//! let result = run_gals(&net, &cfg).unwrap();
//! assert!((result.best_q - 5.0 / 14.0).abs() < 1e-12);
//! assert_eq!(result.best_partition.community_count(), 2);
//! ```

pub mod benchgen;
mod dsu;
pub mod encoding;
pub mod engine;
pub mod error;
pub mod exec;
pub mod format;
mod gml;
pub mod graph;
pub mod metrics;
pub mod modularity;
pub mod operators;
pub mod partition;
pub mod rng;

pub use benchgen::{newman_graph, NewmanParams};
pub use encoding::{decode, is_safe, marginal_genes, Chromosome};
pub use engine::{run_gals, run_gals_observed, run_many, Event, GaConfig, RunResult, RunSummary};
pub use error::{Error, Result};
pub use format::parse_ground_truth;
pub use gml::GmlGraph;
pub use graph::{parse_edge_list, parse_gml, Network};
pub use metrics::{nmi, nmi_labels};
pub use modularity::{delta_q_move, local_f, modularity_q};
pub use operators::{lsma_mutate, mrw_init, mu_plus_lambda_select, uniform_crossover, Individual};
pub use partition::{MoveTarget, Partition};
