mod common;

use common::{moved_labels, q_direct, random_instance, random_labels, rng};
use gals::{delta_q_move, MoveTarget, Partition};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn decomposition_holds_on_random_instances() {
    let report = common::check_decomposition(100, 11).unwrap();
    println!("{report}");
}

#[test]
fn delta_q_matches_recompute() {
    let report = common::check_delta_q(10_000, 12).unwrap();
    println!("{report}");
}

/// The target with the largest predicted gain is the target with the largest
/// recomputed modularity.
#[test]
fn best_move_agrees_with_recompute() {
    let mut rng = rng(13);
    for _ in 0..300 {
        let net = random_instance(&mut rng);
        let part = Partition::from_labels(&net, &random_labels(&mut rng, net.node_count())).unwrap();
        for i in 0..net.node_count() {
            let targets: Vec<MoveTarget> = (0..part.community_count())
                .map(MoveTarget::Community)
                .chain([MoveTarget::Singleton])
                .collect();
            let predicted: Vec<f64> = targets
                .iter()
                .map(|&t| delta_q_move(&net, &part, i, t).unwrap())
                .collect();
            let recomputed: Vec<f64> = targets
                .iter()
                .map(|&t| q_direct(&net, &moved_labels(part.labels(), i, t)))
                .collect();
            let best_p = predicted.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let best_r = recomputed.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for (p, r) in predicted.iter().zip(&recomputed) {
                let top_p = best_p - p < 1e-12;
                let top_r = best_r - r < 1e-12;
                assert_eq!(top_p, top_r, "node {i}: {predicted:?} vs {recomputed:?}");
            }
        }
    }
}

proptest! {
    #[test]
    fn q_is_bounded(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let net = random_instance(&mut rng);
        let part = Partition::from_labels(&net, &random_labels(&mut rng, net.node_count())).unwrap();
        let q = gals::modularity_q(&net, &part).unwrap();
        prop_assert!((-0.5 - 1e-12..1.0).contains(&q));
    }

    #[test]
    fn caches_survive_move_sequences(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let net = random_instance(&mut rng);
        let mut part = Partition::from_labels(&net, &random_labels(&mut rng, net.node_count())).unwrap();
        for _ in 0..20 {
            let i = rng.random_range(0..net.node_count());
            let target = if rng.random_bool(0.2) {
                MoveTarget::Singleton
            } else {
                MoveTarget::Community(rng.random_range(0..part.community_count()))
            };
            part.move_node(&net, i, target).unwrap();
            let fresh = Partition::from_labels(&net, part.labels()).unwrap();
            prop_assert!(fresh.same_grouping(&part));
            for c in 0..part.community_count() {
                let d: usize = part.members(c).iter().map(|&j| net.degree(j)).sum();
                prop_assert_eq!(d, part.degree_sum(c));
                prop_assert!(!part.members(c).is_empty());
            }
            let q = gals::modularity_q(&net, &part).unwrap();
            prop_assert!((q - q_direct(&net, part.labels())).abs() < 1e-12);
        }
    }
}
