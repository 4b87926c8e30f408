mod common;

use std::collections::BTreeSet;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trackpaths::cover::{bg_hitting_set, greedy_weighted_set_cover, SetSystem, VCConfig};
use trackpaths::{Error, Weight};

fn unit(sets: &[&[usize]]) -> Vec<(usize, Vec<usize>, Weight)> {
    sets.iter().enumerate().map(|(i, s)| (i, s.to_vec(), Weight::from_integer(1))).collect()
}

#[test]
fn greedy_examples() {
    let sys = SetSystem::new(0..3, unit(&[&[0, 1], &[1, 2], &[2]]));
    assert_eq!(greedy_weighted_set_cover(&sys).unwrap(), (vec![0, 1], Weight::from_integer(2)));
    let sys = SetSystem::new(0..3, unit(&[&[0, 1, 2]]));
    assert_eq!(greedy_weighted_set_cover(&sys).unwrap().0, vec![0]);
    let sys = SetSystem::new(0..0, unit(&[]));
    assert_eq!(greedy_weighted_set_cover(&sys).unwrap(), (vec![], Weight::from_integer(0)));
    let sys = SetSystem::new(0..2, unit(&[&[0]]));
    assert_eq!(sys.uncoverable(), vec![1]);
    assert_eq!(greedy_weighted_set_cover(&sys), Err(Error::Uncoverable(1)));
}

#[test]
fn bg_examples() {
    let cfg = VCConfig::default();
    assert_eq!(bg_hitting_set(&[0, 1], &[vec![0], vec![1]], &cfg).unwrap(), set(&[0, 1]));
    assert_eq!(bg_hitting_set(&[0, 1], &[vec![0, 1]], &cfg).unwrap().len(), 1);
    let pairs: Vec<Vec<usize>> = (0..4).flat_map(|a| (a + 1..4).map(move |b| vec![a, b])).collect();
    let hit = bg_hitting_set(&[0, 1, 2, 3], &pairs, &cfg).unwrap();
    assert!(hit.len() >= 3);
    assert_eq!(brute_hitting_size(&[0, 1, 2, 3], &pairs), 3);
    assert!(pairs.iter().all(|r| r.iter().any(|x| hit.contains(x))));
    assert_eq!(bg_hitting_set(&[0], &[vec![0], vec![]], &cfg), Err(Error::EmptyRange(1)));
    assert!(bg_hitting_set(&[0, 1], &[], &cfg).unwrap().is_empty());
}

/// Large systems whose optimum is far above the first guess still converge.
#[test]
fn bg_converges_on_large_optima() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for round in 0..20 {
        let n = rng.gen_range(20..40);
        let ranges: Vec<Vec<usize>> = (0..rng.gen_range(200..800))
            .map(|_| {
                let k = rng.gen_range(1..4);
                let r: BTreeSet<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
                r.into_iter().collect()
            })
            .collect();
        let universe: Vec<usize> = (0..n).collect();
        let cfg = VCConfig {
            rng_seed: round,
            ..VCConfig::default()
        };
        let hit = bg_hitting_set(&universe, &ranges, &cfg).unwrap();
        assert!(ranges.iter().all(|r| r.iter().any(|x| hit.contains(x))), "round {round}");
    }
}

#[test]
fn greedy_covers_and_reports_its_cost() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for round in 0..200 {
        let u = rng.gen_range(1..=10);
        let count = rng.gen_range(1..=8);
        let mut sets: Vec<(usize, Vec<usize>, Weight)> = (0..count)
            .map(|id| {
                let e: Vec<usize> = (0..u).filter(|_| rng.gen_bool(0.4)).collect();
                (id, e, Weight::new(rng.gen_range(1..=9), rng.gen_range(1..=3)))
            })
            .collect();
        sets.push((count, (0..u).collect(), Weight::from_integer(20)));
        let sys = SetSystem::new(0..u, sets.clone());
        let (picked, cost) = greedy_weighted_set_cover(&sys).unwrap();
        let covered: BTreeSet<usize> = picked.iter().flat_map(|&id| sets[id].1.iter().copied()).collect();
        assert_eq!(covered.len(), u, "round {round}");
        let total: Weight = picked.iter().map(|&id| sets[id].2).sum();
        assert_eq!(total, cost);
    }
}
