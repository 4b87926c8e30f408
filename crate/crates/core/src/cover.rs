//! Weighted set cover by the greedy rule, and hitting sets for systems of
//! bounded VC-dimension by Brönnimann–Goodrich reweighting.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    pub id: usize,
    /// Sorted, distinct element ids.
    pub elements: Vec<usize>,
    pub weight: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetSystem {
    pub universe: Vec<usize>,
    pub sets: Vec<CandidateSet>,
    /// Element -> ids of the sets containing it.
    pub incidence: BTreeMap<usize, Vec<usize>>,
    /// Largest set cardinality (M).
    pub max_set_size: usize,
    /// Largest number of sets sharing one element.
    pub max_frequency: usize,
}

impl SetSystem {
    /// Builds the system; set elements outside the universe are dropped.
    pub fn new(universe: impl IntoIterator<Item = usize>, sets: impl IntoIterator<Item = (usize, Vec<usize>, Weight)>) -> Self {
        let universe: Vec<usize> = universe.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let in_universe: BTreeSet<usize> = universe.iter().copied().collect();
        let mut incidence: BTreeMap<usize, Vec<usize>> =
            universe.iter().map(|&e| (e, Vec::new())).collect();
        let mut list: Vec<CandidateSet> = sets
            .into_iter()
            .map(|(id, mut elements, weight)| {
                elements.retain(|e| in_universe.contains(e));
                elements.sort_unstable();
                elements.dedup();
                CandidateSet { id, elements, weight }
            })
            .collect();
        list.sort_by_key(|s| s.id);
        for s in &list {
            for e in &s.elements {
                incidence.get_mut(e).expect("filtered to universe").push(s.id);
            }
        }
        let max_set_size = list.iter().map(|s| s.elements.len()).max().unwrap_or(0);
        let max_frequency = incidence.values().map(Vec::len).max().unwrap_or(0);
        SetSystem {
            universe,
            sets: list,
            incidence,
            max_set_size,
            max_frequency,
        }
    }

    /// Elements contained in no set.
    pub fn uncoverable(&self) -> Vec<usize> {
        self.incidence
            .iter()
            .filter(|(_, s)| s.is_empty())
            .map(|(&e, _)| e)
            .collect()
    }
}

/// Compares gain/weight ratios exactly; zero weight counts as infinite.
fn ratio_cmp(gain_a: usize, w_a: &Weight, gain_b: usize, w_b: &Weight) -> Ordering {
    match (w_a.is_zero(), w_b.is_zero()) {
        (true, true) => gain_a.cmp(&gain_b),
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            (*w_b * Weight::from_integer(gain_a as i64)).cmp(&(*w_a * Weight::from_integer(gain_b as i64)))
        }
    }
}

/// Greedy weighted set cover: repeatedly take the set with the most newly
/// covered elements per unit weight, ties by lowest id.
pub fn greedy_weighted_set_cover(system: &SetSystem) -> Result<(Vec<usize>, Weight)> {
    if let Some(&e) = system.uncoverable().first() {
        return Err(Error::Uncoverable(e));
    }
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    let mut chosen = Vec::new();
    let mut total = Weight::zero();
    let mut taken = vec![false; system.sets.len()];
    while covered.len() < system.universe.len() {
        let mut best: Option<(usize, usize)> = None;
        for (i, s) in system.sets.iter().enumerate() {
            if taken[i] {
                continue;
            }
            let gain = s.elements.iter().filter(|e| !covered.contains(e)).count();
            if gain == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((j, g)) => ratio_cmp(gain, &s.weight, g, &system.sets[j].weight) == Ordering::Greater,
            };
            if better {
                best = Some((i, gain));
            }
        }
        let (i, _) = best.expect("every element is coverable");
        taken[i] = true;
        let s = &system.sets[i];
        covered.extend(s.elements.iter().copied());
        chosen.push(s.id);
        total += s.weight;
    }
    Ok((chosen, total))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VCConfig {
    /// Bound on the VC-dimension of the range space.
    pub d: usize,
    /// Multiplier on the (d/ε)·ln(1/ε) sample size.
    pub net_sample_factor: f64,
    /// Reweighting rounds allowed per guess of the optimum before doubling it.
    pub max_doubling_rounds: usize,
    pub rng_seed: u64,
    /// First guess of the optimum; 1 when absent.
    pub initial_c: Option<usize>,
}

impl Default for VCConfig {
    fn default() -> Self {
        VCConfig {
            d: 9,
            net_sample_factor: 4.0,
            max_doubling_rounds: 256,
            rng_seed: 0,
            initial_c: None,
        }
    }
}

/// Element weights 2^e kept as exponents.
struct ExpWeights(Vec<u32>);

impl ExpWeights {
    /// Weights scaled so the largest is 1.
    fn normalized(&self) -> Vec<f64> {
        let top = self.0.iter().copied().max().unwrap_or(0);
        self.0
            .iter()
            .map(|&e| 2f64.powi(e as i32 - top as i32))
            .collect()
    }
}

fn hits(set: &[bool], range: &[usize]) -> bool {
    range.iter().any(|&i| set[i])
}

/// Turns `net` (local indices) into a net for `heavy`, then strips elements
/// (largest index first) that no heavy range needs.
fn settle_net(net: &mut [bool], ranges: &[Vec<usize>], heavy: &[usize], w: &[f64]) {
    for &r in heavy {
        if !hits(net, &ranges[r]) {
            let pick = ranges[r]
                .iter()
                .copied()
                .max_by(|&a, &b| w[a].total_cmp(&w[b]).then(b.cmp(&a)))
                .expect("nonempty range");
            net[pick] = true;
        }
    }
    minimize(net, ranges, heavy);
}

fn minimize(set: &mut [bool], ranges: &[Vec<usize>], which: &[usize]) {
    for v in (0..set.len()).rev() {
        if !set[v] {
            continue;
        }
        set[v] = false;
        if !which.iter().all(|&r| hits(set, &ranges[r])) {
            set[v] = true;
        }
    }
}

/// A set meeting every range. Each range must be nonempty. Output is
/// reproducible for a fixed seed and always checked before it is returned.
pub fn bg_hitting_set(universe: &[usize], ranges: &[Vec<usize>], cfg: &VCConfig) -> Result<BTreeSet<usize>> {
    if let Some(i) = ranges.iter().position(Vec::is_empty) {
        return Err(Error::EmptyRange(i));
    }
    let elems: Vec<usize> = universe
        .iter()
        .chain(ranges.iter().flatten())
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if ranges.is_empty() {
        return Ok(BTreeSet::new());
    }
    let index = |e: usize| elems.binary_search(&e).expect("collected above");
    let local: Vec<Vec<usize>> = ranges
        .iter()
        .map(|r| {
            let mut v: Vec<usize> = r.iter().map(|&e| index(e)).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let all: Vec<usize> = (0..local.len()).collect();
    let n = elems.len();
    let d = cfg.d.max(1) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut c = cfg.initial_c.unwrap_or(1).max(1).min(n);

    loop {
        // Each guess starts from uniform weights. At c = n every range is
        // heavy, so the last guess always succeeds.
        let mut weights = ExpWeights(vec![0; n]);
        let eps = 1.0 / (2.0 * c as f64);
        let sample_size = (cfg.net_sample_factor * (d / eps) * (1.0 / eps).ln()).ceil().max(1.0) as usize;
        for _ in 0..cfg.max_doubling_rounds.max(1) {
            let w = weights.normalized();
            let total: f64 = w.iter().sum();
            let heavy: Vec<usize> = all
                .iter()
                .copied()
                .filter(|&r| local[r].iter().map(|&i| w[i]).sum::<f64>() >= eps * total)
                .collect();
            let dist = WeightedIndex::new(&w).expect("positive weights");
            let mut net = vec![false; n];
            for _attempt in 0..3 {
                net.iter_mut().for_each(|x| *x = false);
                for _ in 0..sample_size {
                    net[dist.sample(&mut rng)] = true;
                }
                if heavy.iter().all(|&r| hits(&net, &local[r])) {
                    break;
                }
            }
            settle_net(&mut net, &local, &heavy, &w);
            match all.iter().copied().find(|&r| !hits(&net, &local[r])) {
                None => {
                    minimize(&mut net, &local, &all);
                    let out: BTreeSet<usize> =
                        (0..n).filter(|&i| net[i]).map(|i| elems[i]).collect();
                    // Hard postcondition, independent of the sampling.
                    if ranges.iter().all(|r| r.iter().any(|e| out.contains(e))) {
                        return Ok(out);
                    }
                    return Err(Error::DidNotConverge);
                }
                Some(r) => {
                    for &i in &local[r] {
                        weights.0[i] += 1;
                    }
                }
            }
        }
        if c >= n {
            return Err(Error::DidNotConverge);
        }
        c = (2 * c).min(n);
    }
}
