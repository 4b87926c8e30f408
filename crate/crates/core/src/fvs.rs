//! Weighted feedback vertex sets: the local-ratio 2-approximation of Bafna,
//! Berman and Fujito, and an exact solver for small graphs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Instance, VertexSet, Weight};
use crate::hitting::{elements, mask_of, solve_lazily};

pub const DEFAULT_FVS_EXACT_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeedbackSet {
    pub vertices: VertexSet,
    pub weight: Weight,
}

fn big(w: &Weight) -> BigRational {
    BigRational::new(BigInt::from(*w.numer()), BigInt::from(*w.denom()))
}

pub fn is_feedback_set(instance: &Instance, set: &VertexSet) -> bool {
    let allowed: Vec<bool> = (0..instance.n()).map(|v| !set.contains(&v)).collect();
    instance.graph.is_forest(&allowed)
}

/// Current residual graph during the local-ratio phase.
struct Residual<'a> {
    instance: &'a Instance,
    alive: Vec<bool>,
    deg: Vec<usize>,
}

impl Residual<'_> {
    fn remove(&mut self, v: usize) {
        self.alive[v] = false;
        for &w in self.instance.graph.neighbors(v) {
            if self.alive[w] {
                self.deg[w] -= 1;
            }
        }
    }

    /// Strips vertices of degree at most one until none remain.
    fn prune(&mut self) {
        let n = self.alive.len();
        let mut stack: Vec<usize> = (0..n).filter(|&v| self.alive[v] && self.deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !self.alive[v] {
                continue;
            }
            self.remove(v);
            for &w in self.instance.graph.neighbors(v) {
                if self.alive[w] && self.deg[w] <= 1 {
                    stack.push(w);
                }
            }
        }
    }

    /// A cycle in which every vertex but at most one has degree two.
    fn semidisjoint_cycle(&self) -> Option<Vec<usize>> {
        let g = &self.instance.graph;
        let n = self.alive.len();
        let two: Vec<bool> = (0..n).map(|v| self.alive[v] && self.deg[v] == 2).collect();
        for comp in g.components(&two) {
            let ends: Vec<usize> = comp
                .iter()
                .flat_map(|&v| {
                    g.neighbors(v)
                        .iter()
                        .copied()
                        .filter(|&w| self.alive[w] && !two[w])
                        .collect::<Vec<_>>()
                })
                .collect();
            match ends.as_slice() {
                [] => return Some(comp),
                [a, b] if a == b => {
                    let mut c = comp;
                    c.push(*a);
                    return Some(c);
                }
                _ => {}
            }
        }
        None
    }
}

/// Local-ratio 2-approximation followed by reverse deletion. Deterministic.
pub fn fvs_2approx(instance: &Instance) -> FeedbackSet {
    let g = &instance.graph;
    let n = g.n();
    let mut res = Residual {
        instance,
        alive: vec![true; n],
        deg: (0..n).map(|v| g.degree(v)).collect(),
    };
    let mut w: Vec<BigRational> = instance.weights.iter().map(big).collect();
    let mut order: Vec<usize> = Vec::new();
    res.prune();
    loop {
        let mut zero: Vec<usize> = (0..n).filter(|&v| res.alive[v] && w[v].is_zero()).collect();
        if zero.is_empty() {
            let alive: Vec<usize> = (0..n).filter(|&v| res.alive[v]).collect();
            if alive.is_empty() {
                break;
            }
            if let Some(cycle) = res.semidisjoint_cycle() {
                let gamma = cycle.iter().map(|&v| w[v].clone()).min().expect("nonempty");
                for &v in &cycle {
                    w[v] -= &gamma;
                }
            } else {
                let charge = |v: usize| BigRational::from_integer(BigInt::from(res.deg[v] - 1));
                let gamma = alive
                    .iter()
                    .map(|&v| &w[v] / charge(v))
                    .min()
                    .expect("nonempty");
                for &v in &alive {
                    w[v] -= &gamma * charge(v);
                }
            }
            debug_assert!(w.iter().all(|x| !x.is_negative()));
            zero = alive.into_iter().filter(|&v| w[v].is_zero()).collect();
        }
        // Later entries are tried first during reverse deletion, so within
        // one step the heaviest (then largest id) vertex is tried first.
        zero.sort_by(|&a, &b| instance.weights[a].cmp(&instance.weights[b]).then(a.cmp(&b)));
        for v in zero {
            order.push(v);
            res.remove(v);
        }
        res.prune();
    }
    let mut set: VertexSet = order.iter().copied().collect();
    for &v in order.iter().rev() {
        set.remove(&v);
        if !is_feedback_set(instance, &set) {
            set.insert(v);
        }
    }
    let weight = instance.weight_of(&set);
    FeedbackSet {
        vertices: set,
        weight,
    }
}

/// Minimum-weight feedback vertex set; ties by cardinality, then by the
/// lexicographically smallest set.
pub fn fvs_exact(instance: &Instance, max_n: usize) -> Result<FeedbackSet> {
    let n = instance.n();
    if n > max_n || n > 64 {
        return Err(Error::CapExceeded {
            what: "exact feedback vertex set",
            size: n,
            cap: max_n.min(64),
        });
    }
    let g = &instance.graph;
    let (sol, _) = solve_lazily::<()>(&instance.weights, Vec::new(), |m| {
        let allowed: Vec<bool> = (0..n).map(|v| m >> v & 1 == 0).collect();
        Ok(g.find_cycle(&allowed).map(mask_of))
    })
    .expect("infallible")
    .expect("cycles are never empty");
    let vertices: VertexSet = elements(sol).collect();
    let weight = instance.weight_of(&vertices);
    Ok(FeedbackSet { vertices, weight })
}
