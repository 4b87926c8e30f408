//! Reduction rules 1-3 and the trace that maps kernel vertices back to the
//! vertices of the instance they came from.
//!
//! * Rule 1 deletes every vertex and edge that lies on no simple s-t path.
//! * Rule 2 deletes a degree-1 terminal (unless its only neighbor is the other
//!   terminal) and moves the terminal label to the neighbor.
//! * Rule 3 contracts an edge between two adjacent degree-2 non-terminals.
//!
//! None of the rules introduce trackers, so a tracking set of the kernel lifts
//! to one of the input by replacing each kernel vertex with its representative.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Instance, VertexSet, Weight};
use crate::linkage::{edge_on_path, vertex_on_path};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RuleId {
    Rule1,
    Rule2,
    Rule3,
}

/// One logged rule firing. Ids refer to the vertices of the traced input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub applied: Vec<RuleApplication>,
    /// Kernel vertex -> sorted, nonempty set of input vertices merged into it.
    pub origin: Vec<Vec<usize>>,
    /// Kernel vertex -> the input vertex a tracker on it is lifted to: the
    /// lightest member of its origin set, ties by smallest id.
    pub representative: Vec<usize>,
    pub relabeled_s: usize,
    pub relabeled_t: usize,
}

impl ReductionTrace {
    pub fn identity(instance: &Instance) -> Self {
        let n = instance.n();
        ReductionTrace {
            applied: Vec::new(),
            origin: (0..n).map(|v| vec![v]).collect(),
            representative: (0..n).collect(),
            relabeled_s: instance.s,
            relabeled_t: instance.t,
        }
    }

    /// Chains `self` (input -> mid) with `next` (mid -> kernel).
    pub fn then(&self, next: &ReductionTrace) -> ReductionTrace {
        let map = |v: usize| self.representative[v];
        let mut applied = self.applied.clone();
        applied.extend(next.applied.iter().map(|a| RuleApplication {
            rule: a.rule,
            vertices: a.vertices.iter().map(|&v| map(v)).collect(),
            edges: a.edges.iter().map(|&(u, v)| (map(u), map(v))).collect(),
        }));
        let origin = next
            .origin
            .iter()
            .map(|group| {
                let mut members: Vec<usize> = group
                    .iter()
                    .flat_map(|&v| self.origin[v].iter().copied())
                    .collect();
                members.sort_unstable();
                members
            })
            .collect();
        ReductionTrace {
            applied,
            origin,
            representative: next.representative.iter().map(|&v| map(v)).collect(),
            relabeled_s: map(next.relabeled_s),
            relabeled_t: map(next.relabeled_t),
        }
    }

    pub fn kernel_n(&self) -> usize {
        self.origin.len()
    }

    /// Maps kernel trackers to input vertices.
    pub fn lift(&self, kernel_trackers: &VertexSet) -> Result<VertexSet> {
        kernel_trackers
            .iter()
            .map(|&v| {
                self.representative
                    .get(v)
                    .copied()
                    .ok_or(Error::UnknownVertex(v))
            })
            .collect()
    }
}

/// Free-function form of [`ReductionTrace::lift`].
pub fn lift_trackers(trace: &ReductionTrace, kernel_trackers: &VertexSet) -> Result<VertexSet> {
    trace.lift(kernel_trackers)
}

/// Mutable working copy; vertex ids stay those of the input instance and a
/// merged vertex keeps the id of its representative.
struct Work {
    adj: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    members: Vec<Vec<usize>>,
    weight: Vec<Weight>,
    s: usize,
    t: usize,
    log: Vec<RuleApplication>,
}

impl Work {
    fn new(inst: &Instance) -> Self {
        let n = inst.n();
        Work {
            adj: (0..n)
                .map(|v| inst.graph.neighbors(v).iter().copied().collect())
                .collect(),
            alive: vec![true; n],
            members: (0..n).map(|v| vec![v]).collect(),
            weight: inst.weights.clone(),
            s: inst.s,
            t: inst.t,
            log: Vec::new(),
        }
    }

    fn alive_ids(&self) -> Vec<usize> {
        (0..self.alive.len()).filter(|&v| self.alive[v]).collect()
    }

    fn remove_vertex(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.adj[v].iter().copied().collect();
        for w in nbrs {
            self.adj[w].remove(&v);
        }
        self.adj[v].clear();
        self.alive[v] = false;
    }

    fn compact_graph(&self) -> (Graph, Vec<usize>, Vec<usize>) {
        let ids = self.alive_ids();
        let mut index = vec![usize::MAX; self.alive.len()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let edges = ids.iter().flat_map(|&u| {
            self.adj[u]
                .iter()
                .filter(move |&&w| u < w)
                .map(|&w| (index[u], index[w]))
                .collect::<Vec<_>>()
        });
        let g = Graph::new(ids.len(), edges).expect("working graph stays simple");
        (g, ids, index)
    }

    fn rule1(&mut self) -> bool {
        let (g, ids, index) = self.compact_graph();
        let (s, t) = (index[self.s], index[self.t]);
        let all = vec![true; g.n()];
        let connected = g.reachable(s, &all)[t];
        let mut dead_vertices = Vec::new();
        for v in 0..g.n() {
            if v == s || v == t {
                continue;
            }
            if !connected || !vertex_on_path(&g, &all, v, s, t) {
                dead_vertices.push(v);
            }
        }
        let mut dead_v = vec![false; g.n()];
        for &v in &dead_vertices {
            dead_v[v] = true;
        }
        let dead_edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, w)| {
                !dead_v[u] && !dead_v[w] && (!connected || !edge_on_path(&g, &all, u, w, s, t))
            })
            .collect();
        if dead_vertices.is_empty() && dead_edges.is_empty() {
            return false;
        }
        for &v in &dead_vertices {
            self.remove_vertex(ids[v]);
        }
        for &(u, w) in &dead_edges {
            self.adj[ids[u]].remove(&ids[w]);
            self.adj[ids[w]].remove(&ids[u]);
        }
        self.log.push(RuleApplication {
            rule: RuleId::Rule1,
            vertices: dead_vertices.iter().map(|&v| ids[v]).collect(),
            edges: dead_edges.iter().map(|&(u, w)| (ids[u], ids[w])).collect(),
        });
        true
    }

    fn rule2(&mut self) -> bool {
        let mut changed = false;
        loop {
            let mut fired = false;
            for terminal in [true, false] {
                let (x, other) = if terminal { (self.s, self.t) } else { (self.t, self.s) };
                if self.adj[x].len() == 1 {
                    let nb = *self.adj[x].iter().next().expect("degree one");
                    if nb != other {
                        self.remove_vertex(x);
                        if terminal {
                            self.s = nb;
                        } else {
                            self.t = nb;
                        }
                        self.log.push(RuleApplication {
                            rule: RuleId::Rule2,
                            vertices: vec![x, nb],
                            edges: vec![(x.min(nb), x.max(nb))],
                        });
                        fired = true;
                    }
                }
            }
            if !fired {
                return changed;
            }
            changed = true;
        }
    }

    fn rule3(&mut self) -> bool {
        let mut changed = false;
        loop {
            let candidate = self.alive_ids().into_iter().find_map(|a| {
                if a == self.s || a == self.t || self.adj[a].len() != 2 {
                    return None;
                }
                self.adj[a]
                    .iter()
                    .copied()
                    .find(|&b| b > a && b != self.s && b != self.t && self.adj[b].len() == 2)
                    .map(|b| (a, b))
            });
            let Some((a, b)) = candidate else {
                return changed;
            };
            // The lighter endpoint survives; ties keep the smaller id.
            let (keep, gone) = if self.weight[b] < self.weight[a] { (b, a) } else { (a, b) };
            let nbrs: Vec<usize> = self.adj[gone].iter().copied().filter(|&w| w != keep).collect();
            self.remove_vertex(gone);
            for w in nbrs {
                self.adj[keep].insert(w);
                self.adj[w].insert(keep);
            }
            let moved = std::mem::take(&mut self.members[gone]);
            self.members[keep].extend(moved);
            self.members[keep].sort_unstable();
            self.log.push(RuleApplication {
                rule: RuleId::Rule3,
                vertices: vec![a, b],
                edges: vec![(a, b)],
            });
            changed = true;
        }
    }

    fn apply(&mut self, rule: RuleId) -> bool {
        match rule {
            RuleId::Rule1 => self.rule1(),
            RuleId::Rule2 => self.rule2(),
            RuleId::Rule3 => self.rule3(),
        }
    }

    fn finish(self, input: &Instance) -> (Instance, ReductionTrace) {
        let (graph, ids, index) = self.compact_graph();
        let weights = ids.iter().map(|&v| self.weight[v]).collect();
        let instance = Instance {
            graph,
            s: index[self.s],
            t: index[self.t],
            weights,
            class: input.class,
        };
        let trace = ReductionTrace {
            applied: self.log,
            origin: ids.iter().map(|&v| self.members[v].clone()).collect(),
            representative: ids.clone(),
            relabeled_s: self.s,
            relabeled_t: self.t,
        };
        (instance, trace)
    }
}

fn run(instance: &Instance, rules: &[RuleId], fixpoint: bool) -> (Instance, ReductionTrace) {
    let mut work = Work::new(instance);
    loop {
        let mut changed = false;
        for &rule in rules {
            changed |= work.apply(rule);
        }
        if !fixpoint || !changed {
            break;
        }
    }
    work.finish(instance)
}

/// Removes every vertex and edge lying on no simple s-t path.
pub fn rule1(instance: &Instance) -> (Instance, ReductionTrace) {
    run(instance, &[RuleId::Rule1], false)
}

/// Trims degree-1 terminals until neither applies.
pub fn rule2(instance: &Instance) -> (Instance, ReductionTrace) {
    run(instance, &[RuleId::Rule2], false)
}

/// Contracts adjacent degree-2 non-terminals until none remain.
pub fn rule3(instance: &Instance) -> (Instance, ReductionTrace) {
    run(instance, &[RuleId::Rule3], false)
}

/// Fixpoint of rules 1, 2, 3 (in that order per round).
pub fn reduce_all(instance: &Instance) -> (Instance, ReductionTrace) {
    reduce_in_order(instance, [RuleId::Rule1, RuleId::Rule2, RuleId::Rule3])
}

/// Fixpoint of the three rules with a caller-chosen order per round.
pub fn reduce_in_order(instance: &Instance, order: [RuleId; 3]) -> (Instance, ReductionTrace) {
    run(instance, &order, true)
}

/// True when rule 1 would remove nothing.
pub fn is_rule1_reduced(instance: &Instance) -> bool {
    let mut work = Work::new(instance);
    !work.rule1()
}

/// True when no rule applies.
pub fn is_reduced(instance: &Instance) -> bool {
    let mut work = Work::new(instance);
    !(work.rule1() || work.rule2() || work.rule3())
}
