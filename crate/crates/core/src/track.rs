//! Entry-exit pairs, tracking semantics and the two tracking-set verifiers.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::Serialize;

use crate::cycles::enumerate_cf;
use crate::error::{Error, Result};
use crate::graph::{Instance, VertexSet};
use crate::linkage::{disjoint_path_count, two_disjoint_paths};
use crate::reduce::{is_rule1_reduced, rule1};

pub const DEFAULT_PATH_CAP: usize = 200_000;

/// A cycle together with one of its entry-exit pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EntryExitCycle {
    pub cycle: Vec<usize>,
    pub entry: usize,
    pub exit: usize,
}

impl EntryExitCycle {
    /// Vertices that track this cycle: the cycle minus its entry and exit.
    pub fn trackers(&self) -> impl Iterator<Item = usize> + '_ {
        self.cycle
            .iter()
            .copied()
            .filter(move |&v| v != self.entry && v != self.exit)
    }
}

/// Rotates to the smallest vertex and orients toward its smaller neighbor.
pub fn canonical_cycle(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    if k == 0 {
        return Vec::new();
    }
    let start = (0..k).min_by_key(|&i| cycle[i]).expect("nonempty");
    let fwd = cycle[(start + 1) % k];
    let back = cycle[(start + k - 1) % k];
    if fwd <= back {
        (0..k).map(|i| cycle[(start + i) % k]).collect()
    } else {
        (0..k).map(|i| cycle[(start + k - i) % k]).collect()
    }
}

/// A vertex and edge subset of an instance graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Subgraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Subgraph {
    pub fn from_cycle(cycle: &[usize]) -> Self {
        let k = cycle.len();
        let mut vertices = cycle.to_vec();
        vertices.sort_unstable();
        let edges = (0..k)
            .map(|i| {
                let (a, b) = (cycle[i], cycle[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect();
        Subgraph { vertices, edges }
    }
}

/// Tests one ordered pair against the definition: disjoint paths `s -> entry`
/// and `exit -> t` touching the subgraph only at their ends.
pub fn is_entry_exit_pair(instance: &Instance, in_sub: &[bool], entry: usize, exit: usize) -> bool {
    if entry == exit || !in_sub[entry] || !in_sub[exit] {
        return false;
    }
    let mut allowed: Vec<bool> = in_sub.iter().map(|&x| !x).collect();
    allowed[entry] = true;
    allowed[exit] = true;
    two_disjoint_paths(
        &instance.graph,
        &allowed,
        (instance.s, entry),
        (exit, instance.t),
    )
}

/// Vertices of the subgraph that some path from `from` can reach while
/// touching the subgraph only at its last vertex.
fn attachment_points(instance: &Instance, in_sub: &[bool], from: usize) -> Vec<bool> {
    let g = &instance.graph;
    let mut out = vec![false; g.n()];
    if in_sub[from] {
        out[from] = true;
        return out;
    }
    let outside: Vec<bool> = in_sub.iter().map(|&x| !x).collect();
    let seen = g.reachable(from, &outside);
    for v in 0..g.n() {
        if seen[v] {
            for &w in g.neighbors(v) {
                if in_sub[w] {
                    out[w] = true;
                }
            }
        }
    }
    out
}

/// All entry-exit pairs of a subgraph, sorted. The instance should be reduced
/// by rule 1.
pub fn entry_exit_pairs(instance: &Instance, sub: &Subgraph) -> Result<Vec<(usize, usize)>> {
    if sub.edges.is_empty() {
        return Err(Error::EmptySubgraph);
    }
    let mut in_sub = vec![false; instance.n()];
    for &v in &sub.vertices {
        if v >= instance.n() {
            return Err(Error::UnknownVertex(v));
        }
        in_sub[v] = true;
    }
    Ok(pairs_in(instance, &in_sub, &sub.vertices))
}

fn pairs_in(instance: &Instance, in_sub: &[bool], vertices: &[usize]) -> Vec<(usize, usize)> {
    let from_s = attachment_points(instance, in_sub, instance.s);
    let to_t = attachment_points(instance, in_sub, instance.t);
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    let mut pairs = Vec::new();
    if in_sub[instance.s] || in_sub[instance.t] {
        for &a in &sorted {
            for &b in &sorted {
                if from_s[a] && to_t[b] && is_entry_exit_pair(instance, in_sub, a, b) {
                    pairs.push((a, b));
                }
            }
        }
        return pairs;
    }
    // Two disjoint paths joining {s, t} to {a, b} make at least one of
    // (a, b) and (b, a) a pair, so one flow settles both orientations
    // whenever the first one fails.
    let mut allowed: Vec<bool> = in_sub.iter().map(|&x| !x).collect();
    for (i, &a) in sorted.iter().enumerate() {
        for &b in &sorted[i + 1..] {
            let ab = from_s[a] && to_t[b];
            let ba = from_s[b] && to_t[a];
            if !ab && !ba {
                continue;
            }
            allowed[a] = true;
            allowed[b] = true;
            let linked = disjoint_path_count(&instance.graph, &allowed, &[instance.s, instance.t], &[a, b], 2) == 2;
            if linked {
                let first = ab && two_disjoint_paths(&instance.graph, &allowed, (instance.s, a), (b, instance.t));
                if first {
                    pairs.push((a, b));
                }
                if !first || (ba && two_disjoint_paths(&instance.graph, &allowed, (instance.s, b), (a, instance.t))) {
                    pairs.push((b, a));
                }
            }
            allowed[a] = false;
            allowed[b] = false;
        }
    }
    pairs.sort_unstable();
    pairs
}

fn cycle_mask(n: usize, cycle: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in cycle {
        m[v] = true;
    }
    m
}

/// Entry-exit pairs of a cycle given as a vertex sequence.
pub fn cycle_pairs(instance: &Instance, cycle: &[usize]) -> Vec<(usize, usize)> {
    pairs_in(instance, &cycle_mask(instance.n(), cycle), cycle)
}

/// Entry-exit cycles for every pair of the given cycle.
pub fn entry_exit_cycles(instance: &Instance, cycle: &[usize]) -> Vec<EntryExitCycle> {
    let canon = canonical_cycle(cycle);
    cycle_pairs(instance, &canon)
        .into_iter()
        .map(|(entry, exit)| EntryExitCycle {
            cycle: canon.clone(),
            entry,
            exit,
        })
        .collect()
}

pub fn is_tracked(eec: &EntryExitCycle, trackers: &VertexSet) -> bool {
    eec.trackers().any(|v| trackers.contains(&v))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Witness {
    /// Two distinct s-t paths with the same tracker sequence.
    PathCollision(Vec<usize>, Vec<usize>),
    UntrackedCycle(EntryExitCycle),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub witness: Option<Witness>,
}

impl VerifyReport {
    fn ok() -> Self {
        VerifyReport {
            valid: true,
            witness: None,
        }
    }

    fn fail(w: Witness) -> Self {
        VerifyReport {
            valid: false,
            witness: Some(w),
        }
    }
}

/// Calls `visit` on every simple s-t path, in lexicographic order of vertex
/// sequences. Stops early when `visit` returns false. Errors once more than
/// `cap` paths have been produced.
pub fn for_each_st_path(
    instance: &Instance,
    cap: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    let g = &instance.graph;
    let (s, t) = (instance.s, instance.t);
    let n = g.n();
    let mut on_path = vec![false; n];
    let mut path = vec![s];
    on_path[s] = true;
    let mut count = 0usize;
    // (vertex, next neighbor index)
    let mut stack = vec![(s, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (u, idx) = *top;
        if u == t {
            count += 1;
            if count > cap {
                return Err(Error::PathCapExceeded { cap });
            }
            if !visit(&path) {
                return Ok(());
            }
        }
        if u == t || idx >= g.degree(u) {
            stack.pop();
            path.pop();
            on_path[u] = false;
            continue;
        }
        top.1 += 1;
        let w = g.neighbors(u)[idx];
        if on_path[w] {
            continue;
        }
        // Prune dead ends: t must stay reachable without the current path.
        let mut allowed: Vec<bool> = on_path.iter().map(|&x| !x).collect();
        allowed[w] = true;
        if w != t && !g.reachable(w, &allowed)[t] {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        stack.push((w, 0));
    }
    Ok(())
}

/// Number of simple s-t paths, or a cap error.
pub fn count_st_paths(instance: &Instance, cap: usize) -> Result<usize> {
    let mut count = 0;
    for_each_st_path(instance, cap, |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// Checks the definition directly: all tracker subsequences of simple s-t
/// paths must be distinct.
pub fn verify_by_paths(instance: &Instance, trackers: &VertexSet) -> Result<VerifyReport> {
    verify_by_paths_capped(instance, trackers, DEFAULT_PATH_CAP)
}

pub fn verify_by_paths_capped(
    instance: &Instance,
    trackers: &VertexSet,
    cap: usize,
) -> Result<VerifyReport> {
    let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut witness = None;
    for_each_st_path(instance, cap, |path| {
        let seq: Vec<usize> = path.iter().copied().filter(|v| trackers.contains(v)).collect();
        match seen.entry(seq) {
            Entry::Occupied(e) => {
                witness = Some(Witness::PathCollision(e.get().clone(), path.to_vec()));
                false
            }
            Entry::Vacant(e) => {
                e.insert(path.to_vec());
                true
            }
        }
    })?;
    Ok(witness.map_or_else(VerifyReport::ok, VerifyReport::fail))
}

/// Checks the cycle characterization: the trackers form a feedback vertex set
/// and every entry-exit cycle with at most two trackers on it is tracked.
/// Cycles with three or more trackers are tracked whatever their pair.
pub fn verify_by_cycles(instance: &Instance, trackers: &VertexSet) -> Result<VerifyReport> {
    if !is_rule1_reduced(instance) {
        return Err(Error::NotRule1Reduced(
            "cycle verifier needs every vertex on an s-t path".into(),
        ));
    }
    if let Some(&v) = trackers.iter().find(|&&v| v >= instance.n()) {
        return Err(Error::UnknownVertex(v));
    }
    let family = match enumerate_cf(instance, trackers) {
        Ok(f) => f,
        Err(Error::NotFeedbackSet { cycle }) => {
            let eec = entry_exit_cycles(instance, &cycle)
                .into_iter()
                .next()
                .ok_or_else(|| Error::NotRule1Reduced("cycle without an entry-exit pair".into()))?;
            return Ok(VerifyReport::fail(Witness::UntrackedCycle(eec)));
        }
        Err(e) => return Err(e),
    };
    for cycle in &family.cycles {
        if let Some(eec) = untracked_pair(instance, cycle, trackers) {
            return Ok(VerifyReport::fail(Witness::UntrackedCycle(eec)));
        }
    }
    Ok(VerifyReport::ok())
}

/// An entry-exit pair of `cycle` that leaves it untracked, if any. Only pairs
/// made of tracker vertices (and, for one tracker, any partner) can do that.
fn untracked_pair(instance: &Instance, cycle: &[usize], trackers: &VertexSet) -> Option<EntryExitCycle> {
    let on: Vec<usize> = cycle.iter().copied().filter(|v| trackers.contains(v)).collect();
    let mask = cycle_mask(instance.n(), cycle);
    let candidates: Vec<(usize, usize)> = match on.as_slice() {
        [] => cycle
            .iter()
            .flat_map(|&a| cycle.iter().map(move |&b| (a, b)))
            .collect(),
        [a] => cycle
            .iter()
            .filter(|&&x| x != *a)
            .flat_map(|&x| [(*a, x), (x, *a)])
            .collect(),
        [a, b] => vec![(*a, *b), (*b, *a)],
        _ => return None,
    };
    candidates
        .into_iter()
        .find(|&(x, y)| is_entry_exit_pair(instance, &mask, x, y))
        .map(|(entry, exit)| EntryExitCycle {
            cycle: canonical_cycle(cycle),
            entry,
            exit,
        })
}

/// Verifies on any instance: by paths when their number is small, otherwise
/// by cycles on the rule-1 reduction (vertices off every s-t path are
/// irrelevant to tracking).
pub fn verify(instance: &Instance, trackers: &VertexSet) -> Result<VerifyReport> {
    match verify_by_paths_capped(instance, trackers, 20_000) {
        Err(e) if e.is_cap() => {}
        other => return other,
    }
    let (reduced, trace) = rule1(instance);
    let mut back = vec![usize::MAX; instance.n()];
    for (k, &orig) in trace.representative.iter().enumerate() {
        back[orig] = k;
    }
    let local: VertexSet = trackers
        .iter()
        .filter(|&&v| v < back.len() && back[v] != usize::MAX)
        .map(|&v| back[v])
        .collect();
    let mut report = verify_by_cycles(&reduced, &local)?;
    if let Some(Witness::UntrackedCycle(eec)) = &mut report.witness {
        let map = |v: usize| trace.representative[v];
        eec.cycle = canonical_cycle(&eec.cycle.iter().map(|&v| map(v)).collect::<Vec<_>>());
        eec.entry = map(eec.entry);
        eec.exit = map(eec.exit);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn inst(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Instance {
        Instance::new(Graph::new(n, edges.iter().copied()).unwrap(), s, t).unwrap()
    }

    // s=0, a=1, t=2, b=3
    fn c4() -> Instance {
        inst(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 0, 2)
    }

    fn k4() -> Instance {
        inst(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 0, 3)
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    /// Every simple path from `a` to `b` within `allowed`.
    fn simple_paths(g: &Graph, allowed: &[bool], a: usize, b: usize) -> Vec<Vec<usize>> {
        fn go(g: &Graph, allowed: &[bool], b: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let u = *path.last().unwrap();
            if u == b {
                out.push(path.clone());
                return;
            }
            for &w in g.neighbors(u) {
                if allowed[w] && !path.contains(&w) {
                    path.push(w);
                    go(g, allowed, b, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        if allowed[a] {
            go(g, allowed, b, &mut vec![a], &mut out);
        }
        out
    }

    /// Pairs straight from the definition by enumerating both path families.
    fn brute_pairs(instance: &Instance, vertices: &[usize]) -> Vec<(usize, usize)> {
        let g = &instance.graph;
        let mut out = Vec::new();
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        for &a in &sorted {
            for &b in &sorted {
                if a == b {
                    continue;
                }
                let mut allowed = vec![true; g.n()];
                for &v in vertices {
                    allowed[v] = v == a || v == b;
                }
                let mut only_a = allowed.clone();
                only_a[b] = false;
                let mut only_b = allowed.clone();
                only_b[a] = false;
                let p1 = simple_paths(g, &only_a, instance.s, a);
                let p2 = simple_paths(g, &only_b, b, instance.t);
                if p1.iter().any(|p| p2.iter().any(|q| p.iter().all(|v| !q.contains(v)))) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn canonical_form() {
        assert_eq!(canonical_cycle(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(canonical_cycle(&[2, 1, 3]), vec![1, 2, 3]);
        assert_eq!(canonical_cycle(&[5, 0, 4, 2]), vec![0, 4, 2, 5]);
    }

    #[test]
    fn pairs_of_four_cycle() {
        let sub = Subgraph::from_cycle(&[0, 1, 2, 3]);
        assert_eq!(entry_exit_pairs(&c4(), &sub).unwrap(), vec![(0, 2)]);
        assert_eq!(brute_pairs(&c4(), &[0, 1, 2, 3]), vec![(0, 2)]);
    }

    #[test]
    fn pairs_of_theta_cycle() {
        // s=0, t=4 joined through a=1, b=2, c=3.
        let theta = inst(5, &[(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)], 0, 4);
        let cyc = [0, 1, 4, 2];
        assert_eq!(cycle_pairs(&theta, &cyc), vec![(0, 4)]);
        assert_eq!(brute_pairs(&theta, &cyc), vec![(0, 4)]);
    }

    #[test]
    fn pairs_of_single_edge() {
        let path = inst(4, &[(0, 1), (1, 2), (2, 3)], 0, 3);
        let sub = Subgraph {
            vertices: vec![1, 2],
            edges: vec![(1, 2)],
        };
        assert_eq!(entry_exit_pairs(&path, &sub).unwrap(), vec![(1, 2)]);
        assert_eq!(
            entry_exit_pairs(&path, &Subgraph::default()),
            Err(Error::EmptySubgraph)
        );
    }

    #[test]
    fn pairs_match_definition_on_all_cycles_of_small_graphs() {
        let graphs = [
            inst(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 0, 3),
            inst(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 2), (3, 4), (3, 5), (4, 5), (2, 4)], 0, 5),
            inst(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4), (0, 3)], 2, 5),
        ];
        for g in &graphs {
            for cyc in crate::cycles::all_simple_cycles(&g.graph) {
                assert_eq!(cycle_pairs(g, &cyc), brute_pairs(g, &cyc), "cycle {cyc:?}");
            }
        }
    }

    #[test]
    fn tracked_examples() {
        let eec = EntryExitCycle {
            cycle: vec![0, 1, 2, 3],
            entry: 0,
            exit: 2,
        };
        assert!(is_tracked(&eec, &set(&[1])));
        assert!(!is_tracked(&eec, &set(&[0, 2])));
        assert!(!is_tracked(&eec, &set(&[])));
    }

    #[test]
    fn path_verifier_examples() {
        assert!(verify_by_paths(&c4(), &set(&[1])).unwrap().valid);
        let r = verify_by_paths(&c4(), &set(&[])).unwrap();
        assert!(!r.valid);
        assert_eq!(r.witness, Some(Witness::PathCollision(vec![0, 1, 2], vec![0, 3, 2])));
        let edge = inst(2, &[(0, 1)], 0, 1);
        assert!(verify_by_paths(&edge, &set(&[])).unwrap().valid);
    }

    #[test]
    fn path_cap_is_enforced() {
        assert_eq!(count_st_paths(&k4(), 100).unwrap(), 5);
        assert_eq!(
            verify_by_paths_capped(&k4(), &set(&[0, 1, 2, 3]), 3),
            Err(Error::PathCapExceeded { cap: 3 })
        );
    }

    #[test]
    fn cycle_verifier_examples() {
        assert!(verify_by_cycles(&c4(), &set(&[1])).unwrap().valid);
        let r = verify_by_cycles(&c4(), &set(&[0])).unwrap();
        assert_eq!(
            r.witness,
            Some(Witness::UntrackedCycle(EntryExitCycle {
                cycle: vec![0, 1, 2, 3],
                entry: 0,
                exit: 2
            }))
        );
        assert!(verify_by_cycles(&k4(), &set(&[1, 2])).unwrap().valid);
        assert!(verify_by_paths(&k4(), &set(&[1, 2])).unwrap().valid);
        let pendant = inst(4, &[(0, 1), (1, 2), (1, 3)], 0, 2);
        assert!(matches!(
            verify_by_cycles(&pendant, &set(&[])),
            Err(Error::NotRule1Reduced(_))
        ));
    }

    #[test]
    fn verifiers_agree_on_k4_subsets() {
        let k = k4();
        for mask in 0u32..16 {
            let t: VertexSet = (0..4).filter(|v| mask >> v & 1 == 1).collect();
            assert_eq!(
                verify_by_paths(&k, &t).unwrap().valid,
                verify_by_cycles(&k, &t).unwrap().valid,
                "{t:?}"
            );
        }
    }

    #[test]
    fn trivially_tracked_cycles_pass_every_pair() {
        let g = inst(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4), (0, 3)], 2, 5);
        for cyc in crate::cycles::all_simple_cycles(&g.graph) {
            let eecs = entry_exit_cycles(&g, &cyc);
            let three: VertexSet = cyc.iter().take(3).copied().collect();
            assert!(eecs.iter().all(|e| is_tracked(e, &three)));
            for e in &eecs {
                if let Some(&term) = cyc.iter().find(|&&v| v == g.s || v == g.t) {
                    for &x in &cyc {
                        if x != e.entry && x != e.exit && x != term {
                            // A terminal on the cycle is always entry or exit.
                            assert!(term == e.entry || term == e.exit);
                            assert!(is_tracked(e, &set(&[term, x])));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn auto_verify_handles_unreduced_input() {
        let pendant = inst(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4)], 0, 2);
        assert!(verify(&pendant, &set(&[1])).unwrap().valid);
        assert!(!verify(&pendant, &set(&[4])).unwrap().valid);
    }
}
