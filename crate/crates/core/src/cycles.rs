//! The cycle family C_F: simple cycles meeting a feedback vertex set F in one
//! or two vertices. Since G - F is a forest, every such cycle is determined by
//! its F-vertices and their neighbors on the cycle, so enumeration only walks
//! unique tree paths.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Instance, VertexSet};
use crate::track::{canonical_cycle, entry_exit_cycles, EntryExitCycle};

pub const DEFAULT_CYCLE_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleFamily {
    pub fvs: VertexSet,
    /// Canonical cycles, sorted.
    pub cycles: Vec<Vec<usize>>,
    /// Filled by [`expand_entry_exit`].
    pub eecs: Vec<EntryExitCycle>,
}

/// Rooted view of the forest G - F answering path queries by parent walks.
struct Forest {
    parent: Vec<usize>,
    depth: Vec<usize>,
    root: Vec<usize>,
}

impl Forest {
    fn new(g: &Graph, allowed: &[bool]) -> Self {
        let n = g.n();
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        let mut root = vec![usize::MAX; n];
        for r in 0..n {
            if !allowed[r] || root[r] != usize::MAX {
                continue;
            }
            root[r] = r;
            let mut stack = vec![r];
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if allowed[w] && root[w] == usize::MAX {
                        root[w] = r;
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        stack.push(w);
                    }
                }
            }
        }
        Forest { parent, depth, root }
    }

    /// The unique path from `a` to `b`, or `None` across different trees.
    fn path(&self, mut a: usize, mut b: usize) -> Option<Vec<usize>> {
        if self.root[a] != self.root[b] {
            return None;
        }
        let mut head = Vec::new();
        let mut tail = Vec::new();
        while self.depth[a] > self.depth[b] {
            head.push(a);
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            tail.push(b);
            b = self.parent[b];
        }
        while a != b {
            head.push(a);
            tail.push(b);
            a = self.parent[a];
            b = self.parent[b];
        }
        head.push(a);
        head.extend(tail.into_iter().rev());
        Some(head)
    }
}

/// Simple cycles with one or two vertices in `fvs`.
pub fn enumerate_cf(instance: &Instance, fvs: &VertexSet) -> Result<CycleFamily> {
    enumerate_cf_capped(instance, fvs, DEFAULT_CYCLE_CAP)
}

pub fn enumerate_cf_capped(instance: &Instance, fvs: &VertexSet, cap: usize) -> Result<CycleFamily> {
    let g = &instance.graph;
    let n = g.n();
    let mut in_f = vec![false; n];
    for &f in fvs {
        if f >= n {
            return Err(Error::UnknownVertex(f));
        }
        in_f[f] = true;
    }
    let free: Vec<bool> = in_f.iter().map(|&x| !x).collect();
    if let Some(cycle) = g.find_cycle(&free) {
        return Err(Error::NotFeedbackSet { cycle });
    }
    let forest = Forest::new(g, &free);
    let fs: Vec<usize> = fvs.iter().copied().collect();
    let tree_nbrs: Vec<Vec<usize>> = fs
        .iter()
        .map(|&f| g.neighbors(f).iter().copied().filter(|&w| free[w]).collect())
        .collect();

    let over = |size: usize| Error::CapExceeded {
        what: "cycle family",
        size,
        cap,
    };
    let mut cycles: BTreeSet<Vec<usize>> = BTreeSet::new();

    for (i, &f) in fs.iter().enumerate() {
        let nb = &tree_nbrs[i];
        for (x, &p) in nb.iter().enumerate() {
            for &q in &nb[x + 1..] {
                if let Some(path) = forest.path(p, q) {
                    let mut c = vec![f];
                    c.extend(path);
                    cycles.insert(canonical_cycle(&c));
                    if cycles.len() > cap {
                        return Err(over(cycles.len()));
                    }
                }
            }
        }
    }

    let pair_cycles: Vec<Vec<Vec<usize>>> = (0..fs.len())
        .into_par_iter()
        .map(|i| {
            let mut local = Vec::new();
            for j in i + 1..fs.len() {
                let (f1, f2) = (fs[i], fs[j]);
                // Arcs from f1 to f2: internal vertex sequences, the direct
                // edge being the empty arc.
                let mut arcs: Vec<Vec<usize>> = Vec::new();
                if g.has_edge(f1, f2) {
                    arcs.push(Vec::new());
                }
                for &p in &tree_nbrs[i] {
                    for &q in &tree_nbrs[j] {
                        if let Some(path) = forest.path(p, q) {
                            arcs.push(path);
                        }
                    }
                }
                let masks: Vec<Vec<usize>> = arcs
                    .iter()
                    .map(|a| {
                        let mut s = a.clone();
                        s.sort_unstable();
                        s
                    })
                    .collect();
                for x in 0..arcs.len() {
                    for y in x + 1..arcs.len() {
                        if !sorted_disjoint(&masks[x], &masks[y]) {
                            continue;
                        }
                        let mut c = vec![f1];
                        c.extend(&arcs[x]);
                        c.push(f2);
                        c.extend(arcs[y].iter().rev());
                        local.push(canonical_cycle(&c));
                        if local.len() > cap {
                            return local;
                        }
                    }
                }
            }
            local
        })
        .collect();
    for batch in pair_cycles {
        cycles.extend(batch);
        if cycles.len() > cap {
            return Err(over(cycles.len()));
        }
    }
    Ok(CycleFamily {
        fvs: fvs.clone(),
        cycles: cycles.into_iter().collect(),
        eecs: Vec::new(),
    })
}

fn sorted_disjoint(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// Pairs every cycle of the family with each of its entry-exit pairs.
pub fn expand_entry_exit(instance: &Instance, family: CycleFamily) -> CycleFamily {
    let eecs = family
        .cycles
        .par_iter()
        .map(|c| entry_exit_cycles(instance, c))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    CycleFamily { eecs, ..family }
}

/// Every simple cycle of the graph in canonical form, sorted. Exponential;
/// meant for small graphs and as a reference.
pub fn all_simple_cycles(graph: &Graph) -> Vec<Vec<usize>> {
    fn grow(g: &Graph, start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut BTreeSet<Vec<usize>>) {
        let u = *path.last().expect("nonempty");
        for &w in g.neighbors(u) {
            if w == start && path.len() >= 3 {
                out.insert(canonical_cycle(path));
            } else if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                grow(g, start, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut on = vec![false; graph.n()];
    for v in 0..graph.n() {
        on[v] = true;
        grow(graph, v, &mut vec![v], &mut on, &mut out);
        on[v] = false;
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Instance {
        Instance::new(Graph::new(n, edges.iter().copied()).unwrap(), s, t).unwrap()
    }

    fn brute(i: &Instance, f: &VertexSet) -> Vec<Vec<usize>> {
        all_simple_cycles(&i.graph)
            .into_iter()
            .filter(|c| {
                let k = c.iter().filter(|v| f.contains(v)).count();
                (1..=2).contains(&k)
            })
            .collect()
    }

    #[test]
    fn acyclic_gives_empty_family() {
        let tree = inst(4, &[(0, 1), (1, 2), (1, 3)], 0, 3);
        let fam = enumerate_cf(&tree, &VertexSet::new()).unwrap();
        assert!(fam.cycles.is_empty());
    }

    #[test]
    fn four_cycle_has_one() {
        let c4 = inst(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 0, 2);
        let f = VertexSet::from([1]);
        let fam = enumerate_cf(&c4, &f).unwrap();
        assert_eq!(fam.cycles, vec![vec![0, 1, 2, 3]]);
        assert_eq!(fam.cycles, brute(&c4, &f));
        let fam = expand_entry_exit(&c4, fam);
        assert_eq!(fam.eecs.len(), 1);
        assert_eq!((fam.eecs[0].entry, fam.eecs[0].exit), (0, 2));
    }

    #[test]
    fn k4_with_two_fvs_vertices_has_seven() {
        let k4 = inst(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 0, 3);
        let f = VertexSet::from([1, 2]);
        let fam = enumerate_cf(&k4, &f).unwrap();
        assert_eq!(fam.cycles.len(), 7);
        assert_eq!(fam.cycles, brute(&k4, &f));
        assert_eq!(all_simple_cycles(&k4.graph).len(), 7);
    }

    #[test]
    fn theta_expansion() {
        let theta = inst(5, &[(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)], 0, 4);
        // {a} alone leaves the cycle through b and c, so F = {a, b}.
        assert!(enumerate_cf(&theta, &VertexSet::from([1])).is_err());
        let fam = expand_entry_exit(&theta, enumerate_cf(&theta, &VertexSet::from([1, 2])).unwrap());
        assert_eq!(fam.cycles, vec![vec![0, 1, 4, 2], vec![0, 1, 4, 3], vec![0, 2, 4, 3]]);
        assert!(fam.eecs.iter().all(|e| (e.entry, e.exit) == (0, 4)));
        assert_eq!(fam.eecs.len(), 3);
    }

    #[test]
    fn rejects_non_fvs() {
        let c4 = inst(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 0, 2);
        assert!(matches!(
            enumerate_cf(&c4, &VertexSet::new()),
            Err(Error::NotFeedbackSet { .. })
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let k4 = inst(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 0, 3);
        assert!(enumerate_cf_capped(&k4, &VertexSet::from([1, 2]), 3)
            .unwrap_err()
            .is_cap());
    }

    #[test]
    fn forest_paths() {
        let g = Graph::new(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let forest = Forest::new(&g, &[true; 5]);
        assert_eq!(forest.path(2, 4), Some(vec![2, 1, 3, 4]));
        assert_eq!(forest.path(4, 4), Some(vec![4]));
    }
}
