//! Brute-force oracles written straight from the definitions, independent of
//! the library's search code, plus instance families shared by the suites.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trackpaths::gen::{planar_grid, random_reduced, theta};
use trackpaths::reduce::is_reduced;
use trackpaths::{Graph, GraphClass, Instance, VertexSet, Weight};

pub fn inst(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Instance {
    Instance::new(Graph::new(n, edges.iter().copied()).unwrap(), s, t).unwrap()
}

pub fn weighted(n: usize, edges: &[(usize, usize)], s: usize, t: usize, w: &[i64]) -> Instance {
    let weights = w.iter().map(|&x| Weight::from_integer(x)).collect();
    Instance::with_weights(Graph::new(n, edges.iter().copied()).unwrap(), s, t, weights).unwrap()
}

/// s = 0, a = 1, t = 2, b = 3.
pub fn c4() -> Instance {
    inst(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 0, 2)
}

/// K4 on s = 0, a = 1, b = 2, t = 3.
pub fn k4() -> Instance {
    inst(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], 0, 3)
}

/// Theta graph: s = 0, t = 1, middle vertices a = 2, b = 3, c = 4.
pub fn theta3() -> Instance {
    theta(3, 2)
}

pub fn single_edge() -> Instance {
    inst(2, &[(0, 1)], 0, 1)
}

pub fn set(v: &[usize]) -> VertexSet {
    v.iter().copied().collect()
}

/// Every simple s-t path.
pub fn st_paths(instance: &Instance) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, t: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(u) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                rec(g, t, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut on = vec![false; instance.n()];
    on[instance.s] = true;
    let mut out = Vec::new();
    rec(&instance.graph, instance.t, &mut vec![instance.s], &mut on, &mut out);
    out
}

/// Tracking by definition: tracker subsequences of distinct paths differ.
pub fn tracks(paths: &[Vec<usize>], trackers: &VertexSet) -> bool {
    let mut seen = HashSet::new();
    paths.iter().all(|p| {
        let seq: Vec<usize> = p.iter().copied().filter(|v| trackers.contains(v)).collect();
        seen.insert(seq)
    })
}

pub fn is_tracking_set(instance: &Instance, trackers: &VertexSet) -> bool {
    tracks(&st_paths(instance), trackers)
}

/// Minimum weight tracking set; ties by cardinality, then lexicographically.
pub fn brute_opt(instance: &Instance) -> (Weight, VertexSet) {
    let n = instance.n();
    assert!(n <= 16);
    let paths = st_paths(instance);
    let mut best: Option<(Weight, usize, VertexSet)> = None;
    for mask in 0u32..(1 << n) {
        let s: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let w = instance.weight_of(&s);
        let key = (w, s.len(), s.clone());
        if best.as_ref().is_some_and(|b| key >= *b) {
            continue;
        }
        if tracks(&paths, &s) {
            best = Some(key);
        }
    }
    let (w, _, s) = best.expect("V is a tracking set");
    (w, s)
}

/// Canonical form: rotate to the smallest id, orient toward the smaller
/// neighbor.
pub fn canon(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let i = (0..k).min_by_key(|&i| cycle[i]).unwrap();
    let mut c: Vec<usize> = (0..k).map(|j| cycle[(i + j) % k]).collect();
    if c[1] > c[k - 1] {
        c[1..].reverse();
    }
    c
}

/// Every simple cycle, canonical.
pub fn all_cycles(g: &Graph) -> BTreeSet<Vec<usize>> {
    fn rec(g: &Graph, start: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut BTreeSet<Vec<usize>>) {
        let u = *path.last().unwrap();
        for &w in g.neighbors(u) {
            if w == start && path.len() >= 3 {
                out.insert(canon(path));
            } else if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                rec(g, start, path, on, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut on = vec![false; g.n()];
    for v in 0..g.n() {
        on[v] = true;
        rec(g, v, &mut vec![v], &mut on, &mut out);
        on[v] = false;
    }
    out
}

/// Simple paths from `from` whose vertices avoid `sub` except the last one,
/// which lies in `sub`. A single-vertex path when `from` is in `sub`.
fn touching_paths(g: &Graph, sub: &[bool], from: usize) -> Vec<Vec<usize>> {
    if sub[from] {
        return vec![vec![from]];
    }
    fn rec(g: &Graph, sub: &[bool], path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let u = *path.last().unwrap();
        for &w in g.neighbors(u) {
            if on[w] {
                continue;
            }
            path.push(w);
            if sub[w] {
                out.push(path.clone());
            } else {
                on[w] = true;
                rec(g, sub, path, on, out);
                on[w] = false;
            }
            path.pop();
        }
    }
    let mut on = vec![false; g.n()];
    on[from] = true;
    let mut out = Vec::new();
    rec(g, sub, &mut vec![from], &mut on, &mut out);
    out
}

/// Entry-exit pairs by enumerating both connection paths.
pub fn brute_pairs(instance: &Instance, vertices: &[usize]) -> BTreeSet<(usize, usize)> {
    let mut sub = vec![false; instance.n()];
    for &v in vertices {
        sub[v] = true;
    }
    let from_s = touching_paths(&instance.graph, &sub, instance.s);
    let to_t = touching_paths(&instance.graph, &sub, instance.t);
    let mut out = BTreeSet::new();
    for p in &from_s {
        for q in &to_t {
            let (a, b) = (*p.last().unwrap(), *q.last().unwrap());
            if a != b && p.iter().all(|v| !q.contains(v)) {
                out.insert((a, b));
            }
        }
    }
    out
}

pub fn is_forest_without(g: &Graph, removed: &VertexSet) -> bool {
    // A graph is a forest iff m = n − components.
    let keep: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    let inside = |v: usize| !removed.contains(&v);
    let m = g.edges().iter().filter(|&&(u, v)| inside(u) && inside(v)).count();
    let mut comp = 0;
    let mut seen = vec![false; g.n()];
    for &v in &keep {
        if seen[v] {
            continue;
        }
        comp += 1;
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if inside(w) && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    m + comp == keep.len()
}

/// Minimum weight feedback vertex set weight.
pub fn brute_fvs_weight(instance: &Instance) -> Weight {
    let n = instance.n();
    let mut best: Option<Weight> = None;
    for mask in 0u32..(1 << n) {
        let s: VertexSet = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let w = instance.weight_of(&s);
        if best.is_some_and(|b| w >= b) {
            continue;
        }
        if is_forest_without(&instance.graph, &s) {
            best = Some(w);
        }
    }
    best.unwrap_or_else(Weight::zero)
}

/// Smallest number of elements meeting every range.
pub fn brute_hitting_size(universe: &[usize], ranges: &[Vec<usize>]) -> usize {
    let k = universe.len();
    (0..=k)
        .find(|&size| {
            (0u32..(1 << k)).filter(|m| m.count_ones() as usize == size).any(|m| {
                ranges
                    .iter()
                    .all(|r| r.iter().any(|x| universe.iter().position(|u| u == x).is_some_and(|i| m >> i & 1 == 1)))
            })
        })
        .expect("the whole universe hits every nonempty range")
}

/// Random reduced, non-trivial instances with n in `lo..=hi` before reduction.
pub fn random_reduced_family(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        assert!(tries < 200 * count, "generator too sparse");
        let n = rng.gen_range(lo..=hi);
        let p = rng.gen_range(0.25..0.6);
        let i = random_reduced(n, p, rng.gen());
        if !i.is_trivial() {
            out.push(i);
        }
    }
    out
}

/// Connected reduced instances on `n` vertices with s = 0 and t = n − 1, one
/// per isomorphism class fixing s and t. `sample` limits the number of edge
/// sets examined (all of them when `None`).
pub fn reduced_family(n: usize, sample: Option<(usize, u64)>) -> Vec<Instance> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let masks: Vec<u64> = match sample {
        None => (0..1u64 << pairs.len()).collect(),
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| rng.gen_range(0..1u64 << pairs.len())).collect()
        }
    };
    let perms = permutations_fixing_ends(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in masks {
        let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        if !g.is_connected() {
            continue;
        }
        let i = Instance::new(g, 0, n - 1).unwrap();
        if i.is_trivial() || !is_reduced(&i) {
            continue;
        }
        let key = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .unwrap();
        if seen.insert(key) {
            out.push(i);
        }
    }
    out
}

fn permutations_fixing_ends(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, n: usize) {
        if rest.is_empty() {
            let mut p = vec![0];
            p.extend(cur.iter());
            p.push(n - 1);
            out.push(p);
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            rec(rest, cur, out, n);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..n - 1).collect(), &mut Vec::new(), &mut out, n);
    out
}

/// Every tracker set of size at most `k`.
pub fn small_sets(n: usize, k: usize) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::new()];
    let mut frontier = out.clone();
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.iter().next_back().map_or(0, |&m| m + 1);
            for v in start..n {
                let mut t = s.clone();
                t.insert(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Planar instances: grids with and without perturbation, thetas, and small
/// K4 chains, all declared planar.
pub fn planar_corpus() -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    for (r, c) in [(3, 3), (3, 4), (4, 4), (4, 5), (5, 5), (6, 6)] {
        out.push((format!("grid{r}x{c}"), planar_grid(r, c, 0.0, 0)));
        for seed in 0..2 {
            out.push((format!("grid{r}x{c}-p{seed}"), planar_grid(r, c, 0.3, seed)));
        }
    }
    out.push(("grid8x8".into(), planar_grid(8, 8, 0.0, 0)));
    out.push(("theta3x2".into(), theta(3, 2)));
    out.push(("theta4x3".into(), theta(4, 3)));
    out.push(("k4chain2".into(), trackpaths::gen::k4_chain(2)));
    for (_, i) in &out {
        assert_eq!(i.class, GraphClass::Planar);
    }
    out
}
