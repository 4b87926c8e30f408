//! Seeded instance generators for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphClass, Instance, Weight};
use crate::reduce::reduce_all;

/// G(n, p) with s = 0 and t = n − 1, plus a random s-t path so the terminals
/// are connected.
pub fn random_instance(n: usize, p: f64, seed: u64) -> Instance {
    assert!(n >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    edges.retain(|_| rng.gen_bool(p));
    let mut mid: Vec<usize> = (1..n - 1).filter(|_| rng.gen_bool(0.5)).collect();
    mid.shuffle(&mut rng);
    let mut path = vec![0];
    path.extend(mid);
    path.push(n - 1);
    edges.extend(path.windows(2).map(|w| (w[0], w[1])));
    Instance::new(Graph::from_edges_lossy(n, edges), 0, n - 1).expect("valid terminals")
}

/// Like [`random_instance`] with integer weights in 1..=max_weight.
pub fn random_weighted(n: usize, p: f64, max_weight: i64, seed: u64) -> Instance {
    let base = random_instance(n, p, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let weights = (0..n).map(|_| Weight::from_integer(rng.gen_range(1..=max_weight))).collect();
    Instance::with_weights(base.graph, base.s, base.t, weights).expect("positive weights")
}

/// A random instance after rules 1–3. May be trivial.
pub fn random_reduced(n: usize, p: f64, seed: u64) -> Instance {
    reduce_all(&random_instance(n, p, seed)).0
}

/// `rows × cols` grid with s and t at opposite corners. With probability
/// `perturb` a face gets a diagonal and an edge is dropped (when the graph
/// stays connected). Diagonals keep the graph planar.
pub fn planar_grid(rows: usize, cols: usize, perturb: f64, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |i: usize, j: usize| i * cols + j;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
            if i + 1 < rows && j + 1 < cols && rng.gen_bool(perturb) {
                if rng.gen_bool(0.5) {
                    edges.push((id(i, j), id(i + 1, j + 1)));
                } else {
                    edges.push((id(i, j + 1), id(i + 1, j)));
                }
            }
        }
    }
    let n = rows * cols;
    let mut k = 0;
    while k < edges.len() {
        if rng.gen_bool(perturb / 2.0) {
            let e = edges.remove(k);
            if !Graph::from_edges_lossy(n, edges.iter().copied()).is_connected() {
                edges.insert(k, e);
                k += 1;
            }
        } else {
            k += 1;
        }
    }
    Instance::new(Graph::from_edges_lossy(n, edges), 0, n - 1)
        .expect("grid has two corners")
        .with_class(GraphClass::Planar)
}

/// `k` internally disjoint s-t paths of `len` edges each; s = 0, t = 1.
pub fn theta(k: usize, len: usize) -> Instance {
    assert!(k >= 1 && len >= 1);
    let mut n = 2;
    let mut edges = Vec::new();
    for _ in 0..k {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, 1));
    }
    Instance::new(Graph::from_edges_lossy(n, edges), 0, 1)
        .expect("valid terminals")
        .with_class(GraphClass::Planar)
}

/// `count` copies of K4 glued in a chain at cut vertices; s and t are the
/// chain ends.
pub fn k4_chain(count: usize) -> Instance {
    assert!(count >= 1);
    let mut edges = Vec::new();
    let mut cut = 0;
    let mut n = 1;
    for _ in 0..count {
        let (a, b, next) = (n, n + 1, n + 2);
        n += 3;
        let quad = [cut, a, b, next];
        for x in 0..4 {
            for y in x + 1..4 {
                edges.push((quad[x], quad[y]));
            }
        }
        cut = next;
    }
    Instance::new(Graph::from_edges_lossy(n, edges), 0, cut)
        .expect("valid terminals")
        .with_class(GraphClass::Planar)
}

/// Named instances of every generator family.
pub fn default_corpus(seed: u64) -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    for (i, n) in [8, 10, 12, 14].into_iter().enumerate() {
        let s = seed + i as u64;
        out.push((format!("random-n{n}-s{s}"), random_instance(n, 0.3, s)));
        out.push((format!("weighted-n{n}-s{s}"), random_weighted(n, 0.3, 5, s)));
    }
    for (r, c) in [(3, 3), (3, 4), (4, 4), (5, 5)] {
        out.push((format!("grid-{r}x{c}-s{seed}"), planar_grid(r, c, 0.2, seed)));
    }
    for (k, len) in [(3, 2), (4, 3)] {
        out.push((format!("theta-{k}x{len}"), theta(k, len)));
    }
    for c in [1, 2, 3] {
        out.push((format!("k4chain-{c}"), k4_chain(c)));
    }
    out
}
