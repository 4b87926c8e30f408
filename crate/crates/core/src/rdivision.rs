//! Balanced vertex separators and relaxed r-divisions.
//!
//! A relaxed r-division splits the edge set into regions of at most r
//! vertices; vertices shared by several regions form the boundary. It is
//! built by recursive separation, copying separator vertices into both sides.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest graph on which separators are found by exhaustive search.
const EXHAUSTIVE_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Region {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub boundary: Vec<usize>,
    pub interior: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RDivision {
    pub regions: Vec<Region>,
    /// Vertex -> number of regions containing it.
    pub multiplicity: Vec<usize>,
    /// Σ over vertices of (multiplicity − 1).
    pub b: usize,
    pub r: usize,
    /// regions · r / n
    pub alpha: f64,
    /// B · √r / n
    pub boundary_constant: f64,
}

/// Ranking of a candidate separator; smaller is better.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct SeparatorKey {
    one_sided: bool,
    size: usize,
    largest: usize,
    id_sum: usize,
}

fn evaluate(g: &Graph, sep: &[usize]) -> Option<SeparatorKey> {
    let n = g.n();
    let mut allowed = vec![true; n];
    for &v in sep {
        allowed[v] = false;
    }
    let comps = g.components(&allowed);
    let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
    if 3 * largest > 2 * n {
        return None;
    }
    Some(SeparatorKey {
        one_sided: comps.len() < 2,
        size: sep.len(),
        largest,
        id_sum: sep.iter().sum(),
    })
}

/// A vertex set whose removal leaves components of at most 2n/3 vertices.
/// Separators leaving two or more components are preferred, then smaller
/// size, smaller largest component and smaller id sum.
pub fn balanced_separator(graph: &Graph) -> VertexSet {
    let n = graph.n();
    if n <= 1 {
        return (0..n).collect();
    }
    if n <= EXHAUSTIVE_MAX_N {
        let mut best: Option<(SeparatorKey, Vec<usize>)> = None;
        for mask in 0u32..1 << n {
            let sep: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if let Some(key) = evaluate(graph, &sep) {
                if best.as_ref().map_or(true, |(k, _)| key < *k) {
                    best = Some((key, sep));
                }
            }
        }
        return best.expect("the whole vertex set is balanced").1.into_iter().collect();
    }
    // BFS levels: removing a level separates the levels before it from those
    // after it, and the median level is always balanced.
    let mut best: Option<(SeparatorKey, Vec<usize>)> = None;
    for root in 0..n {
        for level in bfs_levels(graph, root) {
            if let Some(key) = evaluate(graph, &level) {
                if best.as_ref().map_or(true, |(k, _)| key < *k) {
                    best = Some((key, level));
                }
            }
        }
    }
    let (mut key, mut sep) = best.expect("median level is balanced");
    // Drop vertices the separator does not need, largest id first.
    let mut i = sep.len();
    while i > 0 {
        i -= 1;
        let mut trial = sep.clone();
        trial.remove(i);
        if let Some(k) = evaluate(graph, &trial) {
            if k.one_sided <= key.one_sided {
                sep = trial;
                key = k;
            }
        }
    }
    sep.into_iter().collect()
}

fn bfs_levels(g: &Graph, root: usize) -> Vec<Vec<usize>> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[root] = 0;
    let mut levels = vec![vec![root]];
    loop {
        let mut next = Vec::new();
        for &u in levels.last().expect("nonempty") {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        levels.push(next);
    }
    levels
}

/// Splits the edge set of `piece` until every piece spans at most r vertices.
fn split(graph: &Graph, piece: Vec<(usize, usize)>, r: usize, out: &mut Vec<Vec<(usize, usize)>>) {
    let mut verts: Vec<usize> = piece.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() <= r {
        out.push(piece);
        return;
    }
    let pos = |v: usize| verts.binary_search(&v).expect("piece vertex");
    let local = Graph::new(verts.len(), piece.iter().map(|&(u, v)| (pos(u), pos(v)))).expect("subgraph");
    let all = vec![true; verts.len()];
    let comps = local.components(&all);
    if comps.len() > 1 {
        let mut comp_of = vec![0; verts.len()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut parts = vec![Vec::new(); comps.len()];
        for &(u, v) in &piece {
            parts[comp_of[pos(u)]].push((u, v));
        }
        for p in parts {
            split(graph, p, r, out);
        }
        return;
    }
    let sep = balanced_separator(&local);
    let mut allowed = all.clone();
    for &v in &sep {
        allowed[v] = false;
    }
    let mut sides = local.components(&allowed);
    if sides.len() < 2 {
        // Nothing separates the piece (a clique): one region per edge.
        out.extend(piece.into_iter().map(|e| vec![e]));
        return;
    }
    sides.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut side = vec![usize::MAX; verts.len()];
    let mut sizes = [0usize; 2];
    for c in &sides {
        let s = usize::from(sizes[1] < sizes[0]);
        sizes[s] += c.len();
        for &v in c {
            side[v] = s;
        }
    }
    let mut halves = [Vec::new(), Vec::new()];
    for &(u, v) in &piece {
        let s = match (side[pos(u)], side[pos(v)]) {
            (usize::MAX, usize::MAX) => 0,
            (usize::MAX, x) | (x, _) => x,
        };
        halves[s].push((u, v));
    }
    let [a, b] = halves;
    split(graph, a, r, out);
    split(graph, b, r, out);
}

/// Relaxed r-division of a connected graph.
pub fn relaxed_r_division(graph: &Graph, r: usize) -> Result<RDivision> {
    if r < 3 {
        return Err(Error::InvalidR(r));
    }
    let n = graph.n();
    let mut pieces = Vec::new();
    if graph.m() > 0 {
        split(graph, graph.edges().to_vec(), r, &mut pieces);
    }
    let mut multiplicity = vec![0usize; n];
    let mut regions: Vec<Region> = pieces
        .into_iter()
        .map(|mut edges| {
            edges.sort_unstable();
            let mut vertices: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            for &v in &vertices {
                multiplicity[v] += 1;
            }
            Region {
                vertices,
                edges,
                boundary: Vec::new(),
                interior: Vec::new(),
            }
        })
        .collect();
    // Isolated vertices get a region of their own.
    for v in 0..n {
        if multiplicity[v] == 0 {
            multiplicity[v] = 1;
            regions.push(Region {
                vertices: vec![v],
                edges: Vec::new(),
                boundary: Vec::new(),
                interior: Vec::new(),
            });
        }
    }
    for reg in &mut regions {
        let (boundary, interior) = reg.vertices.iter().partition(|&&v| multiplicity[v] >= 2);
        reg.boundary = boundary;
        reg.interior = interior;
    }
    let b = multiplicity.iter().map(|&d| d.saturating_sub(1)).sum();
    let nf = n.max(1) as f64;
    Ok(RDivision {
        alpha: regions.len() as f64 * r as f64 / nf,
        boundary_constant: b as f64 * (r as f64).sqrt() / nf,
        regions,
        multiplicity,
        b,
        r,
    })
}

/// Grid graph with `rows × cols` vertices, id = row · cols + col.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                edges.push((v, v + 1));
            }
            if i + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::new(rows * cols, edges).expect("grid is simple")
}
