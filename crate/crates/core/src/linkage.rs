//! Disjoint-path primitives: unit vertex-capacity flow (at most a handful of
//! augmentations) and a decision procedure for two vertex-disjoint paths with
//! prescribed terminal pairs.

use std::collections::{BTreeSet, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

/// Maximum number (capped at `limit`) of vertex-disjoint paths from `sources`
/// to `sinks` inside `allowed`. Every vertex, terminals included, has
/// capacity one; a vertex that is both a source and a sink counts as a
/// zero-length path.
pub(crate) fn disjoint_path_count(
    g: &Graph,
    allowed: &[bool],
    sources: &[usize],
    sinks: &[usize],
    limit: usize,
) -> usize {
    unit_flow(g, allowed, sources, sinks, limit).0
}

/// Minimum vertex cut between `sources` and `sinks`, if it has fewer than
/// `limit` vertices.
fn small_vertex_cut(
    g: &Graph,
    allowed: &[bool],
    sources: &[usize],
    sinks: &[usize],
    limit: usize,
) -> Option<Vec<usize>> {
    let (count, seen) = unit_flow(g, allowed, sources, sinks, limit);
    if count >= limit {
        return None;
    }
    // Edge arcs never cross the final cut, so it consists of vertex arcs
    // v_in -> v_out, saturated source arcs and saturated sink arcs.
    let n = g.n();
    let cut: Vec<usize> = (0..n)
        .filter(|&v| {
            allowed[v]
                && ((seen[2 * v] && !seen[2 * v + 1])
                    || (sources.contains(&v) && !seen[2 * v])
                    || (sinks.contains(&v) && seen[2 * v + 1]))
        })
        .collect();
    debug_assert!(cut.len() <= count);
    Some(cut)
}

/// Unit vertex-capacity max flow, stopping at `limit`. Also returns the
/// nodes (2v = v_in, 2v+1 = v_out) reached by the last, failed search.
fn unit_flow(g: &Graph, allowed: &[bool], sources: &[usize], sinks: &[usize], limit: usize) -> (usize, Vec<bool>) {
    let n = g.n();
    // Node 2v = v_in, 2v+1 = v_out, 2n = super source, 2n+1 = super sink.
    let src = 2 * n;
    let snk = 2 * n + 1;
    let mut is_source = vec![false; n];
    let mut is_sink = vec![false; n];
    for &v in sources {
        if allowed[v] {
            is_source[v] = true;
        }
    }
    for &v in sinks {
        if allowed[v] {
            is_sink[v] = true;
        }
    }
    // Residual flow bookkeeping: through[v] is true when v carries flow and
    // next[u] = w records the saturated arc u_out -> w_in. Unit vertex
    // capacities leave at most one such arc per vertex.
    const NONE: usize = usize::MAX;
    let mut through = vec![false; n];
    let mut next = vec![NONE; n];
    let mut src_used = vec![false; n];
    let mut snk_used = vec![false; n];
    let mut count = 0;
    let mut seen = Vec::new();
    while count < limit {
        // BFS over residual graph nodes.
        let mut prev = vec![usize::MAX; 2 * n + 2];
        seen = vec![false; 2 * n + 2];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            if x == snk {
                found = true;
                break;
            }
            let mut push = |y: usize, queue: &mut VecDeque<usize>| {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = x;
                    queue.push_back(y);
                }
            };
            if x == src {
                for v in 0..n {
                    if is_source[v] && !src_used[v] {
                        push(2 * v, &mut queue);
                    }
                }
                continue;
            }
            let v = x / 2;
            if x % 2 == 0 {
                // v_in: forward through v, or backward along a flow arc into v.
                if !through[v] {
                    push(2 * v + 1, &mut queue);
                }
                for &u in g.neighbors(v) {
                    if allowed[u] && next[u] == v {
                        push(2 * u + 1, &mut queue);
                    }
                }
            } else {
                // v_out: to sink, across edges, or backward through v.
                if is_sink[v] && !snk_used[v] {
                    push(snk, &mut queue);
                }
                for &w in g.neighbors(v) {
                    if allowed[w] && next[v] != w {
                        push(2 * w, &mut queue);
                    }
                }
                if through[v] {
                    push(2 * v, &mut queue);
                }
            }
        }
        if !found {
            break;
        }
        // Augment along prev pointers.
        let mut y = snk;
        while y != src {
            let x = prev[y];
            match (x, y) {
                (x, y) if x == src => src_used[y / 2] = true,
                (x, y) if y == snk => snk_used[x / 2] = true,
                (x, y) if x / 2 == y / 2 => {
                    // in -> out is forward, out -> in cancels.
                    through[x / 2] = x % 2 == 0;
                }
                (x, y) => {
                    let (u, w) = (x / 2, y / 2);
                    if x % 2 == 1 {
                        next[u] = w;
                    } else if next[w] == u {
                        // Backward along arc w -> u. Walking from the sink,
                        // a newer arc out of w may already have replaced it.
                        next[w] = NONE;
                    }
                }
            }
            y = x;
        }
        count += 1;
    }
    (count, seen)
}

/// True when some simple path between `a` and `b` (inside `allowed`) passes
/// through `v`. `v` must differ from both ends.
pub(crate) fn vertex_on_path(g: &Graph, allowed: &[bool], v: usize, a: usize, b: usize) -> bool {
    debug_assert!(v != a && v != b);
    if !allowed[v] || !allowed[a] || !allowed[b] {
        return false;
    }
    let mut mask = allowed.to_vec();
    mask[v] = false;
    let nbrs: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| mask[w]).collect();
    disjoint_path_count(g, &mask, &nbrs, &[a, b], 2) == 2
}

/// True when some simple path between `a` and `b` (inside `allowed`) uses the
/// edge `{x, y}`.
pub(crate) fn edge_on_path(g: &Graph, allowed: &[bool], x: usize, y: usize, a: usize, b: usize) -> bool {
    if !(allowed[x] && allowed[y] && allowed[a] && allowed[b]) {
        return false;
    }
    disjoint_path_count(g, allowed, &[x, y], &[a, b], 2) == 2
}

/// Search steps before handing over to [`linkage_by_structure`].
const SEARCH_BUDGET: usize = 50;

/// Vertex-disjoint paths `a1 -> b1` and `a2 -> b2` inside `allowed`?
///
/// A memoized search grows the first path one vertex at a time. After each
/// step only the component K of the unused vertices holding `a2` matters,
/// together with the neighbors of the current end inside K, so failed states
/// are keyed by that pair. When `b1` falls outside K the two paths cannot
/// interfere and the answer is read off directly. This settles most queries
/// at once; the ones that blow the step budget (typically planar instances
/// with crossing terminals) go to the structural test.
pub(crate) fn two_disjoint_paths(
    g: &Graph,
    allowed: &[bool],
    (a1, b1): (usize, usize),
    (a2, b2): (usize, usize),
) -> bool {
    let terms = [a1, b1, a2, b2];
    if terms.iter().any(|&v| !allowed[v]) {
        return false;
    }
    if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
        return false;
    }
    if a1 == b1 {
        let mut mask = allowed.to_vec();
        mask[a1] = false;
        return a2 == b2 || g.reachable(a2, &mask)[b2];
    }
    if disjoint_path_count(g, allowed, &[a1, a2], &[b1, b2], 2) < 2 {
        return false;
    }
    // Distance to b1 avoiding the second pair, used to order extensions.
    let dist = {
        let mut d = vec![usize::MAX; g.n()];
        d[b1] = 0;
        let mut q = VecDeque::from([b1]);
        while let Some(u) = q.pop_front() {
            for &w in g.neighbors(u) {
                if allowed[w] && w != a2 && w != b2 && d[w] == usize::MAX {
                    d[w] = d[u] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    };
    let mut free = FixedBitSet::with_capacity(g.n());
    for v in 0..g.n() {
        if allowed[v] && v != a1 {
            free.insert(v);
        }
    }
    let mut search = Search {
        g,
        b1,
        a2,
        b2,
        dist,
        free,
        failed: HashSet::new(),
        steps: 0,
    };
    let found = search.extend(a1);
    if search.steps > SEARCH_BUDGET {
        return linkage_by_structure(g, allowed, (a1, b1), (a2, b2));
    }
    found
}

struct Search<'a> {
    g: &'a Graph,
    b1: usize,
    a2: usize,
    b2: usize,
    dist: Vec<usize>,
    /// Allowed vertices not on the partial first path.
    free: FixedBitSet,
    failed: HashSet<(FixedBitSet, FixedBitSet)>,
    steps: usize,
}

impl Search<'_> {
    /// Free vertices reachable from `from` without entering `skip`.
    fn component(&self, from: usize, skip: &[usize]) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.g.n());
        seen.insert(from);
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for &w in self.g.neighbors(u) {
                if self.free.contains(w) && !skip.contains(&w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Can the first path, currently ending at `cur`, be completed?
    fn extend(&mut self, cur: usize) -> bool {
        self.steps += 1;
        if self.steps > SEARCH_BUDGET {
            return false;
        }
        // The second path lives in `second`, the rest of the first in `first`.
        let second = self.component(self.a2, &[self.b1]);
        if !second.contains(self.b2) {
            return false;
        }
        let first = self.component(self.b1, &[self.a2, self.b2]);
        let mut front = FixedBitSet::with_capacity(self.g.n());
        for &w in self.g.neighbors(cur) {
            if first.contains(w) {
                front.insert(w);
            }
        }
        if front.is_clear() {
            return false;
        }
        if first.is_disjoint(&second) {
            return true;
        }
        let mut region = first;
        region.union_with(&second);
        let key = (front, region);
        if self.failed.contains(&key) {
            return false;
        }
        let mut next: Vec<usize> = key.0.ones().collect();
        next.sort_by_key(|&w| (self.dist[w], w));
        for w in next {
            if w == self.b1 {
                if self.a2 == self.b2 || self.component(self.a2, &[self.b1]).contains(self.b2) {
                    return true;
                }
                continue;
            }
            self.free.set(w, false);
            let mut mask = vec![false; self.g.n()];
            for v in self.free.ones() {
                mask[v] = true;
            }
            mask[w] = true;
            let feasible = disjoint_path_count(self.g, &mask, &[w, self.a2], &[self.b1, self.b2], 2) == 2;
            if feasible && self.extend(w) {
                return true;
            }
            self.free.insert(w);
        }
        self.failed.insert(key);
        false
    }
}

/// Exact test for the linkage through the characterization of Seymour,
/// Shiloach and Thomassen. Pieces cut off from the terminals by at most three
/// vertices are replaced by a clique on their attachments, which preserves
/// the answer since at most one path can pass through such a piece. Once
/// nothing is left to fold, no linkage exists iff the graph embeds in a disc
/// with a1, a2, b1, b2 around the boundary in that order, i.e. iff adding a
/// vertex joined to the four terminals plus the 4-cycle a1 a2 b1 b2 keeps it
/// planar. Terminals must be distinct and allowed.
pub(crate) fn linkage_by_structure(
    g: &Graph,
    allowed: &[bool],
    (a1, b1): (usize, usize),
    (a2, b2): (usize, usize),
) -> bool {
    let n = g.n();
    let terms = [a1, a2, b1, b2];
    let mut alive = allowed.to_vec();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| {
            if alive[v] {
                g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect()
            } else {
                BTreeSet::new()
            }
        })
        .collect();
    // Folding a piece keeps every fan of four paths from an outside vertex
    // (only one of them can cross the piece), so a single pass suffices.
    let rebuild = |adj: &[BTreeSet<usize>]| {
        Graph::from_edges_lossy(
            n,
            (0..n).flat_map(|u| adj[u].iter().filter(move |&&w| u < w).map(move |&w| (u, w))),
        )
    };
    let mut current = rebuild(&adj);
    for v in 0..n {
        if !alive[v] || terms.contains(&v) {
            continue;
        }
        let piece = if adj[v].len() <= 3 {
            vec![v]
        } else {
            match small_cut_piece(&current, &adj, &alive, v, &terms) {
                Some(p) => p,
                None => continue,
            }
        };
        let mut attach = BTreeSet::new();
        for &u in &piece {
            alive[u] = false;
        }
        for &u in &piece {
            for w in std::mem::take(&mut adj[u]) {
                if alive[w] {
                    adj[w].remove(&u);
                    attach.insert(w);
                }
            }
        }
        for &x in &attach {
            for &y in &attach {
                if x != y {
                    adj[x].insert(y);
                }
            }
        }
        current = rebuild(&adj);
    }
    let ids: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let pos = |v: usize| ids.binary_search(&v).expect("alive vertex");
    let z = ids.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &u in &ids {
        for &w in &adj[u] {
            if u < w {
                edges.push((pos(u), pos(w)));
            }
        }
    }
    for i in 0..4 {
        edges.push((pos(terms[i]), pos(terms[(i + 1) % 4])));
        edges.push((pos(terms[i]), z));
    }
    !crate::planar::is_planar(&Graph::from_edges_lossy(z + 1, edges))
}

/// If at most three vertices separate `v` from `terms`, the component of `v`
/// after removing a minimum such separator.
fn small_cut_piece(
    g: &Graph,
    adj: &[BTreeSet<usize>],
    alive: &[bool],
    v: usize,
    terms: &[usize],
) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut allowed = alive.to_vec();
    allowed[v] = false;
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let cut = small_vertex_cut(g, &allowed, &nbrs, terms, 4)?;
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut stack = vec![v];
    let mut piece = vec![v];
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] && !cut.contains(&w) {
                seen[w] = true;
                piece.push(w);
                stack.push(w);
            }
        }
    }
    debug_assert!(piece.iter().all(|u| !terms.contains(u)));
    Some(piece)
}
