//! Simple undirected graphs, tracking instances and the block-cut decomposition.
//!
//! Vertex ids are dense `0..n`. Graphs are immutable once built; every
//! transformation produces a new graph.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nonnegative rational vertex weight.
pub type Weight = num_rational::Ratio<i64>;

/// Ordered vertex set; `Ord` on it is the lexicographic order of the sorted ids.
pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a simple graph. Self-loops, duplicate edges and out-of-range ids
    /// are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {u}")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance(format!(
                "duplicate edge ({},{})",
                w[0].0, w[0].1
            )));
        }
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { adj, edges: list })
    }

    /// Like [`Graph::new`] but silently drops loops and duplicates.
    pub(crate) fn from_edges_lossy(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut list: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        list.sort_unstable();
        list.dedup();
        Graph::new(n, list).expect("cleaned edge list")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Vertices reachable from `start` using only vertices with `allowed[v]`.
    pub fn reachable(&self, start: usize, allowed: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        if !allowed[start] {
            return seen;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if allowed[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.reachable(0, &vec![true; self.n()]).iter().all(|&x| x)
    }

    /// Connected components of the subgraph induced by `allowed`, each sorted,
    /// ordered by smallest vertex.
    pub fn components(&self, allowed: &[bool]) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for v in 0..self.n() {
            if !allowed[v] || comp[v] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![v];
            comp[v] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for &w in &self.adj[u] {
                    if allowed[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Some cycle of the subgraph induced by `allowed`, as a vertex sequence,
    /// or `None` when that subgraph is a forest.
    pub fn find_cycle(&self, allowed: &[bool]) -> Option<Vec<usize>> {
        let n = self.n();
        let mut parent = vec![usize::MAX; n];
        let mut visited = vec![false; n];
        for root in 0..n {
            if !allowed[root] || visited[root] {
                continue;
            }
            visited[root] = true;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !allowed[w] || w == parent[u] {
                        continue;
                    }
                    if visited[w] {
                        // Non-tree edge u-w closes a cycle through their common ancestor.
                        return Some(self.tree_cycle(&parent, u, w));
                    }
                    visited[w] = true;
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        None
    }

    fn tree_cycle(&self, parent: &[usize], u: usize, w: usize) -> Vec<usize> {
        let ancestors = |mut x: usize| {
            let mut path = vec![x];
            while parent[x] != usize::MAX {
                x = parent[x];
                path.push(x);
            }
            path
        };
        let pu = ancestors(u);
        let pw = ancestors(w);
        let in_pw: BTreeSet<usize> = pw.iter().copied().collect();
        let lca_idx = pu.iter().position(|x| in_pw.contains(x)).expect("same tree");
        let lca = pu[lca_idx];
        let mut cycle: Vec<usize> = pu[..=lca_idx].to_vec();
        let w_idx = pw.iter().position(|&x| x == lca).expect("lca on path");
        cycle.extend(pw[..w_idx].iter().rev());
        cycle
    }

    pub fn is_forest(&self, allowed: &[bool]) -> bool {
        self.find_cycle(allowed).is_none()
    }

    /// Subgraph induced by `keep` (sorted, distinct), relabeled to `0..keep.len()`
    /// in order.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(keep.len(), edges).expect("induced subgraph of a simple graph")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    #[default]
    General,
    Planar,
}

impl std::fmt::Display for GraphClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphClass::General => write!(f, "general"),
            GraphClass::Planar => write!(f, "planar"),
        }
    }
}

/// A tracking instance: graph, start `s`, finish `t`, vertex weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub s: usize,
    pub t: usize,
    pub weights: Vec<Weight>,
    pub class: GraphClass,
}

impl Instance {
    pub fn new(graph: Graph, s: usize, t: usize) -> Result<Self> {
        let weights = vec![Weight::one(); graph.n()];
        Self::with_weights(graph, s, t, weights)
    }

    pub fn with_weights(graph: Graph, s: usize, t: usize, weights: Vec<Weight>) -> Result<Self> {
        let n = graph.n();
        if s >= n || t >= n {
            return Err(Error::InvalidInstance(format!(
                "terminal out of range (s={s}, t={t}, n={n})"
            )));
        }
        if s == t {
            return Err(Error::InvalidInstance("s and t must differ".into()));
        }
        if weights.len() != n {
            return Err(Error::InvalidInstance("one weight per vertex required".into()));
        }
        if let Some(v) = weights.iter().position(|w| *w < Weight::zero()) {
            return Err(Error::InvalidInstance(format!("negative weight on vertex {v}")));
        }
        Ok(Instance {
            graph,
            s,
            t,
            weights,
            class: GraphClass::General,
        })
    }

    pub fn with_class(mut self, class: GraphClass) -> Self {
        self.class = class;
        self
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|w| w.is_one())
    }

    pub fn weight_of<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> Weight {
        set.into_iter().map(|&v| self.weights[v]).sum()
    }

    /// The same instance with all weights set to one.
    pub fn unweighted(&self) -> Instance {
        Instance {
            weights: vec![Weight::one(); self.n()],
            ..self.clone()
        }
    }

    /// True when the graph is the single edge `(s, t)`, or has no s-t path at
    /// all after cleanup. Such instances need no trackers.
    pub fn is_trivial(&self) -> bool {
        self.graph.find_cycle(&vec![true; self.n()]).is_none()
    }
}

/// One biconnected component (a block), or a bridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
}

/// Biconnected components via the lowpoint recursion (iterative).
/// Blocks are ordered by their sorted vertex lists.
pub fn biconnected_components(graph: &Graph) -> Result<BlockDecomposition> {
    if !graph.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = graph.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut blocks: Vec<Block> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut timer = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent, next neighbor index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if *idx < graph.degree(u) {
                let w = graph.neighbors(u)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, u, 0));
                } else if disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] >= disc[parent] {
                        let mut edges = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            edges.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (parent, u) {
                                break;
                            }
                        }
                        edges.sort_unstable();
                        let mut vertices: Vec<usize> =
                            edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                        vertices.sort_unstable();
                        vertices.dedup();
                        blocks.push(Block { vertices, edges });
                    }
                }
            }
        }
    }
    blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let cut_vertices = (0..n).filter(|&v| count[v] >= 2).collect();
    Ok(BlockDecomposition {
        blocks,
        cut_vertices,
    })
}

/// One link of the block chain, with its own local ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComponent {
    pub instance: Instance,
    /// Local vertex id -> vertex id in the parent instance.
    pub to_parent: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockChain {
    pub components: Vec<ChainComponent>,
    /// `cut_vertices[i]` is the exit of component `i` and the entry of `i + 1`.
    pub cut_vertices: Vec<usize>,
}

/// Splits a Rule-1-reduced instance into its chain of blocks from `s` to `t`.
pub fn block_chain(instance: &Instance) -> Result<BlockChain> {
    let g = &instance.graph;
    if g.m() == 0 {
        return Ok(BlockChain {
            components: Vec::new(),
            cut_vertices: Vec::new(),
        });
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(Error::NotRule1Reduced(format!("isolated vertex {v}")));
    }
    let dec = biconnected_components(g).map_err(|_| {
        Error::NotRule1Reduced("graph is not connected".into())
    })?;
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, b) in dec.blocks.iter().enumerate() {
        for &v in &b.vertices {
            containing[v].push(i);
        }
    }
    let not_reduced = |msg: &str| Error::NotRule1Reduced(msg.to_string());
    if containing[instance.s].len() != 1 || containing[instance.t].len() != 1 {
        return Err(not_reduced("s or t is a cut vertex"));
    }
    let mut order = vec![containing[instance.s][0]];
    let mut cuts = Vec::new();
    let mut entry = instance.s;
    let mut used = vec![false; dec.blocks.len()];
    used[order[0]] = true;
    loop {
        let cur = *order.last().expect("nonempty");
        let block = &dec.blocks[cur];
        if block.vertices.binary_search(&instance.t).is_ok() {
            break;
        }
        let exits: Vec<usize> = block
            .vertices
            .iter()
            .copied()
            .filter(|&v| v != entry && containing[v].len() >= 2)
            .collect();
        if exits.len() != 1 || containing[exits[0]].len() != 2 {
            return Err(not_reduced("block-cut tree is not an s-t path"));
        }
        let exit = exits[0];
        let next = containing[exit]
            .iter()
            .copied()
            .find(|&b| b != cur)
            .expect("cut vertex in two blocks");
        if used[next] {
            return Err(not_reduced("block-cut tree is not an s-t path"));
        }
        used[next] = true;
        cuts.push(exit);
        order.push(next);
        entry = exit;
    }
    if used.iter().any(|&u| !u) {
        return Err(not_reduced("some block lies off every s-t path"));
    }
    let mut components = Vec::with_capacity(order.len());
    for (i, &b) in order.iter().enumerate() {
        let block = &dec.blocks[b];
        let s_i = if i == 0 { instance.s } else { cuts[i - 1] };
        let t_i = if i + 1 == order.len() { instance.t } else { cuts[i] };
        let verts = &block.vertices;
        let pos = |v: usize| verts.binary_search(&v).expect("block vertex");
        let graph = Graph::new(verts.len(), block.edges.iter().map(|&(u, v)| (pos(u), pos(v))))?;
        let sub = Instance {
            graph,
            s: pos(s_i),
            t: pos(t_i),
            weights: verts.iter().map(|&v| instance.weights[v]).collect(),
            class: instance.class,
        };
        components.push(ChainComponent {
            instance: sub,
            to_parent: verts.clone(),
        });
    }
    Ok(BlockChain {
        components,
        cut_vertices: cuts,
    })
}
