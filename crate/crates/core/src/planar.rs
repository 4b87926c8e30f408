//! Planarity testing by path addition (Demoucron, Malgrange, Pertuiset).
//! Quadratic, which is plenty for the graphs it is used on.

use std::collections::HashSet;

use crate::graph::Graph;

/// Whether the graph has a planar embedding.
pub(crate) fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return false;
    }
    let all = vec![true; n];
    for comp in g.components(&all) {
        if comp.len() < 5 {
            continue;
        }
        let sub = g.induced(&comp);
        let blocks = crate::graph::biconnected_components(&sub).expect("component is connected");
        for b in blocks.blocks {
            if b.vertices.len() >= 5 && !block_is_planar(&b.vertices, &b.edges) {
                return false;
            }
        }
    }
    true
}

/// A bridge of the embedded subgraph H: a lone edge between H-vertices, or
/// a component of G − H together with its attachments.
enum Fragment {
    Edge(usize, usize),
    Component(Vec<usize>),
}

fn block_is_planar(vertices: &[usize], edges: &[(usize, usize)]) -> bool {
    let k = vertices.len();
    let pos = |v: usize| vertices.binary_search(&v).expect("block vertex");
    let g = Graph::new(k, edges.iter().map(|&(u, v)| (pos(u), pos(v)))).expect("block is simple");
    if g.m() > 3 * k - 6 {
        return false;
    }
    let cycle = g.find_cycle(&vec![true; k]).expect("block has a cycle");
    let mut in_h = vec![false; k];
    let mut embedded: HashSet<(usize, usize)> = HashSet::new();
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        let w = cycle[(i + 1) % cycle.len()];
        embedded.insert((v.min(w), v.max(w)));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];
    while embedded.len() < g.m() {
        let mut frags: Vec<(Fragment, Vec<usize>)> = Vec::new();
        for &(u, v) in g.edges() {
            if in_h[u] && in_h[v] && !embedded.contains(&(u, v)) {
                frags.push((Fragment::Edge(u, v), vec![u, v]));
            }
        }
        let outside: Vec<bool> = in_h.iter().map(|&x| !x).collect();
        for comp in g.components(&outside) {
            let mut att: Vec<usize> = comp
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().copied().filter(|&w| in_h[w]))
                .collect();
            att.sort_unstable();
            att.dedup();
            frags.push((Fragment::Component(comp), att));
        }
        let mut best: Option<(usize, usize, usize)> = None; // (count, fragment, face)
        for (i, (_, att)) in frags.iter().enumerate() {
            let ok: Vec<usize> = (0..faces.len())
                .filter(|&f| att.iter().all(|a| faces[f].contains(a)))
                .collect();
            if ok.is_empty() {
                return false;
            }
            if best.map_or(true, |(c, _, _)| ok.len() < c) {
                best = Some((ok.len(), i, ok[0]));
            }
        }
        let (_, fi, face) = best.expect("some fragment remains");
        let (frag, att) = &frags[fi];
        let path = match frag {
            Fragment::Edge(u, v) => vec![*u, *v],
            Fragment::Component(comp) => path_through(&g, comp, att[0], att[1]),
        };
        for w in path.windows(2) {
            embedded.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let f = faces.swap_remove(face);
        let (a, b) = (path[0], *path.last().expect("path"));
        let ia = f.iter().position(|&x| x == a).expect("attachment on face");
        let rot: Vec<usize> = f[ia..].iter().chain(&f[..ia]).copied().collect();
        let ib = rot.iter().position(|&x| x == b).expect("attachment on face");
        let inner = &path[1..path.len() - 1];
        let mut f1: Vec<usize> = rot[..=ib].to_vec();
        f1.extend(inner.iter().rev());
        let mut f2: Vec<usize> = rot[ib..].to_vec();
        f2.push(a);
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
    }
    true
}

/// A path from `a` to `b` whose interior is a nonempty part of `comp`.
fn path_through(g: &Graph, comp: &[usize], a: usize, b: usize) -> Vec<usize> {
    let mut in_comp = vec![false; g.n()];
    for &v in comp {
        in_comp[v] = true;
    }
    let mut prev = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for &w in g.neighbors(a) {
        if in_comp[w] && prev[w] == usize::MAX {
            prev[w] = a;
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        if g.neighbors(u).contains(&b) {
            let mut path = vec![b, u];
            let mut x = u;
            while prev[x] != a {
                x = prev[x];
                path.push(x);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in g.neighbors(u) {
            if in_comp[w] && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment attachments are joined through the fragment")
}
