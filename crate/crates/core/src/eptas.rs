//! Separator-based approximation scheme for planar-like instances.
//!
//! The kernel is cut into a relaxed r-division. Every region is solved
//! exactly for the entry-exit cycles it contains, and the per-region optima
//! are glued with the region boundaries and the boundary neighborhoods N(R)
//! of the boundary-to-boundary path systems Π(R).

use std::time::Instant;

use rayon::prelude::*;

use crate::cycles::all_simple_cycles;
use crate::error::{Error, Result};
use crate::graph::{Graph, Instance, VertexSet, Weight};
use crate::hitting::{elements, mask_of, min_hitting_set};
use crate::kernel::{lower_bound, SigmaConfig};
use crate::linkage::{edge_on_path, vertex_on_path};
use crate::rdivision::{relaxed_r_division, RDivision, Region};
use crate::reduce::reduce_all;
use crate::solution::{Method, SolveResult, SolveStats};
use crate::track::{entry_exit_cycles, EntryExitCycle, Subgraph};

pub const DEFAULT_REGION_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq)]
pub enum EptasParam {
    R(usize),
    Eps { eps: f64, sigma: SigmaConfig },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionSolution {
    pub region: Region,
    pub opt_r: VertexSet,
    pub pi: Subgraph,
    pub pi_boundary: VertexSet,
    pub nbhd: VertexSet,
    pub cycles: usize,
}

#[derive(Debug, Clone)]
pub struct EptasOutcome {
    pub result: SolveResult,
    /// The reduced instance the division was computed on.
    pub kernel: Instance,
    pub division: RDivision,
    pub regions: Vec<RegionSolution>,
}

/// r = (2·c1·c2·(c3+1)/ε)².
pub fn r_for_eps(eps: f64, cfg: &SigmaConfig) -> f64 {
    let f = |w: Weight| *w.numer() as f64 / *w.denom() as f64;
    (2.0 * f(cfg.c1) * f(cfg.c2) * (f(cfg.c3) + 1.0) / eps).powi(2)
}

/// Graph on `vertices` (sorted) with the given edges, in local ids.
fn local_graph(vertices: &[usize], edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    let pos = |v: usize| vertices.binary_search(&v).expect("region vertex");
    Graph::new(vertices.len(), edges.into_iter().map(|(u, v)| (pos(u), pos(v)))).expect("subgraph")
}

/// Entry-exit cycles whose vertices all lie in V(R), with pairs taken in the
/// whole instance.
pub fn region_cycles(instance: &Instance, region: &Region) -> Vec<EntryExitCycle> {
    let vs = &region.vertices;
    let inside: Vec<bool> = {
        let mut m = vec![false; instance.n()];
        for &v in vs {
            m[v] = true;
        }
        m
    };
    let edges = instance
        .graph
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| inside[u] && inside[v]);
    let local = local_graph(vs, edges);
    let cycles: Vec<Vec<usize>> = all_simple_cycles(&local)
        .into_iter()
        .map(|c| c.into_iter().map(|i| vs[i]).collect())
        .collect();
    let mut out: Vec<EntryExitCycle> = cycles
        .par_iter()
        .flat_map_iter(|c| entry_exit_cycles(instance, c))
        .collect();
    out.sort();
    out
}

/// Minimum-cardinality subset of V(R) tracking `cycles`; ties by the
/// lexicographically smallest set.
pub fn region_opt(region: &Region, cycles: &[EntryExitCycle], cap: usize) -> Result<VertexSet> {
    let vs = &region.vertices;
    let cap = cap.min(64);
    if vs.len() > cap {
        return Err(Error::CapExceeded {
            what: "region (use a smaller r)",
            size: vs.len(),
            cap,
        });
    }
    let pos = |v: usize| vs.binary_search(&v).expect("cycle inside region");
    let mut ranges: Vec<u64> = cycles.iter().map(|e| mask_of(e.trackers().map(pos))).collect();
    ranges.sort_unstable();
    ranges.dedup();
    let unit = vec![Weight::from_integer(1); vs.len()];
    let m = min_hitting_set(&unit, &ranges).ok_or_else(|| {
        Error::NotRule1Reduced("a cycle inside the region has no possible tracker".into())
    })?;
    Ok(elements(m).map(|i| vs[i]).collect())
}

/// Vertices and edges on boundary-to-boundary paths of R with at least two
/// edges whose internal vertices avoid `opt_r`.
pub fn pi_subgraph(region: &Region, opt_r: &VertexSet) -> Subgraph {
    let vs = &region.vertices;
    let g = local_graph(vs, region.edges.iter().copied());
    let pos = |v: usize| vs.binary_search(&v).expect("region vertex");
    let bnd: Vec<usize> = region.boundary.iter().map(|&b| pos(b)).collect();
    let mut on_v = vec![false; vs.len()];
    let mut on_e = vec![false; g.m()];
    for (i, &b1) in bnd.iter().enumerate() {
        for &b2 in &bnd[i + 1..] {
            let allowed: Vec<bool> = (0..vs.len())
                .map(|x| x == b1 || x == b2 || !opt_r.contains(&vs[x]))
                .collect();
            let mut any = false;
            for x in 0..vs.len() {
                if x != b1 && x != b2 && allowed[x] && !on_v[x] && vertex_on_path(&g, &allowed, x, b1, b2) {
                    on_v[x] = true;
                    any = true;
                }
            }
            for (k, &(x, y)) in g.edges().iter().enumerate() {
                if on_e[k] || (x, y) == (b1.min(b2), b1.max(b2)) || !allowed[x] || !allowed[y] {
                    continue;
                }
                if edge_on_path(&g, &allowed, x, y, b1, b2) {
                    on_e[k] = true;
                    any = true;
                }
            }
            if any {
                on_v[b1] = true;
                on_v[b2] = true;
            }
        }
    }
    Subgraph {
        vertices: (0..vs.len()).filter(|&x| on_v[x]).map(|x| vs[x]).collect(),
        edges: g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(k, _)| on_e[k])
            .map(|(_, &(x, y))| (vs[x], vs[y]))
            .collect(),
    }
}

/// Neighbors within Π of its boundary vertices, the boundary excluded.
pub fn boundary_neighborhood(pi: &Subgraph, pi_boundary: &VertexSet) -> VertexSet {
    pi.edges
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .filter(|(u, v)| pi_boundary.contains(u) && !pi_boundary.contains(v))
        .map(|(_, v)| v)
        .collect()
}

fn solve_region(kernel: &Instance, region: &Region, cap: usize) -> Result<RegionSolution> {
    let cycles = region_cycles(kernel, region);
    let opt_r = region_opt(region, &cycles, cap)?;
    let pi = pi_subgraph(region, &opt_r);
    let pi_boundary: VertexSet = pi
        .vertices
        .iter()
        .copied()
        .filter(|v| region.boundary.binary_search(v).is_ok())
        .collect();
    let nbhd = boundary_neighborhood(&pi, &pi_boundary);
    Ok(RegionSolution {
        region: region.clone(),
        opt_r,
        pi,
        pi_boundary,
        nbhd,
        cycles: cycles.len(),
    })
}

/// Runs the scheme with the default region cap.
pub fn eptas_solve(instance: &Instance, param: &EptasParam) -> Result<EptasOutcome> {
    eptas_solve_capped(instance, param, DEFAULT_REGION_CAP)
}

/// An ε parameter is turned into r and then clamped to the region cap.
pub fn eptas_solve_capped(instance: &Instance, param: &EptasParam, cap: usize) -> Result<EptasOutcome> {
    let start = Instant::now();
    let r = match param {
        EptasParam::R(r) => *r,
        EptasParam::Eps { eps, sigma } => {
            let r = r_for_eps(*eps, sigma);
            if r.is_finite() && r < cap as f64 {
                (r.ceil() as usize).max(3)
            } else {
                cap.max(3)
            }
        }
    };
    let (kernel, trace) = reduce_all(instance);
    let division = if kernel.is_trivial() {
        relaxed_r_division(&Graph::new(0, []).expect("empty"), r)?
    } else {
        relaxed_r_division(&kernel.graph, r)?
    };
    let regions: Vec<RegionSolution> = division
        .regions
        .par_iter()
        .map(|reg| solve_region(&kernel, reg, cap))
        .collect::<Result<_>>()?;
    let mut local = VertexSet::new();
    for sol in &regions {
        local.extend(sol.opt_r.iter().copied());
        local.extend(sol.region.boundary.iter().copied());
        local.extend(sol.nbhd.iter().copied());
    }
    let trackers = trace.lift(&local)?;
    let result = SolveResult {
        total_weight: instance.weight_of(&trackers),
        trackers,
        lower_bound: lower_bound(instance),
        method: Method::Eptas,
        stats: SolveStats {
            kernel_n: kernel.n(),
            kernel_m: kernel.m(),
            components: 1,
            regions: Some(division.regions.len()),
            boundary_b: Some(division.b),
            r: Some(r),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            ..SolveStats::default()
        },
    };
    Ok(EptasOutcome {
        result,
        kernel,
        division,
        regions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_tracking_set;
    use crate::rdivision::grid;
    use crate::track::{is_tracked, verify_by_paths};

    fn inst(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Instance {
        Instance::new(Graph::new(n, edges.iter().copied()).unwrap(), s, t).unwrap()
    }

    fn c4() -> Instance {
        inst(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], 0, 2)
    }

    fn theta() -> Instance {
        inst(5, &[(0, 1), (1, 4), (0, 2), (2, 4), (0, 3), (3, 4)], 0, 4)
    }

    fn whole(i: &Instance) -> Region {
        Region {
            vertices: (0..i.n()).collect(),
            edges: i.graph.edges().to_vec(),
            boundary: Vec::new(),
            interior: (0..i.n()).collect(),
        }
    }

    fn region(vertices: &[usize], edges: &[(usize, usize)], boundary: &[usize]) -> Region {
        Region {
            vertices: vertices.to_vec(),
            edges: edges.to_vec(),
            boundary: boundary.to_vec(),
            interior: vertices.iter().copied().filter(|v| !boundary.contains(v)).collect(),
        }
    }

    /// Smallest subset of V(R) tracking all cycles, by ascending-size enumeration.
    fn brute_opt(region: &Region, cycles: &[EntryExitCycle]) -> VertexSet {
        let vs = &region.vertices;
        let mut subsets: Vec<Vec<usize>> = (0u32..1 << vs.len())
            .map(|m| (0..vs.len()).filter(|i| m >> i & 1 == 1).map(|i| vs[i]).collect())
            .collect();
        subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        subsets
            .into_iter()
            .map(|s| s.into_iter().collect::<VertexSet>())
            .find(|s| cycles.iter().all(|e| is_tracked(e, s)))
            .unwrap()
    }

    #[test]
    fn region_cycle_examples() {
        let path = inst(3, &[(0, 1), (1, 2)], 0, 2);
        assert!(region_cycles(&path, &whole(&path)).is_empty());
        let cycles = region_cycles(&c4(), &whole(&c4()));
        assert_eq!(
            cycles,
            vec![EntryExitCycle {
                cycle: vec![0, 1, 2, 3],
                entry: 0,
                exit: 2
            }]
        );
        // A region missing vertex 3 sees no cycle.
        let part = region(&[0, 1, 2], &[(0, 1), (1, 2)], &[0, 2]);
        assert!(region_cycles(&c4(), &part).is_empty());
    }

    #[test]
    fn region_opt_examples() {
        assert!(region_opt(&whole(&c4()), &[], 22).unwrap().is_empty());
        let cycles = region_cycles(&c4(), &whole(&c4()));
        assert_eq!(region_opt(&whole(&c4()), &cycles, 22).unwrap(), VertexSet::from([1]));
        let cycles = region_cycles(&theta(), &whole(&theta()));
        let opt = region_opt(&whole(&theta()), &cycles, 22).unwrap();
        assert_eq!(opt.len(), 2);
        assert!(opt.iter().all(|v| [1, 2, 3].contains(v)));
        assert!(region_opt(&whole(&theta()), &cycles, 4).unwrap_err().is_cap());
    }

    #[test]
    fn region_opt_matches_enumeration() {
        let g = grid(3, 4);
        let i = Instance::new(g, 0, 11).unwrap();
        let d = relaxed_r_division(&i.graph, 8).unwrap();
        for reg in d.regions.iter().chain([&whole(&i)]) {
            let cycles = region_cycles(&i, reg);
            assert_eq!(region_opt(reg, &cycles, 22).unwrap(), brute_opt(reg, &cycles));
        }
    }

    #[test]
    fn pi_examples() {
        let no_boundary = whole(&c4());
        assert_eq!(pi_subgraph(&no_boundary, &VertexSet::new()), Subgraph::default());
        let r = region(&[0, 1, 2], &[(0, 1), (1, 2)], &[0, 2]);
        let pi = pi_subgraph(&r, &VertexSet::new());
        assert_eq!(pi.vertices, vec![0, 1, 2]);
        assert_eq!(pi.edges, vec![(0, 1), (1, 2)]);
        let pb = VertexSet::from([0, 2]);
        assert_eq!(boundary_neighborhood(&pi, &pb), VertexSet::from([1]));
        assert_eq!(pi_subgraph(&r, &VertexSet::from([1])), Subgraph::default());
        // b1 - x - y - b2
        let r = region(&[0, 1, 2, 3], &[(0, 1), (1, 2), (2, 3)], &[0, 3]);
        let pi = pi_subgraph(&r, &VertexSet::new());
        assert_eq!(boundary_neighborhood(&pi, &VertexSet::from([0, 3])), VertexSet::from([1, 2]));
        // A lone boundary edge is not a path of length two.
        let r = region(&[0, 1], &[(0, 1)], &[0, 1]);
        assert_eq!(pi_subgraph(&r, &VertexSet::new()), Subgraph::default());
        assert!(boundary_neighborhood(&Subgraph::default(), &VertexSet::new()).is_empty());
    }

    #[test]
    fn single_region_matches_oracle() {
        for i in [c4(), theta()] {
            let out = eptas_solve(&i, &EptasParam::R(8)).unwrap();
            assert_eq!(out.division.regions.len(), 1);
            let exact = exact_tracking_set(&i, 18).unwrap();
            assert_eq!(out.result.size(), exact.size());
            assert!(verify_by_paths(&i, &out.result.trackers).unwrap().valid);
        }
        let out = eptas_solve(&c4(), &EptasParam::R(8)).unwrap();
        assert_eq!(out.result.trackers, VertexSet::from([1]));
    }

    #[test]
    fn eps_is_clamped_to_the_cap() {
        let cfg = SigmaConfig::planar();
        assert!(r_for_eps(0.5, &cfg) > 1e9);
        let out = eptas_solve(&c4(), &EptasParam::Eps { eps: 0.5, sigma: cfg }).unwrap();
        assert_eq!(out.result.stats.r, Some(DEFAULT_REGION_CAP));
        assert_eq!(out.result.size(), 1);
    }

    #[test]
    fn small_grid_is_feasible() {
        let i = Instance::new(grid(4, 4), 0, 15).unwrap();
        let out = eptas_solve(&i, &EptasParam::R(6)).unwrap();
        assert!(out.division.regions.len() > 1);
        assert!(verify_by_paths(&i, &out.result.trackers).unwrap().valid);
    }
}
