//! Approximation pipelines for general graphs. Both start from a 2-approximate
//! feedback vertex set F, which already tracks every cycle carrying three or
//! more of its vertices, and then handle the polynomial family C_F of
//! entry-exit cycles with at most two F-vertices: by greedy weighted set cover
//! (O(lg n)) or by a Brönnimann–Goodrich hitting set (O(lg OPT), unit weights).

use std::time::Instant;

use rayon::prelude::*;

use crate::cover::{bg_hitting_set, greedy_weighted_set_cover, SetSystem, VCConfig};
use crate::cycles::{enumerate_cf, expand_entry_exit};
use crate::error::{Error, Result};
use crate::fvs::fvs_2approx;
use crate::graph::{block_chain, Instance, VertexSet};
use crate::kernel::lower_bound;
use crate::reduce::{reduce_all, rule1, ReductionTrace};
use crate::solution::{Method, SolveResult, SolveStats};
use crate::track::{is_tracked, EntryExitCycle};

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxOptions {
    /// Apply rules 2 and 3 on top of rule 1 before solving.
    pub full_reduction: bool,
    pub vc: VCConfig,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        ApproxOptions {
            full_reduction: true,
            vc: VCConfig::default(),
        }
    }
}

#[derive(Debug, Default)]
struct Part {
    trackers: VertexSet,
    fvs: usize,
    cycles: usize,
    eecs: usize,
    cover: usize,
}

/// Entry-exit cycles of C_F that F leaves untracked.
fn open_cycles(instance: &Instance, fvs: &VertexSet) -> Result<(usize, Vec<EntryExitCycle>, usize)> {
    let family = expand_entry_exit(instance, enumerate_cf(instance, fvs)?);
    let total = family.eecs.len();
    let open = family
        .eecs
        .into_iter()
        .filter(|e| !is_tracked(e, fvs))
        .collect();
    Ok((family.cycles.len(), open, total))
}

fn solve_component(instance: &Instance, method: Method, vc: &VCConfig) -> Result<Part> {
    if instance.is_trivial() {
        return Ok(Part::default());
    }
    let fvs = fvs_2approx(instance).vertices;
    let (cycles, open, eecs) = open_cycles(instance, &fvs)?;
    let chosen: VertexSet = match method {
        Method::Greedy => {
            let sets = (0..instance.n()).map(|v| {
                let covered = open
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.trackers().any(|x| x == v))
                    .map(|(i, _)| i)
                    .collect();
                (v, covered, instance.weights[v])
            });
            let system = SetSystem::new(0..open.len(), sets);
            greedy_weighted_set_cover(&system)?.0.into_iter().collect()
        }
        Method::Bg => {
            let ranges: Vec<Vec<usize>> = open.iter().map(|e| e.trackers().collect()).collect();
            let universe: Vec<usize> = (0..instance.n()).collect();
            let cfg = VCConfig {
                initial_c: Some(vc.initial_c.unwrap_or(1).max(1)),
                ..vc.clone()
            };
            bg_hitting_set(&universe, &ranges, &cfg)?
        }
        Method::Exact | Method::Eptas => unreachable!("not a cover pipeline"),
    };
    let cover = chosen.len();
    let mut trackers = fvs.clone();
    trackers.extend(chosen);
    Ok(Part {
        trackers,
        fvs: fvs.len(),
        cycles,
        eecs,
        cover,
    })
}

fn run(instance: &Instance, method: Method, opts: &ApproxOptions) -> Result<SolveResult> {
    let start = Instant::now();
    let (kernel, trace): (Instance, ReductionTrace) = if opts.full_reduction {
        reduce_all(instance)
    } else {
        rule1(instance)
    };
    let chain = block_chain(&kernel)?;
    let lb = lower_bound(instance);
    let vc = VCConfig {
        initial_c: opts.vc.initial_c.or(Some(lb.max(1))),
        ..opts.vc.clone()
    };
    let parts: Vec<Part> = chain
        .components
        .par_iter()
        .map(|c| {
            let mut part = solve_component(&c.instance, method, &vc)?;
            // Component terminals are cut vertices or s, t: they track nothing.
            part.trackers = part
                .trackers
                .iter()
                .filter(|&&v| v != c.instance.s && v != c.instance.t)
                .map(|&v| c.to_parent[v])
                .collect();
            Ok(part)
        })
        .collect::<Result<_>>()?;
    let mut local = VertexSet::new();
    let mut stats = SolveStats {
        kernel_n: kernel.n(),
        kernel_m: kernel.m(),
        components: chain.components.len(),
        fvs_size: Some(0),
        cf_cycles: Some(0),
        cf_eecs: Some(0),
        cover_size: Some(0),
        ..SolveStats::default()
    };
    for p in parts {
        local.extend(p.trackers);
        *stats.fvs_size.as_mut().expect("set") += p.fvs;
        *stats.cf_cycles.as_mut().expect("set") += p.cycles;
        *stats.cf_eecs.as_mut().expect("set") += p.eecs;
        *stats.cover_size.as_mut().expect("set") += p.cover;
    }
    let trackers = trace.lift(&local)?;
    stats.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveResult {
        total_weight: instance.weight_of(&trackers),
        trackers,
        lower_bound: lb,
        method,
        stats,
    })
}

/// FVS plus greedy weighted set cover over C_F; O(lg n)-approximate.
pub fn approx_logn_weighted(instance: &Instance) -> Result<SolveResult> {
    approx_logn_weighted_with(instance, &ApproxOptions::default())
}

pub fn approx_logn_weighted_with(instance: &Instance, opts: &ApproxOptions) -> Result<SolveResult> {
    run(instance, Method::Greedy, opts)
}

/// FVS plus a Brönnimann–Goodrich hitting set of the tracker ranges of C_F;
/// O(lg OPT)-approximate. Unit weights only.
pub fn approx_logopt_unweighted(instance: &Instance, cfg: &VCConfig) -> Result<SolveResult> {
    if !instance.has_unit_weights() {
        return Err(Error::RequiresUnitWeights);
    }
    run(
        instance,
        Method::Bg,
        &ApproxOptions {
            full_reduction: true,
            vc: cfg.clone(),
        },
    )
}
