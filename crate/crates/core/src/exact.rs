//! Exact minimum tracking sets for small instances.
//!
//! The search is a hitting-set branch and bound over "tracker ranges"
//! C ∖ {s', t'} of entry-exit cycles. Ranges are generated lazily: each
//! candidate optimum is checked by the cycle verifier, and an untracked cycle
//! it reports becomes a new range.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{Instance, VertexSet};
use crate::hitting::{elements, mask_of, solve_lazily};
use crate::kernel::lower_bound;
use crate::reduce::rule1;
use crate::solution::{Method, SolveResult, SolveStats};
use crate::track::{verify, verify_by_cycles, Witness};

pub const DEFAULT_EXACT_MAX_N: usize = 18;

/// Minimum-weight tracking set; ties by cardinality, then the
/// lexicographically smallest set. The cap applies to the vertices that lie
/// on some s-t path.
pub fn exact_tracking_set(instance: &Instance, max_n: usize) -> Result<SolveResult> {
    let start = Instant::now();
    let (red, trace) = rule1(instance);
    if red.n() > max_n.min(64) {
        return Err(Error::CapExceeded {
            what: "exact solver",
            size: red.n(),
            cap: max_n.min(64),
        });
    }
    let (local, generated) = if red.is_trivial() {
        (VertexSet::new(), 0)
    } else {
        let outcome = solve_lazily(&red.weights, Vec::new(), |m| {
            let set: VertexSet = elements(m).collect();
            let report = verify_by_cycles(&red, &set)?;
            Ok(match report.witness {
                Some(Witness::UntrackedCycle(eec)) => Some(mask_of(eec.trackers())),
                Some(Witness::PathCollision(..)) => unreachable!("cycle verifier"),
                None => None,
            })
        })?;
        let (m, generated) = outcome.ok_or(Error::NotRule1Reduced("cycle without trackers".into()))?;
        (elements(m).collect(), generated)
    };
    let trackers = trace.lift(&local)?;
    if !verify(instance, &trackers)?.valid {
        return Err(Error::NotTrackingSet);
    }
    Ok(SolveResult {
        total_weight: instance.weight_of(&trackers),
        trackers,
        lower_bound: lower_bound(instance),
        method: Method::Exact,
        stats: SolveStats {
            kernel_n: red.n(),
            kernel_m: red.m(),
            components: 1,
            generated_ranges: Some(generated),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            ..SolveStats::default()
        },
    })
}

/// Whether some tracking set has at most `k` vertices.
pub fn exact_decision(instance: &Instance, k: usize, max_n: usize) -> Result<bool> {
    Ok(exact_tracking_set(&instance.unweighted(), max_n)?.size() <= k)
}
