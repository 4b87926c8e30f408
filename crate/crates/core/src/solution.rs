use std::fmt;

use serde::Serialize;

use crate::approx::{approx_logn_weighted, approx_logopt_unweighted};
use crate::cover::VCConfig;
use crate::eptas::{eptas_solve, EptasParam};
use crate::error::Result;
use crate::exact::{exact_tracking_set, DEFAULT_EXACT_MAX_N};
use crate::graph::{Instance, VertexSet, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Greedy,
    Bg,
    Eptas,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Exact => "exact",
            Method::Greedy => "greedy",
            Method::Bg => "bg",
            Method::Eptas => "eptas",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(Method::Exact),
            "greedy" => Ok(Method::Greedy),
            "bg" => Ok(Method::Bg),
            "eptas" => Ok(Method::Eptas),
            _ => Err(format!("unknown method {s:?} (exact, greedy, bg, eptas)")),
        }
    }
}

/// Solver counters. Fields a method does not produce stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SolveStats {
    pub kernel_n: usize,
    pub kernel_m: usize,
    pub components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fvs_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cf_cycles: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cf_eecs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_ranges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regions: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    pub elapsed_ms: f64,
}

/// A tracking set of the input instance (original vertex ids).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    pub trackers: VertexSet,
    pub total_weight: Weight,
    /// A lower bound on the optimum size.
    pub lower_bound: usize,
    pub method: Method,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn size(&self) -> usize {
        self.trackers.len()
    }
}

/// Solver choice and knobs shared by the CLI and the benchmark harness.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub method: Method,
    /// Seed for the randomized hitting-set method.
    pub seed: u64,
    pub exact_max_n: usize,
    pub eptas: EptasParam,
}

impl SolveOptions {
    pub fn new(method: Method) -> Self {
        SolveOptions {
            method,
            seed: 0,
            exact_max_n: DEFAULT_EXACT_MAX_N,
            eptas: EptasParam::R(16),
        }
    }
}

pub fn solve(instance: &Instance, opts: &SolveOptions) -> Result<SolveResult> {
    match opts.method {
        Method::Exact => exact_tracking_set(instance, opts.exact_max_n),
        Method::Greedy => approx_logn_weighted(instance),
        Method::Bg => approx_logopt_unweighted(
            instance,
            &VCConfig {
                rng_seed: opts.seed,
                ..VCConfig::default()
            },
        ),
        Method::Eptas => Ok(eptas_solve(instance, &opts.eptas)?.result),
    }
}
