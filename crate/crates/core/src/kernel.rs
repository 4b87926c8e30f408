//! Rules 4 and 5, the quadratic kernel for k-tracking, kernel-size checkers,
//! and the max-degree lower bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{biconnected_components, GraphClass, Instance, Weight};
use crate::reduce::{is_reduced, reduce_all, ReductionTrace};

/// Edge-density constant of the excluded-minor class and the derived EPTAS
/// constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaConfig {
    pub sigma: Weight,
    /// Separator constant: separators of size at most c1·√n.
    pub c1: Weight,
    /// Linear kernel factor, at least 16σ²+8σ+1.
    pub c2: Weight,
    /// Boundary neighborhood factor, at least 9σ²+3σ.
    pub c3: Weight,
}

impl SigmaConfig {
    /// Smallest admissible c2, c3 for `sigma`; c1 = 3 covers the planar
    /// separator constant 2√2.
    pub fn for_sigma(sigma: Weight) -> Self {
        let c2 = sigma * sigma * 16 + sigma * 8 + 1;
        let c3 = sigma * sigma * 9 + sigma * 3;
        SigmaConfig {
            sigma,
            c1: Weight::from_integer(3),
            c2,
            c3,
        }
    }

    pub fn planar() -> Self {
        Self::for_sigma(Weight::from_integer(3))
    }

    pub fn is_valid(&self) -> bool {
        let s = self.sigma;
        s > Weight::from_integer(0)
            && self.c2 >= s * s * 16 + s * 8 + 1
            && self.c3 >= s * s * 9 + s * 3
    }

    /// Vertex bound (16σ²+8σ+1)·opt − 5.
    pub fn linear_vertex_bound(&self, opt: usize) -> Weight {
        let s = self.sigma;
        (s * s * 16 + s * 8 + 1) * Weight::from_integer(opt as i64) - 5
    }

    /// Edge bound (20σ²+11σ)·opt − 6.
    pub fn linear_edge_bound(&self, opt: usize) -> Weight {
        let s = self.sigma;
        (s * s * 20 + s * 11) * Weight::from_integer(opt as i64) - 6
    }
}

pub fn quadratic_vertex_bound(k: usize) -> i64 {
    let k = k as i64;
    4 * k * k + 9 * k - 5
}

pub fn quadratic_edge_bound(k: usize) -> i64 {
    let k = k as i64;
    5 * k * k + 11 * k - 6
}

fn non_cut_max_degree(instance: &Instance) -> usize {
    let g = &instance.graph;
    if g.m() == 0 {
        return 0;
    }
    let cuts = biconnected_components(g)
        .map(|d| d.cut_vertices)
        .unwrap_or_default();
    (0..g.n())
        .filter(|v| cuts.binary_search(v).is_err())
        .map(|v| g.degree(v))
        .max()
        .unwrap_or(0)
}

/// max(0, δ − 2) over non-cut vertices of a reduced instance.
pub fn lower_bound_maxdeg(instance: &Instance) -> Result<usize> {
    if !is_reduced(instance) {
        return Err(Error::NotReduced);
    }
    Ok(non_cut_max_degree(instance).saturating_sub(2))
}

/// The max-degree bound of the reduced form of any instance.
pub fn lower_bound(instance: &Instance) -> usize {
    non_cut_max_degree(&reduce_all(instance).0).saturating_sub(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    Reject,
}

/// Rejects when some non-cut vertex has degree above k + 2.
pub fn rule4(instance: &Instance, k: usize) -> Verdict {
    if non_cut_max_degree(instance) > k + 2 {
        Verdict::Reject
    } else {
        Verdict::Accept
    }
}

/// Rejects when |V| > 4k²+9k−5 or |E| > 5k²+11k−6.
pub fn rule5(instance: &Instance, k: usize) -> Verdict {
    if instance.n() as i64 > quadratic_vertex_bound(k) || instance.m() as i64 > quadratic_edge_bound(k) {
        Verdict::Reject
    } else {
        Verdict::Accept
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Kernel,
    TrivialNo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    Rule4,
    Rule5,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelOutcome {
    pub decision: Decision,
    #[serde(skip)]
    pub kernel_instance: Option<Instance>,
    pub trace: ReductionTrace,
    pub k: usize,
    pub reason: Option<RejectReason>,
}

/// Rules 1–3 to a fixpoint, then Rule 4, then Rule 5. A kernel without any
/// cycle needs no trackers and is returned as is.
pub fn kernelize(instance: &Instance, k: usize) -> KernelOutcome {
    let (kernel, trace) = reduce_all(instance);
    let reject = |reason| KernelOutcome {
        decision: Decision::TrivialNo,
        kernel_instance: None,
        trace: trace.clone(),
        k,
        reason: Some(reason),
    };
    if !kernel.is_trivial() {
        if rule4(&kernel, k) == Verdict::Reject {
            return reject(RejectReason::Rule4);
        }
        if rule5(&kernel, k) == Verdict::Reject {
            return reject(RejectReason::Rule5);
        }
    }
    KernelOutcome {
        decision: Decision::Kernel,
        kernel_instance: Some(kernel),
        trace: trace.clone(),
        k,
        reason: None,
    }
}

/// `None` marks a bound that does not apply (opt = 0, or a linear bound on a
/// class without a configured σ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SizeReport {
    pub quadratic_vertices: Option<bool>,
    pub quadratic_edges: Option<bool>,
    pub linear_vertices: Option<bool>,
    pub linear_edges: Option<bool>,
}

/// Checks the kernel size bounds for a reduced instance with optimum `opt`.
/// Linear bounds are evaluated for planar-declared instances with `cfg`.
pub fn check_size_bounds(instance: &Instance, opt: usize, cfg: &SigmaConfig) -> SizeReport {
    if opt == 0 {
        return SizeReport {
            quadratic_vertices: None,
            quadratic_edges: None,
            linear_vertices: None,
            linear_edges: None,
        };
    }
    let n = instance.n() as i64;
    let m = instance.m() as i64;
    let planar = instance.class == GraphClass::Planar;
    SizeReport {
        quadratic_vertices: Some(n <= quadratic_vertex_bound(opt)),
        quadratic_edges: Some(m <= quadratic_edge_bound(opt)),
        linear_vertices: planar.then(|| Weight::from_integer(n) <= cfg.linear_vertex_bound(opt)),
        linear_edges: planar.then(|| Weight::from_integer(m) <= cfg.linear_edge_bound(opt)),
    }
}
