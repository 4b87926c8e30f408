//! Benchmark harness: runs solvers over a named corpus and writes CSV rows.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::exact_tracking_set;
use crate::graph::{Instance, Weight};
use crate::solution::{solve, Method, SolveOptions};

pub const HEADER: [&str; 16] = [
    "instance",
    "n",
    "m",
    "class",
    "method",
    "status",
    "size",
    "weight",
    "lower_bound",
    "oracle",
    "ratio",
    "kernel_n",
    "kernel_m",
    "cf_eecs",
    "boundary_b",
    "wall_ms",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub class: String,
    pub method: Method,
    /// "ok", "skipped:cap", or "error:<message>".
    pub status: String,
    pub size: Option<usize>,
    pub weight: Option<String>,
    pub lower_bound: Option<usize>,
    /// Optimum weight, when the exact solver fits.
    pub oracle: Option<String>,
    /// weight / oracle
    pub ratio: Option<f64>,
    pub kernel_n: Option<usize>,
    pub kernel_m: Option<usize>,
    pub cf_eecs: Option<usize>,
    pub boundary_b: Option<usize>,
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub methods: Vec<Method>,
    pub solve: SolveOptions,
    /// Largest Rule-1-reduced size for which the oracle optimum is computed.
    pub oracle_max_n: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            methods: vec![Method::Exact, Method::Greedy, Method::Bg, Method::Eptas],
            solve: SolveOptions::new(Method::Exact),
            oracle_max_n: 14,
        }
    }
}

fn ratio(w: Weight, opt: Weight) -> Option<f64> {
    let f = |x: Weight| *x.numer() as f64 / *x.denom() as f64;
    if opt == Weight::from_integer(0) {
        (w == opt).then_some(1.0)
    } else {
        Some(f(w) / f(opt))
    }
}

fn rows_for(name: &str, instance: &Instance, opts: &BenchOptions) -> Vec<BenchRow> {
    let oracle = exact_tracking_set(instance, opts.oracle_max_n)
        .ok()
        .map(|r| r.total_weight);
    opts.methods
        .iter()
        .map(|&method| {
            let mut row = BenchRow {
                instance: name.to_string(),
                n: instance.n(),
                m: instance.m(),
                class: instance.class.to_string(),
                method,
                status: "ok".into(),
                size: None,
                weight: None,
                lower_bound: None,
                oracle: oracle.map(|w| crate::format::render_weight(&w)),
                ratio: None,
                kernel_n: None,
                kernel_m: None,
                cf_eecs: None,
                boundary_b: None,
                wall_ms: None,
            };
            let so = SolveOptions {
                method,
                ..opts.solve.clone()
            };
            match solve(instance, &so) {
                Ok(r) => {
                    row.size = Some(r.size());
                    row.weight = Some(crate::format::render_weight(&r.total_weight));
                    row.lower_bound = Some(r.lower_bound);
                    row.ratio = oracle.and_then(|o| ratio(r.total_weight, o));
                    row.kernel_n = Some(r.stats.kernel_n);
                    row.kernel_m = Some(r.stats.kernel_m);
                    row.cf_eecs = r.stats.cf_eecs;
                    row.boundary_b = r.stats.boundary_b;
                    row.wall_ms = Some(r.stats.elapsed_ms);
                }
                Err(e) if e.is_cap() => row.status = "skipped:cap".into(),
                Err(e) => row.status = format!("error:{e}"),
            }
            row
        })
        .collect()
}

/// One row per (instance, method), in corpus order.
pub fn run_bench(corpus: &[(String, Instance)], opts: &BenchOptions) -> Vec<BenchRow> {
    corpus
        .par_iter()
        .map(|(name, inst)| rows_for(name, inst, opts))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> Result<()> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}
