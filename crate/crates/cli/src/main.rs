use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use trackpaths::bench::{run_bench, write_csv, BenchOptions};
use trackpaths::eptas::EptasParam;
use trackpaths::format::{parse_instance, render_instance, render_weight};
use trackpaths::gen::default_corpus;
use trackpaths::kernel::{kernelize, SigmaConfig};
use trackpaths::rdivision::relaxed_r_division;
use trackpaths::reconstruct::reconstruct_path;
use trackpaths::reduce::reduce_all;
use trackpaths::track::{verify, Witness};
use trackpaths::{solve, Error, Instance, Method, SolveOptions, VertexSet, Weight};

/// Tracking sets for s-t paths.
#[derive(Parser)]
#[command(name = "trackpaths", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Instance file, or "-" for stdin.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Apply rules 1-3 and print the reduced instance.
    Reduce {
        #[command(flatten)]
        input: Input,
        /// Print the reduction trace as JSON instead.
        #[arg(long)]
        trace: bool,
    },
    /// Kernelize for budget k.
    Kernel {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// Compute a tracking set.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "exact")]
        method: Method,
        /// Region size for eptas.
        #[arg(long, conflicts_with = "eps")]
        r: Option<usize>,
        /// Target accuracy for eptas; turned into r and capped.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest reduced size the exact solver accepts.
        #[arg(long)]
        exact_max_n: Option<usize>,
    },
    /// Check a tracker set.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Comma-separated 1-indexed vertex ids; may be empty.
        #[arg(long, default_value = "", value_parser = id_list)]
        trackers: IdList,
    },
    /// Recover the s-t path with the given tracker sequence.
    Reconstruct {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "", value_parser = id_list)]
        trackers: IdList,
        /// Tracker ids in visiting order; may be empty.
        #[arg(long, default_value = "", value_parser = id_list)]
        sequence: IdList,
    },
    /// Relaxed r-division of the reduced instance.
    Rdiv {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: usize,
    },
    /// Run solvers over a corpus and write CSV.
    Bench {
        /// Instance files; the generated corpus when none are given.
        files: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "exact,greedy,bg,eptas")]
        methods: Vec<Method>,
        /// Seed for the generated corpus and the randomized method.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        r: usize,
        /// Output path; stdout by default.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

type IdList = Vec<usize>;

fn id_list(s: &str) -> Result<IdList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| format!("bad vertex id {x:?}")))
        .collect()
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => 2,
            Error::NotTrackingSet => 3,
            e if e.is_cap() => 4,
            _ => 1,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

fn read_text(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| fail(1, format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))
    }
}

fn load(path: &PathBuf) -> Result<Instance, Failure> {
    parse_instance(&read_text(path)?).map_err(|e| {
        let mut f = Failure::from(e);
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    })
}

/// 1-indexed ids from the command line to a vertex set.
fn vertex_set(instance: &Instance, ids: &[usize]) -> Result<VertexSet, Failure> {
    ids.iter().map(|&v| zero_based(instance, v)).collect()
}

fn zero_based(instance: &Instance, v: usize) -> Result<usize, Failure> {
    if v == 0 || v > instance.n() {
        return Err(fail(1, format!("vertex {v} out of range 1..={}", instance.n())));
    }
    Ok(v - 1)
}

fn one_based<'a>(ids: impl IntoIterator<Item = &'a usize>) -> Vec<usize> {
    ids.into_iter().map(|v| v + 1).collect()
}

fn weight_json(w: &Weight) -> Value {
    if w.is_integer() {
        json!(w.numer())
    } else {
        json!(render_weight(w))
    }
}

fn witness_json(w: &Option<Witness>) -> Value {
    match w {
        None => Value::Null,
        Some(Witness::PathCollision(p, q)) => json!({"paths": [one_based(p), one_based(q)]}),
        Some(Witness::UntrackedCycle(e)) => json!({
            "cycle": one_based(&e.cycle),
            "entry": e.entry + 1,
            "exit": e.exit + 1,
        }),
    }
}

/// Writes to stdout; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Reduce { input, trace } => {
            let instance = load(&input.file)?;
            let (reduced, tr) = reduce_all(&instance);
            if trace {
                print_json(&serde_json::to_value(&tr).expect("serializable"));
            } else {
                emit(&render_instance(&reduced));
            }
        }
        Command::Kernel { input, k } => {
            let instance = load(&input.file)?;
            let out = kernelize(&instance, k);
            let kernel = out.kernel_instance.as_ref();
            print_json(&json!({
                "k": k,
                "decision": out.decision,
                "reason": out.reason,
                "kernel_n": kernel.map(Instance::n),
                "kernel_m": kernel.map(Instance::m),
                "instance": kernel.map(render_instance),
            }));
        }
        Command::Solve {
            input,
            method,
            r,
            eps,
            seed,
            exact_max_n,
        } => {
            let instance = load(&input.file)?;
            let mut opts = SolveOptions::new(method);
            opts.seed = seed;
            if let Some(n) = exact_max_n {
                opts.exact_max_n = n;
            }
            if let Some(r) = r {
                opts.eptas = EptasParam::R(r);
            } else if let Some(eps) = eps {
                if !(eps > 0.0) {
                    return Err(fail(1, "--eps must be positive"));
                }
                opts.eptas = EptasParam::Eps {
                    eps,
                    sigma: SigmaConfig::planar(),
                };
            }
            let result = solve(&instance, &opts)?;
            let report = verify(&instance, &result.trackers)?;
            print_json(&json!({
                "trackers": one_based(&result.trackers),
                "size": result.size(),
                "weight": weight_json(&result.total_weight),
                "lower_bound": result.lower_bound,
                "method": result.method,
                "valid": report.valid,
                "stats": result.stats,
            }));
            if !report.valid {
                return Err(fail(3, "solver output failed verification"));
            }
        }
        Command::Verify { input, trackers } => {
            let instance = load(&input.file)?;
            let set = vertex_set(&instance, &trackers)?;
            let report = verify(&instance, &set)?;
            print_json(&json!({
                "trackers": one_based(&set),
                "valid": report.valid,
                "witness": witness_json(&report.witness),
            }));
            if !report.valid {
                return Err(fail(3, "not a tracking set"));
            }
        }
        Command::Reconstruct {
            input,
            trackers,
            sequence,
        } => {
            let instance = load(&input.file)?;
            let set = vertex_set(&instance, &trackers)?;
            let seq = sequence
                .iter()
                .map(|&v| zero_based(&instance, v))
                .collect::<Result<Vec<_>, _>>()?;
            let path = reconstruct_path(&instance, &set, &seq)?;
            print_json(&json!({ "path": one_based(&path) }));
        }
        Command::Rdiv { input, r } => {
            let instance = load(&input.file)?;
            let (reduced, trace) = reduce_all(&instance);
            let div = relaxed_r_division(&reduced.graph, r)?;
            // Report regions in input ids.
            let orig = |v: &usize| trace.representative[*v] + 1;
            let regions: Vec<Value> = div
                .regions
                .iter()
                .map(|reg| {
                    json!({
                        "vertices": reg.vertices.iter().map(orig).collect::<Vec<_>>(),
                        "boundary": reg.boundary.iter().map(orig).collect::<Vec<_>>(),
                        "edges": reg.edges.iter().map(|(u, v)| [orig(u), orig(v)]).collect::<Vec<_>>(),
                    })
                })
                .collect();
            print_json(&json!({
                "r": div.r,
                "kernel_n": reduced.n(),
                "kernel_m": reduced.m(),
                "regions": regions,
                "boundary_b": div.b,
                "alpha": div.alpha,
                "boundary_constant": div.boundary_constant,
            }));
        }
        Command::Bench {
            files,
            methods,
            seed,
            r,
            out,
        } => {
            let corpus = if files.is_empty() {
                default_corpus(seed)
            } else {
                files
                    .iter()
                    .map(|f| Ok((f.display().to_string(), load(f)?)))
                    .collect::<Result<Vec<_>, Failure>>()?
            };
            let mut opts = BenchOptions {
                methods,
                ..BenchOptions::default()
            };
            opts.solve.seed = seed;
            opts.solve.eptas = EptasParam::R(r);
            let rows = run_bench(&corpus, &opts);
            match out {
                Some(path) => {
                    let f = fs::File::create(&path).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
                    write_csv(&rows, io::BufWriter::new(f))?;
                }
                None => {
                    let mut buf = Vec::new();
                    write_csv(&rows, &mut buf)?;
                    emit(&String::from_utf8(buf).expect("csv is utf-8"));
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(n) = std::env::var("TRACKPATHS_THREADS") {
        match n.parse::<usize>() {
            Ok(n) if n > 0 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .expect("thread pool is configured once");
            }
            _ => eprintln!("warning: ignoring TRACKPATHS_THREADS={n:?}"),
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = io::stdout().flush();
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
