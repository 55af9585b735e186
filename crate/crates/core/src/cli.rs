//! The `satlab` command line.
//!
//! Analysis commands read graph6 from `--input` (or stdin) and run once per
//! non-empty line; multi-line input gives one JSON document per line.
//! Exit status: 0 on success, 1 when a module precondition fails, 2 on
//! usage or parse errors.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::constructions::{by_name, c5_chord, join_pattern_r, CONSTRUCTION_NAMES};
use crate::decomposition::{audit_lemmas, reduce_preserving_triangle};
use crate::error::Error;
use crate::graph::{Graph, VertexSet};
use crate::graph6::{from_graph6, parse_lines, to_graph6};
use crate::optimizer::{optimize, DensityProgram, SolverConfig};
use crate::oracle::{enumerate_k4free, f_table};
use crate::packing::{PackingOptions, DEFAULT_EXACT_LIMIT, DEFAULT_NODE_BUDGET};
use crate::rational::{frac, Rational};
use crate::saturation::{classify_nonedges, count_saturating};

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "SATLAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "satlab", version, about = "Count, construct and certify K_r-saturating edges")]
pub struct Cli {
    /// Worker threads; overrides SATLAB_THREADS.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Graph6,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of K_r-saturating non-edges.
    Count {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        r: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Per-pair verdicts for every non-edge.
    Classify {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        r: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Named construction as graph6.
    Construct {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(CONSTRUCTION_NAMES))]
        name: String,
        #[arg(long)]
        n: Option<usize>,
        /// Removed V4-V5 pairs for Hminus.
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// Clique order for joinpattern.
        #[arg(long, default_value_t = 4)]
        r: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Triangle-packing decomposition and lemma audits.
    Audit {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        exact_limit: usize,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact f(n, e) by exhaustive enumeration (n <= 9).
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        /// Also write one graph6 line per isomorphism class here.
        #[arg(long)]
        classes_out: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Minimize saturating density over weighted blow-ups of a pattern.
    Optimize {
        /// `c5chord`, `edge`, `joinpattern` (uses --r) or a graph6 string.
        #[arg(long, default_value = "c5chord")]
        pattern: String,
        #[arg(long, default_value_t = 4)]
        r: usize,
        /// Comma-separated required parts; default: the first (r-1)-clique found.
        #[arg(long)]
        support: Option<String>,
        /// Edge-density floor as `p/q`; default (r-3)/(2(r-2)).
        #[arg(long)]
        floor: Option<String>,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 3000)]
        max_iters: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Drops one edge while keeping a triangle (graph6 out).
    Reduce {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Failure with its exit status.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidArgument(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure {
        code: 1,
        message: e.to_string(),
    }
}

/// Rounds every float to 12 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = num.as_f64().expect("f64");
            let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float");
            if let Some(n) = serde_json::Number::from_f64(rounded) {
                *num = n;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// One JSON line with rounded floats.
pub fn json_line<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("serializable");
    round_floats(&mut v);
    let mut s = serde_json::to_string(&v).expect("serializable");
    s.push('\n');
    s
}

fn read_graphs(input: &Option<PathBuf>, stdin: &mut (dyn Read + Send)) -> Result<Vec<Graph>, Failure> {
    let text = match input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).map_err(io_failure)?,
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(io_failure)?;
            s
        }
    };
    let graphs = parse_lines(&text)?;
    if graphs.is_empty() {
        return Err(usage("no graph6 input"));
    }
    Ok(graphs)
}

fn per_graph<F>(graphs: &[Graph], mut f: F) -> Result<String, Failure>
where
    F: FnMut(&Graph) -> Result<String, Failure>,
{
    let mut out = String::new();
    for g in graphs {
        out.push_str(&f(g)?);
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Result<Rational, Failure> {
    let bad = || usage(format!("expected a rational p/q, got {s:?}"));
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: i128 = p.trim().parse().map_err(|_| bad())?;
    let q: i128 = q.trim().parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(frac(p, q))
}

fn pattern_by_name(name: &str, r: usize) -> Result<Graph, Failure> {
    Ok(match name {
        "c5chord" => c5_chord(),
        "edge" => Graph::from_edges(2, &[(0, 1)])?,
        "joinpattern" => join_pattern_r(r)?,
        other => from_graph6(other)?,
    })
}

fn execute(command: Command, stdin: &mut (dyn Read + Send)) -> Result<(String, Option<PathBuf>), Failure> {
    Ok(match command {
        Command::Count { input, r, output } => {
            let graphs = read_graphs(&input, stdin)?;
            (per_graph(&graphs, |g| Ok(json_line(&count_saturating(g, r)?)))?, output)
        }
        Command::Classify { input, r, format, output } => {
            let graphs = read_graphs(&input, stdin)?;
            let multi = graphs.len() > 1;
            let mut out = String::new();
            if format == Format::Csv && multi {
                out.push_str("graph,u,v,saturating\n");
            }
            for (i, g) in graphs.iter().enumerate() {
                let report = classify_nonedges(g, r)?;
                match format {
                    Format::Json => out.push_str(&json_line(&report)),
                    Format::Csv if multi => {
                        for (u, v, s) in report.classified.as_deref().unwrap_or_default() {
                            out.push_str(&format!("{i},{u},{v},{s}\n"));
                        }
                    }
                    Format::Csv => out.push_str(&report.to_csv().unwrap_or_default()),
                    Format::Graph6 => return Err(usage("classify writes csv or json")),
                }
            }
            (out, output)
        }
        Command::Construct { name, n, k, r, output } => {
            let g = by_name(&name, n, k, r)?;
            (format!("{}\n", to_graph6(&g)), output)
        }
        Command::Audit {
            input,
            exact_limit,
            node_budget,
            output,
        } => {
            let graphs = read_graphs(&input, stdin)?;
            let opts = PackingOptions { exact_limit, node_budget };
            (per_graph(&graphs, |g| Ok(json_line(&audit_lemmas(g, opts)?)))?, output)
        }
        Command::Oracle { n, e, classes_out, output } => {
            if let Some(path) = classes_out {
                let mut lines = String::new();
                for g in enumerate_k4free(n, e)? {
                    lines.push_str(&to_graph6(&g));
                    lines.push('\n');
                }
                fs::write(path, lines).map_err(io_failure)?;
            }
            (json_line(&f_table(n, e)?), output)
        }
        Command::Optimize {
            pattern,
            r,
            support,
            floor,
            restarts,
            max_iters,
            tolerance,
            seed,
            output,
        } => {
            let p = pattern_by_name(&pattern, r)?;
            let required = match support {
                Some(list) => {
                    let parts = list
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| s.trim().parse::<usize>().map_err(|_| usage(format!("bad support entry {s:?}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    VertexSet::from_vertices(p.n(), parts)?
                }
                None => VertexSet::from_vertices(p.n(), p.find_clique(r - 1).unwrap_or_default())?,
            };
            let mut prog = DensityProgram::new(p, r, required)?.with_config(SolverConfig {
                restarts,
                max_iters,
                tolerance,
                seed,
            });
            if let Some(f) = floor {
                prog = prog.with_floor(parse_rational(&f)?);
            }
            (json_line(&optimize(&prog)?), output)
        }
        Command::Reduce { input, output } => {
            let graphs = read_graphs(&input, stdin)?;
            (per_graph(&graphs, |g| Ok(format!("{}\n", to_graph6(&reduce_preserving_triangle(g)?))))?, output)
        }
    })
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if let Some(k) = flag {
        return Ok(Some(k));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut (dyn Read + Send), stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return e.exit_code();
        }
    };
    let result = thread_count(cli.threads).and_then(|threads| match threads {
        Some(0) => Err(usage("thread count must be at least 1")),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Failure {
                code: 1,
                message: e.to_string(),
            })?
            .install(|| execute(cli.command, stdin)),
        None => execute(cli.command, stdin),
    });
    let written = result.and_then(|(text, path)| match path {
        Some(p) => fs::write(p, text).map_err(io_failure),
        None => stdout.write_all(text.as_bytes()).map_err(io_failure),
    });
    match written {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
