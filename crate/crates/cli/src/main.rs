//! `knrs`: command-line front end for the step-kernel library.
//!
//! Exit codes: 0 holds/pass, 1 violated/fail, 2 usage or parse error, 3 resource cap.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use knrs_core::cones::{cut_norm, is_copositive, is_locally_dense, is_psd, spectrum};
use knrs_core::graphs::{
    self, clique, cycle, glue, h0, is_theta, parse_graph, parse_graph_compact, path, star,
    subdivide, theta, to_compact, wheel, GlueSpec, Graph,
};
use knrs_core::homdensity::{conditioned_density, density, weighted_density, Assignment};
use knrs_core::kernels::{kernel_from_json, kernel_to_json, resolve_named};
use knrs_core::scalar::{format_decimal, format_rational, int, parse_rational, Rational};
use knrs_core::search::{
    certify_counterexample, minimize_density, sweep_candidates, sweep_graphs, SearchReport,
};
use knrs_core::suite::{self, SuiteConfig};
use knrs_core::{BlockFunction, Error, Kernel};

const DECIMALS: usize = 12;

#[derive(Parser)]
#[command(name = "knrs", version, about = "Exact step-kernel calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homomorphism density t(H, W), exact and as a decimal.
    Density {
        graph: String,
        kernel: String,
        /// Pin vertices to blocks, e.g. `0=1,2=0`.
        #[arg(long, conflicts_with = "weights")]
        fix: Option<String>,
        /// Weight every vertex by a block function, e.g. `1,0,0,0`.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Decide a cone membership; prints the verdict as JSON.
    Check {
        kind: CheckKind,
        kernel: String,
        #[arg(long)]
        p: Option<String>,
    },
    /// Build a graph.
    Construct {
        #[command(subcommand)]
        op: ConstructOp,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Transform a kernel.
    Kernel {
        #[command(subcommand)]
        op: KernelOp,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Eigenvalues of the kernel operator (floating point, advisory).
    Spectrum { kernel: String },
    /// Exact cut norm.
    Cutnorm { kernel: String },
    /// Densities of every connected graph with minimum degree 2 on up to `max-v` vertices.
    Sweep {
        kernel: String,
        #[arg(long, default_value_t = 6)]
        max_v: usize,
        /// Print only the lowest `limit` densities.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Search for a PSD 0-regular kernel giving a graph small density, then certify it.
    Search {
        /// Graph to search on; omit with `--sweep`.
        #[arg(required_unless_present = "sweep")]
        graph: Option<String>,
        /// Search every non-theta sweep candidate on `max-v` vertices instead.
        #[arg(long, conflicts_with = "graph")]
        sweep: bool,
        #[arg(long, default_value_t = 6)]
        max_v: usize,
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a search report exactly; exit 0 iff it certifies a negative density.
    Certify { report: PathBuf },
    /// Run the reproduction suite; exit 0 iff every check passes.
    PaperSuite {
        /// Values of p for the four-block kernel (repeat or comma-separate).
        #[arg(long, value_delimiter = ',')]
        p: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replace the 5-block kernel (file or built-in name).
        #[arg(long)]
        kernel_5x5: Option<String>,
        /// Run only these checks, numbered 1 to 7.
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=7))]
        only: Vec<u8>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Psd,
    Copositive,
    LocallyDense,
    Regular,
}

#[derive(Args)]
struct GraphOut {
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = GraphFormat::Json)]
    format: GraphFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Text,
    Compact,
}

#[derive(Subcommand)]
enum ConstructOp {
    /// `|V(H2)|` copies of H1 sharing the independent set I, with H2 on the copies of a.
    Glue {
        #[arg(long)]
        h1: String,
        #[arg(long, value_delimiter = ',')]
        i: Vec<usize>,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        h2: String,
    },
    /// Replace every edge by a path with `ell` internal vertices.
    Subdivide {
        graph: String,
        #[arg(long)]
        ell: usize,
    },
    /// Two hubs joined by paths with the given numbers of internal vertices.
    Theta {
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<usize>,
    },
    Clique {
        #[arg(long)]
        k: usize,
    },
    Cycle {
        #[arg(long)]
        k: usize,
    },
    Wheel {
        #[arg(long)]
        k: usize,
    },
    H0,
    /// Re-emit a graph, e.g. to change its format.
    Convert { graph: String },
}

#[derive(Subcommand)]
enum KernelOp {
    /// Operator power W∘W∘…∘W.
    Opow {
        kernel: String,
        #[arg(long)]
        k: usize,
    },
    /// Tensor product with `other`, or the `k`-th tensor power.
    Tensor {
        kernel: String,
        #[arg(long, conflicts_with = "k")]
        other: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    Hadamard {
        kernel: String,
        #[arg(long)]
        other: String,
    },
    /// W + c.
    Shift {
        kernel: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Move to the block measures `μ_i·w_i`, renormalized; blocks of weight 0 are dropped.
    Reweight {
        kernel: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<String>,
    },
}

/// Why a command stopped without a verdict.
enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

/// `println!` that exits quietly when stdout is closed, e.g. piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn verdict(holds: bool) -> ExitCode {
    if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            out!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn rational(text: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(text)?)
}

/// A built-in kernel name (`paper-4x4@1/5`, `paper-5x5`, `constant@1/2`) or a JSON file.
fn load_kernel(spec: &str) -> Result<Kernel, Failure> {
    if let Some(named) = resolve_named(spec) {
        return Ok(named?);
    }
    let file = Path::new(spec);
    if !file.is_file() {
        return Err(Failure::Usage(format!("no kernel file or built-in kernel {spec:?}")));
    }
    Ok(kernel_from_json(&read(file)?)?)
}

/// A graph file, a compact `n:u-v,…` string, or a name: `kN`, `cN`, `pN` (N edges),
/// `wN`, `starN`, `diamond`, `h0`.
fn load_graph(spec: &str) -> Result<Graph, Failure> {
    let file = Path::new(spec);
    if file.is_file() {
        return Ok(parse_graph(&read(file)?)?);
    }
    if spec.contains(':') {
        return Ok(parse_graph_compact(spec)?);
    }
    let lower = spec.to_ascii_lowercase();
    let split = lower.find(|c: char| c.is_ascii_digit()).unwrap_or(lower.len());
    let (head, digits) = lower.split_at(split);
    let num = || {
        digits
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("unknown graph {spec:?}")))
    };
    let graph = match head {
        "k" => clique(num()?)?,
        "c" => cycle(num()?)?,
        "p" => path(num()?),
        "w" => wheel(num()?)?,
        "star" => star(num()?),
        "h" if digits == "0" => h0(),
        "diamond" if digits.is_empty() => Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])?,
        _ => return Err(Failure::Usage(format!("no graph file or named graph {spec:?}"))),
    };
    Ok(graph)
}

fn render_graph(graph: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Json => graphs::to_json(graph),
        GraphFormat::Text => graphs::to_text(graph),
        GraphFormat::Compact => to_compact(graph),
    }
}

fn exact_line(value: &Rational) -> String {
    format!("{} {}", format_rational(value), format_decimal(value, DECIMALS))
}

fn parse_fix(text: &str) -> Result<Assignment, Failure> {
    let mut pairs = Vec::new();
    for part in text.split(',').filter(|p| !p.is_empty()) {
        let bad = || Failure::Usage(format!("--fix expects vertex=block pairs, found {part:?}"));
        let (v, b) = part.split_once('=').ok_or_else(bad)?;
        pairs.push((v.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?));
    }
    Ok(Assignment::new(pairs))
}

fn block_function(items: &[String]) -> Result<BlockFunction<Rational>, Failure> {
    Ok(BlockFunction::new(items.iter().map(|s| rational(s.trim())).collect::<Result<_, _>>()?))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Density {
            graph,
            kernel,
            fix,
            weights,
        } => {
            let graph = load_graph(&graph)?;
            let kernel = load_kernel(&kernel)?;
            let value = match (fix, weights) {
                (Some(f), _) => conditioned_density(&graph, &kernel, &parse_fix(&f)?)?,
                (None, Some(w)) => {
                    let items: Vec<String> = w.split(',').map(str::to_owned).collect();
                    weighted_density(&graph, &kernel, &block_function(&items)?)?
                }
                (None, None) => density(&graph, &kernel)?,
            };
            out!("{}", exact_line(&value));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { kind, kernel, p } => {
            let kernel = load_kernel(&kernel)?;
            let p = p.as_deref().map(rational).transpose()?;
            let need_p = || p.clone().ok_or_else(|| Failure::Usage("this check needs --p".into()));
            match kind {
                CheckKind::Psd => {
                    let v = is_psd(&kernel);
                    out!("{}", v.to_json());
                    Ok(verdict(v.holds))
                }
                CheckKind::Copositive => {
                    let v = is_copositive(&kernel)?;
                    out!("{}", v.to_json());
                    Ok(verdict(v.holds))
                }
                CheckKind::LocallyDense => {
                    let v = is_locally_dense(&kernel, &need_p()?)?;
                    out!("{}", v.to_json());
                    Ok(verdict(v.holds))
                }
                CheckKind::Regular => {
                    let p = need_p()?;
                    let holds = kernel.is_regular(&p);
                    let degrees: Vec<String> =
                        kernel.degree_function().values().iter().map(format_rational).collect();
                    out!("{}", json!({"holds": holds, "degrees": degrees}));
                    Ok(verdict(holds))
                }
            }
        }
        Command::Construct { op, out } => {
            let graph = match op {
                ConstructOp::Glue { h1, i, a, h2 } => {
                    glue(&load_graph(&h1)?, &GlueSpec::new(i, a), &load_graph(&h2)?)?
                }
                ConstructOp::Subdivide { graph, ell } => subdivide(&load_graph(&graph)?, ell)?,
                ConstructOp::Theta { s } => theta(&s)?,
                ConstructOp::Clique { k } => clique(k)?,
                ConstructOp::Cycle { k } => cycle(k)?,
                ConstructOp::Wheel { k } => wheel(k)?,
                ConstructOp::H0 => h0(),
                ConstructOp::Convert { graph } => load_graph(&graph)?,
            };
            emit(&render_graph(&graph, out.format), out.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Kernel { op, out } => {
            let result = match op {
                KernelOp::Opow { kernel, k } => load_kernel(&kernel)?.operator_power(k)?,
                KernelOp::Tensor { kernel, other, k } => {
                    let w = load_kernel(&kernel)?;
                    match (other, k) {
                        (Some(o), _) => w.tensor_product(&load_kernel(&o)?),
                        (None, Some(k)) => w.tensor_power(k)?,
                        (None, None) => w.tensor_product(&w),
                    }
                }
                KernelOp::Hadamard { kernel, other } => {
                    load_kernel(&kernel)?.hadamard_product(&load_kernel(&other)?)?
                }
                KernelOp::Shift { kernel, c } => load_kernel(&kernel)?.shift(&rational(&c)?),
                KernelOp::Reweight { kernel, weights } => {
                    load_kernel(&kernel)?.reweight(&block_function(&weights)?)?
                }
            };
            emit(&kernel_to_json(&result), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum { kernel } => {
            let report = spectrum(&load_kernel(&kernel)?)?;
            out!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Cutnorm { kernel } => {
            out!("{}", exact_line(&cut_norm(&load_kernel(&kernel)?)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Sweep {
            kernel,
            max_v,
            limit,
        } => {
            let rows = sweep_graphs(&load_kernel(&kernel)?, max_v)?;
            let negative = rows.iter().filter(|(_, d)| d < &int(0)).count();
            for (graph, value) in rows.iter().take(limit.unwrap_or(usize::MAX)) {
                out!("{}\t{}", exact_line(value), to_compact(graph));
            }
            eprintln!("{} graphs, {negative} with negative density", rows.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            graph,
            sweep,
            max_v,
            n,
            restarts,
            steps,
            seed,
            out,
        } => {
            let graphs: Vec<Graph> = if sweep {
                sweep_candidates(max_v)?
                    .into_iter()
                    .filter(|g| g.vertex_count() == max_v && !is_theta(g))
                    .collect()
            } else {
                vec![load_graph(graph.as_deref().expect("clap requires a graph"))?]
            };
            let mut reports = Vec::with_capacity(graphs.len());
            for g in &graphs {
                let report = certify_counterexample(&minimize_density(g, n, restarts, steps, seed)?)?;
                eprintln!(
                    "{}\tobjective {:.6e}\tcertified {}",
                    to_compact(g),
                    report.best_objective,
                    report.certified
                );
                reports.push(report);
            }
            let any = reports.iter().any(|r| r.certified);
            let text = if sweep {
                serde_json::to_string_pretty(&reports).expect("reports serialize")
            } else {
                reports[0].to_json()
            };
            emit(&text, out.as_deref())?;
            Ok(verdict(any))
        }
        Command::Certify { report } => {
            let report = SearchReport::from_json(&read(&report)?)?;
            let checked = certify_counterexample(&report)?;
            out!("{}", checked.to_json());
            Ok(verdict(checked.certified))
        }
        Command::PaperSuite {
            p,
            seed,
            kernel_5x5,
            only,
            json,
        } => {
            let mut config = SuiteConfig {
                seed,
                ..SuiteConfig::default()
            };
            if !p.is_empty() {
                config.ps = p.iter().map(|s| rational(s.trim())).collect::<Result<_, _>>()?;
            }
            if let Some(k) = kernel_5x5 {
                config.kernel_5x5 = load_kernel(&k)?;
            }
            let mut all = true;
            let mut rows = Vec::new();
            for (i, check) in suite::CHECKS.iter().enumerate() {
                if !only.is_empty() && !only.contains(&(i as u8 + 1)) {
                    continue;
                }
                let r = check(&config);
                all &= r.passed;
                if json {
                    rows.push(r.to_json());
                } else {
                    out!("{}", r.line());
                    for f in &r.failures {
                        out!("    {f}");
                    }
                }
            }
            if json {
                out!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
            } else {
                out!("{}", if all { "all checks passed" } else { "some checks failed" });
            }
            Ok(verdict(all))
        }
    }
}
