use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use cluster_scatter::exchange::{
    certify_acyclic, enumerate_graph, ExchangeError, FixedData, OrientedExchangeGraph,
};
use cluster_scatter::group::StructureAlgebra;
use cluster_scatter::io::{
    graph_from_json, graph_to_dot, graph_to_json, CrossingSequenceJson, FixedDataJson, GraphJson, IoError,
};
use cluster_scatter::scattering::{self, svg, ScatteringError};

#[derive(Parser)]
#[command(name = "cluster-scatter", version, about = "Oriented exchange graphs and truncated cluster scattering diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the oriented exchange graph.
    Explore {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
        /// Also write the DOT rendering here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Topological order of a graph (graph JSON, or fixed data to enumerate).
    Certify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// Check path-ordered products around a cycle basis of the graph.
    Consistency {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        budget: Budget,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        level: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Lowest-degree witness for an all-green crossing sequence.
    Obstruct {
        /// Crossing sequence JSON (`-` for stdin).
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Consistent completion of a rank-2 diagram.
    Scatter2 {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        level: u32,
        #[command(flatten)]
        out: Output,
        /// Also write an SVG drawing here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// SVG of the rank-2 g-vector fan.
    EmitFan {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Input JSON file (`-` for stdin).
    #[arg(required_unless_present = "b", conflicts_with_all = ["b", "delta"])]
    input: Option<PathBuf>,
    /// Inline exchange matrix, e.g. `[[0,1],[-1,0]]`.
    #[arg(long = "b", requires = "delta")]
    b: Option<String>,
    /// Inline Δ, e.g. `[1,1]`.
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Args)]
struct Budget {
    #[arg(long, default_value_t = 12)]
    max_depth: usize,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_vertices: u64,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file; standard output when omitted.
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

struct Failure {
    code: String,
    detail: serde_json::Value,
    exit: u8,
}

impl Failure {
    fn usage(detail: impl Into<String>) -> Self {
        Failure { code: "Usage".into(), detail: json!(detail.into()), exit: 2 }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Failure { code: "IoError".into(), detail: json!(format!("{}: {e}", path.display())), exit: 1 }
    }
}

fn domain(code: &str, detail: impl Into<serde_json::Value>) -> Failure {
    Failure { code: code.into(), detail: detail.into(), exit: 1 }
}

impl From<ExchangeError> for Failure {
    fn from(e: ExchangeError) -> Self {
        match &e {
            ExchangeError::CycleFound(keys) => {
                domain(e.code(), json!({"message": e.to_string(), "cycle": keys.iter().map(|k| k.label()).collect::<Vec<_>>()}))
            }
            _ => domain(e.code(), e.to_string()),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        domain(e.code(), e.to_string())
    }
}

impl From<ScatteringError> for Failure {
    fn from(e: ScatteringError) -> Self {
        domain(e.code(), e.to_string())
    }
}

impl From<cluster_scatter::group::AlgebraError> for Failure {
    fn from(e: cluster_scatter::group::AlgebraError) -> Self {
        domain(e.code(), e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::io(path, e))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::io(path, e))
    }
}

enum Loaded {
    Data(FixedData),
    Graph(OrientedExchangeGraph),
}

fn load(input: &InputArgs, allow_graph: bool) -> Result<Loaded, Failure> {
    let value: serde_json::Value = match (&input.input, &input.b, &input.delta) {
        (Some(path), _, _) => serde_json::from_str(&read_text(path)?).map_err(IoError::from)?,
        (None, Some(b), Some(d)) => {
            let b: serde_json::Value = serde_json::from_str(b).map_err(IoError::from)?;
            let d: serde_json::Value = serde_json::from_str(d).map_err(IoError::from)?;
            json!({"B": b, "delta": d})
        }
        _ => return Err(Failure::usage("give an input file or both --b and --delta")),
    };
    if value.get("vertices").is_some() {
        if !allow_graph {
            return Err(domain("InvalidInput", "expected fixed data, found a graph document"));
        }
        let gj: GraphJson = serde_json::from_value(value).map_err(IoError::from)?;
        if let Some(data) = &gj.data {
            data.validate()?;
        }
        return Ok(Loaded::Graph(graph_from_json(&gj)?));
    }
    let fj: FixedDataJson = serde_json::from_value(value).map_err(IoError::from)?;
    Ok(Loaded::Data(fj.validate()?))
}

fn load_data(input: &InputArgs) -> Result<FixedData, Failure> {
    match load(input, false)? {
        Loaded::Data(fd) => Ok(fd),
        Loaded::Graph(_) => unreachable!(),
    }
}

/// Enumerates within budget; a truncated graph is returned with a flag.
fn explore(fd: &FixedData, budget: &Budget) -> Result<(OrientedExchangeGraph, bool), Failure> {
    let max_vertices = usize::try_from(budget.max_vertices).unwrap_or(usize::MAX);
    match enumerate_graph(fd, max_vertices, budget.max_depth) {
        Ok(g) => Ok((g, true)),
        Err(ExchangeError::BudgetExceeded(g)) => Ok((*g, false)),
        Err(e) => Err(e.into()),
    }
}

fn emit(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Failure::io(Path::new("<stdout>"), e))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn format_of(out: &Output, allowed: &[Format], default: Format) -> Result<Format, Failure> {
    let f = out.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::usage("format not supported by this command"))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Explore { input, budget, out, dot } => {
            let format = format_of(&out, &[Format::Json, Format::Dot], Format::Json)?;
            let fd = load_data(&input)?;
            let (g, complete) = explore(&fd, &budget)?;
            let cert = if complete { Some(certify_acyclic(&g)?) } else { None };
            let text = match format {
                Format::Dot => graph_to_dot(&g),
                _ => pretty(&graph_to_json(&g, Some(&fd), cert.as_ref())),
            };
            emit(&out, &text)?;
            if let Some(path) = dot {
                write_file(&path, &graph_to_dot(&g))?;
            }
            if !complete {
                return Err(domain(
                    "BudgetExceeded",
                    json!({"message": "enumeration stopped at the budget; partial graph written", "vertices": g.vertex_count()}),
                ));
            }
            Ok(())
        }
        Command::Certify { input, budget, out } => {
            format_of(&out, &[Format::Json], Format::Json)?;
            let g = match load(&input, true)? {
                Loaded::Graph(g) => g,
                Loaded::Data(fd) => explore(&fd, &budget)?.0,
            };
            let cert = certify_acyclic(&g)?;
            emit(
                &out,
                &pretty(&json!({
                    "acyclic": true,
                    "status": if g.is_complete() { "complete" } else { "truncated" },
                    "vertices": g.vertex_count(),
                    "edges": g.edge_count(),
                    "root": g.root(),
                    "sources": cert.sources,
                    "topological_order": cert.order,
                })),
            )
        }
        Command::Consistency { input, budget, level, out } => {
            format_of(&out, &[Format::Json], Format::Json)?;
            let fd = load_data(&input)?;
            let (g, _) = explore(&fd, &budget)?;
            let alg = StructureAlgebra::for_data(&fd, level)?;
            let report = scattering::verify_loop_consistency(&fd, &alg, &g, level)?;
            let loops: Vec<_> = report
                .loops
                .iter()
                .map(|l| {
                    json!({
                        "vertices": l.vertices,
                        "directions": l.directions.iter().map(|k| k + 1).collect::<Vec<_>>(),
                        "crossings": l.crossings,
                        "identity": true,
                    })
                })
                .collect();
            emit(
                &out,
                &pretty(&json!({
                    "consistent": true,
                    "max_degree": report.max_degree,
                    "graph_complete": report.graph_complete,
                    "vertices": g.vertex_count(),
                    "loops": loops,
                })),
            )
        }
        Command::Obstruct { input, out } => {
            format_of(&out, &[Format::Json], Format::Json)?;
            let cj: CrossingSequenceJson = serde_json::from_str(&read_text(&input)?).map_err(IoError::from)?;
            let (_, delta, seq) = cj.resolve()?;
            let level = seq.crossings.iter().map(|c| c.normal.degree()).min().unwrap_or(1).max(1);
            let omega = zero_form(delta.len());
            let alg = StructureAlgebra::new(omega, level)?;
            let w = scattering::minimal_degree_obstruction(&alg, &seq)?;
            emit(
                &out,
                &pretty(&json!({
                    "level": w.level,
                    "witness": alg.display(&w.witness),
                    "witness_element": alg.to_json(&w.witness),
                    "projected_product": alg.to_json(w.projected.as_element()),
                    "identity": false,
                })),
            )
        }
        Command::Scatter2 { input, level, out, svg: svg_path } => {
            let format = format_of(&out, &[Format::Json, Format::Svg], Format::Json)?;
            let fd = load_data(&input)?;
            let alg = StructureAlgebra::for_data(&fd, level)?;
            let diagram = scattering::complete_rank2(&fd, &alg, level)?;
            scattering::verify_rank2(&alg, fd.delta(), &diagram)?;
            let text = match format {
                Format::Svg => svg::diagram_svg(&diagram)?,
                _ => pretty(&diagram.to_json(&alg)?),
            };
            emit(&out, &text)?;
            if let Some(path) = svg_path {
                write_file(&path, &svg::diagram_svg(&diagram)?)?;
            }
            Ok(())
        }
        Command::EmitFan { input, budget, out } => {
            format_of(&out, &[Format::Svg], Format::Svg)?;
            let fd = load_data(&input)?;
            let (g, _) = explore(&fd, &budget)?;
            emit(&out, &svg::fan_svg(&g)?)
        }
    }
}

/// The lowest-degree product of an all-green sequence only involves
/// commuting generators, so any skew form gives the same answer; the zero
/// form is used.
fn zero_form(rank: usize) -> Vec<Vec<cluster_scatter::rational::Rational>> {
    vec![vec![cluster_scatter::rational::Rational::ZERO; rank]; rank]
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", json!({"error": f.code, "detail": f.detail}));
            ExitCode::from(f.exit)
        }
    }
}
