//! Command-line front end: analyze graphs, build and verify rainbow
//! colorings, compute exact rainbow connection numbers, generate instance
//! families, and sweep batches of jobs into CSV.
//!
//! Exit codes: 0 success (and "yes" answers), 1 verification failure, 2 bad
//! usage or malformed input, 3 graph outside a colorer's preconditions, 4
//! search or sampling budget exhausted.
//!
//! All default output is byte-deterministic; wall-clock timing only appears
//! behind `batch --timings`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rainbow_core::diam3::Diam3Coloring;
use rainbow_core::families::{
    gen_example1, gen_example2, gen_random_bridgeless_diam3, gen_random_regular, gen_standard,
    FamilyError, LabeledFamilyGraph, RandomGraphConfig, StandardFamily,
};
use rainbow_core::io::{parse_coloring, parse_graph, write_coloring, write_graph, ParsedGraph};
use rainbow_core::radius::RadiusColoring;
use rainbow_core::verify::VerifyError;
use rainbow_core::{
    color_by_radius_traced, color_diam3_traced, exact_rc, rainbow_connected, Budget, ColorSet,
    Diam3Error, Diam3Options, EdgeColoring, Graph, RadiusError, RcResult, RcStatus, UvRows,
    VerifyOptions, MAX_TRACKED_COLORS,
};
use serde_json::json;
use std::collections::BTreeMap;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_BUDGET: u8 = 4;

/// A terminal failure: message for stderr plus the exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure::new(EXIT_USAGE, message)
    }
}

type CmdResult = Result<ExitCode, Failure>;

#[derive(Parser)]
#[command(
    name = "rainbow",
    version,
    about = "Rainbow-connection colorings: construct, verify, and measure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print size, distance, and structure facts about a graph
    Analyze {
        /// Graph file, or `-` for stdin
        graph: PathBuf,
        /// Emit JSON instead of the plain-text report
        #[arg(long)]
        json: bool,
    },
    /// Construct a rainbow coloring with one of the bounded schemes
    Color {
        /// Graph file, or `-` for stdin
        graph: PathBuf,
        /// Which scheme to run; `auto` picks by structure
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// How the anchor rows split colors 2 and 3 (anchored scheme only)
        #[arg(long, value_enum, default_value_t = UvRowsArg::Crossed)]
        uv_rows: UvRowsArg,
        /// Also write the coloring file here
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Annotate each edge with the rule that colored it
        #[arg(long)]
        provenance: bool,
        /// Emit JSON instead of the plain-text report
        #[arg(long)]
        json: bool,
    },
    /// Check that a coloring makes a graph rainbow-connected
    Verify {
        /// Graph file, or `-` for stdin
        graph: PathBuf,
        /// Coloring file, or `-` for stdin
        coloring: PathBuf,
        /// Restrict paths to these colors, e.g. `1,2,5`
        #[arg(long)]
        allowed: Option<String>,
        /// Check only this 1-indexed pair, e.g. `1,7`; repeatable
        #[arg(long = "pair")]
        pairs: Vec<String>,
        /// List every failing pair instead of stopping at the first
        #[arg(long)]
        full_report: bool,
        /// Print one rainbow path per connected pair
        #[arg(long)]
        paths: bool,
        /// Scan sources in parallel (same output, more cores)
        #[arg(long)]
        parallel: bool,
        /// Emit JSON instead of the plain-text report
        #[arg(long)]
        json: bool,
    },
    /// Compute the exact rainbow connection number by exhaustive search
    Rc {
        /// Graph file, or `-` for stdin
        graph: PathBuf,
        /// Largest palette to try (default: n-1, capped at 30)
        #[arg(long)]
        max_k: Option<u32>,
        /// Stop after this many search nodes
        #[arg(long)]
        node_budget: Option<u64>,
        /// Stop after this many milliseconds
        #[arg(long)]
        time_budget_ms: Option<u64>,
        /// Write an optimal coloring here when the search finishes
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Emit JSON instead of the plain-text report
        #[arg(long)]
        json: bool,
    },
    /// Generate a graph from a named family
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run a CSV of jobs and emit one result row per job
    Batch {
        /// Jobs file with header `id,family,params,seed,method`
        jobs: PathBuf,
        /// Write the result CSV here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Fill the wall_ms column (off by default so output is reproducible)
        #[arg(long)]
        timings: bool,
        /// Search budgets for `rc` jobs
        #[arg(long)]
        node_budget: Option<u64>,
        #[arg(long)]
        time_budget_ms: Option<u64>,
        /// Largest palette for `rc` jobs (default: n-1, capped at 30)
        #[arg(long)]
        max_k: Option<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Layered scheme: needs every edge in a triangle; uses 3*radius colors
    Radius,
    /// Anchored scheme: needs diameter <= 3, no bridges, and a triangle-free
    /// edge; uses at most 9 colors
    Diam3,
    /// Pick by structure: radius when every edge sits in a triangle,
    /// otherwise diam3
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UvRowsArg {
    Crossed,
    Aligned,
}

#[derive(Args)]
struct GenOut {
    /// Write the graph here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Emit `# label <v> <name>` comments for families with named roles
    #[arg(long)]
    labels: bool,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Path on n vertices
    Path {
        n: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Cycle on n vertices
    Cycle {
        n: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Complete graph on n vertices
    Complete {
        n: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Wheel: a hub joined to a cycle on n-1 vertices
    Wheel {
        n: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// t spokes of r stacked triangles sharing a hub
    TriangleSpider {
        r: usize,
        t: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Clique of size n with a three-edge leg from each clique vertex to a
    /// shared far hub
    CliqueWithLegs {
        n: usize,
        #[command(flatten)]
        out: GenOut,
    },
    /// Random bridgeless graph of diameter 3 with a triangle-free edge
    RandomDiam3 {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: GenOut,
    },
    /// Random connected d-regular graph
    RandomRegular {
        n: usize,
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: GenOut,
    },
}

fn main() -> ExitCode {
    // Die quietly when the reader of a pipe goes away (`rainbow gen ... | head`)
    // instead of panicking inside a print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Analyze { graph, json } => cmd_analyze(&graph, json),
        Command::Color {
            graph,
            method,
            uv_rows,
            output,
            provenance,
            json,
        } => cmd_color(&graph, method, uv_rows, output.as_deref(), provenance, json),
        Command::Verify {
            graph,
            coloring,
            allowed,
            pairs,
            full_report,
            paths,
            parallel,
            json,
        } => cmd_verify(
            &graph,
            &coloring,
            allowed.as_deref(),
            &pairs,
            full_report,
            paths,
            parallel,
            json,
        ),
        Command::Rc {
            graph,
            max_k,
            node_budget,
            time_budget_ms,
            cert,
            json,
        } => cmd_rc(&graph, max_k, node_budget, time_budget_ms, cert.as_deref(), json),
        Command::Gen { family } => cmd_gen(family),
        Command::Batch {
            jobs,
            output,
            timings,
            node_budget,
            time_budget_ms,
            max_k,
        } => cmd_batch(
            &jobs,
            output.as_deref(),
            timings,
            node_budget,
            time_budget_ms,
            max_k,
        ),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("reading {}: {e}", path.display())))
    }
}

fn read_graph(path: &Path) -> Result<ParsedGraph, Failure> {
    let text = read_text(path)?;
    parse_graph(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_coloring(path: &Path) -> Result<EdgeColoring, Failure> {
    let text = read_text(path)?;
    parse_coloring(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::usage(format!("writing {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn edge_json(e: rainbow_core::EdgeId) -> serde_json::Value {
    json!([e.lo() + 1, e.hi() + 1])
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json output"));
}

fn cmd_analyze(graph_path: &Path, as_json: bool) -> CmdResult {
    let parsed = read_graph(graph_path)?;
    let g = &parsed.graph;
    let connected = g.is_connected();
    let metrics = connected.then(|| g.metrics().expect("metrics on connected graph"));
    let bridges = g.find_bridges();
    let triangle_free = g.triangle_free_edges();

    if as_json {
        let mut value = json!({
            "n": g.n(),
            "m": g.m(),
            "connected": connected,
            "min_degree": g.min_degree(),
            "duplicates_merged": parsed.duplicates_merged,
            "bridges": bridges.iter().map(|&e| edge_json(e)).collect::<Vec<_>>(),
            "triangle_free_edges": triangle_free.iter().map(|&e| edge_json(e)).collect::<Vec<_>>(),
        });
        if let Some(m) = &metrics {
            value["radius"] = json!(m.radius);
            value["diameter"] = json!(m.diameter);
            value["centers"] = json!(m.centers.iter().map(|c| c + 1).collect::<Vec<_>>());
        }
        print_json(&value);
    } else {
        println!("n {}", g.n());
        println!("m {}", g.m());
        println!("connected {connected}");
        println!("min-degree {}", g.min_degree());
        if let Some(m) = &metrics {
            println!("radius {}", m.radius);
            println!("diameter {}", m.diameter);
            let centers: Vec<String> = m.centers.iter().map(|c| (c + 1).to_string()).collect();
            println!("centers {}", centers.join(" "));
        }
        println!("bridges {}", bridges.len());
        println!("triangle-free-edges {}", triangle_free.len());
        if parsed.duplicates_merged > 0 {
            println!("duplicates-merged {}", parsed.duplicates_merged);
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// What `color` produced, unified over the two schemes.
enum ColorRun {
    Radius(RadiusColoring),
    Diam3(Diam3Coloring),
}

impl ColorRun {
    fn coloring(&self) -> &EdgeColoring {
        match self {
            ColorRun::Radius(r) => &r.coloring,
            ColorRun::Diam3(d) => &d.coloring,
        }
    }

    fn method_name(&self) -> &'static str {
        match self {
            ColorRun::Radius(_) => "radius",
            ColorRun::Diam3(_) => "diam3",
        }
    }

    fn provenance(&self) -> &BTreeMap<rainbow_core::EdgeId, String> {
        match self {
            ColorRun::Radius(r) => &r.provenance,
            ColorRun::Diam3(d) => &d.provenance,
        }
    }
}

fn one_indexed_edge(e: rainbow_core::EdgeId) -> String {
    format!("({},{})", e.lo() + 1, e.hi() + 1)
}

/// Library errors carry internal 0-based ids; everything shown to the user
/// gets shifted to the file format's 1-based ids here.
fn radius_failure(e: RadiusError) -> Failure {
    match &e {
        RadiusError::EdgeOutsideTriangle(edge) => Failure::new(
            EXIT_PRECONDITION,
            format!("edge {} lies in no triangle", one_indexed_edge(*edge)),
        ),
        RadiusError::Graph(_) => Failure::new(EXIT_PRECONDITION, e.to_string()),
        RadiusError::ShapeMismatch(_) => Failure::usage(e.to_string()),
        RadiusError::PostconditionFailed { witness } => Failure::new(
            EXIT_FAILED,
            format!(
                "internal check failed: pair {} {} has no rainbow path",
                witness.0 + 1,
                witness.1 + 1
            ),
        ),
    }
}

fn diam3_failure(e: Diam3Error) -> Failure {
    match &e {
        Diam3Error::Graph(_) | Diam3Error::DiameterTooLarge(_) | Diam3Error::NoAnchorEdge => {
            Failure::new(EXIT_PRECONDITION, e.to_string())
        }
        Diam3Error::BridgePresent(edge) => Failure::new(
            EXIT_PRECONDITION,
            format!("graph has a bridge: {}", one_indexed_edge(*edge)),
        ),
        Diam3Error::MissingAnchorEdge(edge) => Failure::usage(format!(
            "{} is not an edge of the graph",
            one_indexed_edge(*edge)
        )),
        Diam3Error::AnchorInTriangle(edge) => Failure::usage(format!(
            "anchor {} lies in a triangle",
            one_indexed_edge(*edge)
        )),
        Diam3Error::RuleConflict { edge, .. } => Failure::new(
            EXIT_FAILED,
            format!("internal check failed: rules disagree on {}", one_indexed_edge(*edge)),
        ),
        Diam3Error::UncoloredEdge(edge) => Failure::new(
            EXIT_FAILED,
            format!("internal check failed: no rule colored {}", one_indexed_edge(*edge)),
        ),
        Diam3Error::PostconditionFailed(diag) => Failure::new(
            EXIT_FAILED,
            format!(
                "internal check failed: pair {} {} has no rainbow path",
                diag.witness.0 + 1,
                diag.witness.1 + 1
            ),
        ),
    }
}

fn run_colorer(g: &Graph, method: MethodArg, uv_rows: UvRowsArg) -> Result<ColorRun, Failure> {
    let method = match method {
        MethodArg::Auto => {
            if g.m() > 0 && g.triangle_free_edges().is_empty() {
                MethodArg::Radius
            } else {
                MethodArg::Diam3
            }
        }
        chosen => chosen,
    };
    match method {
        MethodArg::Radius => color_by_radius_traced(g)
            .map(ColorRun::Radius)
            .map_err(radius_failure),
        MethodArg::Diam3 => {
            let options = Diam3Options {
                uv_rows: match uv_rows {
                    UvRowsArg::Crossed => UvRows::Crossed,
                    UvRowsArg::Aligned => UvRows::Aligned,
                },
            };
            color_diam3_traced(g, &options)
                .map(ColorRun::Diam3)
                .map_err(diam3_failure)
        }
        MethodArg::Auto => unreachable!("auto resolved above"),
    }
}

fn coloring_text(run: &ColorRun, provenance: bool) -> String {
    let mut text = String::new();
    text.push_str(&format!("# method {}\n", run.method_name()));
    match run {
        ColorRun::Radius(r) => {
            text.push_str(&format!("# center {}\n", r.decomposition.center + 1));
        }
        ColorRun::Diam3(d) => {
            let a = d.partition.anchor;
            text.push_str(&format!("# anchor {} {}\n", a.lo() + 1, a.hi() + 1));
        }
    }
    text.push_str(&write_coloring(run.coloring()));
    if provenance {
        for (e, rule) in run.provenance() {
            text.push_str(&format!("# rule {} {} {rule}\n", e.lo() + 1, e.hi() + 1));
        }
    }
    text
}

fn cmd_color(
    graph_path: &Path,
    method: MethodArg,
    uv_rows: UvRowsArg,
    output: Option<&Path>,
    provenance: bool,
    as_json: bool,
) -> CmdResult {
    let g = read_graph(graph_path)?.graph;
    let run = run_colorer(&g, method, uv_rows)?;
    let text = coloring_text(&run, provenance);

    if let Some(path) = output {
        write_output(Some(path), &text)?;
    }
    if as_json {
        let coloring = run.coloring();
        let entries: Vec<serde_json::Value> = coloring
            .iter()
            .map(|(e, c)| json!([e.lo() + 1, e.hi() + 1, c]))
            .collect();
        let mut value = json!({
            "method": run.method_name(),
            "k": coloring.k(),
            "colors_used": coloring.distinct_colors(),
            "coloring": entries,
        });
        match &run {
            ColorRun::Radius(r) => {
                value["center"] = json!(r.decomposition.center + 1);
            }
            ColorRun::Diam3(d) => {
                value["anchor"] = edge_json(d.partition.anchor);
            }
        }
        if provenance {
            let rules: Vec<serde_json::Value> = run
                .provenance()
                .iter()
                .map(|(e, rule)| json!([e.lo() + 1, e.hi() + 1, rule]))
                .collect();
            value["provenance"] = json!(rules);
        }
        print_json(&value);
    } else if output.is_none() {
        print!("{text}");
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_color_list(text: &str) -> Result<ColorSet, Failure> {
    let mut colors = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let c: u32 = tok
            .parse()
            .map_err(|_| Failure::usage(format!("bad color {tok:?} in --allowed")))?;
        if c == 0 || c > MAX_TRACKED_COLORS {
            return Err(Failure::usage(format!(
                "color {c} outside 1..={MAX_TRACKED_COLORS}"
            )));
        }
        colors.push(c);
    }
    Ok(ColorSet::from_colors(&colors))
}

fn parse_pair(text: &str, n: usize) -> Result<(usize, usize), Failure> {
    let toks: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .collect();
    if toks.len() != 2 {
        return Err(Failure::usage(format!(
            "bad --pair {text:?}: expected two vertices like `1,7`"
        )));
    }
    let mut pair = [0usize; 2];
    for (slot, tok) in pair.iter_mut().zip(&toks) {
        let v: usize = tok
            .parse()
            .map_err(|_| Failure::usage(format!("bad vertex {tok:?} in --pair")))?;
        if v == 0 || v > n {
            return Err(Failure::usage(format!("vertex {v} outside 1..={n}")));
        }
        *slot = v - 1;
    }
    Ok((pair[0], pair[1]))
}

fn verify_failure(e: VerifyError) -> Failure {
    Failure::usage(e.to_string())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    graph_path: &Path,
    coloring_path: &Path,
    allowed: Option<&str>,
    pair_args: &[String],
    full_report: bool,
    paths: bool,
    parallel: bool,
    as_json: bool,
) -> CmdResult {
    let g = read_graph(graph_path)?.graph;
    let coloring = read_coloring(coloring_path)?;
    let mut options = VerifyOptions {
        collect_paths: paths,
        full_report,
        parallel,
        ..Default::default()
    };
    if let Some(list) = allowed {
        options.allowed = Some(parse_color_list(list)?);
    }
    if !pair_args.is_empty() {
        let mut pairs = Vec::new();
        for arg in pair_args {
            pairs.push(parse_pair(arg, g.n())?);
        }
        options.pairs = Some(pairs);
    }

    let report = rainbow_connected(&g, &coloring, &options).map_err(verify_failure)?;

    if as_json {
        let mut value = json!({
            "rainbow_connected": report.rainbow_connected,
        });
        if let Some((a, b)) = report.witness {
            value["witness"] = json!([a + 1, b + 1]);
        }
        if let Some(failing) = &report.failing_pairs {
            value["failing_pairs"] = json!(failing
                .iter()
                .map(|&(a, b)| json!([a + 1, b + 1]))
                .collect::<Vec<_>>());
        }
        if let Some(found) = &report.paths {
            let mut map = serde_json::Map::new();
            for (&(a, b), path) in found {
                let key = format!("{}-{}", a + 1, b + 1);
                let path1: Vec<usize> = path.iter().map(|v| v + 1).collect();
                map.insert(key, json!(path1));
            }
            value["paths"] = serde_json::Value::Object(map);
        }
        print_json(&value);
    } else {
        println!("rainbow-connected {}", report.rainbow_connected);
        if let Some((a, b)) = report.witness {
            println!("witness {} {}", a + 1, b + 1);
        }
        if let Some(failing) = &report.failing_pairs {
            for &(a, b) in failing {
                println!("failing {} {}", a + 1, b + 1);
            }
        }
        if let Some(found) = &report.paths {
            for (&(a, b), path) in found {
                let steps: Vec<String> = path.iter().map(|v| (v + 1).to_string()).collect();
                println!("path {} {} = {}", a + 1, b + 1, steps.join(" "));
            }
        }
    }
    if report.rainbow_connected {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_FAILED))
    }
}

fn rc_status_name(status: RcStatus) -> &'static str {
    match status {
        RcStatus::Exact => "exact",
        RcStatus::LowerBoundOnly => "lower-bound-only",
        RcStatus::BudgetExhausted => "budget-exhausted",
    }
}

fn run_exact(g: &Graph, max_k: Option<u32>, budget: &Budget) -> Result<RcResult, Failure> {
    let cap = max_k.unwrap_or_else(|| {
        let trivial = g.n().saturating_sub(1) as u32;
        trivial.min(MAX_TRACKED_COLORS)
    });
    exact_rc(g, cap, budget).map_err(|e| match e {
        rainbow_core::solver::SolverError::KAboveLimit { .. } => Failure::usage(e.to_string()),
        rainbow_core::solver::SolverError::Graph(_) => {
            Failure::new(EXIT_PRECONDITION, e.to_string())
        }
    })
}

fn cmd_rc(
    graph_path: &Path,
    max_k: Option<u32>,
    node_budget: Option<u64>,
    time_budget_ms: Option<u64>,
    cert: Option<&Path>,
    as_json: bool,
) -> CmdResult {
    let g = read_graph(graph_path)?.graph;
    let budget = Budget {
        max_nodes: node_budget,
        max_millis: time_budget_ms,
    };
    let result = run_exact(&g, max_k, &budget)?;

    if let (Some(path), Some(coloring)) = (cert, &result.coloring) {
        write_output(Some(path), &write_coloring(coloring))?;
    }

    if as_json {
        let mut value = json!({
            "status": rc_status_name(result.status),
            "lower_bound": result.lower_bound,
            "nodes": result.stats.nodes,
            "colorings_verified": result.stats.colorings_verified,
        });
        if let Some(v) = result.value {
            value["rc"] = json!(v);
        }
        print_json(&value);
    } else {
        println!("status {}", rc_status_name(result.status));
        match result.value {
            Some(v) => println!("rc {v}"),
            None => println!("rc >= {}", result.lower_bound),
        }
        println!("nodes {}", result.stats.nodes);
    }
    match result.status {
        RcStatus::Exact => Ok(ExitCode::SUCCESS),
        RcStatus::LowerBoundOnly | RcStatus::BudgetExhausted => Ok(ExitCode::from(EXIT_BUDGET)),
    }
}

fn family_failure(e: FamilyError) -> Failure {
    let code = match &e {
        FamilyError::RetriesExhausted { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    };
    Failure::new(code, e.to_string())
}

/// Graph plus the header comments `gen` writes above it.
struct GeneratedGraph {
    graph: Graph,
    header: String,
    labels: BTreeMap<usize, String>,
}

impl GeneratedGraph {
    fn plain(graph: Graph, header: String) -> Self {
        GeneratedGraph {
            graph,
            header,
            labels: BTreeMap::new(),
        }
    }

    fn labeled(fam: LabeledFamilyGraph, header: String) -> Self {
        GeneratedGraph {
            graph: fam.graph,
            header,
            labels: fam.labels,
        }
    }
}

fn generate(family: &GenFamily) -> Result<GeneratedGraph, Failure> {
    let cfg = RandomGraphConfig::default();
    let gen = match family {
        GenFamily::Path { n, .. } => GeneratedGraph::plain(
            gen_standard(StandardFamily::Path, *n).map_err(family_failure)?,
            format!("# family path {n}\n"),
        ),
        GenFamily::Cycle { n, .. } => GeneratedGraph::plain(
            gen_standard(StandardFamily::Cycle, *n).map_err(family_failure)?,
            format!("# family cycle {n}\n"),
        ),
        GenFamily::Complete { n, .. } => GeneratedGraph::plain(
            gen_standard(StandardFamily::Complete, *n).map_err(family_failure)?,
            format!("# family complete {n}\n"),
        ),
        GenFamily::Wheel { n, .. } => GeneratedGraph::plain(
            gen_standard(StandardFamily::Wheel, *n).map_err(family_failure)?,
            format!("# family wheel {n}\n"),
        ),
        GenFamily::TriangleSpider { r, t, .. } => GeneratedGraph::labeled(
            gen_example1(*r, *t).map_err(family_failure)?,
            format!("# family triangle-spider {r} {t}\n"),
        ),
        GenFamily::CliqueWithLegs { n, .. } => GeneratedGraph::labeled(
            gen_example2(*n).map_err(family_failure)?,
            format!("# family clique-with-legs {n}\n"),
        ),
        GenFamily::RandomDiam3 { n, p, seed, .. } => GeneratedGraph::plain(
            gen_random_bridgeless_diam3(*n, *p, *seed, true, &cfg).map_err(family_failure)?,
            format!("# family random-diam3 {n} {p} seed {seed}\n"),
        ),
        GenFamily::RandomRegular { n, d, seed, .. } => GeneratedGraph::plain(
            gen_random_regular(*n, *d, *seed, &cfg).map_err(family_failure)?,
            format!("# family random-regular {n} {d} seed {seed}\n"),
        ),
    };
    Ok(gen)
}

fn cmd_gen(family: GenFamily) -> CmdResult {
    let generated = generate(&family)?;
    let out = match &family {
        GenFamily::Path { out, .. }
        | GenFamily::Cycle { out, .. }
        | GenFamily::Complete { out, .. }
        | GenFamily::Wheel { out, .. }
        | GenFamily::TriangleSpider { out, .. }
        | GenFamily::CliqueWithLegs { out, .. }
        | GenFamily::RandomDiam3 { out, .. }
        | GenFamily::RandomRegular { out, .. } => out,
    };

    let mut text = generated.header.clone();
    if out.labels {
        for (v, name) in &generated.labels {
            text.push_str(&format!("# label {} {name}\n", v + 1));
        }
    }
    text.push_str(&write_graph(&generated.graph));
    write_output(out.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

/// One output row of `batch`; empty strings stay empty in the CSV.
#[derive(Default)]
struct BatchRow {
    id: String,
    family: String,
    params: String,
    seed: String,
    method: String,
    n: String,
    m: String,
    colors: String,
    bound: String,
    verified: String,
    rc_status: String,
    rc_lo: String,
    rc_hi: String,
    wall_ms: String,
    error: String,
}

impl BatchRow {
    const HEADER: [&'static str; 15] = [
        "id", "family", "params", "seed", "method", "n", "m", "colors", "bound", "verified",
        "rc_status", "rc_lo", "rc_hi", "wall_ms", "error",
    ];

    fn record(&self) -> [&str; 15] {
        [
            &self.id,
            &self.family,
            &self.params,
            &self.seed,
            &self.method,
            &self.n,
            &self.m,
            &self.colors,
            &self.bound,
            &self.verified,
            &self.rc_status,
            &self.rc_lo,
            &self.rc_hi,
            &self.wall_ms,
            &self.error,
        ]
    }
}

fn batch_graph(family: &str, params: &str, seed: u64) -> Result<Graph, Failure> {
    let cfg = RandomGraphConfig::default();
    let numbers: Vec<&str> = params.split_whitespace().collect();
    let need = |count: usize| -> Result<Vec<usize>, Failure> {
        if numbers.len() != count {
            return Err(Failure::usage(format!(
                "family {family} expects {count} parameter(s), got {params:?}"
            )));
        }
        numbers
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Failure::usage(format!("bad parameter {t:?}")))
            })
            .collect()
    };
    let g = match family {
        "path" => gen_standard(StandardFamily::Path, need(1)?[0]).map_err(family_failure)?,
        "cycle" => gen_standard(StandardFamily::Cycle, need(1)?[0]).map_err(family_failure)?,
        "complete" => {
            gen_standard(StandardFamily::Complete, need(1)?[0]).map_err(family_failure)?
        }
        "wheel" => gen_standard(StandardFamily::Wheel, need(1)?[0]).map_err(family_failure)?,
        "triangle-spider" => {
            let p = need(2)?;
            gen_example1(p[0], p[1]).map_err(family_failure)?.graph
        }
        "clique-with-legs" => gen_example2(need(1)?[0]).map_err(family_failure)?.graph,
        "line-of-regular" => {
            let p = need(2)?;
            let base = gen_random_regular(p[0], p[1], seed, &cfg).map_err(family_failure)?;
            base.line_graph().0
        }
        "random-diam3" => {
            if numbers.len() != 2 {
                return Err(Failure::usage(format!(
                    "family random-diam3 expects `n p`, got {params:?}"
                )));
            }
            let n: usize = numbers[0]
                .parse()
                .map_err(|_| Failure::usage(format!("bad parameter {:?}", numbers[0])))?;
            let p: f64 = numbers[1]
                .parse()
                .map_err(|_| Failure::usage(format!("bad parameter {:?}", numbers[1])))?;
            gen_random_bridgeless_diam3(n, p, seed, true, &cfg).map_err(family_failure)?
        }
        "random-regular" => {
            let p = need(2)?;
            gen_random_regular(p[0], p[1], seed, &cfg).map_err(family_failure)?
        }
        "file" => read_graph(Path::new(params))?.graph,
        other => return Err(Failure::usage(format!("unknown family {other:?}"))),
    };
    Ok(g)
}

fn run_batch_job(
    row: &mut BatchRow,
    budget: &Budget,
    max_k: Option<u32>,
) -> Result<(), Failure> {
    let seed: u64 = if row.seed.is_empty() {
        0
    } else {
        row.seed
            .parse()
            .map_err(|_| Failure::usage(format!("bad seed {:?}", row.seed)))?
    };
    let g = batch_graph(&row.family, &row.params, seed)?;
    row.n = g.n().to_string();
    row.m = g.m().to_string();

    match row.method.as_str() {
        "radius" | "diam3" | "auto" => {
            let method = match row.method.as_str() {
                "radius" => MethodArg::Radius,
                "diam3" => MethodArg::Diam3,
                _ => MethodArg::Auto,
            };
            let run = run_colorer(&g, method, UvRowsArg::Crossed)?;
            let coloring = run.coloring();
            row.method = run.method_name().to_string();
            row.colors = coloring.distinct_colors().to_string();
            row.bound = coloring.k().to_string();
            let report = rainbow_connected(&g, coloring, &VerifyOptions::default())
                .map_err(verify_failure)?;
            row.verified = report.rainbow_connected.to_string();
        }
        "rc" => {
            let result = run_exact(&g, max_k, budget)?;
            row.rc_status = rc_status_name(result.status).to_string();
            row.rc_lo = result.lower_bound.to_string();
            if let Some(v) = result.value {
                row.rc_hi = v.to_string();
            }
        }
        other => {
            return Err(Failure::usage(format!(
                "unknown method {other:?} (expected radius, diam3, auto, or rc)"
            )))
        }
    }
    Ok(())
}

fn cmd_batch(
    jobs_path: &Path,
    output: Option<&Path>,
    timings: bool,
    node_budget: Option<u64>,
    time_budget_ms: Option<u64>,
    max_k: Option<u32>,
) -> CmdResult {
    let text = read_text(jobs_path)?;
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Failure::usage(format!("{}: {e}", jobs_path.display())))?
        .clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let required = ["id", "family", "params", "seed", "method"];
    let mut positions = BTreeMap::new();
    for name in required {
        match col(name) {
            Some(pos) => {
                positions.insert(name, pos);
            }
            None => {
                return Err(Failure::usage(format!(
                    "jobs file is missing the `{name}` column"
                )))
            }
        }
    }

    let budget = Budget {
        max_nodes: node_budget,
        max_millis: time_budget_ms,
    };
    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            Failure::usage(format!("{} row {}: {e}", jobs_path.display(), index + 2))
        })?;
        let field = |name: &str| record.get(positions[name]).unwrap_or("").to_string();
        let mut row = BatchRow {
            id: field("id"),
            family: field("family"),
            params: field("params"),
            seed: field("seed"),
            method: field("method"),
            ..Default::default()
        };
        let started = Instant::now();
        if let Err(failure) = run_batch_job(&mut row, &budget, max_k) {
            row.error = failure.message;
        }
        if timings {
            row.wall_ms = started.elapsed().as_millis().to_string();
        }
        rows.push(row);
    }

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(BatchRow::HEADER)
        .expect("csv header write");
    for row in &rows {
        writer.write_record(row.record()).expect("csv row write");
    }
    let bytes = writer.into_inner().expect("csv flush");
    let text = String::from_utf8(bytes).expect("csv output is utf-8");
    write_output(output, &text)?;
    Ok(ExitCode::SUCCESS)
}
