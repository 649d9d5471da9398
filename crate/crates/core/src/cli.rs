//! Command-line front end.
//!
//! Every command prints one JSON report on stdout (keys sorted, so output is
//! diff-stable) and a one-line summary on stderr unless `--quiet`. Exit
//! codes: 0 positive verdict, 1 negative verdict, 2 usage or input error.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::coloring::{self, ColoringFile, EdgeColoring};
use crate::contraction::{contract_periodic, exhaustion_quotient, ContractedGraph, ContractionMap, CutSpec};
use crate::error::{Error, Result};
use crate::eulerian::{self, CircleTemplate, ShadowVerdict};
use crate::flow::{self, EdgeAssignment, FlowFile, SearchOptions};
use crate::gadgets;
use crate::graph::{named, Multigraph, OrientedCut};
use crate::group::{AlphabetFile, FiniteAbelianGroup, FlowAlphabet};
use crate::infinite::{self, ObstructionCertificate, Verdict};
use crate::periodic::PeriodicPresentation;
use crate::{fixtures, tension};

#[derive(Debug, Parser)]
#[command(name = "nzflow", version, about = "Group-valued flows on finite and periodic multigraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Worker threads for flow searches; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// No summary on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Reserved; every search is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Include wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct AlphabetOpts {
    /// Value group, e.g. Z4, Z2xZ2, R3.
    #[arg(long)]
    pub group: Option<String>,
    /// Integer k-flow alphabet {±1, .., ±(k-1)} instead of a group.
    #[arg(long)]
    pub k: Option<u32>,
    /// Explicit alphabet file {"group": .., "values": [[..], ..]}.
    #[arg(long)]
    pub alphabet: Option<String>,
    /// Allow zero (the whole group); the default is the nonzero elements.
    #[arg(long)]
    pub include_zero: bool,
    /// The default; accepted for readability.
    #[arg(long)]
    pub nonelusive: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for an A-flow.
    Find {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        alphabet: AlphabetOpts,
    },
    /// Check a flow file (or a report carrying one).
    Verify {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        flow: String,
        #[command(flatten)]
        alphabet: AlphabetOpts,
    },
    /// Count A-flows exhaustively (small graphs only).
    Count {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        alphabet: AlphabetOpts,
    },
    /// Integer k-flow search, cross-checked against Z_k.
    Kflow {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: u32,
    },
    /// Contract a graph or presentation along a cut file, or build `G_n`.
    Contract {
        #[arg(long, conflicts_with = "presentation")]
        graph: Option<String>,
        #[arg(long)]
        presentation: Option<String>,
        /// JSON list of cuts: ["a","b"], {"side":[..],"crossing":[..]} or {"prefix":k}.
        #[arg(long)]
        cuts: Option<String>,
        /// Exhaustion depth for `G_n` (presentations only, instead of --cuts).
        #[arg(long, conflicts_with = "cuts")]
        depth: Option<usize>,
    },
    /// Infinite graphs given by periodic presentations.
    Infinite {
        #[command(subcommand)]
        action: InfiniteAction,
    },
    /// Find a semi-k-edge-colouring, or check one.
    Color {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long)]
        coloring: Option<String>,
    },
    /// Expand along a non-elusive Z_k-flow (k odd) to a cubic graph.
    ExpandCubic {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        flow: String,
    },
    /// Expand along a semi-k-edge-colouring (k odd) to a k-regular graph.
    ExpandRegular {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        coloring: String,
    },
    /// Spanning Eulerian subgraph and the Z2xZ2-flow built from it.
    Supereulerian {
        #[arg(long)]
        graph: String,
        /// Lift the edge-count guard of the exhaustive search.
        #[arg(long)]
        no_limit: bool,
    },
    /// Flows from the finite shadows of a Hamiltonian circle template.
    HamiltonFlow {
        #[arg(long)]
        presentation: String,
        /// {"edges": [base edge ids]}
        #[arg(long)]
        circle: String,
        #[arg(long, default_value_t = infinite::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Tensions: zero sums around cycles.
    Tension {
        #[command(subcommand)]
        action: TensionAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum InfiniteAction {
    /// Search `G_0 .. G_max_depth`; a failing depth certifies that no flow exists.
    Check {
        #[arg(long)]
        presentation: String,
        #[command(flatten)]
        alphabet: AlphabetOpts,
        #[arg(long, default_value_t = infinite::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Also write the certificate to this file.
        #[arg(long)]
        certificate: Option<String>,
        /// Attach a contraction of the failing quotient onto this named graph.
        #[arg(long)]
        contract_onto: Option<String>,
    },
    /// Re-run the search recorded in a certificate.
    Replay {
        #[arg(long)]
        certificate: String,
        /// Also recompute the stored graph from the presentation.
        #[arg(long)]
        presentation: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TensionAction {
    Find {
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        alphabet: AlphabetOpts,
    },
    Verify {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        tension: String,
        #[command(flatten)]
        alphabet: AlphabetOpts,
    },
    /// Windows `0..=max_depth` of a presentation; nonzero Z2 unless an alphabet is given.
    CheckInfinite {
        #[arg(long)]
        presentation: String,
        #[command(flatten)]
        alphabet: AlphabetOpts,
        #[arg(long, default_value_t = infinite::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
}

/// What a command decided, before it is wrapped into the report.
struct Outcome {
    verdict: &'static str,
    positive: bool,
    witness: Value,
    details: Value,
    summary: String,
}

impl Outcome {
    fn new(verdict: &'static str, positive: bool, summary: impl Into<String>) -> Self {
        Outcome {
            verdict,
            positive,
            witness: Value::Null,
            details: json!({}),
            summary: summary.into(),
        }
    }

    fn witness(mut self, w: impl Serialize) -> Self {
        self.witness = serde_json::to_value(w).expect("serializable");
        self
    }

    fn details(mut self, d: Value) -> Self {
        self.details = d;
        self
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let echo = command_echo(&argv);
    let start = Instant::now();
    let result = execute(&cli);
    let elapsed = start.elapsed();
    match result {
        Ok(o) => {
            let mut report = json!({
                "command": echo,
                "verdict": o.verdict,
                "witness": o.witness,
                "details": o.details,
                "seed": cli.global.seed,
            });
            if cli.global.timing {
                report["timing_ms"] = json!(elapsed.as_secs_f64() * 1000.0);
            }
            let _ = writeln!(out, "{}", canonical_json(&report));
            if !cli.global.quiet {
                let _ = writeln!(err, "{}: {}", o.verdict, o.summary);
            }
            if o.positive {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Pretty JSON with object keys sorted.
pub fn canonical_json(v: &Value) -> String {
    // serde_json's default map is ordered by key
    serde_json::to_string_pretty(v).expect("serializable")
}

/// Arguments after the program name, without the flags that cannot change the result.
fn command_echo(argv: &[std::ffi::OsString]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        match a.as_str() {
            "--threads" => {
                it.next();
            }
            "--quiet" | "--timing" => {}
            _ if a.starts_with("--threads=") => {}
            _ => out.push(a),
        }
    }
    out
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
}

fn parse<T: serde::de::DeserializeOwned>(path: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json(format!("{path}: {e}")))
}

/// A report's `witness` when present, else the document itself.
fn payload(path: &str) -> Result<Value> {
    let v: Value = parse(path, &read(path)?)?;
    Ok(match v.get("witness") {
        Some(w) if v.get("verdict").is_some() => w.clone(),
        _ => v,
    })
}

fn from_value<T: serde::de::DeserializeOwned>(path: &str, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Json(format!("{path}: {e}")))
}

fn file_stem(path: &str) -> &str {
    Path::new(path)
        .file_name()
        .and_then(|s| s.to_str())
        .unwrap_or(path)
}

/// A graph file; missing files fall back to the bundled graphs and named families.
fn load_graph(path: &str) -> Result<Multigraph> {
    if Path::new(path).exists() {
        return parse(path, &read(path)?);
    }
    let stem = file_stem(path).trim_end_matches(".json");
    fixtures::graph_by_name(stem)
        .or_else(|| named::by_name(stem))
        .ok_or_else(|| Error::Io(format!("{path}: no such file or bundled graph")))
}

fn load_presentation(path: &str) -> Result<PeriodicPresentation> {
    if Path::new(path).exists() {
        return PeriodicPresentation::parse_json(&read(path)?);
    }
    fixtures::presentation_by_name(file_stem(path))
        .ok_or_else(|| Error::Io(format!("{path}: no such file or bundled presentation")))
}

fn alphabet(opts: &AlphabetOpts) -> Result<FlowAlphabet> {
    match (&opts.group, opts.k, &opts.alphabet) {
        (Some(g), None, None) => {
            let h: FiniteAbelianGroup = g.parse()?;
            Ok(if opts.include_zero {
                FlowAlphabet::full(&h)
            } else {
                FlowAlphabet::nonzero(&h)
            })
        }
        (None, Some(k), None) => FlowAlphabet::k_flow(k),
        (None, None, Some(path)) => FlowAlphabet::from_file(&parse::<AlphabetFile>(path, &read(path)?)?),
        (None, None, None) => Err(Error::InvalidParameter(
            "one of --group, --k or --alphabet is required".into(),
        )),
        _ => Err(Error::InvalidParameter(
            "--group, --k and --alphabet are mutually exclusive".into(),
        )),
    }
}

/// The alphabet options if any were given, else the nonzero elements of the
/// assignment's own group.
fn alphabet_for(opts: &AlphabetOpts, f: &EdgeAssignment) -> Result<FlowAlphabet> {
    if opts.group.is_some() || opts.k.is_some() || opts.alphabet.is_some() {
        return alphabet(opts);
    }
    match f.carrier().group() {
        Some(h) if opts.include_zero => Ok(FlowAlphabet::full(h)),
        Some(h) => Ok(FlowAlphabet::nonzero(h)),
        None => Err(Error::InvalidParameter(
            "integer assignments need --k to fix the alphabet".into(),
        )),
    }
}

fn cut_json(g: &Multigraph, c: &OrientedCut) -> Value {
    json!({
        "side": c.side_a().iter().map(|&v| g.vertex_id(v)).collect::<Vec<_>>(),
        "crossing": c.crossing_ids(g),
    })
}

fn contraction_json(q: &ContractedGraph, map: &ContractionMap) -> Value {
    let g = &q.quotient;
    let loops: Vec<&str> = (0..g.edge_count())
        .filter(|&e| q.loops[e])
        .map(|e| g.edge_id(e))
        .collect();
    let vertex_map: serde_json::Map<String, Value> = map
        .host_vertices
        .iter()
        .zip(&map.image)
        .map(|(v, &i)| (v.clone(), json!(g.vertex_id(i))))
        .collect();
    json!({ "quotient": g.to_json(), "loops": loops, "map": vertex_map })
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let opts = SearchOptions {
        threads: cli.global.threads,
    };
    match &cli.command {
        Command::Find { graph, alphabet: a } => {
            let g = load_graph(graph)?;
            let a = alphabet(a)?;
            Ok(match flow::find_flow_with(&g, &a, opts) {
                Some(f) => Outcome::new("found", true, format!("a flow with values in {}", a.describe()))
                    .witness(f.to_file(&g)),
                None => Outcome::new("absent", false, format!("no flow with values in {}", a.describe())),
            }
            .details(json!({ "alphabet": a.to_file() })))
        }
        Command::Verify { graph, flow: path, alphabet: a } => {
            let g = load_graph(graph)?;
            let file: FlowFile = from_value(path, payload(path)?)?;
            let f = EdgeAssignment::from_file(&g, &file)?;
            let a = alphabet_for(a, &f)?;
            let check = flow::verify_flow(&g, &f, &a, None)?;
            let text = check.describe(&g, f.carrier());
            Ok(if check.is_valid() {
                Outcome::new("valid", true, format!("a flow with values in {}", a.describe()))
            } else {
                Outcome::new("invalid", false, text.clone())
            }
            .details(json!({ "alphabet": a.to_file(), "check": text })))
        }
        Command::Count { graph, alphabet: a } => {
            let g = load_graph(graph)?;
            let a = alphabet(a)?;
            let n = flow::count_flows(&g, &a)?;
            let verdict = if n > 0 { "found" } else { "absent" };
            Ok(Outcome::new(verdict, n > 0, format!("{n} flows with values in {}", a.describe()))
                .details(json!({ "alphabet": a.to_file(), "count": n })))
        }
        Command::Kflow { graph, k } => {
            let g = load_graph(graph)?;
            let f = flow::find_k_flow_with(&g, *k, opts)?;
            let (kf, zk) = flow::k_flow_iff_zk(&g, *k)?;
            let details = json!({ "k_flow": kf, "z_k_flow": zk, "agree": kf == zk });
            Ok(match f {
                Some(f) => Outcome::new("found", true, format!("a {k}-flow")).witness(f.to_file(&g)),
                None => Outcome::new("absent", false, format!("no {k}-flow")),
            }
            .details(details))
        }
        Command::Contract {
            graph,
            presentation,
            cuts,
            depth,
        } => {
            let specs = |path: &str| -> Result<Vec<CutSpec>> { parse(path, &read(path)?) };
            let (q, map) = match (graph, presentation, cuts, depth) {
                (Some(g), None, Some(c), None) => {
                    let p = PeriodicPresentation::finite(&load_graph(g)?);
                    contract_periodic(&p, &specs(c)?)?
                }
                (None, Some(p), Some(c), None) => contract_periodic(&load_presentation(p)?, &specs(c)?)?,
                (None, Some(p), None, Some(n)) => exhaustion_quotient(&load_presentation(p)?, *n)?,
                _ => {
                    return Err(Error::InvalidParameter(
                        "use --graph with --cuts, or --presentation with --cuts or --depth".into(),
                    ))
                }
            };
            let g = &q.quotient;
            Ok(Outcome::new(
                "valid",
                true,
                format!("quotient with {} vertices and {} edges", g.vertex_count(), g.edge_count()),
            )
            .witness(contraction_json(&q, &map)))
        }
        Command::Infinite { action } => infinite_command(action, opts),
        Command::Color { graph, k, coloring } => {
            let g = load_graph(graph)?;
            if let Some(path) = coloring {
                let file: ColoringFile = from_value(path, payload(path)?)?;
                let c = EdgeColoring::from_file(&g, &file)?;
                let check = coloring::is_semi_coloring(&g, &c)?;
                let text = check.describe(&g);
                return Ok(if check.is_valid() {
                    Outcome::new("valid", true, format!("a semi-{}-edge-colouring", c.k))
                } else {
                    Outcome::new("invalid", false, text.clone())
                }
                .details(json!({ "check": text, "proper": coloring::is_proper_coloring(&g, &c) })));
            }
            Ok(match coloring::find_semi_coloring(&g, *k)? {
                Some(c) => Outcome::new("found", true, format!("a semi-{k}-edge-colouring"))
                    .details(json!({ "proper": coloring::is_proper_coloring(&g, &c) }))
                    .witness(c.to_file(&g)),
                None => Outcome::new("absent", false, format!("no semi-{k}-edge-colouring")),
            })
        }
        Command::ExpandCubic { graph, flow: path } => {
            let g = load_graph(graph)?;
            let file: FlowFile = from_value(path, payload(path)?)?;
            let f = EdgeAssignment::from_file(&g, &file)?;
            let x = gadgets::expand_to_cubic(&g, &f)?;
            let h = &x.graph;
            Ok(Outcome::new(
                "valid",
                true,
                format!("cubic graph with {} vertices carrying a {} flow", h.vertex_count(), file.group),
            )
            .witness(json!({
                "graph": h.to_json(),
                "flow": x.flow.to_file(h),
                "cuts": x.cuts.iter().map(|c| cut_json(h, c)).collect::<Vec<_>>(),
                "classes": class_map(&g, h, &x.class_of),
            })))
        }
        Command::ExpandRegular { graph, coloring: path } => {
            let g = load_graph(graph)?;
            let file: ColoringFile = from_value(path, payload(path)?)?;
            let c = EdgeColoring::from_file(&g, &file)?;
            let x = gadgets::expand_to_regular(&g, &c)?;
            let h = &x.graph;
            Ok(Outcome::new(
                "valid",
                true,
                format!("{}-regular graph with {} vertices, properly coloured", c.k, h.vertex_count()),
            )
            .witness(json!({
                "graph": h.to_json(),
                "coloring": x.coloring.to_file(h),
                "cuts": x.cuts.iter().map(|c| cut_json(h, c)).collect::<Vec<_>>(),
                "classes": class_map(&g, h, &x.class_of),
            })))
        }
        Command::Supereulerian { graph, no_limit } => {
            let g = load_graph(graph)?;
            let limit = (!no_limit).then_some(eulerian::EULERIAN_EDGE_LIMIT);
            Ok(match eulerian::find_spanning_eulerian_with(&g, limit)? {
                Some(c) => {
                    let f = eulerian::supereulerian_flow(&g, &c)?;
                    Outcome::new("found", true, "a spanning Eulerian subgraph and a non-elusive Z2xZ2-flow")
                        .witness(json!({ "subgraph": c.ids(&g), "flow": f.to_file(&g) }))
                }
                None => Outcome::new("absent", false, "no spanning Eulerian subgraph"),
            })
        }
        Command::HamiltonFlow {
            presentation,
            circle,
            max_depth,
        } => {
            let p = load_presentation(presentation)?;
            let t: CircleTemplate = parse(circle, &read(circle)?)?;
            Ok(match eulerian::hamilton_shadow_flow(&p, &t, *max_depth)? {
                ShadowVerdict::YesUpTo { depth, quotient, flow } => Outcome::new(
                    "yes-up-to",
                    true,
                    format!("flows built at every depth up to {depth}; this is not a proof for the infinite graph"),
                )
                .details(json!({ "depth": depth }))
                .witness(json!({ "quotient": quotient, "flow": flow })),
                ShadowVerdict::No(fail) => {
                    let reason = fail.reason.clone();
                    Outcome::new("no-with-certificate", false, format!("depth {}: {reason}", fail.depth))
                        .witness(*fail)
                }
            })
        }
        Command::Tension { action } => tension_command(action),
    }
}

fn class_map(g: &Multigraph, h: &Multigraph, class_of: &[usize]) -> Value {
    let m: serde_json::Map<String, Value> = (0..h.vertex_count())
        .map(|v| (h.vertex_id(v).to_string(), json!(g.vertex_id(class_of[v]))))
        .collect();
    Value::Object(m)
}

fn verdict_outcome(v: Verdict, what: &str) -> Outcome {
    match v {
        Verdict::YesUpTo(depth) => Outcome::new(
            "yes-up-to",
            true,
            format!(
                "every depth up to {depth} admits a {what}; this is not a proof that the infinite graph has one"
            ),
        )
        .details(json!({
            "depth": depth,
            "note": "finite depths only: existence for the infinite graph is not established",
        })),
        Verdict::No(cert) => Outcome::new(
            "no-with-certificate",
            false,
            format!("no {what} at depth {}, so none on the infinite graph", cert.depth),
        )
        .details(json!({ "depth": cert.depth }))
        .witness(*cert),
    }
}

fn infinite_command(action: &InfiniteAction, opts: SearchOptions) -> Result<Outcome> {
    match action {
        InfiniteAction::Check {
            presentation,
            alphabet: a,
            max_depth,
            certificate,
            contract_onto,
        } => {
            let p = load_presentation(presentation)?;
            let a = alphabet(a)?;
            let mut v = infinite::check_infinite_with(&p, &a, *max_depth, opts)?;
            if let (Verdict::No(cert), Some(name)) = (&mut v, contract_onto) {
                let pattern = fixtures::graph_by_name(name)
                    .or_else(|| named::by_name(name))
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown graph `{name}`")))?;
                infinite::attach_witness(cert, name, &pattern)?;
            }
            if let (Verdict::No(cert), Some(path)) = (&v, certificate) {
                let text = canonical_json(&serde_json::to_value(cert.as_ref()).expect("serializable"));
                fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{path}: {e}")))?;
            }
            Ok(verdict_outcome(v, &format!("flow with values in {}", a.describe())))
        }
        InfiniteAction::Replay {
            certificate,
            presentation,
        } => {
            let cert: ObstructionCertificate = from_value(certificate, payload(certificate)?)?;
            let ok = match presentation {
                Some(p) => infinite::replay_against(&load_presentation(p)?, &cert)?,
                None => infinite::replay(&cert)?,
            };
            Ok(if ok {
                Outcome::new("valid", true, format!("absence reproduced at depth {}", cert.depth))
            } else {
                Outcome::new("invalid", false, "the certificate does not replay")
            })
        }
    }
}

fn tension_command(action: &TensionAction) -> Result<Outcome> {
    match action {
        TensionAction::Find { graph, alphabet: a } => {
            let g = load_graph(graph)?;
            let a = alphabet(a)?;
            Ok(match tension::find_tension(&g, &a)? {
                Some(f) => Outcome::new("found", true, format!("a tension with values in {}", a.describe()))
                    .witness(f.to_file(&g)),
                None => Outcome::new("absent", false, format!("no tension with values in {}", a.describe())),
            })
        }
        TensionAction::Verify {
            graph,
            tension: path,
            alphabet: a,
        } => {
            let g = load_graph(graph)?;
            let file: FlowFile = from_value(path, payload(path)?)?;
            let f = EdgeAssignment::from_file(&g, &file)?;
            let a = alphabet_for(a, &f)?;
            if f.carrier() != a.carrier() {
                return Err(Error::GroupMismatch(
                    f.carrier().label().to_string(),
                    a.carrier().label().to_string(),
                ));
            }
            if let Some(e) = (0..g.edge_count()).find(|&e| !a.contains_code(f.value(e))) {
                return Ok(Outcome::new(
                    "invalid",
                    false,
                    format!("edge `{}` has a value outside {}", g.edge_id(e), a.describe()),
                ));
            }
            let check = tension::verify_tension(&g, &f)?;
            let text = check.describe(&g, f.carrier());
            Ok(if check.is_valid() {
                Outcome::new("valid", true, format!("a tension with values in {}", a.describe()))
            } else {
                Outcome::new("invalid", false, text)
            })
        }
        TensionAction::CheckInfinite {
            presentation,
            alphabet: a,
            max_depth,
        } => {
            let p = load_presentation(presentation)?;
            let a = if a.group.is_none() && a.k.is_none() && a.alphabet.is_none() {
                FlowAlphabet::nonzero(&FiniteAbelianGroup::cyclic(2)?)
            } else {
                alphabet(a)?
            };
            let v = tension::check_infinite_tension(&p, &a, *max_depth)?;
            Ok(verdict_outcome(v, &format!("tension with values in {}", a.describe())))
        }
    }
}
