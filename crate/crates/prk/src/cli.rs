//! Command-line surface: `prk check|reduce|generate|rank|tgain|decompose|export-svg`.

use std::collections::BTreeSet;
use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use prk_core::henneberg::{decide_with, generate_with, reduce_with, Verdict, Witness};
use prk_core::linear::generic_rank;
use prk_core::sparsity::tree_map_decompose;
use prk_core::tgain::{t_gain_auto, t_gain_procedure, TGainTable};
use prk_core::{Error, Gain, GainValue, Limits, OrbitGraph, TorusModel};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::format::{AnyGraph, CertificateDoc, FormatError, GraphDoc};
use crate::svg;

pub const BOUND_VAR: &str = "PRK_BRUTE_FORCE_BOUND";

#[derive(Parser, Debug)]
#[command(name = "prk", version, about = "Generic rigidity of periodic orbit frameworks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide generic minimal rigidity.
    Check(CheckArgs),
    /// Reduce to a single loop and print the construction certificate.
    Reduce(ReduceArgs),
    /// Build a random minimally rigid graph from a single loop.
    Generate(GenerateArgs),
    /// Exact rank of the rigidity matrix at random rational placements.
    Rank(RankArgs),
    /// Potentials and T-gains for a spanning tree.
    Tgain(TgainArgs),
    /// Split a P(2,1)-graph into a spanning tree and a connected map graph.
    Decompose(DecomposeArgs),
    /// Draw the derived framework over a window of cells.
    ExportSvg(SvgArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Orbit-graph JSON document.
    pub path: Option<PathBuf>,
    /// Process every *.json file in a directory.
    #[arg(long, conflicts_with = "path")]
    pub batch: Option<PathBuf>,
    /// Model to use instead of the document's.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also compute the rank and report agreement.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub input: Input,
    /// Write the certificate document here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(short = 'n', long = "vertices")]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "x-variable")]
    pub model: String,
    /// Print graph and certificate together.
    #[arg(long)]
    pub json: bool,
    /// Write the graph document here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the certificate document here.
    #[arg(long)]
    pub cert: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    #[command(flatten)]
    pub input: Input,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct TgainArgs {
    #[command(flatten)]
    pub input: Input,
    /// Comma-separated edge ids of a spanning tree; BFS tree if absent.
    #[arg(long, value_delimiter = ',')]
    pub tree: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub root: usize,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: Input,
}

#[derive(Args, Debug)]
pub struct SvgArgs {
    pub path: PathBuf,
    /// Cells drawn, as WxH.
    #[arg(long, default_value = "3x3")]
    pub window: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed of the placement when the document has none.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// What a command prints and how it exits.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report { code: 0, stdout, stderr: String::new() }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Report { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

macro_rules! on_graph {
    ($g:expr, $h:ident => $body:expr) => {
        match $g {
            AnyGraph::Pair($h) => $body,
            AnyGraph::Scalar($h) => $body,
        }
    };
}

pub fn limits() -> Result<Limits, String> {
    match std::env::var(BOUND_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Limits::new)
            .map_err(|_| format!("{BOUND_VAR} must be a vertex count, got {v:?}")),
        Err(_) => Ok(Limits::default()),
    }
}

fn parse_model(name: &str) -> Result<TorusModel, String> {
    TorusModel::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = TorusModel::ALL.iter().map(|m| m.name()).collect();
        format!("unknown model {name:?}; expected one of {}", names.join(", "))
    })
}

struct Loaded {
    model: TorusModel,
    graph: AnyGraph,
    doc: GraphDoc,
    warning: String,
}

fn load(path: &Path, model: Option<&str>) -> Result<Loaded, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let doc = GraphDoc::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut warning = String::new();
    let model = match model {
        Some(name) => {
            let m = parse_model(name)?;
            if doc.model != m.name() {
                warning = format!("warning: {}: model {} overrides the document's {:?}\n", path.display(), m.name(), doc.model);
            }
            m
        }
        None => doc.model().map_err(|e: FormatError| format!("{}: {e}", path.display()))?,
    };
    let graph = doc.graph(model).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Loaded { model, graph, doc, warning })
}

/// Runs `one` on the input file, or on every `*.json` file of the batch
/// directory in parallel, reporting files in name order.
fn each_input(input: &Input, one: impl Fn(Loaded) -> Report + Sync) -> Report {
    let run = |path: &Path| match load(path, input.model.as_deref()) {
        Ok(loaded) => {
            let warning = loaded.warning.clone();
            let mut r = one(loaded);
            r.stderr.insert_str(0, &warning);
            r
        }
        Err(e) => Report::input_error(e),
    };
    if let Some(path) = &input.path {
        return run(path);
    }
    let Some(dir) = &input.batch else {
        return Report::input_error("give a document path or --batch DIR");
    };
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(e) => return Report::input_error(format!("{}: {e}", dir.display())),
    };
    files.sort();
    let reports: Vec<(PathBuf, Report)> = files.par_iter().map(|p| (p.clone(), run(p))).collect();
    let mut out = Report::default();
    if input.json {
        let items: Vec<Value> = reports
            .iter()
            .map(|(p, r)| {
                let body = serde_json::from_str::<Value>(&r.stdout).unwrap_or(Value::Null);
                json!({"file": p.display().to_string(), "exit_code": r.code, "report": body, "error": r.stderr.trim()})
            })
            .collect();
        out.stdout = serde_json::to_string_pretty(&items).unwrap_or_default() + "\n";
    }
    for (p, r) in &reports {
        if !input.json {
            let _ = writeln!(out.stdout, "== {}", p.display());
            out.stdout += &r.stdout;
        }
        out.stderr += &r.stderr;
        out.code = out.code.max(r.code);
    }
    out
}

fn set_json(s: &BTreeSet<usize>) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

fn gain_json(m: Gain, arity: usize) -> Value {
    if arity == 1 {
        json!([m.x])
    } else {
        json!([m.x, m.y])
    }
}

pub fn witness_json(w: &Witness, arity: usize) -> Value {
    match w {
        Witness::Count { vertices, edges, expected } => {
            json!({"kind": "count", "vertices": vertices, "edges": edges, "expected": expected})
        }
        Witness::Disconnected { component } => json!({"kind": "disconnected", "component": set_json(component)}),
        Witness::Overbraced { subset, i_count, ell } => json!({
            "kind": "overbraced",
            "subset": subset.as_ref().map(set_json),
            "induced_edges": i_count,
            "ell": ell,
        }),
        Witness::NoCircuit => json!({"kind": "no-circuit"}),
        Witness::Gain(g) => json!({
            "kind": "gain",
            "subset": set_json(&g.subset),
            "removed_edge": g.removed_edge,
            "condition": g.condition.to_string(),
            "generators": g.generators.iter().map(|&m| gain_json(m, arity)).collect::<Vec<_>>(),
        }),
        Witness::Exhausted => json!({"kind": "exhausted"}),
        Witness::Stuck { vertices } => json!({"kind": "stuck", "vertices": vertices}),
    }
}

fn certificate_text(cert: &prk_core::ConstructionCertificate) -> String {
    let mut s = format!("base loop at {} with gain {}\n", cert.base.vertex, cert.base.gain);
    for (i, mv) in cert.moves.iter().enumerate() {
        let _ = writeln!(s, "{i:>3}: {mv}");
    }
    s
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap_or_default() + "\n"
}

/// Errors that come from the input rather than from the graph's rigidity.
fn failed(e: Error) -> Report {
    Report::input_error(e)
}

fn check(args: &CheckArgs, limits: &Limits) -> Report {
    each_input(&args.input, |l| {
        let arity = l.model.gain_arity();
        let verdict = match on_graph!(&l.graph, g => decide_with(g, l.model, limits)) {
            Ok(v) => v,
            Err(e) => return failed(e),
        };
        let oracle = if args.oracle {
            match on_graph!(&l.graph, g => generic_rank(g, l.model, args.trials, args.seed)) {
                Ok(rank) => Some(rank),
                Err(e) => return failed(e),
            }
        } else {
            None
        };
        let full = l.model.full_rank(l.graph.n_vertices());
        let rigid = verdict.is_rigid();
        let (name, certificate, witness) = match &verdict {
            Verdict::Rigid { certificate } => ("rigid", certificate.as_ref(), None),
            Verdict::Flexible { witness } => ("flexible", None, Some(witness)),
            Verdict::CountMismatch { .. } => ("count-mismatch", None, None),
        };
        let agrees = oracle.map(|r| (r == full) == rigid);
        let stdout = if args.input.json {
            let mut v = json!({
                "model": l.model.name(),
                "n": l.graph.n_vertices(),
                "edges": l.graph.n_edges(),
                "verdict": name,
                "certificate": certificate.map(|c| serde_json::to_value(CertificateDoc::from_certificate(c, arity)).unwrap_or_default()),
                "witness": witness.map(|w| witness_json(w, arity)),
            });
            if let Verdict::CountMismatch { expected, .. } = verdict {
                v["expected_edges"] = json!(expected);
            }
            if let Some(rank) = oracle {
                v["oracle"] = json!({"rank": rank, "full_rank": full, "agrees": agrees});
            }
            pretty(&v)
        } else {
            let mut s = match &verdict {
                Verdict::Rigid { .. } => format!("rigid on the {} torus model\n", l.model),
                Verdict::Flexible { witness } => format!("flexible: {witness}\n"),
                Verdict::CountMismatch { vertices, edges, expected } => {
                    format!("count mismatch: {edges} edges on {vertices} vertices, {expected} needed\n")
                }
            };
            if let Some(c) = certificate {
                s += &certificate_text(c);
            }
            if let Some(rank) = oracle {
                let word = if agrees == Some(true) { "agrees" } else { "DISAGREES" };
                let _ = writeln!(s, "oracle: rank {rank} of {full}, {word}");
            }
            s
        };
        Report { code: if rigid { 0 } else { 1 }, stdout, stderr: String::new() }
    })
}

fn reduce(args: &ReduceArgs, limits: &Limits) -> Report {
    let mut report = each_input(&args.input, |l| {
        let arity = l.model.gain_arity();
        match on_graph!(&l.graph, g => reduce_with(g, l.model, limits)) {
            Ok(cert) => {
                let doc = CertificateDoc::from_certificate(&cert, arity);
                let stdout = if args.input.json { doc.to_json() + "\n" } else { certificate_text(&cert) };
                let mut r = Report::ok(stdout);
                if let Some(out) = &args.out {
                    if let Err(e) = std::fs::write(out, doc.to_json() + "\n") {
                        return Report::input_error(format!("{}: {e}", out.display()));
                    }
                    r.stderr = format!("certificate written to {}\n", out.display());
                }
                r
            }
            Err(Error::NotReducible(w)) => {
                let stdout = if args.input.json {
                    pretty(&json!({"error": "not-reducible", "witness": witness_json(&w, arity)}))
                } else {
                    format!("not reducible: {w}\n")
                };
                Report { code: 1, stdout, stderr: String::new() }
            }
            Err(e) => failed(e),
        }
    });
    if args.out.is_some() && args.input.batch.is_some() {
        report = Report::input_error("--out takes a single input");
    }
    report
}

fn generate(args: &GenerateArgs, limits: &Limits) -> Report {
    let model = match parse_model(&args.model) {
        Ok(m) => m,
        Err(e) => return Report::input_error(e),
    };
    if args.n == 0 {
        return Report::input_error("-n must be at least 1");
    }
    let built = match model.gain_arity() {
        1 => generate_with::<i128>(args.n, args.seed, model, limits).map(|(g, c)| (GraphDoc::from_graph(&g, model), c)),
        _ => generate_with::<Gain>(args.n, args.seed, model, limits).map(|(g, c)| (GraphDoc::from_graph(&g, model), c)),
    };
    let (doc, cert) = match built {
        Ok(x) => x,
        Err(e) => return failed(e),
    };
    let cert_doc = CertificateDoc::from_certificate(&cert, model.gain_arity());
    for (path, text) in [(&args.out, doc.to_json()), (&args.cert, cert_doc.to_json())] {
        if let Some(path) = path {
            if let Err(e) = std::fs::write(path, text + "\n") {
                return Report::input_error(format!("{}: {e}", path.display()));
            }
        }
    }
    let stdout = if args.json {
        pretty(&json!({"graph": doc, "certificate": cert_doc}))
    } else if args.out.is_some() {
        String::new()
    } else {
        doc.to_json() + "\n"
    };
    Report::ok(stdout)
}

fn rank(args: &RankArgs) -> Report {
    each_input(&args.input, |l| {
        let rank = match on_graph!(&l.graph, g => generic_rank(g, l.model, args.trials, args.seed)) {
            Ok(r) => r,
            Err(e) => return failed(e),
        };
        let full = l.model.full_rank(l.graph.n_vertices());
        let stdout = if args.input.json {
            pretty(&json!({
                "model": l.model.name(),
                "rank": rank,
                "full_rank": full,
                "edges": l.graph.n_edges(),
                "inf_rigid": rank == full,
                "independent": rank == l.graph.n_edges(),
            }))
        } else {
            format!("{rank}\n")
        };
        Report::ok(stdout)
    })
}

fn table_json<M: GainValue>(t: &TGainTable<M>) -> Value {
    let arity = M::ARITY;
    json!({
        "tree_edges": set_json(&t.tree_edges),
        "roots": t.roots,
        "potentials": t.potentials.iter().map(|m| gain_json(m.to_pair(), arity)).collect::<Vec<_>>(),
        "t_gains": t.t_gains.iter().map(|m| gain_json(m.to_pair(), arity)).collect::<Vec<_>>(),
    })
}

fn table_text<M: GainValue>(t: &TGainTable<M>) -> String {
    let mut s = String::from("tree edges:");
    for id in &t.tree_edges {
        let _ = write!(s, " {id}");
    }
    s.push_str("\npotentials:\n");
    for (v, m) in t.potentials.iter().enumerate() {
        let _ = writeln!(s, "  v{v} {m}");
    }
    s.push_str("t-gains:\n");
    for (e, m) in t.t_gains.iter().enumerate() {
        let _ = writeln!(s, "  e{e} {m}");
    }
    s
}

fn tgain(args: &TgainArgs) -> Report {
    fn one<M: GainValue>(g: &OrbitGraph<M>, args: &TgainArgs) -> Report {
        let table = match &args.tree {
            Some(tree) => match t_gain_procedure(g, &tree.iter().copied().collect(), args.root) {
                Ok(t) => t,
                Err(e) => return failed(e),
            },
            None => t_gain_auto(g),
        };
        Report::ok(if args.input.json { pretty(&table_json(&table)) } else { table_text(&table) })
    }
    each_input(&args.input, |l| on_graph!(&l.graph, g => one(g, args)))
}

fn decompose(args: &DecomposeArgs) -> Report {
    each_input(&args.input, |l| match on_graph!(&l.graph, g => tree_map_decompose(g)) {
        Ok(d) => {
            let stdout = if args.input.json {
                pretty(&json!({"tree_edges": set_json(&d.tree_edges), "map_edges": set_json(&d.map_edges)}))
            } else {
                let ids = |s: &BTreeSet<usize>| s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
                format!("tree: {}\nmap: {}\n", ids(&d.tree_edges), ids(&d.map_edges))
            };
            Report::ok(stdout)
        }
        Err(Error::NotP21) => Report { code: 1, stdout: "not a P(2,1)-graph\n".into(), stderr: String::new() },
        Err(e) => failed(e),
    })
}

fn export_svg(args: &SvgArgs) -> Report {
    let Some((w, h)) = svg::parse_window(&args.window) else {
        return Report::input_error(format!("bad window {:?}; expected WxH with positive sides", args.window));
    };
    let l = match load(&args.path, None) {
        Ok(l) => l,
        Err(e) => return Report::input_error(e),
    };
    let placement = match &l.doc.placement {
        Some(p) if p.positions.len() != l.graph.n_vertices() => {
            return Report::input_error("placement needs one position per vertex");
        }
        Some(p) => p.clone(),
        None => svg::random_placement(l.graph.n_vertices(), args.seed),
    };
    let drawing = match svg::render(&l.graph.lifted(), &placement, w, h) {
        Ok(s) => s,
        Err(e) => return failed(e),
    };
    match &args.out {
        Some(out) => match std::fs::write(out, &drawing) {
            Ok(()) => Report { code: 0, stdout: String::new(), stderr: format!("wrote {}\n", out.display()) },
            Err(e) => Report::input_error(format!("{}: {e}", out.display())),
        },
        None => Report::ok(drawing),
    }
}

pub fn run(cli: &Cli) -> Report {
    let limits = match limits() {
        Ok(l) => l,
        Err(e) => return Report::input_error(e),
    };
    match &cli.command {
        Command::Check(a) => check(a, &limits),
        Command::Reduce(a) => reduce(a, &limits),
        Command::Generate(a) => generate(a, &limits),
        Command::Rank(a) => rank(a),
        Command::Tgain(a) => tgain(a),
        Command::Decompose(a) => decompose(a),
        Command::ExportSvg(a) => export_svg(a),
    }
}
