//! `cist` — completely independent spanning trees in hypercubes.
//!
//! Exit-status contract: 0 = success / condition holds / family accepted;
//! 1 = mathematically negative result (condition fails, family rejected,
//! route unreachable); 2 = usage or data error, reported as an `error:`
//! line on stderr.

use cist::io::{parse_edge_list, parse_family_json, render_dot, render_edge_list, render_family_json, FamilyDocument};
use cist::lift::lift_to;
use cist::verify::{check_document, CistFamily, Verdict};
use cist::{
    condition_bipartite, condition_regular, conjecture_verdict, fault_route, search_exceptions,
    ConditionReport, FaultSet, Q7Archive, RouteOutcome, SpanningTree, Vertex,
};
use clap::{Parser, Subcommand, ValueEnum};
use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cist", version, about = "Completely independent spanning trees in hypercubes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load, validate, and verify the embedded dimension-7 family
    Q7 {
        /// Write the family as JSON
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Lift a verified family to a higher dimension
    Lift {
        /// Target dimension
        #[arg(long, value_name = "N")]
        to: u32,
        /// Input family (default: the embedded dimension-7 family)
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        /// Write the lifted family as JSON
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Verify a family against the edge/internal-vertex criterion
    Verify {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Also run the exhaustive definitional check (dim ≤ 10)
        #[arg(long)]
        brute_force: bool,
    },
    /// Evaluate the necessary-condition inequality
    Check {
        /// Hypercube dimension (sets k = N, vertices = 2^N)
        #[arg(long, value_name = "N", conflicts_with_all = ["k", "vertices"], required_unless_present = "k")]
        dim: Option<u32>,
        /// Regularity of the graph
        #[arg(long, value_name = "K", requires = "vertices")]
        k: Option<u64>,
        /// Vertex count of the graph
        #[arg(long, value_name = "V", requires = "k")]
        vertices: Option<u64>,
        /// Use the bipartite refinement instead of the regular bound
        #[arg(long)]
        bipartite: bool,
    },
    /// Scan for even m where m/2 divides 2^(m−1) − 1
    Search {
        #[arg(long, value_name = "L")]
        limit: u64,
        /// Print a JSON array instead of one value per line
        #[arg(long)]
        json: bool,
    },
    /// Classify Q_n for the half-degree conjecture
    Verdict {
        #[arg(long, value_name = "N")]
        dim: u64,
    },
    /// Route between two vertices, avoiding faulty interiors
    Route {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long, value_name = "U")]
        src: Vertex,
        #[arg(long, value_name = "V")]
        dst: Vertex,
        /// Faulty vertex (repeatable)
        #[arg(long = "fault", value_name = "F")]
        fault: Vec<Vertex>,
    },
    /// Per-tree diameter, internal-vertex count, and center
    Stats {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
    },
    /// Convert a family to DOT, JSON, or edge-list files
    Export {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long)]
        format: ExportFormat,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
    Edges,
}

type CliResult = Result<ExitCode, Box<dyn Error>>;

fn main() -> ExitCode {
    // die quietly when the reader of a pipeline goes away (`cist stats | head`)
    // instead of panicking on the broken pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> CliResult {
    match cmd {
        Cmd::Q7 { out } => cmd_q7(out.as_deref()),
        Cmd::Lift { to, r#in, out } => cmd_lift(to, r#in.as_deref(), out.as_deref()),
        Cmd::Verify { r#in, brute_force } => cmd_verify(&r#in, brute_force),
        Cmd::Check { dim, k, vertices, bipartite } => cmd_check(dim, k, vertices, bipartite),
        Cmd::Search { limit, json } => cmd_search(limit, json),
        Cmd::Verdict { dim } => cmd_verdict(dim),
        Cmd::Route { r#in, src, dst, fault } => cmd_route(&r#in, src, dst, &fault),
        Cmd::Stats { r#in } => cmd_stats(&r#in),
        Cmd::Export { r#in, format, out } => cmd_export(&r#in, format, &out),
    }
}

/// Reads a family document: JSON when the file starts with `{`, otherwise a
/// single-tree edge list. Metadata warnings go to stderr.
fn load_document(path: &Path) -> Result<FamilyDocument, Box<dyn Error>> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let (doc, warnings) = parse_family_json(&text)?;
        for w in warnings {
            eprintln!("warning: {w}");
        }
        Ok(doc)
    } else {
        let doc = parse_edge_list(&text)?;
        Ok(FamilyDocument::new(doc.dim, vec![doc.edges]))
    }
}

/// Builds and criterion-verifies a family, mapping a rejection to the
/// exit-1 path by returning it as a printable verdict.
fn load_verified(path: &Path) -> Result<Result<CistFamily, Verdict>, Box<dyn Error>> {
    let doc = load_document(path)?;
    let (family, verdict) = check_document(&doc)?;
    match (family, verdict) {
        (Some(f), Verdict::Accepted) => Ok(Ok(f)),
        (_, rejected) => Ok(Err(rejected)),
    }
}

fn print_tree_line(i: usize, t: &SpanningTree) {
    let center: Vec<String> = t.center().iter().map(|c| c.to_string()).collect();
    println!(
        "T{}: diameter={} internal={} center={}",
        i + 1,
        t.diameter(),
        t.internal_vertices().len(),
        center.join(",")
    );
}

fn write_family(family: &CistFamily, out: &Path) -> Result<(), Box<dyn Error>> {
    fs::write(out, render_family_json(&family.to_document()))
        .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_q7(out: Option<&Path>) -> CliResult {
    let archive = Q7Archive::load()?;
    let mut family = CistFamily::new(archive.into_trees()).expect("three trees, one dimension");
    println!("dim: {}", family.dim());
    println!("trees: {}", family.k());
    for (i, t) in family.trees().iter().enumerate() {
        print_tree_line(i, t);
    }
    let verdict = family.verify_criterion();
    match &verdict {
        Verdict::Accepted => println!("criterion: accepted"),
        Verdict::Rejected(v) => {
            println!("criterion: rejected");
            println!("violation: {v}");
        }
    }
    if let Some(path) = out {
        write_family(&family, path)?;
    }
    Ok(if verdict.is_accepted() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn embedded_family() -> Result<CistFamily, Box<dyn Error>> {
    Ok(CistFamily::new(Q7Archive::load()?.into_trees()).expect("three trees, one dimension"))
}

fn cmd_lift(to: u32, input: Option<&Path>, out: Option<&Path>) -> CliResult {
    let mut family = match input {
        None => embedded_family()?,
        Some(path) => match load_verified(path)? {
            Ok(f) => f,
            Err(verdict) => return reject(verdict),
        },
    };
    let verdict = family.verify_criterion();
    if !verdict.is_accepted() {
        return reject(verdict);
    }
    let lifted = lift_to(&family, to)?;
    let n = lifted.dim();
    println!("dim: {n}");
    println!("trees: {}", lifted.k());
    let diameters: Vec<String> = lifted.trees().iter().map(|t| t.diameter().to_string()).collect();
    println!("diameters: {}", diameters.join(", "));
    if lifted.k() == 3 {
        let bounds = [2 * n + 1, 2 * n + 4, 2 * n + 3];
        let ok = lifted
            .trees()
            .iter()
            .zip(bounds)
            .all(|(t, b)| t.diameter() <= b);
        println!(
            "bounds: {}/{}/{} {}",
            bounds[0],
            bounds[1],
            bounds[2],
            if ok { "OK" } else { "VIOLATED" }
        );
    }
    if let Some(path) = out {
        write_family(&lifted, path)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn reject(verdict: Verdict) -> CliResult {
    println!("criterion: rejected");
    if let Verdict::Rejected(v) = verdict {
        println!("violation: {v}");
    }
    Ok(ExitCode::from(1))
}

fn cmd_verify(input: &Path, brute_force: bool) -> CliResult {
    let doc = load_document(input)?;
    let (family, verdict) = check_document(&doc)?;
    match &verdict {
        Verdict::Accepted => println!("criterion: accepted"),
        Verdict::Rejected(v) => {
            println!("criterion: rejected");
            println!("violation: {v}");
        }
    }
    let mut accepted = verdict.is_accepted();
    if brute_force {
        match family {
            Some(f) => match f.verify_definition()? {
                Verdict::Accepted => println!("definition: accepted"),
                Verdict::Rejected(v) => {
                    println!("definition: rejected");
                    println!("violation: {v}");
                    accepted = false;
                }
            },
            None => eprintln!("warning: definitional check skipped, family did not build"),
        }
    }
    Ok(if accepted { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn print_report(r: &ConditionReport) {
    println!("variant: {}", r.variant);
    println!("k: {}", r.k);
    println!("vertices: {}", r.nv);
    println!("lhs: {}", r.lhs);
    println!("rhs: {}", r.rhs);
    println!("holds: {}", r.holds);
}

fn cmd_check(dim: Option<u32>, k: Option<u64>, vertices: Option<u64>, bipartite: bool) -> CliResult {
    let (k, nv) = match dim {
        Some(n) => {
            if n >= 64 {
                return Err(format!("dimension {n} overflows the explicit vertex count").into());
            }
            (u64::from(n), 1u64 << n)
        }
        None => (k.expect("clap enforces the group"), vertices.expect("clap enforces the group")),
    };
    let report = if bipartite {
        condition_bipartite(k, nv)?
    } else {
        condition_regular(k, nv)?
    };
    print_report(&report);
    Ok(if report.holds { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_search(limit: u64, json: bool) -> CliResult {
    let found = search_exceptions(limit);
    if json {
        println!("{}", serde_json::to_string(&found)?);
    } else {
        for m in &found {
            println!("{m}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verdict(dim: u64) -> CliResult {
    let v = conjecture_verdict(dim);
    println!("n: {}", v.n);
    println!("class: {}", v.class);
    println!("detail: {}", v.detail);
    Ok(ExitCode::SUCCESS)
}

fn cmd_route(input: &Path, src: Vertex, dst: Vertex, faults: &[Vertex]) -> CliResult {
    let family = match load_verified(input)? {
        Ok(f) => f,
        Err(verdict) => return reject(verdict),
    };
    let faults = FaultSet::new(family.dim(), faults.iter().copied())?;
    match fault_route(&family, src, dst, &faults)? {
        RouteOutcome::Routed { tree, path } => {
            println!("tree: {}", tree + 1);
            let labels: Vec<String> = path.iter().map(|v| v.to_string()).collect();
            println!("path: {}", labels.join(" "));
            Ok(ExitCode::SUCCESS)
        }
        RouteOutcome::Unreachable { blocked } => {
            println!("unreachable");
            for (tree, v) in blocked {
                println!("T{} blocked at {v}", tree + 1);
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_stats(input: &Path) -> CliResult {
    let doc = load_document(input)?;
    println!("dim: {}", doc.dim);
    println!("trees: {}", doc.trees.len());
    for (i, edges) in doc.trees.iter().enumerate() {
        let t = SpanningTree::from_edges(doc.dim, edges)
            .map_err(|e| format!("tree T{}: {e}", i + 1))?;
        print_tree_line(i, &t);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(input: &Path, format: ExportFormat, out: &Path) -> CliResult {
    let doc = load_document(input)?;
    match format {
        ExportFormat::Dot => {
            fs::write(out, render_dot(&doc))
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            println!("wrote {}", out.display());
        }
        ExportFormat::Json => {
            fs::write(out, render_family_json(&doc))
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            println!("wrote {}", out.display());
        }
        ExportFormat::Edges => {
            // one edge-list file per tree; a multi-tree family gets _t1.._tk
            // suffixes since the format holds a single tree
            if doc.trees.len() == 1 {
                fs::write(out, render_edge_list(doc.dim, &doc.trees[0]))
                    .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
                println!("wrote {}", out.display());
            } else {
                for (i, edges) in doc.trees.iter().enumerate() {
                    let path = suffixed(out, i + 1);
                    fs::write(&path, render_edge_list(doc.dim, edges))
                        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
                    println!("wrote {}", path.display());
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn suffixed(out: &Path, i: usize) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("family");
    let name = match out.extension().and_then(|s| s.to_str()) {
        Some(ext) => format!("{stem}_t{i}.{ext}"),
        None => format!("{stem}_t{i}"),
    };
    out.with_file_name(name)
}

// The integration tests drive the binary end to end; see tests/cli.rs.
