//! Command line driver: computes the geometric abelian fundamental group
//! structure of X_0(p) over Q_p for one prime or a range, in text, JSON,
//! or CSV, optionally attaching the dual graph and caching censuses.
//!
//! Exit codes: 0 all cross checks passed, 1 some reported check failed,
//! 2 unusable input or internal error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{ArgGroup, Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use x0p_core::dualgraph::{build_graph, GraphRecord};
use x0p_core::invariants::{assemble, assemble_with_census};
use x0p_core::ssenum::{census, CensusRecord, SupersingularCensus};
use x0p_core::zlinalg::AbGroup;
use x0p_core::{primes_between, Pi1Report};

const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "x0p",
    version,
    about = "Geometric abelian fundamental group of the modular curve X0(p) over Q_p",
    group(ArgGroup::new("target").required(true).args(["prime", "range"]))
)]
struct Cli {
    /// Analyze a single prime.
    #[arg(long, value_name = "P")]
    prime: Option<u64>,

    /// Analyze every prime in an inclusive range.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"])]
    range: Option<Vec<u64>>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Attach the special fiber dual graph to each report (needs p >= 5).
    #[arg(long)]
    emit_graph: bool,

    /// Cache computed censuses as JSON files in this directory.
    #[arg(long, value_name = "PATH")]
    cache_dir: Option<PathBuf>,

    /// Worker threads for range sweeps; 0 uses every core.
    #[arg(long, default_value_t = 0, value_name = "N")]
    jobs: usize,

    /// Refuse primes above this bound.
    #[arg(long, default_value_t = 10_000, value_name = "BOUND")]
    safety_limit: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// One report, optionally with its graph, exactly as emitted on the wire.
#[derive(Serialize, Deserialize)]
struct ReportDoc {
    #[serde(flatten)]
    report: Pi1Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<GraphRecord>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    if cli.emit_graph && cli.format == Format::Csv {
        bail!("--emit-graph cannot be combined with --format csv");
    }
    if cli.emit_graph {
        if let Some(p) = cli.prime {
            if p < 5 {
                bail!("--emit-graph needs p >= 5; X0({p}) has no supersingular dual graph");
            }
        }
    }
    let primes = target_primes(cli)?;
    let docs = compute_all(&primes, cli)?;
    match cli.format {
        Format::Text => emit_text(&docs, cli),
        Format::Json => emit_json(&docs, cli)?,
        Format::Csv => emit_csv(&docs),
    }
    Ok(docs.iter().all(|d| d.report.checks.all()))
}

fn target_primes(cli: &Cli) -> anyhow::Result<Vec<u64>> {
    if let Some(p) = cli.prime {
        if p > cli.safety_limit {
            bail!(
                "{p} exceeds the safety limit {}; raise --safety-limit to proceed",
                cli.safety_limit
            );
        }
        // Primality is enforced by the assembly itself.
        return Ok(vec![p]);
    }
    let r = cli.range.as_ref().expect("clap target group");
    let (min, max) = (r[0], r[1]);
    if min > max {
        bail!("range minimum {min} exceeds maximum {max}");
    }
    if max > cli.safety_limit {
        bail!(
            "range maximum {max} exceeds the safety limit {}; raise --safety-limit to proceed",
            cli.safety_limit
        );
    }
    Ok(primes_between(min, max))
}

fn compute_one(p: u64, cache: Option<&Path>, emit_graph: bool) -> anyhow::Result<ReportDoc> {
    if p < 5 {
        return Ok(ReportDoc {
            report: assemble(p)?,
            graph: None,
        });
    }
    let c = census_cached(p, cache)?;
    let report = assemble_with_census(&c)?;
    let graph = if emit_graph {
        Some(GraphRecord::from(&build_graph(&c)?))
    } else {
        None
    };
    Ok(ReportDoc { report, graph })
}

fn compute_all(primes: &[u64], cli: &Cli) -> anyhow::Result<Vec<ReportDoc>> {
    let cache = cli.cache_dir.as_deref();
    #[cfg(feature = "parallel")]
    if primes.len() > 1 && cli.jobs != 1 {
        use rayon::prelude::*;
        let mut builder = rayon::ThreadPoolBuilder::new();
        if cli.jobs > 0 {
            builder = builder.num_threads(cli.jobs);
        }
        let pool = builder.build().context("building the worker pool")?;
        return pool.install(|| {
            primes
                .par_iter()
                .map(|&p| compute_one(p, cache, cli.emit_graph))
                .collect()
        });
    }
    #[cfg(not(feature = "parallel"))]
    if cli.jobs > 1 {
        eprintln!("warning: built without the parallel feature; running sequentially");
    }
    primes
        .iter()
        .map(|&p| compute_one(p, cache, cli.emit_graph))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct CensusCacheFile {
    version: u32,
    census: CensusRecord,
}

fn cache_path(dir: &Path, p: u64) -> PathBuf {
    dir.join(format!("census-{p}.json"))
}

fn census_cached(p: u64, cache: Option<&Path>) -> anyhow::Result<SupersingularCensus> {
    let dir = match cache {
        Some(d) => d,
        None => return Ok(census(p)?),
    };
    if let Some(c) = load_cached_census(dir, p) {
        return Ok(c);
    }
    let c = census(p)?;
    if let Err(e) = store_cached_census(dir, &c) {
        eprintln!("warning: could not write the census cache for p = {p}: {e:#}");
    }
    Ok(c)
}

/// A cache miss, an unreadable file, a version mismatch, or a record that
/// fails validation all mean the same thing: recompute.
fn load_cached_census(dir: &Path, p: u64) -> Option<SupersingularCensus> {
    let bytes = fs::read(cache_path(dir, p)).ok()?;
    let file: CensusCacheFile = serde_json::from_slice(&bytes).ok()?;
    if file.version != CACHE_FORMAT_VERSION || file.census.p != p {
        return None;
    }
    SupersingularCensus::try_from(file.census).ok()
}

fn store_cached_census(dir: &Path, c: &SupersingularCensus) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let file = CensusCacheFile {
        version: CACHE_FORMAT_VERSION,
        census: CensusRecord::from(c),
    };
    let path = cache_path(dir, c.p);
    let json = serde_json::to_string_pretty(&file)?;
    fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn fmt_j(j: (u64, u64), nu: u64) -> String {
    if j.1 == 0 {
        format!("{}", j.0)
    } else {
        format!("{} + {}*sqrt({nu})", j.0, j.1)
    }
}

fn checks_cell(report: &Pi1Report) -> String {
    if report.checks.all() {
        "ok".to_string()
    } else {
        format!("FAIL({})", report.checks.failed_names().join(","))
    }
}

fn summary_line(docs: &[ReportDoc]) -> String {
    let failures: Vec<String> = docs
        .iter()
        .filter(|d| !d.report.checks.all())
        .map(|d| {
            format!(
                "p = {} ({})",
                d.report.p,
                d.report.checks.failed_names().join(",")
            )
        })
        .collect();
    if failures.is_empty() {
        format!("{} primes, all checks passed", docs.len())
    } else {
        format!(
            "{} primes, {} with failed checks: {}",
            docs.len(),
            failures.len(),
            failures.join("; ")
        )
    }
}

fn print_graph_block(g: &GraphRecord) {
    println!(
        "dual graph of X0({}): {} vertices, {} edges",
        g.p,
        g.n_vertices,
        g.edges.len()
    );
    for (i, e) in g.edges.iter().enumerate() {
        println!(
            "  edge {i}: {} -> {}, length {}, j = {}",
            e.tail,
            e.head,
            e.length,
            fmt_j(e.j, g.nu)
        );
    }
    let frob: Vec<String> = g.frobenius.iter().map(|i| i.to_string()).collect();
    println!("frobenius: [{}]", frob.join(", "));
}

fn print_report_block(d: &ReportDoc) {
    let r = &d.report;
    println!("p = {}", r.p);
    println!("genus = {}", r.genus);
    println!("eisenstein number = {}", r.eisenstein_number);
    println!(
        "supersingular census: total = {}, h = {}, pairs = {}",
        r.census.total, r.census.h, r.census.pairs
    );
    println!("component group: {}", r.torsion);
    println!("coinvariants: {}", r.coinvariants);
    println!("rank = {}", r.rank);
    println!("{}", r.exact_sequence_line());
    let failed = r.checks.failed_names();
    if failed.is_empty() {
        println!("checks: 6/6 passed");
    } else {
        println!(
            "checks: {}/6 passed; failed: {}",
            6 - failed.len(),
            failed.join(", ")
        );
    }
    if let Some(g) = &d.graph {
        println!();
        print_graph_block(g);
    }
}

fn emit_text(docs: &[ReportDoc], cli: &Cli) {
    if cli.prime.is_some() {
        print_report_block(&docs[0]);
        return;
    }
    println!(
        "{:>6}  {:>5}  {:>10}  {:>5}  {:>4}  {:>5}  {:>4}  {:<12}  checks",
        "p", "genus", "eisenstein", "total", "h", "pairs", "rank", "torsion"
    );
    for d in docs {
        let r = &d.report;
        println!(
            "{:>6}  {:>5}  {:>10}  {:>5}  {:>4}  {:>5}  {:>4}  {:<12}  {}",
            r.p,
            r.genus,
            r.eisenstein_number,
            r.census.total,
            r.census.h,
            r.census.pairs,
            r.rank,
            r.torsion.to_string(),
            checks_cell(r)
        );
    }
    if cli.emit_graph {
        for d in docs {
            if let Some(g) = &d.graph {
                println!();
                print_graph_block(g);
            }
        }
    }
    println!("{}", summary_line(docs));
}

fn emit_json(docs: &[ReportDoc], cli: &Cli) -> anyhow::Result<()> {
    let out = if cli.prime.is_some() {
        serde_json::to_string_pretty(&docs[0])?
    } else {
        serde_json::to_string_pretty(&docs)?
    };
    println!("{out}");
    eprintln!("{}", summary_line(docs));
    Ok(())
}

fn phi_field(g: &AbGroup) -> String {
    if g.invariant_factors().is_empty() {
        "1".to_string()
    } else {
        g.invariant_factors()
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn emit_csv(docs: &[ReportDoc]) {
    println!("p,genus,eisenstein,h,pairs,rank,phi_invariants,checks_passed");
    for d in docs {
        let r = &d.report;
        println!(
            "{},{},{},{},{},{},{},{}",
            r.p,
            r.genus,
            r.eisenstein_number,
            r.census.h,
            r.census.pairs,
            r.rank,
            phi_field(&r.torsion),
            r.checks.all()
        );
    }
    eprintln!("{}", summary_line(docs));
}
