use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use prefuse::bench::{run_bench, summarize, write_records_csv, write_summary_csv, Algorithm, BenchConfig};
use prefuse::fusion::{fuse_profile, Strategy};
use prefuse::graph::{build_graph, check_dag2, Dag2Status};
use prefuse::io::{mass_table, parse_fused_csv, parse_profile, write_dot, write_edge_csv, write_fused_csv};
use prefuse::synth::{generate_structure, Family, StructureSpec};

/// Belief-function preference fusion and Condorcet cycle avoidance.
#[derive(Debug, Parser)]
#[command(name = "prefuse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fuse a TOML profile into per-pair masses and decided relations.
    Fuse(FuseArgs),
    /// Remove Condorcet cycles from a fused CSV.
    Resolve(ResolveArgs),
    /// Generate a synthetic cyclic structure as a fused CSV.
    Generate(GenerateArgs),
    /// Time both avoidance algorithms over a sweep of synthetic structures.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct FuseArgs {
    profile: PathBuf,
    #[arg(long, default_value = "B")]
    strategy: Strategy,
    /// Fused CSV output.
    #[arg(long)]
    out: PathBuf,
    /// DOT of the decided graph; defaults to the output path with a .dot extension.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ResolveArgs {
    fused: PathBuf,
    #[arg(long, default_value = "incremental")]
    algo: Algorithm,
    /// DOT output of the cycle-free graph.
    #[arg(long)]
    out: PathBuf,
    /// Optional edge-list CSV output.
    #[arg(long)]
    edges: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long)]
    family: Family,
    /// Number of circles.
    #[arg(long, conflicts_with = "nodes")]
    circles: Option<usize>,
    /// Target number of alternatives; the nearest circle count is used.
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Comma-separated families.
    #[arg(long, value_delimiter = ',', default_value = "nested,entangled,nonnested")]
    families: Vec<Family>,
    #[arg(long, default_value_t = 20)]
    min_nodes: usize,
    #[arg(long, default_value_t = 380)]
    max_nodes: usize,
    #[arg(long, default_value_t = 40)]
    step: usize,
    /// Seeds per size, numbered from --seed.
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Timed repetitions per structure and algorithm.
    #[arg(long, default_value_t = 10)]
    reps: usize,
    /// Per-structure records.
    #[arg(long)]
    out: PathBuf,
    /// Per-cell means with the naive/incremental ratio; printed when omitted.
    #[arg(long)]
    summary: Option<PathBuf>,
}

/// Exit status for a result that ran but broke its contract.
const CONTRACT_VIOLATION: u8 = 2;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn fuse(args: FuseArgs) -> Result<u8> {
    let text = read(&args.profile)?;
    let profile = parse_profile(&text).with_context(|| args.profile.display().to_string())?;
    let fused = fuse_profile(&profile, args.strategy)?;
    write(&args.out, &write_fused_csv(&fused)?)?;
    let dot_path = args.dot.unwrap_or_else(|| args.out.with_extension("dot"));
    write(&dot_path, &write_dot(&build_graph(&fused)?))?;
    print!("{}", mass_table(&fused));
    Ok(0)
}

fn resolve(args: ResolveArgs) -> Result<u8> {
    let text = read(&args.fused)?;
    let fused = parse_fused_csv(&text).with_context(|| args.fused.display().to_string())?;
    build_graph(&fused)?;
    let out = args.algo.run(&fused);
    write(&args.out, &write_dot(&out))?;
    if let Some(path) = &args.edges {
        write(path, &write_edge_csv(&out)?)?;
    }
    for d in out.demoted() {
        let labels = out.labels();
        println!(
            "demoted ({}, {}) {} d_incomp={:.5}",
            labels[d.pair.i()],
            labels[d.pair.j()],
            d.kind,
            d.d_incomp
        );
    }
    match check_dag2(&out) {
        Dag2Status::Valid => Ok(0),
        Dag2Status::Paradox(c) => {
            eprintln!("error: output still has a paradox among nodes {:?}", c.nodes);
            Ok(CONTRACT_VIOLATION)
        }
    }
}

fn generate(args: GenerateArgs) -> Result<u8> {
    let circles = match (args.circles, args.nodes) {
        (Some(c), _) => c,
        (None, Some(n)) => args.family.circles_for_nodes(n),
        (None, None) => anyhow::bail!("one of --circles or --nodes is required"),
    };
    let spec = StructureSpec::new(args.family, circles, args.seed)?;
    let fused = generate_structure(&spec)?;
    write(&args.out, &write_fused_csv(&fused)?)?;
    println!(
        "{} circles={} nodes={} seed={} relations={}",
        spec.family,
        spec.circles,
        spec.node_count(),
        spec.seed,
        fused.pairs.len()
    );
    Ok(0)
}

fn bench(args: BenchArgs) -> Result<u8> {
    anyhow::ensure!(args.step > 0, "--step must be positive");
    let config = BenchConfig {
        families: args.families,
        node_targets: (args.min_nodes..=args.max_nodes).step_by(args.step).collect(),
        seeds: (args.seed..args.seed + args.seeds).collect(),
        reps: args.reps,
    };
    let records = run_bench(&config);
    write(&args.out, &write_records_csv(&records)?)?;
    let summary = write_summary_csv(&summarize(&records))?;
    match &args.summary {
        Some(path) => write(path, &summary)?,
        None => print!("{summary}"),
    }
    let failures = records.iter().filter(|r| r.error.is_some()).count();
    if failures > 0 {
        eprintln!("{failures} record(s) failed; see the error column");
        return Ok(CONTRACT_VIOLATION);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Fuse(a) => fuse(a),
        Command::Resolve(a) => resolve(a),
        Command::Generate(a) => generate(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
