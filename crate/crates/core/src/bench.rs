//! Runtime comparison of the two cycle-avoidance algorithms.
//!
//! Structures are generated before the clock starts; only graph
//! construction and cycle avoidance are timed. Both algorithms start from
//! the same fused pairs.

use std::collections::BTreeMap;
use std::fmt;
use std::hint::black_box;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::fusion::FusedProfile;
use crate::graph::{build_graph, check_dag2, incremental_dag2, naive_dag2_in_place, PreferenceGraph};
use crate::io::IoError;
use crate::synth::{generate_structure, sweep, Family, StructureSpec, SWEEP_NODE_TARGETS, SWEEP_SEEDS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Naive,
    Incremental,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Naive, Algorithm::Incremental];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Incremental => "incremental",
        }
    }

    /// Runs the algorithm from fused pairs to a DAG₂.
    pub fn run(self, fused: &FusedProfile) -> PreferenceGraph {
        match self {
            Algorithm::Naive => {
                let mut g = build_graph(fused).expect("generated pairs are unique");
                naive_dag2_in_place(&mut g);
                g
            }
            Algorithm::Incremental => incremental_dag2(fused),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Algorithm::Naive),
            "incremental" => Ok(Algorithm::Incremental),
            _ => Err(format!("unknown algorithm `{s}`, expected naive or incremental")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub families: Vec<Family>,
    pub node_targets: Vec<usize>,
    pub seeds: Vec<u64>,
    pub reps: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            families: Family::ALL.to_vec(),
            node_targets: SWEEP_NODE_TARGETS.to_vec(),
            seeds: (1..=SWEEP_SEEDS).collect(),
            reps: 10,
        }
    }
}

impl BenchConfig {
    pub fn specs(&self) -> Vec<StructureSpec> {
        sweep(&self.families, &self.node_targets, self.seeds.iter().copied())
    }
}

/// Mean time of one algorithm on one generated structure.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub family: Family,
    pub nodes: usize,
    pub circles: usize,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub wall_secs: f64,
    pub samples: usize,
    pub demoted: usize,
    /// Set when generation failed or the output was not a DAG₂.
    pub error: Option<String>,
}

/// Times `algorithm` on `fused` over `reps` runs after one untimed warm-up
/// run; returns the mean and the last output.
pub fn time_algorithm(
    algorithm: Algorithm,
    fused: &FusedProfile,
    reps: usize,
) -> (Duration, PreferenceGraph) {
    let reps = reps.max(1);
    black_box(algorithm.run(black_box(fused)));
    let mut total = Duration::ZERO;
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        let out = black_box(algorithm.run(black_box(fused)));
        total += start.elapsed();
        last = Some(out);
    }
    (total / reps as u32, last.expect("at least one repetition"))
}

pub fn bench_spec(spec: &StructureSpec, reps: usize) -> Vec<BenchRecord> {
    let record = |algorithm, wall_secs, samples, demoted, error| BenchRecord {
        family: spec.family,
        nodes: spec.node_count(),
        circles: spec.circles,
        seed: spec.seed,
        algorithm,
        wall_secs,
        samples,
        demoted,
        error,
    };
    let fused = match generate_structure(spec) {
        Ok(f) => f,
        Err(e) => return Algorithm::ALL.iter().map(|&a| record(a, 0.0, 0, 0, Some(e.to_string()))).collect(),
    };
    Algorithm::ALL
        .iter()
        .map(|&a| {
            let (mean, out) = time_algorithm(a, &fused, reps);
            let error = (!check_dag2(&out).is_valid()).then(|| "output is not a DAG2".to_string());
            record(a, mean.as_secs_f64(), reps.max(1), out.demoted().len(), error)
        })
        .collect()
}

pub fn run_bench(config: &BenchConfig) -> Vec<BenchRecord> {
    config.specs().iter().flat_map(|s| bench_spec(s, config.reps)).collect()
}

/// Per `(family, nodes)` cell: mean time of each algorithm over seeds.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub family: Family,
    pub nodes: usize,
    pub naive_secs: f64,
    pub incremental_secs: f64,
    /// Records per algorithm that entered the mean.
    pub samples: usize,
}

impl CellSummary {
    pub fn ratio(&self) -> f64 {
        self.naive_secs / self.incremental_secs
    }
}

pub fn summarize(records: &[BenchRecord]) -> Vec<CellSummary> {
    let mut cells: BTreeMap<(Family, usize), [(f64, usize); 2]> = BTreeMap::new();
    for r in records.iter().filter(|r| r.error.is_none()) {
        let slot = &mut cells.entry((r.family, r.nodes)).or_default()[r.algorithm as usize];
        slot.0 += r.wall_secs;
        slot.1 += 1;
    }
    cells
        .into_iter()
        .map(|((family, nodes), [naive, incr])| CellSummary {
            family,
            nodes,
            naive_secs: naive.0 / naive.1.max(1) as f64,
            incremental_secs: incr.0 / incr.1.max(1) as f64,
            samples: naive.1.min(incr.1),
        })
        .collect()
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, IoError> {
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

pub fn write_records_csv(records: &[BenchRecord]) -> Result<String, IoError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "family",
        "nodes",
        "circles",
        "seed",
        "algorithm",
        "wall_secs",
        "samples",
        "demoted",
        "error",
    ])?;
    for r in records {
        w.write_record([
            r.family.name().to_string(),
            r.nodes.to_string(),
            r.circles.to_string(),
            r.seed.to_string(),
            r.algorithm.name().to_string(),
            format!("{:.9}", r.wall_secs),
            r.samples.to_string(),
            r.demoted.to_string(),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    finish(w)
}

pub fn write_summary_csv(cells: &[CellSummary]) -> Result<String, IoError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["family", "nodes", "naive_secs", "incremental_secs", "ratio", "samples"])?;
    for c in cells {
        w.write_record([
            c.family.name().to_string(),
            c.nodes.to_string(),
            format!("{:.9}", c.naive_secs),
            format!("{:.9}", c.incremental_secs),
            format!("{:.5}", c.ratio()),
            c.samples.to_string(),
        ])?;
    }
    finish(w)
}
