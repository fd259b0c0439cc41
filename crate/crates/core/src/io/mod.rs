//! File formats: TOML profiles, fused-pair CSV, edge-list CSV and DOT.
//!
//! Every floating-point value is written with five decimals.

mod profile;

use std::fmt::Write as _;

use crate::evidence::{Frame, MassFunction, Subset};
use crate::fusion::{FusedPair, FusedProfile, Pair, RelationKind};
use crate::graph::PreferenceGraph;

pub use profile::{parse_profile, write_profile};

/// Three agents rating five alternatives, the worked example shipped with
/// the crate.
pub const FIVE_ALTERNATIVES: &str = include_str!("../../data/five_alternatives.toml");

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("pair {0} has mass outside ∅, the singletons and Ω; the CSV format cannot hold it")]
    Unrepresentable(Pair),
}

fn parse_err(line: u64, message: impl Into<String>) -> IoError {
    IoError::Parse { line: Some(line as usize), message: message.into() }
}

const ALT_PREFIX: &str = "# alternatives,";

/// Focal sets stored in a fused CSV row: ∅, the four singletons, Ω.
const STORED: [Subset; 6] =
    [Subset::EMPTY, Subset(0b0001), Subset(0b0010), Subset(0b0100), Subset(0b1000), Subset(0b1111)];

pub const FUSED_HEADER: [&str; 14] = [
    "i", "j", "m_empty", "m_w1", "m_w2", "m_w3", "m_w4", "m_omega", "betp_w1", "betp_w2", "betp_w3",
    "betp_w4", "decided", "d_incomp",
];

fn f5(x: f64) -> String {
    format!("{x:.5}")
}

fn csv_line(fields: &[String]) -> Result<String, IoError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(fields)?;
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("utf-8 in, utf-8 out"))
}

/// Fused pairs as CSV, preceded by a comment row listing the alternatives.
pub fn write_fused_csv(fused: &FusedProfile) -> Result<String, IoError> {
    let mut out = String::from(ALT_PREFIX);
    out.push_str(&csv_line(&fused.alternatives)?);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(FUSED_HEADER)?;
    for fp in &fused.pairs {
        let leftover: f64 =
            fp.mass.focal_elements().filter(|(s, _)| !STORED.contains(s)).map(|(_, m)| m).sum();
        if leftover > 1e-12 {
            return Err(IoError::Unrepresentable(fp.pair));
        }
        let mut rec = vec![fused.alternatives[fp.pair.i()].clone(), fused.alternatives[fp.pair.j()].clone()];
        rec.extend(STORED.iter().map(|&s| f5(fp.mass.mass(s))));
        let betp = fp.mass.betp_all().map_err(|e| IoError::Parse { line: None, message: e.to_string() })?;
        rec.extend(betp.iter().map(|&p| f5(p)));
        rec.push(fp.decided.name().to_string());
        rec.push(f5(fp.d_incomp));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    out.push_str(&String::from_utf8(bytes).expect("utf-8"));
    Ok(out)
}

/// Reads a fused CSV. The decided relation and `d_incomp` are taken from
/// their columns; the stored masses are rescaled to sum to one (they are
/// rounded to five decimals on write).
pub fn parse_fused_csv(text: &str) -> Result<FusedProfile, IoError> {
    let (mut alternatives, body, offset) = match text.strip_prefix(ALT_PREFIX) {
        Some(rest) => {
            let (first, body) = rest.split_once('\n').unwrap_or((rest, ""));
            let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(first.as_bytes());
            let labels: Vec<String> = match r.records().next() {
                Some(rec) => rec?.iter().map(str::to_string).collect(),
                None => Vec::new(),
            };
            (labels, body, 1)
        }
        None => (Vec::new(), text, 0),
    };
    let declared = !alternatives.is_empty();
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(body.as_bytes());
    let header = r.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != FUSED_HEADER {
        return Err(parse_err(offset + 1, format!("expected header {}", FUSED_HEADER.join(","))));
    }
    let frame = Frame::preference();
    let mut pairs = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for rec in r.records() {
        let rec = rec?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0) + offset;
        let mut index_of = |label: &str| -> Result<usize, IoError> {
            if let Some(k) = alternatives.iter().position(|a| a == label) {
                return Ok(k);
            }
            if declared {
                return Err(parse_err(line, format!("unknown alternative `{label}`")));
            }
            alternatives.push(label.to_string());
            Ok(alternatives.len() - 1)
        };
        let a = index_of(&rec[0])?;
        let b = index_of(&rec[1])?;
        let pair = Pair::new(a, b).map_err(|_| {
            parse_err(line, format!("pair ({}, {}) is not in ascending order", &rec[0], &rec[1]))
        })?;
        if !seen.insert(pair) {
            return Err(parse_err(line, format!("pair ({}, {}) listed twice", &rec[0], &rec[1])));
        }
        let num = |k: usize| -> Result<f64, IoError> {
            rec[k].parse::<f64>().ok().filter(|v| (0.0..=1.0).contains(v)).ok_or_else(|| {
                parse_err(
                    line,
                    format!("column {} is not a number in [0, 1]: `{}`", FUSED_HEADER[k], &rec[k]),
                )
            })
        };
        let stored: Vec<f64> = (2..8).map(num).collect::<Result<_, _>>()?;
        let total: f64 = stored.iter().sum();
        if (total - 1.0).abs() > 1e-4 {
            return Err(parse_err(line, format!("masses sum to {total}")));
        }
        let mass = MassFunction::from_focal(
            frame.clone(),
            STORED.iter().zip(&stored).map(|(&s, &m)| (s, m / total)),
        )
        .map_err(|e| parse_err(line, e.to_string()))?;
        let decided: RelationKind = rec[12].parse().map_err(|e: String| parse_err(line, e))?;
        let d_incomp = num(13)?;
        pairs.push(FusedPair { pair, mass, decided, d_incomp });
    }
    if alternatives.len() < 2 {
        return Err(IoError::Parse {
            line: None,
            message: "fused file has fewer than two alternatives".into(),
        });
    }
    pairs.sort_by_key(|p| p.pair);
    Ok(FusedProfile { alternatives, pairs })
}

/// Graph relations as `i,j,kind,d_incomp`.
pub fn write_edge_csv(g: &PreferenceGraph) -> Result<String, IoError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i", "j", "kind", "d_incomp"])?;
    for e in g.edges() {
        w.write_record([
            g.labels()[e.pair.i()].as_str(),
            g.labels()[e.pair.j()].as_str(),
            e.kind.name(),
            &f5(e.d_incomp),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering. Strict relations are single arrows, indifferences a
/// `dir=both` arrow; demoted relations are listed in a leading comment.
pub fn write_dot(g: &PreferenceGraph) -> String {
    let labels = g.labels();
    let mut out = String::new();
    if g.demoted().is_empty() {
        out.push_str("// demoted: none\n");
    }
    for d in g.demoted() {
        let _ = writeln!(
            out,
            "// demoted: ({}, {}) {} d_incomp={}",
            labels[d.pair.i()],
            labels[d.pair.j()],
            d.kind,
            f5(d.d_incomp)
        );
    }
    out.push_str("digraph preferences {\n");
    for l in labels {
        let _ = writeln!(out, "    {};", dot_id(l));
    }
    for e in g.edges() {
        let (i, j) = (dot_id(&labels[e.pair.i()]), dot_id(&labels[e.pair.j()]));
        let w = f5(e.d_incomp);
        let _ = match e.kind {
            RelationKind::StrictPreference => writeln!(out, "    {i} -> {j} [label=\"{w}\"];"),
            RelationKind::InverseStrictPreference => writeln!(out, "    {j} -> {i} [label=\"{w}\"];"),
            RelationKind::Indifference => writeln!(out, "    {i} -> {j} [dir=both, label=\"{w}\"];"),
            RelationKind::Incomparability => Ok(()),
        };
    }
    out.push_str("}\n");
    out
}

/// Human-readable table: one row per pair with the stored masses, the
/// pignistic probabilities, the decision and `d_incomp`.
pub fn mass_table(fused: &FusedProfile) -> String {
    let mut out = format!(
        "{:<10} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} | {:>8} {:>8} {:>8} {:>8} | {:<18} {:>8}\n",
        "pair",
        "∅",
        "w1",
        "w2",
        "w3",
        "w4",
        "Ω",
        "betP w1",
        "betP w2",
        "betP w3",
        "betP w4",
        "decided",
        "d_incomp"
    );
    for fp in &fused.pairs {
        let pair = format!("({},{})", fused.alternatives[fp.pair.i()], fused.alternatives[fp.pair.j()]);
        let _ = write!(out, "{pair:<10}");
        for s in STORED {
            let _ = write!(out, " {:>8.5}", fp.mass.mass(s));
        }
        out.push_str(" |");
        for p in fp.mass.betp_all().unwrap_or_else(|_| vec![f64::NAN; 4]) {
            let _ = write!(out, " {p:>8.5}");
        }
        let _ = writeln!(out, " | {:<18} {:>8.5}", fp.decided.name(), fp.d_incomp);
    }
    out
}
