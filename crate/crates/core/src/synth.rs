//! Seeded synthetic preference structures for benchmarking cycle avoidance.
//!
//! Three cycle topologies are generated, each parameterized by its number
//! of circles `N`:
//!
//! * **Nested**: `2 → 1`, `1 → 3 → 2`, and chords `1 → k → 2` for
//!   `k = 4..=N+2`. Every circle passes through nodes 1 and 2.
//! * **Entangled**: a chain `t → t+1` with back arcs `t+2 → t`, so that
//!   consecutive 3-cycles share two nodes.
//! * **NonNested**: `N` disjoint 3-cycles joined by indifferences between
//!   the last node of one cycle and the first node of the next.
//!
//! Each relation gets a mass built from four uniform degrees by the
//! single-agent fusion path, resampled until its pignistic decision is the
//! relation the topology asks for.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::evidence::mean_combine;
use crate::fusion::{decide, Degrees, FusedPair, FusedProfile, FusionError, Pair, RelationKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SynthError {
    #[error("a structure needs at least one circle")]
    NoCircles,
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Nested,
    Entangled,
    NonNested,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Nested, Family::Entangled, Family::NonNested];

    pub fn name(self) -> &'static str {
        match self {
            Family::Nested => "nested",
            Family::Entangled => "entangled",
            Family::NonNested => "nonnested",
        }
    }

    pub fn node_count(self, circles: usize) -> usize {
        match self {
            Family::Nested | Family::Entangled => circles + 2,
            Family::NonNested => 3 * circles,
        }
    }

    /// Number of relations (an indifference counts once).
    pub fn relation_count(self, circles: usize) -> usize {
        match self {
            Family::Nested | Family::Entangled => 2 * circles + 1,
            Family::NonNested => 4 * circles - 1,
        }
    }

    pub fn paradox_component_count(self, circles: usize) -> usize {
        match self {
            Family::Nested | Family::Entangled => 1,
            Family::NonNested => circles,
        }
    }

    /// Circle count whose node count is nearest to `nodes` (at least one).
    pub fn circles_for_nodes(self, nodes: usize) -> usize {
        match self {
            Family::Nested | Family::Entangled => nodes.saturating_sub(2).max(1),
            Family::NonNested => ((nodes + 1) / 3).max(1),
        }
    }

    /// Intended relations as `(a, b, kind)` read "a kind b", zero-based.
    fn relations(self, circles: usize) -> Vec<(usize, usize, RelationKind)> {
        use RelationKind::{Indifference, StrictPreference as P};
        let mut rels = Vec::with_capacity(self.relation_count(circles));
        match self {
            Family::Nested => {
                rels.extend([(1, 0, P), (0, 2, P), (2, 1, P)]);
                for k in 3..circles + 2 {
                    rels.push((0, k, P));
                    rels.push((k, 1, P));
                }
            }
            Family::Entangled => {
                for t in 0..=circles {
                    rels.push((t, t + 1, P));
                }
                for t in 0..circles {
                    rels.push((t + 2, t, P));
                }
            }
            Family::NonNested => {
                for t in 0..circles {
                    let b = 3 * t;
                    rels.extend([(b, b + 1, P), (b + 1, b + 2, P), (b + 2, b, P)]);
                    if t + 1 < circles {
                        rels.push((b + 2, b + 3, Indifference));
                    }
                }
            }
        }
        rels
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "nested" => Ok(Family::Nested),
            "entangled" => Ok(Family::Entangled),
            "nonnested" => Ok(Family::NonNested),
            _ => Err(format!("unknown family `{s}` (nested, entangled, nonnested)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StructureSpec {
    pub family: Family,
    pub circles: usize,
    pub seed: u64,
}

impl StructureSpec {
    pub fn new(family: Family, circles: usize, seed: u64) -> Result<Self, SynthError> {
        if circles == 0 {
            return Err(SynthError::NoCircles);
        }
        Ok(StructureSpec { family, circles, seed })
    }

    pub fn node_count(&self) -> usize {
        self.family.node_count(self.circles)
    }
}

/// Draws degrees until the single-agent mass decides `kind`.
fn sample_pair(rng: &mut ChaCha8Rng, pair: Pair, kind: RelationKind) -> Result<FusedPair, SynthError> {
    let frame = crate::evidence::Frame::preference();
    loop {
        let degrees = Degrees::new([rng.gen(), rng.gen(), rng.gen(), rng.gen()])?;
        let supports = degrees.simple_supports(&frame).map_err(FusionError::from)?;
        let mass = mean_combine(&supports).map_err(FusionError::from)?;
        if decide(&mass)? == kind {
            return Ok(FusedPair::from_mass(pair, mass)?);
        }
    }
}

pub fn generate_structure(spec: &StructureSpec) -> Result<FusedProfile, SynthError> {
    if spec.circles == 0 {
        return Err(SynthError::NoCircles);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut pairs = spec
        .family
        .relations(spec.circles)
        .into_iter()
        .map(|(a, b, kind)| {
            let (pair, swapped) = Pair::sorted(a, b)?;
            Ok((pair, if swapped { kind.reversed() } else { kind }))
        })
        .collect::<Result<Vec<_>, FusionError>>()?;
    pairs.sort_by_key(|&(p, _)| p);
    let pairs = pairs
        .into_iter()
        .map(|(pair, kind)| sample_pair(&mut rng, pair, kind))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FusedProfile { alternatives: (1..=spec.node_count()).map(|k| k.to_string()).collect(), pairs })
}

/// Target alternative counts of the benchmark sweep: 20, 60, ..., 380.
pub const SWEEP_NODE_TARGETS: [usize; 10] = [20, 60, 100, 140, 180, 220, 260, 300, 340, 380];

/// Seeds per sweep cell.
pub const SWEEP_SEEDS: u64 = 10;

/// Every family at every target size, ten seeds each.
pub fn generate_degree_sweep() -> Vec<StructureSpec> {
    sweep(&Family::ALL, &SWEEP_NODE_TARGETS, 1..=SWEEP_SEEDS)
}

pub fn sweep(
    families: &[Family],
    node_targets: &[usize],
    seeds: impl IntoIterator<Item = u64> + Clone,
) -> Vec<StructureSpec> {
    let mut specs = Vec::new();
    for &family in families {
        for &nodes in node_targets {
            for seed in seeds.clone() {
                specs.push(StructureSpec { family, circles: family.circles_for_nodes(nodes), seed });
            }
        }
    }
    specs
}
