//! Belief-function arithmetic over small finite frames.
//!
//! A [`MassFunction`] is a dense vector of `2^n` masses indexed by subset
//! bitmask: bit `k` of the index is set when the `k`-th atom of the
//! [`Frame`] belongs to the subset. Index `0` is the empty set and index
//! `2^n - 1` is the whole frame.
//!
//! The empty set is allowed to carry mass. Combination uses the
//! unnormalized conjunctive rule, so conflict accumulates on `∅` instead of
//! being redistributed.

mod combine;
mod distance;

use std::fmt;
use std::sync::Arc;

pub use combine::{conjunctive_combine, conjunctive_combine_many, mean_combine};
pub use distance::{jousselme_distance, JaccardMatrix};

/// Absolute tolerance for mass-sum and equality checks.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// Largest frame the dense representation accepts.
pub const MAX_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvidenceError {
    #[error("a frame needs between 2 and {MAX_ATOMS} atoms, got {0}")]
    FrameSize(usize),
    #[error("duplicate atom label `{0}`")]
    DuplicateAtom(String),
    #[error("belief degree {0} is outside [0, 1]")]
    DegreeOutOfRange(f64),
    #[error("focal set of a simple support must be a nonempty proper subset")]
    FocalNotProper,
    #[error("subset {0:#x} does not belong to a frame of {1} atoms")]
    SubsetOutOfFrame(u32, usize),
    #[error("mass functions are defined on different frames")]
    FrameMismatch,
    #[error("cannot combine an empty list of mass functions")]
    EmptyInput,
    #[error("total conflict: m(∅) = 1, pignistic probability is undefined")]
    TotalConflict,
    #[error("invalid mass vector: {0}")]
    InvalidMasses(String),
}

/// Ordered set of mutually exclusive hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    atoms: Vec<String>,
}

impl Frame {
    pub fn new<I, S>(atoms: I) -> Result<Arc<Self>, EvidenceError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.len() < 2 || atoms.len() > MAX_ATOMS {
            return Err(EvidenceError::FrameSize(atoms.len()));
        }
        for (k, a) in atoms.iter().enumerate() {
            if atoms[..k].contains(a) {
                return Err(EvidenceError::DuplicateAtom(a.clone()));
            }
        }
        Ok(Arc::new(Frame { atoms }))
    }

    /// The four-relation frame used for every alternative pair: strict
    /// preference, inverse strict preference, indifference, incomparability.
    pub fn preference() -> Arc<Self> {
        Frame::new(["w1", "w2", "w3", "w4"]).expect("static frame is valid")
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// Number of subsets, `2^n`.
    pub fn power_set_size(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn full(&self) -> Subset {
        Subset((1u32 << self.atoms.len()) - 1)
    }

    pub fn atom_index(&self, label: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == label)
    }

    pub fn contains(&self, s: Subset) -> bool {
        s.0 <= self.full().0
    }
}

/// Subset of a frame as a bitmask over the atom ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(atom: usize) -> Self {
        Subset(1 << atom)
    }

    pub fn from_atoms(atoms: &[usize]) -> Self {
        Subset(atoms.iter().fold(0, |acc, &a| acc | (1 << a)))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains_atom(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Basic belief assignment over the power set of a [`Frame`].
#[derive(Clone, PartialEq)]
pub struct MassFunction {
    frame: Arc<Frame>,
    masses: Vec<f64>,
    simple_support: bool,
}

impl fmt::Debug for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (s, m) in self.focal_elements() {
            map.entry(&format_args!("{:#06b}", s.0), &m);
        }
        map.finish()
    }
}

impl MassFunction {
    /// Builds a mass function from a dense vector indexed by subset bitmask.
    pub fn from_masses(frame: Arc<Frame>, masses: Vec<f64>) -> Result<Self, EvidenceError> {
        if masses.len() != frame.power_set_size() {
            return Err(EvidenceError::InvalidMasses(format!(
                "expected {} entries, got {}",
                frame.power_set_size(),
                masses.len()
            )));
        }
        if let Some(bad) = masses.iter().find(|m| !(0.0..=1.0 + MASS_TOLERANCE).contains(*m)) {
            return Err(EvidenceError::InvalidMasses(format!("mass {bad} outside [0, 1]")));
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(EvidenceError::InvalidMasses(format!("masses sum to {total}")));
        }
        Ok(MassFunction { frame, masses, simple_support: false })
    }

    /// Builds a mass function from `(subset, mass)` pairs; unlisted subsets get zero.
    pub fn from_focal(
        frame: Arc<Frame>,
        focal: impl IntoIterator<Item = (Subset, f64)>,
    ) -> Result<Self, EvidenceError> {
        let mut masses = vec![0.0; frame.power_set_size()];
        for (s, m) in focal {
            if !frame.contains(s) {
                return Err(EvidenceError::SubsetOutOfFrame(s.0, frame.len()));
            }
            masses[s.index()] += m;
        }
        MassFunction::from_masses(frame, masses)
    }

    /// Total ignorance: all mass on the whole frame.
    pub fn vacuous(frame: Arc<Frame>) -> Self {
        let mut masses = vec![0.0; frame.power_set_size()];
        masses[frame.full().index()] = 1.0;
        MassFunction { frame, masses, simple_support: false }
    }

    /// All mass on one subset.
    pub fn categorical(frame: Arc<Frame>, focal: Subset) -> Result<Self, EvidenceError> {
        MassFunction::from_focal(frame, [(focal, 1.0)])
    }

    /// Simple support function: `degree` on `focal`, the rest on the frame.
    pub fn simple_support(frame: Arc<Frame>, focal: Subset, degree: f64) -> Result<Self, EvidenceError> {
        if !(0.0..=1.0).contains(&degree) {
            return Err(EvidenceError::DegreeOutOfRange(degree));
        }
        if !frame.contains(focal) {
            return Err(EvidenceError::SubsetOutOfFrame(focal.0, frame.len()));
        }
        if focal.is_empty() || focal == frame.full() {
            return Err(EvidenceError::FocalNotProper);
        }
        let mut masses = vec![0.0; frame.power_set_size()];
        masses[focal.index()] = degree;
        masses[frame.full().index()] = 1.0 - degree;
        Ok(MassFunction { frame, masses, simple_support: true })
    }

    /// Internal constructor for combination results whose invariants hold by construction.
    pub(crate) fn from_parts(frame: Arc<Frame>, masses: Vec<f64>) -> Self {
        debug_assert_eq!(masses.len(), frame.power_set_size());
        MassFunction { frame, masses, simple_support: false }
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn is_simple_support(&self) -> bool {
        self.simple_support
    }

    pub fn mass(&self, s: Subset) -> f64 {
        self.masses.get(s.index()).copied().unwrap_or(0.0)
    }

    pub fn empty_mass(&self) -> f64 {
        self.masses[0]
    }

    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Subsets carrying nonzero mass, in index order.
    pub fn focal_elements(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.masses.iter().enumerate().filter(|(_, &m)| m != 0.0).map(|(k, &m)| (Subset(k as u32), m))
    }

    pub(crate) fn same_frame(&self, other: &MassFunction) -> bool {
        Arc::ptr_eq(&self.frame, &other.frame) || self.frame == other.frame
    }

    /// Maximum absolute difference between two mass vectors on the same frame.
    pub fn max_abs_diff(&self, other: &MassFunction) -> Result<f64, EvidenceError> {
        if !self.same_frame(other) {
            return Err(EvidenceError::FrameMismatch);
        }
        Ok(self.masses.iter().zip(&other.masses).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    fn check_subset(&self, x: Subset) -> Result<(), EvidenceError> {
        if self.frame.contains(x) {
            Ok(())
        } else {
            Err(EvidenceError::SubsetOutOfFrame(x.0, self.frame.len()))
        }
    }

    /// Belief: total mass of the nonempty subsets of `x`.
    pub fn bel(&self, x: Subset) -> Result<f64, EvidenceError> {
        self.check_subset(x)?;
        Ok(self.focal_elements().filter(|(y, _)| !y.is_empty() && y.is_subset_of(x)).map(|(_, m)| m).sum())
    }

    /// Plausibility: total mass of the subsets that intersect `x`.
    pub fn pl(&self, x: Subset) -> Result<f64, EvidenceError> {
        self.check_subset(x)?;
        Ok(self.focal_elements().filter(|(y, _)| !y.intersection(x).is_empty()).map(|(_, m)| m).sum())
    }

    /// Pignistic probability of a single atom.
    pub fn betp_singleton(&self, atom: usize) -> Result<f64, EvidenceError> {
        if atom >= self.frame.len() {
            return Err(EvidenceError::SubsetOutOfFrame(1 << atom.min(31), self.frame.len()));
        }
        self.betp(Subset::singleton(atom))
    }

    /// Pignistic probability of a subset, `Σ |X∩Y|/|Y| · m(Y) / (1 − m(∅))`.
    ///
    /// For singletons this coincides with the `1/|Y|` weighting over sets
    /// meeting `x`; for larger sets the overlap-proportional form is used so
    /// that the result is additive over atoms.
    pub fn betp(&self, x: Subset) -> Result<f64, EvidenceError> {
        self.check_subset(x)?;
        let norm = 1.0 - self.empty_mass();
        if norm <= MASS_TOLERANCE {
            return Err(EvidenceError::TotalConflict);
        }
        let sum: f64 = self
            .focal_elements()
            .filter(|(y, _)| !y.is_empty())
            .map(|(y, m)| f64::from(y.intersection(x).cardinality()) / f64::from(y.cardinality()) * m)
            .sum();
        Ok(sum / norm)
    }

    /// Pignistic distribution over all atoms, in atom order.
    pub fn betp_all(&self) -> Result<Vec<f64>, EvidenceError> {
        (0..self.frame.len()).map(|a| self.betp_singleton(a)).collect()
    }

    /// Dempster normalization: divides every nonempty mass by `1 − m(∅)`.
    pub fn normalized(&self) -> Result<MassFunction, EvidenceError> {
        let norm = 1.0 - self.empty_mass();
        if norm <= MASS_TOLERANCE {
            return Err(EvidenceError::TotalConflict);
        }
        let mut masses: Vec<f64> = self.masses.iter().map(|m| m / norm).collect();
        masses[0] = 0.0;
        Ok(MassFunction::from_parts(self.frame.clone(), masses))
    }
}
