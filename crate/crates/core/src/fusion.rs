//! Elicitation model and the two fusion strategies.
//!
//! Every agent gives, for every alternative pair `(i, j)` with `i < j`, four
//! independent belief degrees: one on each of `aᵢ ≻ aⱼ`, `aᵢ ≺ aⱼ`,
//! `aᵢ ≈ aⱼ` and `aᵢ ∼ aⱼ`. Each degree becomes a simple support mass
//! function on the four-relation frame.
//!
//! * Strategy A averages an agent's four supports, then combines agents
//!   conjunctively. Conflict builds up on `∅` as agents are added.
//! * Strategy B combines each relation's supports across agents first
//!   (co-focal supports never conflict), then averages the four results.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::evidence::{
    conjunctive_combine_many, jousselme_distance, mean_combine, EvidenceError, Frame, MassFunction, Subset,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FusionError {
    #[error(transparent)]
    Evidence(#[from] EvidenceError),
    #[error("profile has no agents")]
    NoAgents,
    #[error("profile needs at least two alternatives, got {0}")]
    TooFewAlternatives(usize),
    #[error("duplicate alternative `{0}`")]
    DuplicateAlternative(String),
    #[error("duplicate agent `{0}`")]
    DuplicateAgent(String),
    #[error("unknown agent id {0}")]
    UnknownAgent(usize),
    #[error("alternative index {0} out of range")]
    UnknownAlternative(usize),
    #[error("pair ({0}, {1}) is not an ordered pair of distinct alternatives")]
    InvalidPair(usize, usize),
    #[error("agent `{agent}` already has {what} for pair ({i}, {j})")]
    Duplicate { agent: String, what: &'static str, i: usize, j: usize },
}

/// The four relations an alternative pair can stand in, one per frame atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    /// `aᵢ ≻ aⱼ`
    StrictPreference,
    /// `aᵢ ≺ aⱼ`
    InverseStrictPreference,
    /// `aᵢ ≈ aⱼ`
    Indifference,
    /// `aᵢ ∼ aⱼ`
    Incomparability,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] = [
        RelationKind::StrictPreference,
        RelationKind::InverseStrictPreference,
        RelationKind::Indifference,
        RelationKind::Incomparability,
    ];

    /// Index of the corresponding atom in [`Frame::preference`].
    pub fn atom(self) -> usize {
        self as usize
    }

    pub fn from_atom(atom: usize) -> Option<Self> {
        RelationKind::ALL.get(atom).copied()
    }

    pub fn subset(self) -> Subset {
        Subset::singleton(self.atom())
    }

    pub fn is_comparable(self) -> bool {
        self != RelationKind::Incomparability
    }

    /// The same relation seen from the swapped pair `(j, i)`.
    pub fn reversed(self) -> Self {
        match self {
            RelationKind::StrictPreference => RelationKind::InverseStrictPreference,
            RelationKind::InverseStrictPreference => RelationKind::StrictPreference,
            k => k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::StrictPreference => "preference",
            RelationKind::InverseStrictPreference => "inverse_preference",
            RelationKind::Indifference => "indifference",
            RelationKind::Incomparability => "incomparability",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown relation kind `{s}`"))
    }
}

/// Ordered alternative pair, `i < j`, zero-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    i: usize,
    j: usize,
}

impl Pair {
    pub fn new(i: usize, j: usize) -> Result<Self, FusionError> {
        if i < j {
            Ok(Pair { i, j })
        } else {
            Err(FusionError::InvalidPair(i, j))
        }
    }

    /// Orders two distinct indices; `true` when they were swapped.
    pub fn sorted(a: usize, b: usize) -> Result<(Self, bool), FusionError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok((Pair { i: a, j: b }, false)),
            std::cmp::Ordering::Greater => Ok((Pair { i: b, j: a }, true)),
            std::cmp::Ordering::Equal => Err(FusionError::InvalidPair(a, b)),
        }
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Four belief degrees, one per [`RelationKind`]. They need not sum to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Degrees([f64; 4]);

impl Degrees {
    pub fn new(values: [f64; 4]) -> Result<Self, FusionError> {
        match values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            Some(&bad) => Err(EvidenceError::DegreeOutOfRange(bad).into()),
            None => Ok(Degrees(values)),
        }
    }

    pub fn get(&self, kind: RelationKind) -> f64 {
        self.0[kind.atom()]
    }

    pub fn values(&self) -> [f64; 4] {
        self.0
    }

    /// The four simple supports `m^k`, in atom order.
    pub fn simple_supports(&self, frame: &Arc<Frame>) -> Result<[MassFunction; 4], EvidenceError> {
        let mk =
            |kind: RelationKind| MassFunction::simple_support(frame.clone(), kind.subset(), self.get(kind));
        Ok([
            mk(RelationKind::StrictPreference)?,
            mk(RelationKind::InverseStrictPreference)?,
            mk(RelationKind::Indifference)?,
            mk(RelationKind::Incomparability)?,
        ])
    }
}

/// Default degrees used for pairs an agent has not rated explicitly, keyed
/// by the relation the agent declared on the pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DefaultTemplate {
    rows: [Degrees; 4],
}

impl Default for DefaultTemplate {
    fn default() -> Self {
        DefaultTemplate {
            rows: [
                Degrees([0.8, 0.2, 0.3, 0.1]),
                Degrees([0.1, 0.9, 0.2, 0.1]),
                Degrees([0.3, 0.3, 0.7, 0.0]),
                Degrees([0.1, 0.1, 0.0, 0.9]),
            ],
        }
    }
}

impl DefaultTemplate {
    pub fn new(rows: [Degrees; 4]) -> Self {
        DefaultTemplate { rows }
    }

    pub fn row(&self, kind: RelationKind) -> Degrees {
        self.rows[kind.atom()]
    }

    pub fn set_row(&mut self, kind: RelationKind, degrees: Degrees) {
        self.rows[kind.atom()] = degrees;
    }
}

pub type AgentId = usize;

/// One agent's explicit degrees for one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairAssessment {
    pub agent: AgentId,
    pub pair: Pair,
    pub degrees: Degrees,
}

/// Every agent's declared relations and explicit degrees over a set of
/// alternatives.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceProfile {
    alternatives: Vec<String>,
    agents: Vec<String>,
    declared: Vec<BTreeMap<Pair, RelationKind>>,
    explicit: BTreeMap<(AgentId, Pair), Degrees>,
    template: DefaultTemplate,
}

impl PreferenceProfile {
    pub fn new<I, S>(alternatives: I, template: DefaultTemplate) -> Result<Self, FusionError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let alternatives: Vec<String> = alternatives.into_iter().map(Into::into).collect();
        for (k, a) in alternatives.iter().enumerate() {
            if alternatives[..k].contains(a) {
                return Err(FusionError::DuplicateAlternative(a.clone()));
            }
        }
        Ok(PreferenceProfile {
            alternatives,
            agents: Vec::new(),
            declared: Vec::new(),
            explicit: BTreeMap::new(),
            template,
        })
    }

    pub fn add_agent(&mut self, name: impl Into<String>) -> Result<AgentId, FusionError> {
        let name = name.into();
        if self.agents.contains(&name) {
            return Err(FusionError::DuplicateAgent(name));
        }
        self.agents.push(name);
        self.declared.push(BTreeMap::new());
        Ok(self.agents.len() - 1)
    }

    fn check_agent(&self, agent: AgentId) -> Result<(), FusionError> {
        if agent < self.agents.len() {
            Ok(())
        } else {
            Err(FusionError::UnknownAgent(agent))
        }
    }

    fn check_alternative(&self, a: usize) -> Result<(), FusionError> {
        if a < self.alternatives.len() {
            Ok(())
        } else {
            Err(FusionError::UnknownAlternative(a))
        }
    }

    /// Records that `agent` holds relation `kind` between alternatives `a`
    /// and `b`, read as "`a` kind `b`". The pair is stored in ascending
    /// order with the relation reoriented accordingly.
    pub fn declare(
        &mut self,
        agent: AgentId,
        a: usize,
        b: usize,
        kind: RelationKind,
    ) -> Result<(), FusionError> {
        self.check_agent(agent)?;
        self.check_alternative(a)?;
        self.check_alternative(b)?;
        let (pair, swapped) = Pair::sorted(a, b)?;
        let kind = if swapped { kind.reversed() } else { kind };
        if self.declared[agent].insert(pair, kind).is_some() {
            return Err(FusionError::Duplicate {
                agent: self.agents[agent].clone(),
                what: "a declared relation",
                i: pair.i,
                j: pair.j,
            });
        }
        Ok(())
    }

    /// Sets explicit degrees for an ascending pair.
    pub fn assess(&mut self, agent: AgentId, pair: Pair, degrees: Degrees) -> Result<(), FusionError> {
        self.check_agent(agent)?;
        self.check_alternative(pair.j)?;
        if self.explicit.insert((agent, pair), degrees).is_some() {
            return Err(FusionError::Duplicate {
                agent: self.agents[agent].clone(),
                what: "explicit degrees",
                i: pair.i,
                j: pair.j,
            });
        }
        Ok(())
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn template(&self) -> &DefaultTemplate {
        &self.template
    }

    pub fn declared(&self, agent: AgentId, pair: Pair) -> Option<RelationKind> {
        self.declared.get(agent)?.get(&pair).copied()
    }

    pub fn declarations(&self, agent: AgentId) -> impl Iterator<Item = (Pair, RelationKind)> + '_ {
        self.declared[agent].iter().map(|(p, k)| (*p, *k))
    }

    pub fn assessments(&self) -> impl Iterator<Item = PairAssessment> + '_ {
        self.explicit.iter().map(|(&(agent, pair), &degrees)| PairAssessment { agent, pair, degrees })
    }

    /// All ascending pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = Pair> {
        let n = self.alternatives.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| Pair { i, j }))
    }

    /// Explicit degrees if given, otherwise the template row of the declared
    /// relation, otherwise the incomparability row.
    pub fn resolve_degrees(&self, agent: AgentId, pair: Pair) -> Result<Degrees, FusionError> {
        self.check_agent(agent)?;
        if let Some(d) = self.explicit.get(&(agent, pair)) {
            return Ok(*d);
        }
        let kind = self.declared(agent, pair).unwrap_or(RelationKind::Incomparability);
        Ok(self.template.row(kind))
    }

    fn all_degrees(&self, pair: Pair) -> Result<Vec<Degrees>, FusionError> {
        if self.agents.is_empty() {
            return Err(FusionError::NoAgents);
        }
        (0..self.agents.len()).map(|s| self.resolve_degrees(s, pair)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Mean per agent, then conjunctive across agents.
    A,
    /// Conjunctive per relation, then mean across relations.
    B,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Strategy::A),
            "B" | "b" => Ok(Strategy::B),
            _ => Err(format!("unknown strategy `{s}`, expected A or B")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::A => "A",
            Strategy::B => "B",
        })
    }
}

pub fn strategy_a(profile: &PreferenceProfile, pair: Pair) -> Result<MassFunction, FusionError> {
    let frame = Frame::preference();
    let per_agent = profile
        .all_degrees(pair)?
        .iter()
        .map(|d| mean_combine(&d.simple_supports(&frame)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(conjunctive_combine_many(&per_agent)?)
}

pub fn strategy_b(profile: &PreferenceProfile, pair: Pair) -> Result<MassFunction, FusionError> {
    let frame = Frame::preference();
    let degrees = profile.all_degrees(pair)?;
    let per_relation = RelationKind::ALL
        .iter()
        .map(|&kind| {
            let supports = degrees
                .iter()
                .map(|d| MassFunction::simple_support(frame.clone(), kind.subset(), d.get(kind)))
                .collect::<Result<Vec<_>, _>>()?;
            conjunctive_combine_many(&supports)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(mean_combine(&per_relation)?)
}

pub fn fuse_pair(
    profile: &PreferenceProfile,
    pair: Pair,
    strategy: Strategy,
) -> Result<MassFunction, FusionError> {
    match strategy {
        Strategy::A => strategy_a(profile, pair),
        Strategy::B => strategy_b(profile, pair),
    }
}

const TIE_EPSILON: f64 = 1e-12;

/// Pignistic decision over the four relations.
///
/// Ties go to incomparability first, then to the lowest atom.
pub fn decide(mass: &MassFunction) -> Result<RelationKind, FusionError> {
    let betp = mass.betp_all()?;
    if betp.len() != 4 {
        return Err(EvidenceError::FrameMismatch.into());
    }
    let best = betp.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let order = [
        RelationKind::Incomparability,
        RelationKind::StrictPreference,
        RelationKind::InverseStrictPreference,
        RelationKind::Indifference,
    ];
    Ok(order.into_iter().find(|k| betp[k.atom()] >= best - TIE_EPSILON).expect("max is attained"))
}

/// Categorical mass on incomparability, the reference point for edge removal.
pub fn incomparability_mass() -> MassFunction {
    MassFunction::categorical(Frame::preference(), RelationKind::Incomparability.subset())
        .expect("singleton of the preference frame")
}

/// One pair's fused mass, decision and distance to incomparability.
#[derive(Debug, Clone, PartialEq)]
pub struct FusedPair {
    pub pair: Pair,
    pub mass: MassFunction,
    pub decided: RelationKind,
    pub d_incomp: f64,
}

impl FusedPair {
    pub fn from_mass(pair: Pair, mass: MassFunction) -> Result<Self, FusionError> {
        let decided = decide(&mass)?;
        let d_incomp = jousselme_distance(&mass, &incomparability_mass())?;
        Ok(FusedPair { pair, mass, decided, d_incomp })
    }
}

/// Fused pairs together with the alternative labels they index into.
#[derive(Debug, Clone, PartialEq)]
pub struct FusedProfile {
    pub alternatives: Vec<String>,
    pub pairs: Vec<FusedPair>,
}

impl FusedProfile {
    pub fn get(&self, pair: Pair) -> Option<&FusedPair> {
        self.pairs.iter().find(|p| p.pair == pair)
    }
}

/// Fuses every ascending pair of the profile, in lexicographic pair order.
pub fn fuse_profile(profile: &PreferenceProfile, strategy: Strategy) -> Result<FusedProfile, FusionError> {
    if profile.alternatives.len() < 2 {
        return Err(FusionError::TooFewAlternatives(profile.alternatives.len()));
    }
    if profile.agents.is_empty() {
        return Err(FusionError::NoAgents);
    }
    let reference = incomparability_mass();
    let pairs = profile
        .pairs()
        .map(|pair| {
            let mass = fuse_pair(profile, pair, strategy)?;
            let decided = decide(&mass)?;
            let d_incomp = jousselme_distance(&mass, &reference)?;
            Ok(FusedPair { pair, mass, decided, d_incomp })
        })
        .collect::<Result<Vec<_>, FusionError>>()?;
    Ok(FusedProfile { alternatives: profile.alternatives.clone(), pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_agent(degrees: [f64; 4]) -> (PreferenceProfile, Pair) {
        let mut p = PreferenceProfile::new(["x", "y"], DefaultTemplate::default()).unwrap();
        let a = p.add_agent("solo").unwrap();
        let pair = Pair::new(0, 1).unwrap();
        p.assess(a, pair, Degrees::new(degrees).unwrap()).unwrap();
        (p, pair)
    }

    #[test]
    fn relation_kind_roundtrip() {
        for k in RelationKind::ALL {
            assert_eq!(RelationKind::from_atom(k.atom()), Some(k));
            assert_eq!(k.name().parse::<RelationKind>().unwrap(), k);
            assert_eq!(k.reversed().reversed(), k);
        }
        assert!("bogus".parse::<RelationKind>().is_err());
    }

    #[test]
    fn pair_orientation() {
        assert!(Pair::new(2, 1).is_err());
        assert!(Pair::new(1, 1).is_err());
        assert_eq!(Pair::sorted(3, 1).unwrap(), (Pair::new(1, 3).unwrap(), true));
    }

    #[test]
    fn declare_normalizes_orientation() {
        let mut p = PreferenceProfile::new(["a", "b"], DefaultTemplate::default()).unwrap();
        let s = p.add_agent("s").unwrap();
        p.declare(s, 1, 0, RelationKind::StrictPreference).unwrap();
        let pair = Pair::new(0, 1).unwrap();
        assert_eq!(p.declared(s, pair), Some(RelationKind::InverseStrictPreference));
        assert_eq!(p.resolve_degrees(s, pair).unwrap().values(), [0.1, 0.9, 0.2, 0.1]);
        assert!(p.declare(s, 0, 1, RelationKind::Indifference).is_err());
        assert!(p.declare(s, 0, 0, RelationKind::Indifference).is_err());
        assert!(p.declare(s, 0, 5, RelationKind::Indifference).is_err());
        assert!(p.declare(9, 0, 1, RelationKind::Indifference).is_err());
    }

    #[test]
    fn undeclared_pair_uses_incomparability_row() {
        let mut p = PreferenceProfile::new(["a", "b", "c"], DefaultTemplate::default()).unwrap();
        let s = p.add_agent("s").unwrap();
        let d = p.resolve_degrees(s, Pair::new(0, 2).unwrap()).unwrap();
        assert_eq!(d.values(), [0.1, 0.1, 0.0, 0.9]);
    }

    #[test]
    fn degrees_validated() {
        assert!(Degrees::new([0.1, 1.1, 0.0, 0.0]).is_err());
        assert!(Degrees::new([0.1, f64::NAN, 0.0, 0.0]).is_err());
        assert!(Degrees::new([1.0, 1.0, 1.0, 1.0]).is_ok());
    }

    #[test]
    fn zero_degrees_give_vacuous_mass() {
        let (p, pair) = one_agent([0.0; 4]);
        for s in [Strategy::A, Strategy::B] {
            let m = fuse_pair(&p, pair, s).unwrap();
            assert_eq!(m.masses(), MassFunction::vacuous(Frame::preference()).masses());
            assert_eq!(decide(&m).unwrap(), RelationKind::Incomparability);
        }
    }

    #[test]
    fn single_agent_strategies_agree() {
        let (p, pair) = one_agent([0.8, 0.7, 0.6, 0.5]);
        let a = strategy_a(&p, pair).unwrap();
        let b = strategy_b(&p, pair).unwrap();
        assert!(a.max_abs_diff(&b).unwrap() < 1e-9);
        assert_eq!(b.empty_mass(), 0.0);
    }

    #[test]
    fn no_agents_is_an_error() {
        let p = PreferenceProfile::new(["a", "b"], DefaultTemplate::default()).unwrap();
        assert_eq!(fuse_profile(&p, Strategy::A).unwrap_err(), FusionError::NoAgents);
        let mut q = PreferenceProfile::new(["a"], DefaultTemplate::default()).unwrap();
        q.add_agent("s").unwrap();
        assert_eq!(fuse_profile(&q, Strategy::B).unwrap_err(), FusionError::TooFewAlternatives(1));
    }

    #[test]
    fn decide_tie_break() {
        let f = Frame::preference();
        let v = MassFunction::vacuous(f.clone());
        assert_eq!(decide(&v).unwrap(), RelationKind::Incomparability);
        let m = MassFunction::from_focal(
            f.clone(),
            [(Subset::singleton(1), 0.4), (Subset::singleton(2), 0.4), (f.full(), 0.2)],
        )
        .unwrap();
        assert_eq!(decide(&m).unwrap(), RelationKind::InverseStrictPreference);
        let c = MassFunction::categorical(f, Subset::EMPTY).unwrap();
        assert!(decide(&c).is_err());
    }

    #[test]
    fn template_only_incomparability_profile() {
        let mut p = PreferenceProfile::new(["a", "b", "c", "d"], DefaultTemplate::default()).unwrap();
        p.add_agent("s").unwrap();
        for s in [Strategy::A, Strategy::B] {
            let fused = fuse_profile(&p, s).unwrap();
            assert_eq!(fused.pairs.len(), 6);
            assert!(fused.pairs.iter().all(|f| f.decided == RelationKind::Incomparability));
            assert!(fused.pairs.windows(2).all(|w| w[0].pair < w[1].pair));
        }
    }
}
