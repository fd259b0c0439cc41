//! Collective preference graph and Condorcet cycle avoidance.
//!
//! Arcs follow the decided relation of each pair `(i, j)`:
//!
//! | relation            | arcs            |
//! |---------------------|-----------------|
//! | strict preference   | `i → j`         |
//! | inverse preference  | `j → i`         |
//! | indifference        | `i → j`, `j → i`|
//! | incomparability     | none            |
//!
//! An indifference contributes a tolerated 2-cycle. A Condorcet paradox is
//! any simple directed cycle through three or more alternatives; a graph
//! without one is a DAG₂.

mod incremental;
mod naive;
mod scc;

use std::collections::BTreeMap;

use crate::evidence::MassFunction;
use crate::fusion::{FusedProfile, Pair, RelationKind};

pub use incremental::{incremental_dag2, incremental_dag2_with_trace, Step, StepOutcome};
pub use naive::{naive_dag2, naive_dag2_in_place};
pub use scc::{find_paradox_components, strongly_connected_components, ParadoxComponent};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("pair {0} appears more than once")]
    DuplicatePair(Pair),
    #[error("pair {0} refers to an alternative outside 0..{1}")]
    NodeOutOfRange(Pair, usize),
}

/// A decided comparable relation between two alternatives.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationEdge {
    pub pair: Pair,
    pub kind: RelationKind,
    pub mass: MassFunction,
    pub d_incomp: f64,
}

impl RelationEdge {
    /// Directed arcs this relation puts in the graph.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> {
        let (i, j) = (self.pair.i(), self.pair.j());
        let arcs: [Option<(usize, usize)>; 2] = match self.kind {
            RelationKind::StrictPreference => [Some((i, j)), None],
            RelationKind::InverseStrictPreference => [Some((j, i)), None],
            RelationKind::Indifference => [Some((i, j)), Some((j, i))],
            RelationKind::Incomparability => [None, None],
        };
        arcs.into_iter().flatten()
    }
}

/// A relation replaced by incomparability to break a cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Demotion {
    pub pair: Pair,
    pub kind: RelationKind,
    pub d_incomp: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceGraph {
    labels: Vec<String>,
    edges: BTreeMap<Pair, RelationEdge>,
    demoted: Vec<Demotion>,
}

impl PreferenceGraph {
    pub fn empty(labels: Vec<String>) -> Self {
        PreferenceGraph { labels, edges: BTreeMap::new(), demoted: Vec::new() }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> impl Iterator<Item = &RelationEdge> {
        self.edges.values()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, pair: Pair) -> Option<&RelationEdge> {
        self.edges.get(&pair)
    }

    pub fn demoted(&self) -> &[Demotion] {
        &self.demoted
    }

    /// Every directed arc, sorted.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<_> = self.edges.values().flat_map(RelationEdge::arcs).collect();
        arcs.sort_unstable();
        arcs
    }

    /// Out-neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for (u, v) in self.edges.values().flat_map(RelationEdge::arcs) {
            adj[u].push(v);
        }
        adj
    }

    pub(crate) fn insert(&mut self, edge: RelationEdge) -> Result<(), GraphError> {
        let pair = edge.pair;
        if pair.j() >= self.labels.len() {
            return Err(GraphError::NodeOutOfRange(pair, self.labels.len()));
        }
        if edge.kind.is_comparable() {
            self.edges.insert(pair, edge);
        }
        Ok(())
    }

    /// Removes the relation on `pair`, recording it as demoted.
    pub fn demote(&mut self, pair: Pair) -> Option<Demotion> {
        let edge = self.edges.remove(&pair)?;
        let d = Demotion { pair, kind: edge.kind, d_incomp: edge.d_incomp };
        self.demoted.push(d);
        Some(d)
    }

    pub(crate) fn record_demotion(&mut self, d: Demotion) {
        self.demoted.push(d);
    }
}

/// Materializes the decided relations of a fused profile. Incomparable
/// pairs add no edge.
pub fn build_graph(fused: &FusedProfile) -> Result<PreferenceGraph, GraphError> {
    let mut g = PreferenceGraph::empty(fused.alternatives.clone());
    let mut seen = std::collections::BTreeSet::new();
    for fp in &fused.pairs {
        if !seen.insert(fp.pair) {
            return Err(GraphError::DuplicatePair(fp.pair));
        }
        g.insert(RelationEdge {
            pair: fp.pair,
            kind: fp.decided,
            mass: fp.mass.clone(),
            d_incomp: fp.d_incomp,
        })?;
    }
    Ok(g)
}

/// Outcome of a DAG₂ check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dag2Status {
    Valid,
    Paradox(ParadoxComponent),
}

impl Dag2Status {
    pub fn is_valid(&self) -> bool {
        matches!(self, Dag2Status::Valid)
    }
}

/// Valid iff no simple cycle through three or more alternatives exists.
pub fn check_dag2(g: &PreferenceGraph) -> Dag2Status {
    match find_paradox_components(g).into_iter().next() {
        None => Dag2Status::Valid,
        Some(c) => Dag2Status::Paradox(c),
    }
}


#[cfg(test)]
mod tests {
    use super::test_support::fused;
    use super::*;
    use RelationKind::*;

    #[test]
    fn arcs_follow_relation_kind() {
        let f = fused(
            4,
            &[(0, 1, StrictPreference, 0.5), (2, 1, StrictPreference, 0.5), (2, 3, Indifference, 0.5)],
        );
        let g = build_graph(&f).unwrap();
        assert_eq!(g.arcs(), vec![(0, 1), (2, 1), (2, 3), (3, 2)]);
    }

    #[test]
    fn incomparable_pairs_add_no_edge() {
        let f = fused(3, &[(0, 1, Incomparability, 0.0), (1, 2, Incomparability, 0.0)]);
        let g = build_graph(&f).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.node_count(), 3);
        assert!(check_dag2(&g).is_valid());
    }

    #[test]
    fn duplicate_and_out_of_range_pairs() {
        let f = fused(3, &[(0, 1, StrictPreference, 0.5), (1, 0, StrictPreference, 0.4)]);
        assert!(matches!(build_graph(&f), Err(GraphError::DuplicatePair(_))));
        let mut f = fused(3, &[(0, 2, StrictPreference, 0.5)]);
        f.alternatives.pop();
        assert!(matches!(build_graph(&f), Err(GraphError::NodeOutOfRange(..))));
    }

    #[test]
    fn two_cycle_from_indifference_is_valid() {
        let g = build_graph(&fused(2, &[(0, 1, Indifference, 0.7)])).unwrap();
        assert_eq!(g.arcs().len(), 2);
        assert!(check_dag2(&g).is_valid());
    }

    #[test]
    fn triangle_is_a_paradox() {
        let g = build_graph(&fused(
            3,
            &[(0, 1, StrictPreference, 0.9), (1, 2, StrictPreference, 0.8), (2, 0, StrictPreference, 0.1)],
        ))
        .unwrap();
        match check_dag2(&g) {
            Dag2Status::Paradox(c) => assert_eq!(c.nodes, vec![0, 1, 2]),
            Dag2Status::Valid => panic!("triangle accepted"),
        }
    }

    #[test]
    fn demote_records_audit_trail() {
        let mut g = build_graph(&fused(2, &[(0, 1, Indifference, 0.7)])).unwrap();
        let p = Pair::new(0, 1).unwrap();
        let d = g.demote(p).unwrap();
        assert_eq!(d.kind, Indifference);
        assert!(g.demote(p).is_none());
        assert_eq!(g.demoted().len(), 1);
        assert_eq!(g.edge_count(), 0);
    }
}
