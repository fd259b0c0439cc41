use super::{Demotion, PreferenceGraph, RelationEdge};
use crate::fusion::{FusedPair, FusedProfile, Pair, RelationKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Admitted,
    Demoted,
}

/// One relation considered by the incremental builder, in processing order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub pair: Pair,
    pub d_incomp: f64,
    pub outcome: StepOutcome,
}

/// Depth-first reachability over a growing adjacency list. Visit marks are
/// epoch-stamped so a query never has to clear them.
struct Reach {
    adj: Vec<Vec<usize>>,
    mark: Vec<u32>,
    epoch: u32,
    stack: Vec<usize>,
}

impl Reach {
    fn new(n: usize) -> Self {
        Reach { adj: vec![Vec::new(); n], mark: vec![0; n], epoch: 0, stack: Vec::new() }
    }

    /// Whether a directed path leads from `from` to `to`. Callers only ask
    /// about pairs with no arc yet, so any path found has length ≥ 2.
    fn path_exists(&mut self, from: usize, to: usize) -> bool {
        debug_assert!(!self.adj[from].contains(&to));
        self.epoch += 1;
        self.stack.clear();
        self.stack.push(from);
        self.mark[from] = self.epoch;
        while let Some(v) = self.stack.pop() {
            for &w in &self.adj[v] {
                if w == to {
                    return true;
                }
                if self.mark[w] != self.epoch {
                    self.mark[w] = self.epoch;
                    self.stack.push(w);
                }
            }
        }
        false
    }
}

/// Builds a DAG₂ by inserting relations from the most to the least distant
/// from incomparability, refusing any relation that would close a cycle
/// through three or more alternatives.
///
/// The relations are sorted ascending by `(d_incomp, pair)` and popped from
/// the top, so among equal distances the larger pair is tried first.
pub fn incremental_dag2(fused: &FusedProfile) -> PreferenceGraph {
    incremental_dag2_with_trace(fused).0
}

pub fn incremental_dag2_with_trace(fused: &FusedProfile) -> (PreferenceGraph, Vec<Step>) {
    let n = fused.alternatives.len();
    let mut g = PreferenceGraph::empty(fused.alternatives.clone());
    let mut stack: Vec<&FusedPair> = fused.pairs.iter().filter(|p| p.decided.is_comparable()).collect();
    stack.sort_by(|a, b| a.d_incomp.total_cmp(&b.d_incomp).then(a.pair.cmp(&b.pair)));

    let mut reach = Reach::new(n);
    let mut trace = Vec::with_capacity(stack.len());
    while let Some(fp) = stack.pop() {
        let (i, j) = (fp.pair.i(), fp.pair.j());
        let closes_cycle = match fp.decided {
            RelationKind::StrictPreference => reach.path_exists(j, i),
            RelationKind::InverseStrictPreference => reach.path_exists(i, j),
            RelationKind::Indifference => reach.path_exists(j, i) || reach.path_exists(i, j),
            RelationKind::Incomparability => unreachable!("filtered above"),
        };
        let outcome = if closes_cycle {
            g.record_demotion(Demotion { pair: fp.pair, kind: fp.decided, d_incomp: fp.d_incomp });
            StepOutcome::Demoted
        } else {
            let edge = RelationEdge {
                pair: fp.pair,
                kind: fp.decided,
                mass: fp.mass.clone(),
                d_incomp: fp.d_incomp,
            };
            for (u, v) in edge.arcs() {
                reach.adj[u].push(v);
            }
            g.insert(edge).expect("pair indices come from the same profile");
            StepOutcome::Admitted
        };
        trace.push(Step { pair: fp.pair, d_incomp: fp.d_incomp, outcome });
    }
    (g, trace)
}
