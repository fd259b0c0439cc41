use super::{PreferenceGraph, RelationEdge};
use crate::fusion::Pair;

/// Alternatives caught in a Condorcet paradox, with the relations among them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParadoxComponent {
    /// Sorted node indices.
    pub nodes: Vec<usize>,
    /// Relations with both ends in `nodes`, in pair order.
    pub edges: Vec<Pair>,
}

/// Tarjan's algorithm, iterative. Returns the component id of every node;
/// ids are assigned in reverse topological order of the condensation.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*edge) {
                *edge += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack holds v");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Marks the bridges of an undirected graph given as `(u, v)` edge list.
fn bridges(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    const UNSEEN: usize = usize::MAX;
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        inc[u].push((v, id));
        inc[v].push((u, id));
    }
    let mut is_bridge = vec![false; edges.len()];
    let mut tin = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    // (node, edge id used to enter it, next incidence position)
    let mut call: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if tin[root] != UNSEEN || inc[root].is_empty() {
            continue;
        }
        tin[root] = timer;
        low[root] = timer;
        timer += 1;
        call.push((root, usize::MAX, 0));
        while let Some(&mut (v, via, ref mut pos)) = call.last_mut() {
            if let Some(&(w, id)) = inc[v].get(*pos) {
                *pos += 1;
                if id == via {
                    continue;
                }
                if tin[w] == UNSEEN {
                    tin[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    call.push((w, id, 0));
                } else {
                    low[v] = low[v].min(tin[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
                if low[v] > tin[parent] {
                    is_bridge[via] = true;
                }
            }
        }
    }
    is_bridge
}

/// Groups of alternatives involved in cycles of length three or more.
///
/// Strongly connected components are computed first. Inside a component,
/// an indifference that is a bridge of the underlying undirected graph
/// lies on no cycle longer than its own 2-cycle, so such bridges are cut
/// and the remaining connected pieces with three or more nodes are
/// reported. A strict relation inside a component always lies on a longer
/// cycle. Components are ordered by their smallest node.
pub fn find_paradox_components(g: &PreferenceGraph) -> Vec<ParadoxComponent> {
    let n = g.node_count();
    let comp = strongly_connected_components(&g.adjacency());

    let internal: Vec<&RelationEdge> = g.edges().filter(|e| comp[e.pair.i()] == comp[e.pair.j()]).collect();
    let undirected: Vec<(usize, usize)> = internal.iter().map(|e| (e.pair.i(), e.pair.j())).collect();
    let is_bridge = bridges(n, &undirected);

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (&(u, v), &b) in undirected.iter().zip(&is_bridge) {
        if !b {
            adj[u].push(v);
            adj[v].push(u);
        }
    }

    let mut piece = vec![usize::MAX; n];
    let mut out = Vec::new();
    let mut queue = Vec::new();
    for start in 0..n {
        if piece[start] != usize::MAX || adj[start].is_empty() {
            continue;
        }
        let id = out.len();
        let mut nodes = vec![start];
        piece[start] = id;
        queue.push(start);
        while let Some(v) = queue.pop() {
            for &w in &adj[v] {
                if piece[w] == usize::MAX {
                    piece[w] = id;
                    nodes.push(w);
                    queue.push(w);
                }
            }
        }
        nodes.sort_unstable();
        out.push(ParadoxComponent { nodes, edges: Vec::new() });
    }
    for (e, &b) in internal.iter().zip(&is_bridge) {
        if !b {
            out[piece[e.pair.i()]].edges.push(e.pair);
        }
    }
    out.retain(|c| c.nodes.len() >= 3);
    out
}
