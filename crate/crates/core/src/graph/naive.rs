use super::{find_paradox_components, PreferenceGraph};

/// Repeatedly finds the paradox components and demotes, in each one, the
/// relation closest to incomparability (smallest `d_incomp`, then smallest
/// pair). Components are recomputed after every round.
pub fn naive_dag2(g: &PreferenceGraph) -> PreferenceGraph {
    let mut g = g.clone();
    naive_dag2_in_place(&mut g);
    g
}

/// [`naive_dag2`] without copying the input graph.
pub fn naive_dag2_in_place(g: &mut PreferenceGraph) {
    loop {
        let components = find_paradox_components(g);
        if components.is_empty() {
            return;
        }
        for c in components {
            let weakest = c
                .edges
                .iter()
                .map(|&p| (g.edge(p).expect("component edge exists").d_incomp, p))
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
                .map(|(_, p)| p)
                .expect("paradox component has edges");
            g.demote(weakest);
        }
    }
}
