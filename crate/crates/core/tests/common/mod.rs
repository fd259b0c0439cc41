//! Reference implementations used as oracles by the integration tests.
//!
//! Everything here works on explicit label sets and maps and shares no code
//! with the bitmask implementation under test.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use prefuse::evidence::{MassFunction, Subset};

pub type Set = BTreeSet<&'static str>;
pub type Bba = BTreeMap<Set, f64>;

pub const ATOMS: [&str; 4] = ["w1", "w2", "w3", "w4"];

pub fn set(labels: &[&'static str]) -> Set {
    labels.iter().copied().collect()
}

pub fn omega() -> Set {
    set(&ATOMS)
}

pub fn power_set() -> Vec<Set> {
    (0..1u32 << ATOMS.len())
        .map(|bits| ATOMS.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, a)| *a).collect())
        .collect()
}

pub fn simple(atom: usize, alpha: f64) -> Bba {
    let mut m = Bba::new();
    *m.entry(set(&[ATOMS[atom]])).or_default() += alpha;
    *m.entry(omega()).or_default() += 1.0 - alpha;
    m
}

pub fn conj(m1: &Bba, m2: &Bba) -> Bba {
    let mut out = Bba::new();
    for (a, x) in m1 {
        for (b, y) in m2 {
            let c: Set = a.intersection(b).copied().collect();
            *out.entry(c).or_default() += x * y;
        }
    }
    out
}

pub fn mean(ms: &[Bba]) -> Bba {
    let mut out = Bba::new();
    for m in ms {
        for (a, x) in m {
            *out.entry(a.clone()).or_default() += x / ms.len() as f64;
        }
    }
    out
}

pub fn mass(m: &Bba, s: &Set) -> f64 {
    m.get(s).copied().unwrap_or(0.0)
}

pub fn betp(m: &Bba, atom: &str) -> f64 {
    let empty = mass(m, &Set::new());
    m.iter().filter(|(a, _)| a.contains(atom)).map(|(a, x)| x / a.len() as f64).sum::<f64>() / (1.0 - empty)
}

fn jaccard(a: &Set, b: &Set) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let union = a.union(b).count();
    if union == 0 {
        0.0
    } else {
        a.intersection(b).count() as f64 / union as f64
    }
}

/// Full quadratic form over every pair of subsets.
pub fn jousselme(m1: &Bba, m2: &Bba) -> f64 {
    let subsets = power_set();
    let diff: Vec<f64> = subsets.iter().map(|s| mass(m1, s) - mass(m2, s)).collect();
    let mut q = 0.0;
    for (a, da) in subsets.iter().zip(&diff) {
        for (b, db) in subsets.iter().zip(&diff) {
            q += da * jaccard(a, b) * db;
        }
    }
    (0.5 * q).max(0.0).sqrt()
}

pub fn to_bba(m: &MassFunction) -> Bba {
    power_set()
        .into_iter()
        .map(|s| {
            let bits = s.iter().map(|a| 1u32 << ATOMS.iter().position(|x| x == a).unwrap()).sum();
            (s, m.mass(Subset(bits)))
        })
        .filter(|(_, x)| *x != 0.0)
        .collect()
}

pub fn max_diff(m1: &Bba, m2: &Bba) -> f64 {
    power_set().iter().map(|s| (mass(m1, s) - mass(m2, s)).abs()).fold(0.0, f64::max)
}

/// Decision by pignistic argmax with ties to incomparability, then the
/// lowest atom.
pub fn decide(m: &Bba) -> usize {
    let p: Vec<f64> = ATOMS.iter().map(|a| betp(m, a)).collect();
    let best = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    [3, 0, 1, 2].into_iter().find(|&k| p[k] >= best - 1e-12).unwrap()
}

/// The five-alternative example written out by hand: one-based pairs,
/// atoms 0..4 in preference, inverse, indifference, incomparability order.
pub mod example {
    use super::*;

    pub const TEMPLATE: [[f64; 4]; 4] =
        [[0.8, 0.2, 0.3, 0.1], [0.1, 0.9, 0.2, 0.1], [0.3, 0.3, 0.7, 0.0], [0.1, 0.1, 0.0, 0.9]];

    const P: usize = 0;
    const N: usize = 1;
    const I: usize = 2;

    pub const DECLARED: [&[((usize, usize), usize)]; 3] = [
        &[((1, 2), I), ((2, 3), P), ((3, 4), P), ((3, 5), P), ((4, 5), P)],
        &[((1, 2), I), ((2, 4), N), ((4, 5), P), ((3, 4), P)],
        &[((1, 2), N), ((2, 3), P), ((2, 4), N), ((4, 5), N)],
    ];

    /// Per pair, one row of degrees per agent.
    type Explicit = ((usize, usize), [[f64; 4]; 3]);

    pub const EXPLICIT: [Explicit; 3] = [
        ((2, 3), [[0.8, 0.7, 0.6, 0.5], [0.5, 0.4, 0.6, 0.9], [0.6, 0.2, 0.4, 0.1]]),
        ((2, 4), [[0.4, 0.1, 0.3, 0.6], [0.2, 0.4, 0.3, 0.1], [0.3, 0.5, 0.2, 0.1]]),
        ((3, 4), [[0.9, 0.8, 0.7, 0.6], [0.9, 0.8, 0.1, 0.7], [0.8, 0.1, 0.6, 0.9]]),
    ];

    pub fn degrees(agent: usize, pair: (usize, usize)) -> [f64; 4] {
        if let Some((_, rows)) = EXPLICIT.iter().find(|(p, _)| *p == pair) {
            return rows[agent];
        }
        let kind = DECLARED[agent].iter().find(|(p, _)| *p == pair).map_or(3, |(_, k)| *k);
        TEMPLATE[kind]
    }

    pub fn strategy_a(pair: (usize, usize)) -> Bba {
        let per_agent: Vec<Bba> = (0..3)
            .map(|a| {
                let d = degrees(a, pair);
                mean(&(0..4).map(|k| simple(k, d[k])).collect::<Vec<_>>())
            })
            .collect();
        per_agent.iter().skip(1).fold(per_agent[0].clone(), |acc, m| conj(&acc, m))
    }

    pub fn strategy_b(pair: (usize, usize)) -> Bba {
        let per_relation: Vec<Bba> = (0..4)
            .map(|k| {
                let ms: Vec<Bba> = (0..3).map(|a| simple(k, degrees(a, pair)[k])).collect();
                ms.iter().skip(1).fold(ms[0].clone(), |acc, m| conj(&acc, m))
            })
            .collect();
        mean(&per_relation)
    }

    pub fn incomparability() -> Bba {
        [(set(&["w4"]), 1.0)].into_iter().collect()
    }
}

/// Whether a directed graph on `n` nodes has a simple cycle through three
/// or more nodes, by exhaustive path search. Only for small graphs.
pub fn has_long_cycle(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in arcs {
        adj[u].push(v);
    }
    fn extend(adj: &[Vec<usize>], start: usize, v: usize, path: &mut Vec<usize>) -> bool {
        for &w in &adj[v] {
            if w == start && path.len() >= 3 {
                return true;
            }
            // Only start from the smallest node of a cycle to bound the search.
            if w > start && !path.contains(&w) {
                path.push(w);
                if extend(adj, start, w, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (0..n).any(|s| extend(&adj, s, s, &mut vec![s]))
}
