mod common;

use proptest::prelude::*;

use prefuse::fusion::{
    decide, fuse_pair, fuse_profile, strategy_a, strategy_b, DefaultTemplate, Degrees, Pair,
    PreferenceProfile, RelationKind, Strategy,
};

const TOL: f64 = 1e-9;

fn profile(rows: &[[f64; 4]]) -> PreferenceProfile {
    let mut p = PreferenceProfile::new(["x", "y"], DefaultTemplate::default()).unwrap();
    for (k, row) in rows.iter().enumerate() {
        let a = p.add_agent(format!("agent{k}")).unwrap();
        p.assess(a, Pair::new(0, 1).unwrap(), Degrees::new(*row).unwrap()).unwrap();
    }
    p
}

fn rows(max: usize) -> impl proptest::strategy::Strategy<Value = Vec<[f64; 4]>> {
    prop::collection::vec(prop::array::uniform4(0.0..=1.0f64), 1..=max)
}

fn reference(rows: &[[f64; 4]], strategy: Strategy) -> common::Bba {
    let supports = |row: &[f64; 4]| (0..4).map(|k| common::simple(k, row[k])).collect::<Vec<_>>();
    match strategy {
        Strategy::A => {
            rows.iter().map(|r| common::mean(&supports(r))).reduce(|acc, m| common::conj(&acc, &m)).unwrap()
        }
        Strategy::B => common::mean(
            &(0..4)
                .map(|k| {
                    rows.iter().map(|r| common::simple(k, r[k])).reduce(|a, m| common::conj(&a, &m)).unwrap()
                })
                .collect::<Vec<_>>(),
        ),
    }
}

fn pair() -> Pair {
    Pair::new(0, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn strategies_match_reference(rows in rows(6)) {
        let p = profile(&rows);
        for s in [Strategy::A, Strategy::B] {
            let got = common::to_bba(&fuse_pair(&p, pair(), s).unwrap());
            prop_assert!(common::max_diff(&got, &reference(&rows, s)) < TOL);
        }
    }

    #[test]
    fn strategy_b_never_conflicts(rows in rows(12)) {
        prop_assert_eq!(strategy_b(&profile(&rows), pair()).unwrap().empty_mass(), 0.0);
    }

    #[test]
    fn strategy_a_conflict_grows_with_agents(rows in rows(10)) {
        let mut last = 0.0;
        for k in 1..=rows.len() {
            let e = strategy_a(&profile(&rows[..k]), pair()).unwrap().empty_mass();
            prop_assert!(e >= last - TOL);
            last = e;
        }
    }

    #[test]
    fn one_agent_strategies_agree(row in prop::array::uniform4(0.0..=1.0f64)) {
        let p = profile(&[row]);
        let a = strategy_a(&p, pair()).unwrap();
        let b = strategy_b(&p, pair()).unwrap();
        prop_assert!(a.max_abs_diff(&b).unwrap() < TOL);
    }

    #[test]
    fn decision_ignores_renormalization(rows in rows(5)) {
        let m = strategy_a(&profile(&rows), pair()).unwrap();
        prop_assume!(m.empty_mass() < 0.999);
        prop_assert_eq!(decide(&m).unwrap(), decide(&m.normalized().unwrap()).unwrap());
    }

    #[test]
    fn decision_matches_reference(rows in rows(5)) {
        let p = profile(&rows);
        for s in [Strategy::A, Strategy::B] {
            let m = fuse_pair(&p, pair(), s).unwrap();
            prop_assume!(m.empty_mass() < 0.999);
            prop_assert_eq!(decide(&m).unwrap().atom(), common::decide(&reference(&rows, s)));
        }
    }

    #[test]
    fn fusion_is_deterministic(rows in rows(5)) {
        let p = profile(&rows);
        for s in [Strategy::A, Strategy::B] {
            prop_assert_eq!(fuse_profile(&p, s).unwrap(), fuse_profile(&p, s).unwrap());
        }
    }
}

#[test]
fn replicated_agent_drives_conflict_to_one() {
    let mut p = PreferenceProfile::new(["x", "y"], DefaultTemplate::default()).unwrap();
    for k in 0..50 {
        let a = p.add_agent(format!("agent{k}")).unwrap();
        p.declare(a, 0, 1, RelationKind::StrictPreference).unwrap();
    }
    assert!(strategy_a(&p, pair()).unwrap().empty_mass() > 0.99);
    assert_eq!(strategy_b(&p, pair()).unwrap().empty_mass(), 0.0);
}

#[test]
fn undeclared_pairs_use_the_incomparability_row() {
    let mut p = PreferenceProfile::new(["x", "y", "z"], DefaultTemplate::default()).unwrap();
    p.add_agent("solo").unwrap();
    let f = fuse_profile(&p, Strategy::B).unwrap();
    assert_eq!(f.pairs.len(), 3);
    assert!(f.pairs.iter().all(|fp| fp.decided == RelationKind::Incomparability));
}
