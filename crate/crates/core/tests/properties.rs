mod common;

use std::collections::HashMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use readonce::oracle::Oracle;
use readonce::{
    parse_formula, solve_read2, Assignment, Formula, Registry, Restricted, Var, VarSet,
};

const NAMES: [&str; 8] = ["a", "b", "c", "d", "x1", "x2", "y_1", "z9"];

fn registry() -> Registry {
    Registry::with_names(NAMES)
}

fn formula(max_var: usize) -> impl Strategy<Value = Formula> {
    let leaf = (0..max_var).prop_map(|i| Formula::Var(Var::new(i)));
    leaf.prop_recursive(4, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
            prop::collection::vec(inner, 2..4).prop_map(Formula::Or),
        ]
    })
}

fn set_of(bits: u64, width: usize) -> VarSet {
    (0..width)
        .filter(|b| bits >> b & 1 == 1)
        .map(Var::new)
        .collect()
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(f in formula(NAMES.len())) {
        let reg = registry();
        let text = f.display(&reg).to_string();
        let mut reg2 = registry();
        prop_assert_eq!(parse_formula(&text, &mut reg2).unwrap(), f);
    }

    #[test]
    fn evaluation_is_monotone(f in formula(8), bits in 0u64..256, v in 0usize..8) {
        let lower = set_of(bits & !(1 << v), 8);
        let mut upper = lower.clone();
        upper.insert(Var::new(v));
        prop_assert!(!f.eval_ones(&lower) || f.eval_ones(&upper));
    }

    #[test]
    fn restriction_agrees_with_full_evaluation(f in formula(8), fixed_mask in 0u64..256, fixed_vals in 0u64..256) {
        let sigma: HashMap<Var, bool> = (0..8)
            .filter(|b| fixed_mask >> b & 1 == 1)
            .map(|b| (Var::new(b), fixed_vals >> b & 1 == 1))
            .collect();
        let r = f.restrict(&sigma);
        if let Restricted::Formula(g) = &r {
            prop_assert!(g.variables().iter().all(|v| !sigma.contains_key(&v)));
        }
        for bits in 0u64..256 {
            let mut a = Assignment::from_ones(8, &set_of(bits, 8));
            for (&v, &val) in &sigma {
                a.set(v, val);
            }
            prop_assert_eq!(r.eval(&a), f.eval(&a));
        }
    }

    #[test]
    fn varset_algebra(a in prop::collection::btree_set(0usize..200, 0..20), b in prop::collection::btree_set(0usize..200, 0..20)) {
        let sa: VarSet = a.iter().map(|&i| Var::new(i)).collect();
        let sb: VarSet = b.iter().map(|&i| Var::new(i)).collect();
        let ids = |s: &VarSet| s.iter().map(Var::index).collect::<Vec<_>>();
        prop_assert_eq!(ids(&sa.union(&sb)), a.union(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(ids(&sa.intersection(&sb)), a.intersection(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(ids(&sa.difference(&sb)), a.difference(&b).copied().collect::<Vec<_>>());
        prop_assert_eq!(sa.intersection_len(&sb), a.intersection(&b).count());
        prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
        prop_assert_eq!(sa.cmp(&sb), ids(&sa).cmp(&ids(&sb)));
    }
}

#[test]
fn read2_solver_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let cnf = common::random_read2_cnf(&mut rng, 14, 20);
        let result = solve_read2(&cnf).unwrap();
        assert_eq!(result.satisfiable, common::brute_sat(&cnf), "{cnf:?}");
        if let Some(model) = &result.model {
            assert!(cnf.satisfied_by(model));
        }
    }
}

#[test]
fn implication_test_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let oracle = Oracle::default();
    for _ in 0..300 {
        let inst = common::random_instance(&mut rng, 12, 4, 5);
        let got = readonce::implies_tautology(inst.clauses(), inst.terms()).unwrap();
        let want = oracle
            .brute_tautology(&inst.cnf().to_formula(), &inst.dnf().to_formula())
            .unwrap();
        assert_eq!(got.is_none(), want, "{inst:?}");
        if let Some(s) = got {
            assert!(
                inst.cnf().to_formula().eval_ones(&s) && !inst.dnf().to_formula().eval_ones(&s)
            );
        }
    }
}
