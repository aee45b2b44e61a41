//! The read-2 wrapper is read-once exactly when Ψ → D_n is a tautology.

use std::collections::HashMap;

use readonce::hardness::{build_reduction, gadget_product, wrapper_formula, Graph, W_NAMES};
use readonce::Oracle;

fn main() {
    let oracle = Oracle::default();
    for (name, g) in [
        ("triangle", Graph::complete(3).unwrap()),
        ("two isolated vertices", Graph::empty(2).unwrap()),
    ] {
        let mut r = build_reduction(&g, 2).unwrap();
        let dn = r.dn_formula();
        let counterexample = oracle.brute_counterexample(&r.psi, &dn).unwrap();
        let w = wrapper_formula(&r.psi, &r.dn, &mut r.registry).unwrap();
        println!(
            "{name}: wrapper over {} variables, max reads {}",
            r.registry.len(),
            w.max_occurrences()
        );
        println!("  Ψ -> D_n tautology: {}", counterexample.is_none());
        println!(
            "  wrapper read-once:  {}",
            oracle.is_read_once(&w).unwrap().read_once
        );
        if let Some(ones) = counterexample {
            let sigma: HashMap<_, _> = r
                .registry
                .vars()
                .filter(|v| !W_NAMES.contains(&r.registry.name(*v)))
                .map(|v| (v, ones.contains(v)))
                .collect();
            let rest = w.restrict(&sigma);
            let g = rest.as_formula().expect("w variables remain");
            let ws = W_NAMES.map(|n| r.registry.get(n).unwrap());
            println!(
                "  restricted at the counterexample: {}",
                g.display(&r.registry)
            );
            println!(
                "  equals (w1 w3 | w2 w4)(w1 w2 | w3 w4): {}",
                oracle.equivalent(g, &gadget_product(ws)).unwrap()
            );
        }
    }
}
