//! The four-variable threshold gadget is not read-once.

use readonce::hardness::threshold_gadget;
use readonce::{Oracle, TermKind};

fn main() {
    let (reg, g) = threshold_gadget();
    let oracle = Oracle::default();
    println!("gadget: {}", g.display(&reg));
    for kind in [TermKind::Minterm, TermKind::Maxterm] {
        let sets = oracle.enumerate_terms(&g, kind).unwrap().sets;
        println!(
            "{kind:?}s: {}",
            sets.iter()
                .map(|s| reg.format_set(s))
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    let v = oracle.is_read_once(&g).unwrap();
    let w = v.witness.expect("not read-once");
    println!(
        "witness: minterm {} and maxterm {}",
        reg.format_set(&w.minterm),
        reg.format_set(&w.maxterm)
    );
}
