//! Enumerate minterms and maxterms and apply the intersection criterion for read-once functions.

use readonce::io::formula_from_text;
use readonce::{Oracle, TermKind};

fn main() {
    let oracle = Oracle::default();
    for text in [
        "x1 & y1 | x2 & y2",
        "(x1 | x2) & (y1 | y2)",
        "x1 & y1 | x1 & y2 | x2 & y1",
    ] {
        let (reg, f) = formula_from_text(text).expect("valid formula");
        let show = |kind| {
            let sets = oracle.enumerate_terms(&f, kind).unwrap().sets;
            sets.iter()
                .map(|s| reg.format_set(s))
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("{text}");
        println!("  minterms: {}", show(TermKind::Minterm));
        println!("  maxterms: {}", show(TermKind::Maxterm));
        let v = oracle.is_read_once(&f).unwrap();
        match v.witness {
            None => println!("  read-once"),
            Some(w) => println!(
                "  not read-once: minterm {} meets maxterm {} twice",
                reg.format_set(&w.minterm),
                reg.format_set(&w.maxterm)
            ),
        }
    }
}
