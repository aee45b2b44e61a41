//! Decide whether C ∨ D is read-once and print the certificate on rejection.

use readonce::oracle::{is_maxterm, is_minterm};
use readonce::{Instance, Oracle};

type Family<'a> = &'a [&'a [&'a str]];

fn main() {
    let cases: [(Family, Family); 4] = [
        (&[&["x1", "x2"]], &[&["x1", "y1"], &["x2", "y2"]]),
        (
            &[&["x1", "x2"], &["x3"]],
            &[&["x1", "y1"], &["x2", "y2"], &["x3", "y3"]],
        ),
        (
            &[&["x1", "x2"], &["y1", "y2"]],
            &[&["x1", "y1"], &["x2", "y2"]],
        ),
        (
            &[&["a", "c"], &["b", "d"]],
            &[&["a", "b"], &["c", "e"], &["d"]],
        ),
    ];
    let oracle = Oracle::default();
    for (c, d) in cases {
        let inst = Instance::from_names(c.iter().map(|s| s.iter()), d.iter().map(|s| s.iter()))
            .expect("valid instance");
        let reg = inst.registry();
        let f = inst.to_formula();
        let r = inst.recognize().expect("read-2 subproblems");
        println!("{}", f.display(reg));
        println!("  verdict {} at step {}", r.verdict, r.step);
        if let Some(w) = &r.witness {
            println!(
                "  minterm {} (checked: {}), maxterm {} (checked: {})",
                reg.format_set(&w.minterm),
                is_minterm(&f, &w.minterm),
                reg.format_set(&w.maxterm),
                is_maxterm(&f, &w.maxterm)
            );
        }
        println!(
            "  exhaustive oracle says read-once: {}",
            oracle.is_read_once(&f).unwrap().read_once
        );
    }
}
