//! Solve a read-2 CNF and decide C → D implications for read-once C and D.

use readonce::io::instance_from_text;
use readonce::{implies_tautology, solve_read2, Lit, LiteralCnf, Registry};

fn main() {
    let reg = Registry::with_names(["a", "b", "c", "d"]);
    let v = |n: &str| reg.get(n).unwrap();
    // (a ∨ ¬b)(b ∨ c)(¬a ∨ ¬c)(d ∨ ¬d): every variable occurs at most twice.
    let cnf = LiteralCnf::new([
        vec![Lit::pos(v("a")), Lit::neg(v("b"))],
        vec![Lit::pos(v("b")), Lit::pos(v("c"))],
        vec![Lit::neg(v("a")), Lit::neg(v("c"))],
        vec![Lit::pos(v("d")), Lit::neg(v("d"))],
    ]);
    let result = solve_read2(&cnf).expect("read-2 input");
    match result.model {
        Some(m) => println!("satisfiable, ones = {}", reg.format_set(m.ones())),
        None => println!("unsatisfiable"),
    }

    for (c, d) in [
        ("x1\ny1\n", "x1 y1\n"),
        ("x1 x2\ny1 y2\n", "x1 y1\nx2 y2\n"),
        ("x1 x2\nx3\n", "x1 y1\nx2 y2\nx3 y3\n"),
    ] {
        let inst = instance_from_text(c, d).expect("valid instance");
        let label = format!(
            "C = {}, D = {}",
            inst.cnf().to_formula().display(inst.registry()),
            inst.dnf().to_formula().display(inst.registry())
        );
        match implies_tautology(inst.clauses(), inst.terms()).unwrap() {
            None => println!("{label}: C -> D is a tautology"),
            Some(s) => println!("{label}: counterexample {}", inst.registry().format_set(&s)),
        }
    }
}
