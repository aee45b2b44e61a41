//! Parse a monotone formula, render it, evaluate it and fix some variables.

use std::collections::HashMap;

use readonce::{parse_formula, Assignment, Registry, Restricted};

fn main() {
    let mut reg = Registry::new();
    let f = parse_formula("x1 & y1 | x2 & (y2 | z)", &mut reg).expect("valid formula");
    println!("parsed:      {}", f.display(&reg));
    println!("variables:   {}", reg.format_set(&f.variables()));
    println!("max reads:   {}", f.max_occurrences());
    println!("depth:       {}", f.depth());

    let ones = ["x2", "z"]
        .map(|n| reg.get(n).unwrap())
        .into_iter()
        .collect();
    let a = Assignment::from_ones(reg.len(), &ones);
    println!("f(x2 = z = 1, rest 0) = {}", f.eval(&a));

    let sigma: HashMap<_, _> = [("x1", true), ("y2", false)]
        .map(|(n, b)| (reg.get(n).unwrap(), b))
        .into();
    match f.restrict(&sigma) {
        Restricted::Const(b) => println!("restricted:  constant {b}"),
        Restricted::Formula(g) => println!("restricted:  {}", g.display(&reg)),
    }

    for bad in ["x1 y1", "a & !b", ""] {
        let err = parse_formula(bad, &mut Registry::new()).unwrap_err();
        println!("{bad:?} -> error at {err}");
    }
}
