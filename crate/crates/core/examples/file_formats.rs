//! Read CNF, DNF, formula and graph files and write a reduction to disk.

use readonce::hardness::build_reduction;
use readonce::io::{
    formula_from_text, graph_from_text, instance_from_text, render_family, Manifest,
};

fn main() {
    let cnf = "# clauses, one per line\nx1 x2\nx3\n";
    let dnf = "x1 y1\nx2 y2\nx3 y3\n";
    let inst = instance_from_text(cnf, dnf).expect("valid instance");
    print!(
        "clauses:\n{}",
        render_family(inst.clauses(), inst.registry())
    );
    print!("terms:\n{}", render_family(inst.terms(), inst.registry()));

    match instance_from_text("x1 x2\nx2\n", dnf) {
        Ok(_) => unreachable!(),
        Err(e) => println!("overlapping clauses rejected: {e}"),
    }

    let (reg, f) = formula_from_text("w2 & w1 | w3").unwrap();
    println!(
        "formula {} with sorted ids {:?}",
        f.display(&reg),
        reg.sorted_names(&reg.all())
    );

    let g = graph_from_text("3 3\n1 2\n2 3\n1 3\n").unwrap();
    let r = build_reduction(&g, 2).unwrap();
    let manifest = serde_json::to_string_pretty(&Manifest::of(&r)).unwrap();
    println!("manifest:\n{manifest}");
}
