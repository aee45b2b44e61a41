//! Turn clique instances into implication instances Ψ → D_n and check them.

use readonce::hardness::{build_reduction, Graph};
use readonce::io::render_family;
use readonce::oracle::tautology_by_minterms;

fn main() {
    let graphs = [
        ("triangle", Graph::complete(3).unwrap()),
        ("two isolated vertices", Graph::empty(2).unwrap()),
        (
            "path on 3 vertices",
            Graph::new(3, [(1, 2), (2, 3)]).unwrap(),
        ),
    ];
    for (name, g) in graphs {
        for k in [2, 3] {
            let r = build_reduction(&g, k).unwrap();
            let taut = tautology_by_minterms(&r.psi, &r.dn_formula(), 1 << 16).unwrap();
            println!(
                "{name}, k = {k}: |CONF| = {}, {} variables, clique = {}, tautology = {}",
                r.conf.len(),
                r.n_vars(),
                g.has_clique(k),
                taut
            );
        }
    }
    let r = build_reduction(&Graph::complete(3).unwrap(), 2).unwrap();
    println!(
        "\nΨ for the triangle, k = 2:\n{}",
        r.psi.display(&r.registry)
    );
    print!("D_n terms:\n{}", render_family(r.dn.terms(), &r.registry));
}
