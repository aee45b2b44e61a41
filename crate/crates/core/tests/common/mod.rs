//! Instance generators and brute-force checks shared by the integration tests.

#![allow(dead_code)]

use rand::Rng;
use readonce::oracle::{is_maxterm, is_minterm, Oracle, TermKind};
use readonce::{Formula, Instance, Registry, Var, VarSet, Witness};

/// A random valid instance over `1..=max_vars` variables with at most
/// `max_m` clauses and `max_l` terms.
pub fn random_instance<R: Rng>(
    rng: &mut R,
    max_vars: usize,
    max_m: usize,
    max_l: usize,
) -> Instance {
    let n = rng.gen_range(1..=max_vars);
    let registry = Registry::with_names((0..n).map(|i| format!("v{i}")));
    let l = rng.gen_range(1..=max_l.min(n));
    let mut terms = vec![VarSet::new(); l];
    // Seed every term with one variable so none is empty.
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    for (slot, &v) in order.iter().enumerate() {
        let j = if slot < l { slot } else { rng.gen_range(0..l) };
        terms[j].insert(Var::new(v));
    }
    let m = rng.gen_range(1..=max_m);
    let density = [0.3, 0.6, 0.9][rng.gen_range(0..3)];
    let mut clauses = vec![VarSet::new(); m];
    for v in 0..n {
        if rng.gen_bool(density) {
            clauses[rng.gen_range(0..m)].insert(Var::new(v));
        }
    }
    clauses.retain(|c| !c.is_empty());
    if clauses.is_empty() {
        clauses.push(VarSet::singleton(Var::new(rng.gen_range(0..n))));
    }
    readonce::recognizer::validate(clauses, terms, registry)
        .expect("generator produces valid instances")
}

/// Checks a witness by direct evaluation of `C ∨ D`.
pub fn witness_is_sound(f: &Formula, w: &Witness) -> bool {
    is_minterm(f, &w.minterm)
        && is_maxterm(f, &w.maxterm)
        && w.minterm.intersection_len(&w.maxterm) >= 2
}

pub struct Terms {
    pub minterms: Vec<VarSet>,
    pub maxterms: Vec<VarSet>,
}

pub fn terms_of(inst: &Instance) -> Terms {
    let f = inst.to_formula();
    let oracle = Oracle::default();
    Terms {
        minterms: oracle.enumerate_terms(&f, TermKind::Minterm).unwrap().sets,
        maxterms: oracle.enumerate_terms(&f, TermKind::Maxterm).unwrap().sets,
    }
}

/// Whether the instance satisfies the hypotheses of the single-clause maxterm
/// searches: `C → D` fails and no maxterm contains two clauses.
pub fn past_step_two(inst: &Instance, terms: &Terms) -> bool {
    let clauses = inst.clauses();
    let not_taut = readonce::implies_tautology(clauses, inst.terms())
        .unwrap()
        .is_some();
    let two = (0..clauses.len()).any(|u| {
        (u + 1..clauses.len()).any(|v| {
            let both = clauses[u].union(&clauses[v]);
            terms.maxterms.iter().any(|t| t.is_superset(&both))
        })
    });
    not_taut && !two
}

/// Outcome of comparing every single-step search with brute force on one instance.
pub fn search_mismatches(inst: &Instance) -> Vec<String> {
    let terms = terms_of(inst);
    let f = inst.to_formula();
    let clauses = inst.clauses();
    let mut bad = Vec::new();

    for u in 0..clauses.len() {
        for v in 0..clauses.len() {
            if u == v {
                continue;
            }
            let got = inst.maxterm_with_two_clauses(u, v).unwrap();
            let both = clauses[u].union(&clauses[v]);
            let want = terms.maxterms.iter().any(|t| t.is_superset(&both));
            if got.is_some() != want
                || got
                    .as_ref()
                    .is_some_and(|t| !is_maxterm(&f, t) || !t.is_superset(&both))
            {
                bad.push(format!("two clauses ({u},{v}): got {got:?}, exists {want}"));
            }
        }
    }

    let right: Vec<usize> = (0..inst.terms().len())
        .filter(|&j| terms.minterms.contains(&inst.terms()[j]))
        .collect();
    if inst.right_minterms() != right {
        bad.push(format!(
            "right minterms {:?} vs {right:?}",
            inst.right_minterms()
        ));
    }
    let mut by_char: Vec<VarSet> = terms
        .minterms
        .iter()
        .filter(|s| inst.is_left_minterm(s))
        .cloned()
        .collect();
    by_char.extend(
        inst.right_minterms()
            .into_iter()
            .map(|j| inst.terms()[j].clone()),
    );
    by_char.sort();
    by_char.dedup();
    let mut all = terms.minterms.clone();
    all.sort();
    let left_count = all.iter().filter(|s| inst.is_left_set(s)).count();
    let any_left_not_min = all
        .iter()
        .any(|s| inst.is_left_set(s) && !inst.is_left_minterm(s));
    if by_char != all || any_left_not_min || left_count + inst.right_minterms().len() < all.len() {
        bad.push("minterm characterization".into());
    }

    let universe = inst.cnf().variables();
    for a in &universe {
        for b in &universe {
            if a >= b {
                continue;
            }
            let pair: VarSet = [a, b].into_iter().collect();
            let got = inst.left_minterm_with_pair(a, b).unwrap();
            let want = terms
                .minterms
                .iter()
                .any(|s| s.is_superset(&pair) && inst.is_left_set(s));
            if got.is_some() != want
                || got.as_ref().is_some_and(|s| {
                    !is_minterm(&f, s) || !inst.is_left_set(s) || !s.is_superset(&pair)
                })
            {
                bad.push(format!(
                    "left pair ({a:?},{b:?}): got {got:?}, exists {want}"
                ));
            }
        }
    }

    if past_step_two(inst, &terms) {
        for (i, ci) in clauses.iter().enumerate() {
            let got = inst.maxterm_with_clause(i).unwrap();
            let want = terms.maxterms.iter().any(|t| t.is_superset(ci));
            if got.is_some() != want
                || got
                    .as_ref()
                    .is_some_and(|t| !is_maxterm(&f, t) || !t.is_superset(ci))
            {
                bad.push(format!("clause {i}: got {got:?}, exists {want}"));
            }
        }
        for (u, cu) in clauses.iter().enumerate() {
            for dv in inst.terms().iter().filter(|t| t.is_disjoint(cu)) {
                for p in dv {
                    let mut need = cu.clone();
                    need.insert(p);
                    let got = inst.maxterm_with_clause_plus(u, p).unwrap();
                    let want = terms.maxterms.iter().any(|t| t.is_superset(&need));
                    if got.is_some() != want
                        || got
                            .as_ref()
                            .is_some_and(|t| !is_maxterm(&f, t) || !t.is_superset(&need))
                    {
                        bad.push(format!("clause {u} plus {p:?}: got {got:?}, exists {want}"));
                    }
                }
            }
        }
    }
    bad
}

/// A random CNF in which every variable occurs at most twice.
pub fn random_read2_cnf<R: Rng>(
    rng: &mut R,
    max_vars: usize,
    max_clauses: usize,
) -> readonce::LiteralCnf {
    use readonce::Lit;
    let n = rng.gen_range(1..=max_vars);
    let m = rng.gen_range(1..=max_clauses);
    let mut clauses: Vec<Vec<Lit>> = vec![Vec::new(); m];
    for v in 0..n {
        for _ in 0..rng.gen_range(0..=2) {
            let var = Var::new(v);
            let lit = if rng.gen_bool(0.5) {
                Lit::pos(var)
            } else {
                Lit::neg(var)
            };
            clauses[rng.gen_range(0..m)].push(lit);
        }
    }
    // Keep an occasional empty clause.
    clauses.retain(|c| !c.is_empty() || rng.gen_bool(0.05));
    readonce::LiteralCnf::with_width(n, clauses)
}

/// Exhaustive satisfiability over all `2^width` assignments.
pub fn brute_sat(cnf: &readonce::LiteralCnf) -> bool {
    let w = cnf.width();
    (0u64..1 << w).any(|bits| {
        let ones: VarSet = (0..w)
            .filter(|b| bits >> b & 1 == 1)
            .map(Var::new)
            .collect();
        cnf.satisfied_by(&readonce::Assignment::from_ones(w, &ones))
    })
}
