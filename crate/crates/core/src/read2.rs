//! Satisfiability of CNFs in which every variable occurs at most twice, and
//! the implication test `C → D` for a read-once CNF `C` and read-once DNF `D`.
//!
//! The solver repeatedly applies one of three rules, each of which keeps the
//! formula read-2 and removes at least one clause:
//!
//! 1. unit propagation;
//! 2. pure-literal elimination (a variable seen in one sign only);
//! 3. resolution on a variable with one positive and one negative occurrence,
//!    replacing both clauses by their resolvent (dropped if tautological).
//!
//! In a read-2 CNF every variable falls under rule 2 or rule 3, so the loop
//! ends with an empty clause (unsatisfiable) or no clauses (satisfiable).
//! Models are rebuilt by replaying the eliminations backwards.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::varset::{Assignment, Var, VarSet};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Read2Error {
    #[error("not read-2: variable {} occurs {occurrences} times", var.index())]
    NotRead2 { var: Var, occurrences: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    var: Var,
    positive: bool,
}

impl Lit {
    pub fn pos(var: Var) -> Self {
        Lit {
            var,
            positive: true,
        }
    }

    pub fn neg(var: Var) -> Self {
        Lit {
            var,
            positive: false,
        }
    }

    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn value(self, a: &Assignment) -> bool {
        a.get(self.var) == self.positive
    }
}

/// Sorts and deduplicates `lits`; `None` if the clause contains a variable in both signs.
fn normalize(mut lits: Vec<Lit>) -> Option<Vec<Lit>> {
    lits.sort();
    lits.dedup();
    if lits.windows(2).any(|w| w[0].var == w[1].var) {
        None
    } else {
        Some(lits)
    }
}

/// A CNF over signed literals. Tautological clauses are dropped on construction;
/// an empty clause is kept and makes the formula unsatisfiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiteralCnf {
    clauses: Vec<Vec<Lit>>,
    width: usize,
}

impl LiteralCnf {
    pub fn new<I, C>(clauses: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = Lit>,
    {
        LiteralCnf::with_width(0, clauses)
    }

    /// Like [`LiteralCnf::new`] but models span at least `width` variables.
    pub fn with_width<I, C>(width: usize, clauses: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = Lit>,
    {
        let clauses: Vec<Vec<Lit>> = clauses
            .into_iter()
            .filter_map(|c| normalize(c.into_iter().collect()))
            .collect();
        let used = clauses
            .iter()
            .flatten()
            .map(|l| l.var.index() + 1)
            .max()
            .unwrap_or(0);
        LiteralCnf {
            clauses,
            width: width.max(used),
        }
    }

    /// `C ∧ ¬D`: the clauses of `C` positively, plus one all-negative clause per term of `D`.
    pub fn implication(cnf: &[VarSet], dnf: &[VarSet]) -> Self {
        let positive = cnf
            .iter()
            .map(|c| c.iter().map(Lit::pos).collect::<Vec<_>>());
        let negative = dnf
            .iter()
            .map(|t| t.iter().map(Lit::neg).collect::<Vec<_>>());
        LiteralCnf::new(positive.chain(negative))
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn variables(&self) -> VarSet {
        self.clauses.iter().flatten().map(|l| l.var).collect()
    }

    fn occurrences(&self) -> BTreeMap<Var, usize> {
        let mut counts = BTreeMap::new();
        for l in self.clauses.iter().flatten() {
            *counts.entry(l.var).or_insert(0) += 1;
        }
        counts
    }

    pub fn is_read2(&self) -> bool {
        self.check_read2().is_ok()
    }

    pub fn check_read2(&self) -> Result<(), Read2Error> {
        match self.occurrences().into_iter().find(|&(_, n)| n > 2) {
            Some((var, occurrences)) => Err(Read2Error::NotRead2 { var, occurrences }),
            None => Ok(()),
        }
    }

    pub fn satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.value(a)))
    }

    /// Substitutes `var := value`, removing satisfied clauses and falsified literals.
    pub fn fix(&self, var: Var, value: bool) -> LiteralCnf {
        let lit = Lit {
            var,
            positive: value,
        };
        let mut clauses = self.clauses.clone();
        assign(&mut clauses, lit);
        LiteralCnf {
            clauses,
            width: self.width,
        }
    }
}

fn assign(clauses: &mut Vec<Vec<Lit>>, lit: Lit) {
    clauses.retain(|c| !c.contains(&lit));
    let falsified = lit.negated();
    for c in clauses.iter_mut() {
        c.retain(|&l| l != falsified);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatResult {
    pub satisfiable: bool,
    pub model: Option<Assignment>,
}

enum Step {
    Fixed(Lit),
    Resolved { var: Var, pos_rest: Vec<Lit> },
}

/// Decides a read-2 CNF; a satisfiable answer carries a model over all
/// `cnf.width()` variables (unconstrained variables are 0).
pub fn solve_read2(cnf: &LiteralCnf) -> Result<SatResult, Read2Error> {
    cnf.check_read2()?;
    let mut clauses = cnf.clauses.clone();
    let mut steps = Vec::new();
    loop {
        if clauses.iter().any(Vec::is_empty) {
            return Ok(SatResult {
                satisfiable: false,
                model: None,
            });
        }
        if clauses.is_empty() {
            break;
        }
        if let Some(unit) = clauses.iter().find(|c| c.len() == 1) {
            let lit = unit[0];
            assign(&mut clauses, lit);
            steps.push(Step::Fixed(lit));
            continue;
        }

        let mut occ: BTreeMap<Var, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (i, c) in clauses.iter().enumerate() {
            for l in c {
                let entry = occ.entry(l.var).or_default();
                if l.positive {
                    entry.0.push(i);
                } else {
                    entry.1.push(i);
                }
            }
        }
        if let Some((&var, (pos, _))) = occ.iter().find(|(_, (p, n))| p.is_empty() || n.is_empty())
        {
            let lit = Lit {
                var,
                positive: !pos.is_empty(),
            };
            assign(&mut clauses, lit);
            steps.push(Step::Fixed(lit));
            continue;
        }
        // Every remaining variable has exactly one occurrence of each sign.
        let (&var, (pos, neg)) = occ
            .iter()
            .next()
            .expect("nonempty clause set has a variable");
        let (i, j) = (pos[0], neg[0]);
        let pos_rest: Vec<Lit> = clauses[i]
            .iter()
            .copied()
            .filter(|l| l.var != var)
            .collect();
        let neg_rest: Vec<Lit> = clauses[j]
            .iter()
            .copied()
            .filter(|l| l.var != var)
            .collect();
        let resolvent = normalize(pos_rest.iter().chain(&neg_rest).copied().collect());
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        clauses.swap_remove(hi);
        clauses.swap_remove(lo);
        if let Some(r) = resolvent {
            clauses.push(r);
        }
        steps.push(Step::Resolved { var, pos_rest });
    }

    let mut model = Assignment::zeros(cnf.width);
    for step in steps.iter().rev() {
        match step {
            Step::Fixed(lit) => model.set(lit.var, lit.positive),
            // If the rest of the positive clause already holds, `var = 0` also
            // satisfies the negative one; otherwise the resolvent forces the
            // negative clause's rest and `var = 1` is safe.
            Step::Resolved { var, pos_rest } => {
                let rest_holds = pos_rest.iter().any(|l| l.value(&model));
                model.set(*var, !rest_holds);
            }
        }
    }
    assert!(
        cnf.satisfied_by(&model),
        "reconstructed model violates the input"
    );
    Ok(SatResult {
        satisfiable: true,
        model: Some(model),
    })
}

/// A canonical model of `cnf`: variables are decided from the highest id
/// down, each taking 1 whenever the rest stays satisfiable.
pub fn canonical_model(cnf: &LiteralCnf) -> Result<Option<Assignment>, Read2Error> {
    if !solve_read2(cnf)?.satisfiable {
        return Ok(None);
    }
    let mut current = cnf.clone();
    let mut model = Assignment::zeros(cnf.width);
    let vars: Vec<Var> = cnf.variables().iter().collect();
    for &v in vars.iter().rev() {
        let trial = current.fix(v, true);
        if solve_read2(&trial)?.satisfiable {
            current = trial;
            model.set(v, true);
        } else {
            current = current.fix(v, false);
        }
    }
    debug_assert!(cnf.satisfied_by(&model));
    Ok(Some(model))
}

/// Value of the monotone CNF `clauses` when exactly `ones` are 1.
pub fn cnf_value(clauses: &[VarSet], ones: &VarSet) -> bool {
    clauses.iter().all(|c| c.intersects(ones))
}

/// Value of the monotone DNF `terms` when exactly `ones` are 1.
pub fn dnf_value(terms: &[VarSet], ones: &VarSet) -> bool {
    terms.iter().any(|t| t.is_subset(ones))
}

/// An assignment with `cnf = 1` and `dnf = 0`, or `None` if `cnf → dnf` is a tautology.
///
/// An empty `cnf` is the constant 1 and an empty `dnf` the constant 0.
pub fn implication_counterexample(
    cnf: &[VarSet],
    dnf: &[VarSet],
) -> Result<Option<Assignment>, Read2Error> {
    canonical_model(&LiteralCnf::implication(cnf, dnf))
}

/// Decides whether `cnf → dnf` is a tautology.
///
/// Returns `None` for a tautology, otherwise the set `S₀` of variables that
/// are 1 in a counterexample, shrunk to be inclusion-minimal with
/// `cnf(S₀ → 1) = 1` and `dnf(S₀ → 1) = 0` by trying removals in ascending
/// id order. Both families must be read-once (pairwise disjoint members)
/// for the encoding to be read-2.
pub fn implies_tautology(cnf: &[VarSet], dnf: &[VarSet]) -> Result<Option<VarSet>, Read2Error> {
    let Some(model) = implication_counterexample(cnf, dnf)? else {
        return Ok(None);
    };
    let mut ones = model.ones().clone();
    for v in model.ones().iter() {
        let mut smaller = ones.clone();
        smaller.remove(v);
        if cnf_value(cnf, &smaller) && !dnf_value(dnf, &smaller) {
            ones = smaller;
        }
    }
    Ok(Some(ones))
}
