//! Polynomial-time recognition of read-once functions of the form `C ∨ D`.
//!
//! `C = C_1 ∧ … ∧ C_m` is a monotone read-once CNF and `D = D_1 ∨ … ∨ D_l` a
//! monotone read-once DNF whose terms cover every variable of the instance.
//! Clauses and terms are pairwise disjoint variable sets.
//!
//! Minterms of `C ∨ D` are either *left sets* (inside `C_1 ∪ … ∪ C_m`,
//! meeting every clause exactly once) that properly contain no term, or
//! *right sets* (a term `D_j`) that properly contain no left set. The
//! pipeline below searches for a minterm and a maxterm sharing two variables
//! in four stages, each answered with a read-2 implication test:
//!
//! 1. if `C → D` is a tautology the function equals `D` and is read-once;
//! 2. a maxterm containing two clauses meets the minimal `C ∧ ¬D` witness twice;
//! 3. a right minterm and a maxterm that both contain two variables of one clause;
//! 4. a left minterm and a maxterm that both contain `q ∈ C_u` and `p ∈ D_v`
//!    for a clause and term that are disjoint.
//!
//! If no stage fires the function is read-once. Iteration is always in
//! ascending index order, so witnesses are deterministic.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::oracle::Witness;
use crate::read2::{implication_counterexample, implies_tautology, Read2Error};
use crate::varset::{Registry, Var, VarSet};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("empty clause list")]
    EmptyCnf,
    #[error("empty term list")]
    EmptyDnf,
    #[error("empty clause (clause {0})")]
    EmptyClause(usize),
    #[error("empty term (term {0})")]
    EmptyTerm(usize),
    #[error("clauses not disjoint: clauses {0} and {1} share {2}")]
    ClausesNotDisjoint(usize, usize, String),
    #[error("terms not disjoint: terms {0} and {1} share {2}")]
    TermsNotDisjoint(usize, usize, String),
    #[error("variable of C missing from D: {0}")]
    MissingFromDnf(String),
    #[error("D does not cover all variables: {0} is in no term")]
    Uncovered(String),
    #[error("variable id {0} is not in the registry")]
    UnknownVariable(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("clause indices must be distinct")]
    SameClause,
    #[error("variables must be distinct")]
    SameVariable,
    #[error("clause index {0} out of range")]
    ClauseIndex(usize),
    #[error("variable id {0} is not covered by any term")]
    NotInAnyTerm(usize),
    #[error("variable {p} lies in clause {clause}")]
    VariableInClause { p: usize, clause: usize },
    #[error("clause {clause} meets the term containing variable {p}")]
    ClauseMeetsTerm { p: usize, clause: usize },
    #[error(transparent)]
    Sat(#[from] Read2Error),
}

fn check_disjoint(
    sets: &[VarSet],
    registry: &Registry,
    err: fn(usize, usize, String) -> InstanceError,
) -> Result<(), InstanceError> {
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate().skip(i + 1) {
            if let Some(v) = a.intersection(b).first() {
                return Err(err(i, j, registry.name(v).to_owned()));
            }
        }
    }
    Ok(())
}

/// A monotone read-once CNF: at least one clause, clauses nonempty and pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadOnceCnf {
    clauses: Vec<VarSet>,
}

impl ReadOnceCnf {
    pub fn new(clauses: Vec<VarSet>, registry: &Registry) -> Result<Self, InstanceError> {
        if clauses.is_empty() {
            return Err(InstanceError::EmptyCnf);
        }
        if let Some(i) = clauses.iter().position(VarSet::is_empty) {
            return Err(InstanceError::EmptyClause(i));
        }
        check_known(&clauses, registry)?;
        check_disjoint(&clauses, registry, InstanceError::ClausesNotDisjoint)?;
        Ok(ReadOnceCnf { clauses })
    }

    pub fn clauses(&self) -> &[VarSet] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn variables(&self) -> VarSet {
        self.clauses
            .iter()
            .fold(VarSet::new(), |acc, c| acc.union(c))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::and(self.clauses.iter().map(Formula::disjunction).collect())
    }
}

/// A monotone read-once DNF: at least one term, terms nonempty and pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadOnceDnf {
    terms: Vec<VarSet>,
}

impl ReadOnceDnf {
    pub fn new(terms: Vec<VarSet>, registry: &Registry) -> Result<Self, InstanceError> {
        if terms.is_empty() {
            return Err(InstanceError::EmptyDnf);
        }
        if let Some(i) = terms.iter().position(VarSet::is_empty) {
            return Err(InstanceError::EmptyTerm(i));
        }
        check_known(&terms, registry)?;
        check_disjoint(&terms, registry, InstanceError::TermsNotDisjoint)?;
        Ok(ReadOnceDnf { terms })
    }

    pub fn terms(&self) -> &[VarSet] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> VarSet {
        self.terms.iter().fold(VarSet::new(), |acc, t| acc.union(t))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::or(self.terms.iter().map(Formula::conjunction).collect())
    }
}

fn check_known(sets: &[VarSet], registry: &Registry) -> Result<(), InstanceError> {
    match sets.iter().flatten().find(|v| v.index() >= registry.len()) {
        Some(v) => Err(InstanceError::UnknownVariable(v.index())),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    ReadOnce,
    NotReadOnce,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ReadOnce => "READ_ONCE",
            Verdict::NotReadOnce => "NOT_READ_ONCE",
        })
    }
}

/// The pipeline stage that produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    /// `C → D` is a tautology.
    Tautology,
    /// A maxterm contains two clauses.
    TwoClauses,
    /// A right minterm and a maxterm share two variables of one clause.
    RightMinterm,
    /// A left minterm and a maxterm share a variable of `C_u` and one of a disjoint `D_v`.
    LeftMinterm,
    /// No stage fired.
    Final,
}

impl Step {
    pub fn label(self) -> &'static str {
        match self {
            Step::Tautology => "1",
            Step::TwoClauses => "2",
            Step::RightMinterm => "3",
            Step::LeftMinterm => "4",
            Step::Final => "FINAL",
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionResult {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub step: Step,
}

impl RecognitionResult {
    fn read_once(step: Step) -> Self {
        RecognitionResult {
            verdict: Verdict::ReadOnce,
            witness: None,
            step,
        }
    }

    fn refuted(step: Step, minterm: VarSet, maxterm: VarSet) -> Self {
        debug_assert!(minterm.intersection_len(&maxterm) >= 2);
        RecognitionResult {
            verdict: Verdict::NotReadOnce,
            witness: Some(Witness { minterm, maxterm }),
            step,
        }
    }
}

/// A validated `C ∨ D` instance over one registry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    cnf: ReadOnceCnf,
    dnf: ReadOnceDnf,
    registry: Registry,
    term_of: Vec<Option<usize>>,
}

/// Checks the instance invariants and builds an [`Instance`].
pub fn validate(
    clauses: Vec<VarSet>,
    terms: Vec<VarSet>,
    registry: Registry,
) -> Result<Instance, InstanceError> {
    let cnf = ReadOnceCnf::new(clauses, &registry)?;
    let dnf = ReadOnceDnf::new(terms, &registry)?;
    let covered = dnf.variables();
    if let Some(v) = cnf.variables().difference(&covered).first() {
        return Err(InstanceError::MissingFromDnf(registry.name(v).to_owned()));
    }
    if let Some(v) = registry.vars().find(|v| !covered.contains(*v)) {
        return Err(InstanceError::Uncovered(registry.name(v).to_owned()));
    }
    let mut term_of = vec![None; registry.len()];
    for (j, t) in dnf.terms.iter().enumerate() {
        for v in t {
            term_of[v.index()] = Some(j);
        }
    }
    Ok(Instance {
        cnf,
        dnf,
        registry,
        term_of,
    })
}

/// Smallest zero set `Z ⊆ ⋃ terms` with `clauses(Z → 0) = 1` and
/// `terms(Z → 0) = 0`, or `None` when `clauses → terms` is a tautology.
///
/// Starts from the zeros of a counterexample and re-sets variables to 1 in
/// ascending order while every term still has a zero.
fn minimal_zero_witness(
    clauses: &[VarSet],
    terms: &[VarSet],
) -> Result<Option<VarSet>, Read2Error> {
    let Some(model) = implication_counterexample(clauses, terms)? else {
        return Ok(None);
    };
    let universe = terms.iter().fold(VarSet::new(), |acc, t| acc.union(t));
    let mut zeros = universe.difference(model.ones());
    for v in universe.difference(model.ones()).iter() {
        let mut smaller = zeros.clone();
        smaller.remove(v);
        if terms.iter().all(|t| t.intersects(&smaller)) {
            zeros = smaller;
        }
    }
    Ok(Some(zeros))
}

impl Instance {
    /// Builds an instance from name lists, interning clause names before term names.
    pub fn from_names<C, T, S>(clauses: C, terms: T) -> Result<Self, InstanceError>
    where
        C: IntoIterator,
        C::Item: IntoIterator<Item = S>,
        T: IntoIterator,
        T::Item: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut registry = Registry::new();
        let mut intern = |fam: Vec<Vec<S>>| -> Vec<VarSet> {
            fam.into_iter()
                .map(|set| {
                    set.into_iter()
                        .map(|n| registry.intern(n.as_ref()))
                        .collect()
                })
                .collect()
        };
        let c = intern(
            clauses
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect(),
        );
        let d = intern(terms.into_iter().map(|s| s.into_iter().collect()).collect());
        validate(c, d, registry)
    }

    pub fn cnf(&self) -> &ReadOnceCnf {
        &self.cnf
    }

    pub fn dnf(&self) -> &ReadOnceDnf {
        &self.dnf
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn clauses(&self) -> &[VarSet] {
        &self.cnf.clauses
    }

    pub fn terms(&self) -> &[VarSet] {
        &self.dnf.terms
    }

    /// `C ∨ D` as a single formula.
    pub fn to_formula(&self) -> Formula {
        let mut parts = vec![self.cnf.to_formula()];
        parts.extend(self.dnf.terms.iter().map(Formula::conjunction));
        Formula::or(parts)
    }

    /// Index of the term containing `v`.
    pub fn term_of(&self, v: Var) -> Option<usize> {
        self.term_of.get(v.index()).copied().flatten()
    }

    fn clause_of(&self, v: Var) -> Option<usize> {
        self.cnf.clauses.iter().position(|c| c.contains(v))
    }

    fn clause(&self, u: usize) -> Result<&VarSet, RecognizeError> {
        self.cnf
            .clauses
            .get(u)
            .ok_or(RecognizeError::ClauseIndex(u))
    }

    /// `S ⊆ C_1 ∪ … ∪ C_m` and `|S ∩ C_i| = 1` for every clause.
    pub fn is_left_set(&self, s: &VarSet) -> bool {
        s.is_subset(&self.cnf.variables())
            && self.cnf.clauses.iter().all(|c| c.intersection_len(s) == 1)
    }

    pub fn is_right_set(&self, s: &VarSet) -> bool {
        self.dnf.terms.contains(s)
    }

    /// Whether some left set is a proper subset of `s`.
    fn properly_includes_left_set(&self, s: &VarSet) -> bool {
        // A left set inside `s` exists iff every clause meets `s`; it is proper
        // unless `s` itself is a left set.
        self.cnf.clauses.iter().all(|c| c.intersects(s)) && !self.is_left_set(s)
    }

    /// Indices `j` for which the term `D_j` is a minterm of `C ∨ D`.
    pub fn right_minterms(&self) -> Vec<usize> {
        (0..self.dnf.len())
            .filter(|&j| !self.properly_includes_left_set(&self.dnf.terms[j]))
            .collect()
    }

    /// Whether `s` is a left set that properly contains no term.
    pub fn is_left_minterm(&self, s: &VarSet) -> bool {
        self.is_left_set(s) && !self.dnf.terms.iter().any(|t| t.is_proper_subset(s))
    }

    /// A maxterm `T ⊇ C_u ∪ C_v`, which exists iff no term meets `C_u ∪ C_v`
    /// twice. `T` is `C_u ∪ C_v` plus the lowest variable of every term it misses.
    pub fn maxterm_with_two_clauses(
        &self,
        u: usize,
        v: usize,
    ) -> Result<Option<VarSet>, RecognizeError> {
        if u == v {
            return Err(RecognizeError::SameClause);
        }
        let both = self.clause(u)?.union(self.clause(v)?);
        if self.dnf.terms.iter().any(|t| t.intersection_len(&both) > 1) {
            return Ok(None);
        }
        let mut t = both.clone();
        for term in &self.dnf.terms {
            if term.is_disjoint(&both) {
                t.insert(term.first().expect("terms are nonempty"));
            }
        }
        Ok(Some(t))
    }

    /// A maxterm containing the clause `C_i`, if one exists.
    ///
    /// Only meaningful when `C → D` is not a tautology and no maxterm
    /// contains two clauses; [`Instance::recognize`] calls it only then.
    /// Reduces to `Ĉ → D̂` where `D̂` keeps the terms disjoint from `C_i` and
    /// `Ĉ` the clauses disjoint from every term that meets `C_i`.
    pub fn maxterm_with_clause(&self, i: usize) -> Result<Option<VarSet>, RecognizeError> {
        let ci = self.clause(i)?;
        let (met, rest): (Vec<&VarSet>, Vec<&VarSet>) =
            self.dnf.terms.iter().partition(|t| t.intersects(ci));
        let reached = met.iter().fold(VarSet::new(), |acc, t| acc.union(t));
        let aux_terms: Vec<VarSet> = rest.into_iter().cloned().collect();
        let aux_clauses: Vec<VarSet> = self
            .cnf
            .clauses
            .iter()
            .enumerate()
            .filter(|&(w, c)| w != i && c.is_disjoint(&reached))
            .map(|(_, c)| c.clone())
            .collect();
        Ok(minimal_zero_witness(&aux_clauses, &aux_terms)?.map(|z| z.union(ci)))
    }

    /// A left minterm containing both `a` and `b`, if one exists.
    ///
    /// Sets `a, b` to 1: `Ĉ` keeps the clauses containing neither, `D̂` is
    /// every term with `a, b` erased, and a minimal counterexample `Ŝ` to
    /// `Ĉ → D̂` yields `S = Ŝ ∪ {a, b}`. A term containing `a` and `b` that
    /// is also a left set is returned directly.
    pub fn left_minterm_with_pair(&self, a: Var, b: Var) -> Result<Option<VarSet>, RecognizeError> {
        if a == b {
            return Err(RecognizeError::SameVariable);
        }
        let pair: VarSet = [a, b].into_iter().collect();
        let (Some(ca), Some(cb)) = (self.clause_of(a), self.clause_of(b)) else {
            return Ok(None);
        };
        if ca == cb {
            return Ok(None);
        }
        let aux_clauses: Vec<VarSet> = self
            .cnf
            .clauses
            .iter()
            .filter(|c| c.is_disjoint(&pair))
            .cloned()
            .collect();
        // A term holding both a and b is itself a left minterm when it is a
        // left set. The reduction below only finds sets containing no term.
        if let Some(j) = self.term_of(a).filter(|&j| self.term_of(b) == Some(j)) {
            if self.is_left_set(&self.dnf.terms[j]) {
                return Ok(Some(self.dnf.terms[j].clone()));
            }
        }
        let aux_terms: Vec<VarSet> = self.dnf.terms.iter().map(|t| t.difference(&pair)).collect();
        Ok(implies_tautology(&aux_clauses, &aux_terms)?.map(|s| s.union(&pair)))
    }

    /// A maxterm containing `C_u ∪ {p}`, if one exists, where `p` lies in a
    /// term `D_v` disjoint from `C_u`.
    ///
    /// Same hypothesis as [`Instance::maxterm_with_clause`] about two-clause
    /// maxterms. `D̂` keeps the terms other than `D_v` that miss `C_u`; `Ĉ`
    /// keeps `C_w ∖ {p}` for the clauses avoiding `D_v ∖ {p}` and every term
    /// meeting `C_u`.
    pub fn maxterm_with_clause_plus(
        &self,
        u: usize,
        p: Var,
    ) -> Result<Option<VarSet>, RecognizeError> {
        let cu = self.clause(u)?;
        if cu.contains(p) {
            return Err(RecognizeError::VariableInClause {
                p: p.index(),
                clause: u,
            });
        }
        let v = self
            .term_of(p)
            .ok_or(RecognizeError::NotInAnyTerm(p.index()))?;
        let dv = &self.dnf.terms[v];
        if dv.intersects(cu) {
            return Err(RecognizeError::ClauseMeetsTerm {
                p: p.index(),
                clause: u,
            });
        }
        let p_set = VarSet::singleton(p);
        let mut reached = dv.difference(&p_set);
        let mut aux_terms = Vec::new();
        for (j, t) in self.dnf.terms.iter().enumerate() {
            if j == v {
                continue;
            }
            if t.intersects(cu) {
                reached = reached.union(t);
            } else {
                aux_terms.push(t.clone());
            }
        }
        let aux_clauses: Vec<VarSet> = self
            .cnf
            .clauses
            .iter()
            .enumerate()
            .filter(|&(w, c)| w != u && c.is_disjoint(&reached))
            .map(|(_, c)| c.difference(&p_set))
            .collect();
        Ok(minimal_zero_witness(&aux_clauses, &aux_terms)?.map(|z| z.union(cu).union(&p_set)))
    }

    /// Runs the four-stage pipeline.
    pub fn recognize(&self) -> Result<RecognitionResult, RecognizeError> {
        let clauses = &self.cnf.clauses;
        let terms = &self.dnf.terms;

        let Some(s0) = implies_tautology(clauses, terms)? else {
            return Ok(RecognitionResult::read_once(Step::Tautology));
        };

        for u in 0..clauses.len() {
            for v in u + 1..clauses.len() {
                if let Some(t) = self.maxterm_with_two_clauses(u, v)? {
                    return Ok(RecognitionResult::refuted(Step::TwoClauses, s0, t));
                }
            }
        }

        let right = self.right_minterms();
        for (u, cu) in clauses.iter().enumerate() {
            let Some(j) = right
                .iter()
                .copied()
                .find(|&j| terms[j].intersection_len(cu) >= 2)
            else {
                continue;
            };
            // The first pair (p, q) of C_u inside a right minterm lies in D_j.
            if let Some(t) = self.maxterm_with_clause(u)? {
                return Ok(RecognitionResult::refuted(
                    Step::RightMinterm,
                    terms[j].clone(),
                    t,
                ));
            }
        }

        for (u, cu) in clauses.iter().enumerate() {
            for dv in terms.iter().filter(|t| t.is_disjoint(cu)) {
                for p in dv {
                    let Some(t) = self.maxterm_with_clause_plus(u, p)? else {
                        continue;
                    };
                    for q in cu {
                        if let Some(s) = self.left_minterm_with_pair(p, q)? {
                            return Ok(RecognitionResult::refuted(Step::LeftMinterm, s, t));
                        }
                    }
                }
            }
        }

        Ok(RecognitionResult::read_once(Step::Final))
    }
}
