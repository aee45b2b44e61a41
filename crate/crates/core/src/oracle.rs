//! Exhaustive ground truth: minterm/maxterm enumeration, the
//! minterm-maxterm intersection criterion for read-once functions, and
//! brute-force implication checks.
//!
//! Everything here scans all `2^n` assignments of the formula's support
//! (64 at a time via [`Formula::eval_lanes`]) and is meant for small `n`.

use thiserror::Error;

use crate::formula::Formula;
use crate::varset::{by_size_then_lex, Var, VarSet};

pub const DEFAULT_MAX_VARS: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("variable limit exceeded: {vars} variables, limit {limit}")]
    VariableLimit { vars: usize, limit: usize },
    #[error("term limit exceeded while expanding minterms (limit {limit})")]
    TermLimit { limit: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    Minterm,
    Maxterm,
}

/// Minterms or maxterms of a function, sorted by size then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermList {
    pub kind: TermKind,
    pub sets: Vec<VarSet>,
}

/// A minterm and a maxterm sharing at least two variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub minterm: VarSet,
    pub maxterm: VarSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadOnceVerdict {
    pub read_once: bool,
    pub witness: Option<Witness>,
}

/// Brute-force engine with a guard on the number of variables scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub max_vars: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_vars: DEFAULT_MAX_VARS,
        }
    }
}

const LOW_LANES: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Assignment `mask` over `vars` is variable `vars[i]` = bit `i` of `mask`.
struct TruthTable {
    vars: Vec<Var>,
    words: Vec<u64>,
}

/// Local index of every variable: `slot[v] = i` when `vars[i] == v`.
fn slots(vars: &[Var]) -> Vec<usize> {
    let width = vars.iter().map(|v| v.index() + 1).max().unwrap_or(0);
    let mut slot = vec![usize::MAX; width];
    for (i, v) in vars.iter().enumerate() {
        slot[v.index()] = i;
    }
    slot
}

/// Calls `visit(chunk, valid_bits, lane)` for every 64-assignment chunk.
fn for_each_chunk(vars: &[Var], mut visit: impl FnMut(usize, u64, &dyn Fn(Var) -> u64) -> bool) {
    let k = vars.len();
    let chunks = if k <= 6 { 1 } else { 1usize << (k - 6) };
    let valid = if k >= 6 { !0 } else { (1u64 << (1 << k)) - 1 };
    let slot = slots(vars);
    for chunk in 0..chunks {
        let lane = |v: Var| -> u64 {
            let i = slot[v.index()];
            if i < 6 {
                LOW_LANES[i]
            } else if chunk >> (i - 6) & 1 == 1 {
                !0
            } else {
                0
            }
        };
        if !visit(chunk, valid, &lane) {
            return;
        }
    }
}

impl TruthTable {
    fn new(f: &Formula, vars: Vec<Var>) -> Self {
        let mut words = Vec::new();
        for_each_chunk(&vars, |_, valid, lane| {
            words.push(f.eval_lanes(lane) & valid);
            true
        });
        TruthTable { vars, words }
    }

    fn size(&self) -> usize {
        1 << self.vars.len()
    }

    fn get(&self, mask: usize) -> bool {
        self.words[mask >> 6] >> (mask & 63) & 1 == 1
    }

    fn to_set(&self, mask: usize) -> VarSet {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }

    fn minterms(&self) -> Vec<VarSet> {
        let mut out = Vec::new();
        for mask in 0..self.size() {
            if self.get(mask) && bits(mask).all(|b| !self.get(mask & !b)) {
                out.push(self.to_set(mask));
            }
        }
        out.sort_by(by_size_then_lex);
        out
    }

    fn maxterms(&self) -> Vec<VarSet> {
        let full = self.size() - 1;
        let mut out = Vec::new();
        for zeros in 0..self.size() {
            let point = full & !zeros;
            if !self.get(point) && bits(zeros).all(|b| self.get(point | b)) {
                out.push(self.to_set(zeros));
            }
        }
        out.sort_by(by_size_then_lex);
        out
    }
}

/// Single-bit masks of the set bits of `mask`.
fn bits(mut mask: usize) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        let low = mask & mask.wrapping_neg();
        mask ^= low;
        (low != 0).then_some(low)
    })
}

impl Oracle {
    pub fn new(max_vars: usize) -> Self {
        Oracle { max_vars }
    }

    fn check_limit(&self, vars: usize) -> Result<(), OracleError> {
        // Hard ceiling keeps `1 << vars` addressable regardless of the guard.
        let limit = self.max_vars.min(usize::BITS as usize - 2);
        if vars > limit {
            return Err(OracleError::VariableLimit {
                vars,
                limit: self.max_vars,
            });
        }
        Ok(())
    }

    fn table(&self, f: &Formula) -> Result<TruthTable, OracleError> {
        let vars: Vec<Var> = f.variables().iter().collect();
        self.check_limit(vars.len())?;
        Ok(TruthTable::new(f, vars))
    }

    /// All minterms or all maxterms of `f`, duplicate-free and sorted.
    pub fn enumerate_terms(&self, f: &Formula, kind: TermKind) -> Result<TermList, OracleError> {
        let table = self.table(f)?;
        let sets = match kind {
            TermKind::Minterm => table.minterms(),
            TermKind::Maxterm => table.maxterms(),
        };
        Ok(TermList { kind, sets })
    }

    /// Read-once test by the intersection criterion: `f` is read-once iff
    /// every minterm meets every maxterm in exactly one variable.
    ///
    /// On failure the first offending pair in (minterm, maxterm) order is returned.
    pub fn is_read_once(&self, f: &Formula) -> Result<ReadOnceVerdict, OracleError> {
        let table = self.table(f)?;
        let minterms = table.minterms();
        let maxterms = table.maxterms();
        for s in &minterms {
            for t in &maxterms {
                if s.intersection_len(t) != 1 {
                    return Ok(ReadOnceVerdict {
                        read_once: false,
                        witness: Some(Witness {
                            minterm: s.clone(),
                            maxterm: t.clone(),
                        }),
                    });
                }
            }
        }
        Ok(ReadOnceVerdict {
            read_once: true,
            witness: None,
        })
    }

    /// True iff `p → q` holds under every assignment.
    pub fn brute_tautology(&self, p: &Formula, q: &Formula) -> Result<bool, OracleError> {
        Ok(self.brute_counterexample(p, q)?.is_none())
    }

    /// The numerically smallest assignment (as its set of ones) with `p = 1`
    /// and `q = 0`, if any.
    pub fn brute_counterexample(
        &self,
        p: &Formula,
        q: &Formula,
    ) -> Result<Option<VarSet>, OracleError> {
        let vars: Vec<Var> = p.variables().union(&q.variables()).iter().collect();
        self.check_limit(vars.len())?;
        let mut found = None;
        for_each_chunk(&vars, |chunk, valid, lane| {
            let bad = p.eval_lanes(lane) & !q.eval_lanes(lane) & valid;
            if bad != 0 {
                let mask = chunk << 6 | bad.trailing_zeros() as usize;
                found = Some(
                    vars.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect(),
                );
                return false;
            }
            true
        });
        Ok(found)
    }

    /// True iff `p` and `q` compute the same function.
    pub fn equivalent(&self, p: &Formula, q: &Formula) -> Result<bool, OracleError> {
        Ok(self.brute_tautology(p, q)? && self.brute_tautology(q, p)?)
    }
}

/// Minterms of `f` computed by symbolic DNF expansion with absorption.
///
/// Exponential in general but independent of the number of variables; for a
/// read-once `f` the result has at most one set per choice at each Or gate.
pub fn symbolic_minterms(f: &Formula, term_limit: usize) -> Result<Vec<VarSet>, OracleError> {
    let mut out = match f {
        Formula::Var(v) => vec![VarSet::singleton(*v)],
        Formula::Or(children) => {
            let mut acc = Vec::new();
            for c in children {
                acc.extend(symbolic_minterms(c, term_limit)?);
            }
            minimize(acc)
        }
        Formula::And(children) => {
            let mut acc = vec![VarSet::new()];
            for c in children {
                let part = symbolic_minterms(c, term_limit)?;
                if acc.len().saturating_mul(part.len()) > term_limit {
                    return Err(OracleError::TermLimit { limit: term_limit });
                }
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for a in &acc {
                    for b in &part {
                        next.push(a.union(b));
                    }
                }
                acc = minimize(next);
            }
            acc
        }
    };
    if out.len() > term_limit {
        return Err(OracleError::TermLimit { limit: term_limit });
    }
    out.sort_by(by_size_then_lex);
    Ok(out)
}

fn minimize(mut sets: Vec<VarSet>) -> Vec<VarSet> {
    sets.sort_by(by_size_then_lex);
    sets.dedup();
    let mut kept: Vec<VarSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept
}

/// `p → q` decided through the minterms of `p`: since `q` is monotone the
/// implication holds iff `q` is true on every minterm of `p`.
pub fn tautology_by_minterms(
    p: &Formula,
    q: &Formula,
    term_limit: usize,
) -> Result<bool, OracleError> {
    Ok(symbolic_minterms(p, term_limit)?
        .iter()
        .all(|s| q.eval_ones(s)))
}

/// `f(S → 1) = 1` and every one-smaller subset gives 0. For a monotone `f`
/// this is exactly the minterm definition, since every proper subset lies
/// below some `S ∖ {v}`.
pub fn is_minterm(f: &Formula, s: &VarSet) -> bool {
    f.eval_ones(s)
        && s.iter().all(|v| {
            let mut smaller = s.clone();
            smaller.remove(v);
            !f.eval_ones(&smaller)
        })
}

/// `f(T → 0) = 0` and every one-smaller subset gives 1.
pub fn is_maxterm(f: &Formula, t: &VarSet) -> bool {
    let falsified_by = |zeros: &VarSet| !f.eval_with(&|v| !zeros.contains(v));
    falsified_by(t)
        && t.iter().all(|v| {
            let mut smaller = t.clone();
            smaller.remove(v);
            !falsified_by(&smaller)
        })
}
