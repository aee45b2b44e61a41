//! Hard instances from clique problems.
//!
//! A graph `G` and a clique size `k` define a three-player game whose
//! distinguishable end configurations `CONF` are unordered pairs
//! `{(i, u), (j, v)}` of two distinct cells holding non-adjacent (possibly
//! equal) vertices. Each configuration contributes two variables
//! `x^{i,u}_{j,v}` and `x^{j,v}_{i,u}`, named `x_i_u_j_v` and `x_j_v_i_u`, and
//!
//! ```text
//! Ψ   = ∧_i ∨_u ∧_{(j,v) : {(i,u),(j,v)} ∈ CONF} x^{i,u}_{j,v}
//! D_n = ∨_{{(i,u),(j,v)} ∈ CONF} x^{i,u}_{j,v} ∧ x^{j,v}_{i,u}
//! ```
//!
//! `G` has a `k`-clique iff `Ψ → D_n` is not a tautology. The wrapper
//! `Ψ ∧ (w1 w3 ∨ w2 w4) ∧ (D_n ∨ w1 w2 ∨ w3 w4)` is read-once iff
//! `Ψ → D_n` is a tautology.

use std::collections::BTreeSet;

use rand::Rng;
use thiserror::Error;

use crate::formula::{Formula, Gate};
use crate::recognizer::ReadOnceDnf;
use crate::varset::{Registry, Var, VarSet};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("k < 2: the game needs two distinct cells (got k = {0})")]
    KTooSmall(usize),
    #[error("graph has no vertices")]
    NoVertices,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("w-variables collide with instance variables: {0}")]
    WCollision(String),
}

/// A simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph. Edges are unordered and duplicates are merged.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, HardnessError> {
        if n == 0 {
            return Err(HardnessError::NoVertices);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(HardnessError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(HardnessError::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn complete(n: usize) -> Result<Self, HardnessError> {
        Graph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
    }

    pub fn empty(n: usize) -> Result<Self, HardnessError> {
        Graph::new(n, [])
    }

    /// A random graph where each of the `n(n-1)/2` edges is present with probability `p`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Self, HardnessError> {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Whether some `k` vertices are pairwise adjacent, by exhaustive subset search.
    pub fn has_clique(&self, k: usize) -> bool {
        fn extend(g: &Graph, chosen: &mut Vec<usize>, next: usize, k: usize) -> bool {
            if chosen.len() == k {
                return true;
            }
            for w in next..=g.n {
                if chosen.iter().all(|&c| g.has_edge(c, w)) {
                    chosen.push(w);
                    if extend(g, chosen, w + 1, k) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        extend(self, &mut Vec::new(), 1, k)
    }
}

/// One configuration `{(i, u), (j, v)}`, normalized so that `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConfEntry {
    pub i: usize,
    pub u: usize,
    pub j: usize,
    pub v: usize,
}

impl ConfEntry {
    /// Name of `x^{i,u}_{j,v}`.
    pub fn forward_name(&self) -> String {
        var_name(self.i, self.u, self.j, self.v)
    }

    /// Name of `x^{j,v}_{i,u}`.
    pub fn backward_name(&self) -> String {
        var_name(self.j, self.v, self.i, self.u)
    }
}

/// The name `x_i_u_j_v` of `x^{i,u}_{j,v}`.
pub fn var_name(i: usize, u: usize, j: usize, v: usize) -> String {
    format!("x_{i}_{u}_{j}_{v}")
}

/// All configurations, sorted by `(i, u, j, v)`.
pub fn build_conf(graph: &Graph, k: usize) -> Result<Vec<ConfEntry>, HardnessError> {
    if k < 2 {
        return Err(HardnessError::KTooSmall(k));
    }
    let mut conf = Vec::new();
    for i in 1..=k {
        for u in 1..=graph.n {
            for j in i + 1..=k {
                for v in 1..=graph.n {
                    if !graph.has_edge(u, v) {
                        conf.push(ConfEntry { i, u, j, v });
                    }
                }
            }
        }
    }
    Ok(conf)
}

/// `Ψ`, `D_n` and the configuration list they were built from.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub registry: Registry,
    pub psi: Formula,
    pub dn: ReadOnceDnf,
    pub conf: Vec<ConfEntry>,
}

impl Reduction {
    pub fn n_vars(&self) -> usize {
        self.registry.len()
    }

    pub fn dn_formula(&self) -> Formula {
        self.dn.to_formula()
    }
}

/// Builds `Ψ` and `D_n` for `(graph, k)`.
///
/// Variables are interned pairwise in configuration order, forward name
/// first. Gates with a single child are collapsed into that child; an inner
/// conjunction is never empty because `v = u` qualifies for every `j ≠ i`.
pub fn build_reduction(graph: &Graph, k: usize) -> Result<Reduction, HardnessError> {
    let conf = build_conf(graph, k)?;
    let mut registry = Registry::new();
    let mut terms = Vec::with_capacity(conf.len());
    for c in &conf {
        let a = registry.intern(&c.forward_name());
        let b = registry.intern(&c.backward_name());
        terms.push([a, b].into_iter().collect::<VarSet>());
    }
    let lookup =
        |i, u, j, v| -> Var { registry.get(&var_name(i, u, j, v)).expect("interned above") };

    let mut cells = Vec::with_capacity(k);
    for i in 1..=k {
        let mut options = Vec::with_capacity(graph.n);
        for u in 1..=graph.n {
            let replies: Vec<Formula> = (1..=k)
                .filter(|&j| j != i)
                .flat_map(|j| (1..=graph.n).map(move |v| (j, v)))
                .filter(|&(_, v)| !graph.has_edge(u, v))
                .map(|(j, v)| Formula::Var(lookup(i, u, j, v)))
                .collect();
            options.push(Formula::and(replies));
        }
        cells.push(Formula::or(options));
    }
    let psi = Formula::and(cells);
    let dn =
        ReadOnceDnf::new(terms, &registry).expect("configuration terms are disjoint and nonempty");
    Ok(Reduction {
        registry,
        psi,
        dn,
        conf,
    })
}

pub const W_NAMES: [&str; 4] = ["w1", "w2", "w3", "w4"];

fn pair(a: Var, b: Var) -> Formula {
    Formula::And(vec![Formula::Var(a), Formula::Var(b)])
}

/// `Ψ ∧ (w1 w3 ∨ w2 w4) ∧ (D_n ∨ w1 w2 ∨ w3 w4)`, flattened to a single top conjunction.
///
/// Interns `w1..w4` into `registry`, which must not know them yet.
pub fn wrapper_formula(
    psi: &Formula,
    dn: &ReadOnceDnf,
    registry: &mut Registry,
) -> Result<Formula, HardnessError> {
    if let Some(name) = W_NAMES.iter().find(|n| registry.contains(n)) {
        return Err(HardnessError::WCollision((*name).to_owned()));
    }
    let [w1, w2, w3, w4] = W_NAMES.map(|n| registry.intern(n));
    let mut factors = match psi.gate_kind() {
        Some(Gate::And) => psi.children().to_vec(),
        _ => vec![psi.clone()],
    };
    factors.push(Formula::Or(vec![pair(w1, w3), pair(w2, w4)]));
    let mut disjuncts: Vec<Formula> = dn.terms().iter().map(Formula::conjunction).collect();
    disjuncts.push(pair(w1, w2));
    disjuncts.push(pair(w3, w4));
    factors.push(Formula::Or(disjuncts));
    Ok(Formula::And(factors))
}

/// The fixed formula `w2 w3 w4 ∨ w1 w3 w4 ∨ w1 w2 w4 ∨ w1 w2 w3` over a
/// fresh registry holding `w1..w4` in that order.
pub fn threshold_gadget() -> (Registry, Formula) {
    let registry = Registry::with_names(W_NAMES);
    let w: Vec<Var> = registry.vars().collect();
    let term = |a: usize, b: usize, c: usize| {
        Formula::And(vec![
            Formula::Var(w[a]),
            Formula::Var(w[b]),
            Formula::Var(w[c]),
        ])
    };
    let f = Formula::Or(vec![
        term(1, 2, 3),
        term(0, 2, 3),
        term(0, 1, 3),
        term(0, 1, 2),
    ]);
    (registry, f)
}

/// `(w1 w3 ∨ w2 w4) ∧ (w1 w2 ∨ w3 w4)` over the given `w1..w4`.
pub fn gadget_product(w: [Var; 4]) -> Formula {
    let [w1, w2, w3, w4] = w;
    Formula::And(vec![
        Formula::Or(vec![pair(w1, w3), pair(w2, w4)]),
        Formula::Or(vec![pair(w1, w2), pair(w3, w4)]),
    ])
}
