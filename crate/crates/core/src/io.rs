//! Text file formats.
//!
//! - CNF and DNF files hold one clause or term per line as whitespace
//!   separated variable names. Blank lines and lines starting with `#` are
//!   skipped.
//! - Formula files use the grammar of [`crate::formula`].
//! - Graph files start with `n m` followed by `m` lines `u v` (1-indexed).
//!
//! Loaders intern variable names in sorted order, so ids and therefore
//! witnesses do not depend on the order names appear in the input.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse_formula, scan_names, Formula, ParseError};
use crate::hardness::{Graph, HardnessError, Reduction};
use crate::recognizer::{validate, Instance, InstanceError};
use crate::varset::{Registry, VarSet};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{}: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: invalid variable name {name:?}")]
    BadName { line: usize, name: String },
    #[error("line {line}: {message}")]
    BadGraph { line: usize, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Graph(#[from] HardnessError),
}

pub fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_owned(),
        source,
    })
}

fn is_name(word: &str) -> bool {
    let mut chars = word.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a CNF or DNF file into name lists, one per clause or term.
pub fn parse_family(text: &str) -> Result<Vec<Vec<String>>, IoError> {
    content_lines(text)
        .map(|(line, l)| {
            l.split_whitespace()
                .map(|w| {
                    if is_name(w) {
                        Ok(w.to_owned())
                    } else {
                        Err(IoError::BadName {
                            line,
                            name: w.to_owned(),
                        })
                    }
                })
                .collect()
        })
        .collect()
}

fn sorted_registry<'a>(names: impl IntoIterator<Item = &'a String>) -> Registry {
    let mut all: Vec<&String> = names.into_iter().collect();
    all.sort();
    Registry::with_names(all)
}

fn to_sets(family: &[Vec<String>], registry: &Registry) -> Vec<VarSet> {
    family
        .iter()
        .map(|set| {
            set.iter()
                .map(|n| registry.get(n).expect("registry covers the family"))
                .collect()
        })
        .collect()
}

/// Parses and validates a `C ∨ D` instance from CNF and DNF file contents.
pub fn instance_from_text(cnf: &str, dnf: &str) -> Result<Instance, IoError> {
    let clauses = parse_family(cnf)?;
    let terms = parse_family(dnf)?;
    let registry = sorted_registry(clauses.iter().chain(&terms).flatten());
    let c = to_sets(&clauses, &registry);
    let d = to_sets(&terms, &registry);
    Ok(validate(c, d, registry)?)
}

pub fn load_instance(cnf_path: &Path, dnf_path: &Path) -> Result<Instance, IoError> {
    instance_from_text(&read_file(cnf_path)?, &read_file(dnf_path)?)
}

/// Parses a formula, interning its variable names in sorted order.
pub fn formula_from_text(text: &str) -> Result<(Registry, Formula), IoError> {
    let names = scan_names(text)?;
    let mut registry = sorted_registry(&names);
    let f = parse_formula(text, &mut registry)?;
    Ok((registry, f))
}

pub fn load_formula(path: &Path) -> Result<(Registry, Formula), IoError> {
    formula_from_text(&read_file(path)?)
}

fn graph_numbers(line: usize, l: &str) -> Result<(usize, usize), IoError> {
    let bad = |message: &str| IoError::BadGraph {
        line,
        message: message.to_owned(),
    };
    let nums: Vec<usize> = l
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| bad("expected non-negative integers"))?;
    match nums[..] {
        [a, b] => Ok((a, b)),
        _ => Err(bad("expected exactly two integers")),
    }
}

/// Parses a graph file.
pub fn graph_from_text(text: &str) -> Result<Graph, IoError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(IoError::BadGraph {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    let (n, m) = graph_numbers(line, header)?;
    let edges: Vec<(usize, usize)> = lines
        .map(|(line, l)| graph_numbers(line, l))
        .collect::<Result<_, _>>()?;
    if edges.len() != m {
        return Err(IoError::BadGraph {
            line,
            message: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Ok(Graph::new(n, edges)?)
}

pub fn load_graph(path: &Path) -> Result<Graph, IoError> {
    graph_from_text(&read_file(path)?)
}

/// Renders a graph in the graph file format.
pub fn render_graph(graph: &Graph) -> String {
    let mut out = format!("{} {}\n", graph.n(), graph.edge_count());
    for (u, v) in graph.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Renders a clause or term family, one set per line, names in id order.
pub fn render_family(sets: &[VarSet], registry: &Registry) -> String {
    let mut out = String::new();
    for s in sets {
        let names: Vec<&str> = s.iter().map(|v| registry.name(v)).collect();
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    out
}

/// Summary of a generated reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub n_vars: usize,
    pub conf_size: usize,
    pub variable_names: Vec<String>,
}

impl Manifest {
    pub fn of(reduction: &Reduction) -> Self {
        Manifest {
            n_vars: 2 * reduction.conf.len(),
            conf_size: reduction.conf.len(),
            variable_names: reduction
                .registry
                .vars()
                .map(|v| reduction.registry.name(v).to_owned())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_skip_comments_and_blank_lines() {
        let fam = parse_family("# clauses\nx1 x2\n\n  x3  \n").unwrap();
        assert_eq!(fam, vec![vec!["x1", "x2"], vec!["x3"]]);
        assert!(matches!(
            parse_family("x1 & x2\n"),
            Err(IoError::BadName { line: 1, .. })
        ));
        assert!(matches!(
            parse_family("a\n1b\n"),
            Err(IoError::BadName { line: 2, .. })
        ));
    }

    #[test]
    fn instances_intern_sorted_names() {
        let inst = instance_from_text("y1 x1\n", "x1 y1\n").unwrap();
        assert_eq!(inst.registry().name(crate::varset::Var::new(0)), "x1");
        let err = instance_from_text("x1\nx1\n", "x1\n").unwrap_err();
        assert!(matches!(
            err,
            IoError::Instance(InstanceError::ClausesNotDisjoint(..))
        ));
    }

    #[test]
    fn formulas_intern_sorted_names() {
        let (reg, f) = formula_from_text("w2 & w1 | w3").unwrap();
        assert_eq!(reg.sorted_names(&reg.all()), ["w1", "w2", "w3"]);
        assert_eq!(reg.name(crate::varset::Var::new(0)), "w1");
        assert_eq!(f.display(&reg).to_string(), "((w2 & w1) | w3)");
    }

    #[test]
    fn graphs_round_trip() {
        let g = graph_from_text("# triangle\n3 3\n1 2\n2 3\n1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
        assert_eq!(graph_from_text(&render_graph(&g)).unwrap(), g);
        assert!(matches!(
            graph_from_text("3 2\n1 2\n"),
            Err(IoError::BadGraph { .. })
        ));
        assert!(matches!(
            graph_from_text("2 1\n1 1\n"),
            Err(IoError::Graph(HardnessError::SelfLoop(1)))
        ));
        assert!(matches!(graph_from_text(""), Err(IoError::BadGraph { .. })));
    }

    #[test]
    fn manifest_counts() {
        let r = crate::hardness::build_reduction(&Graph::complete(3).unwrap(), 2).unwrap();
        let m = Manifest::of(&r);
        assert_eq!((m.n_vars, m.conf_size), (6, 3));
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<Manifest>(&json).unwrap(), m);
    }
}
