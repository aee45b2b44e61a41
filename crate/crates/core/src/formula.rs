//! Monotone formula AST, text parser, renderer, evaluation and restriction.
//!
//! Grammar (whitespace insignificant, `&` binds tighter than `|`):
//!
//! ```text
//! formula := or
//! or      := and ('|' and)*
//! and     := atom ('&' atom)*
//! atom    := NAME | '(' formula ')'
//! NAME    := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! A chain `a & b & c` parses to one n-ary `And` node; parentheses always
//! produce a nested node, so the fully parenthesized rendering re-parses to
//! the same tree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::varset::{Assignment, Registry, Var, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    And,
    Or,
}

/// A monotone formula over registry variables. And/Or nodes have at least two children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(Var),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn var(v: Var) -> Self {
        Formula::Var(v)
    }

    /// Conjunction of `children`; a single child is returned unchanged.
    ///
    /// Panics on an empty child list, which has no non-constant meaning.
    pub fn and(children: Vec<Formula>) -> Self {
        Formula::gate(Gate::And, children)
    }

    /// Disjunction of `children`; a single child is returned unchanged.
    pub fn or(children: Vec<Formula>) -> Self {
        Formula::gate(Gate::Or, children)
    }

    pub fn gate(gate: Gate, mut children: Vec<Formula>) -> Self {
        assert!(
            !children.is_empty(),
            "{gate:?} gate needs at least one input"
        );
        if children.len() == 1 {
            return children.pop().unwrap();
        }
        match gate {
            Gate::And => Formula::And(children),
            Gate::Or => Formula::Or(children),
        }
    }

    /// Conjunction of the variables in `set` (a DNF term).
    pub fn conjunction(set: &VarSet) -> Self {
        Formula::and(set.iter().map(Formula::Var).collect())
    }

    /// Disjunction of the variables in `set` (a CNF clause).
    pub fn disjunction(set: &VarSet) -> Self {
        Formula::or(set.iter().map(Formula::Var).collect())
    }

    pub fn gate_kind(&self) -> Option<Gate> {
        match self {
            Formula::Var(_) => None,
            Formula::And(_) => Some(Gate::And),
            Formula::Or(_) => Some(Gate::Or),
        }
    }

    pub fn children(&self) -> &[Formula] {
        match self {
            Formula::Var(_) => &[],
            Formula::And(c) | Formula::Or(c) => c,
        }
    }

    pub fn variables(&self) -> VarSet {
        let mut out = VarSet::new();
        self.visit_vars(&mut |v| {
            out.insert(v);
        });
        out
    }

    fn visit_vars(&self, f: &mut impl FnMut(Var)) {
        match self {
            Formula::Var(v) => f(*v),
            Formula::And(c) | Formula::Or(c) => c.iter().for_each(|ch| ch.visit_vars(f)),
        }
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        self.eval_with(&|v| a.get(v))
    }

    /// Evaluates with the members of `ones` set to 1 and every other variable 0.
    pub fn eval_ones(&self, ones: &VarSet) -> bool {
        self.eval_with(&|v| ones.contains(v))
    }

    pub fn eval_with<F: Fn(Var) -> bool + ?Sized>(&self, value: &F) -> bool {
        match self {
            Formula::Var(v) => value(*v),
            Formula::And(c) => c.iter().all(|ch| ch.eval_with(value)),
            Formula::Or(c) => c.iter().any(|ch| ch.eval_with(value)),
        }
    }

    /// Bit-parallel evaluation: bit `k` of the result is the value of the
    /// formula under the assignment formed by bit `k` of each lane.
    pub fn eval_lanes<F: Fn(Var) -> u64 + ?Sized>(&self, lane: &F) -> u64 {
        match self {
            Formula::Var(v) => lane(*v),
            Formula::And(c) => c.iter().fold(!0, |acc, ch| acc & ch.eval_lanes(lane)),
            Formula::Or(c) => c.iter().fold(0, |acc, ch| acc | ch.eval_lanes(lane)),
        }
    }

    /// Number of occurrences of each variable in the tree.
    pub fn occurrences(&self) -> BTreeMap<Var, usize> {
        let mut counts = BTreeMap::new();
        self.visit_vars(&mut |v| *counts.entry(v).or_insert(0) += 1);
        counts
    }

    /// Syntactic readability: the largest occurrence count of any variable.
    pub fn max_occurrences(&self) -> usize {
        self.occurrences().values().copied().max().unwrap_or(0)
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::And(c) | Formula::Or(c) => 1 + c.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    /// True if the formula fits the gate alternation `layers` from the root
    /// down, where a layer may be skipped by a collapsed single-input gate.
    ///
    /// `fits_layers(&[Gate::And, Gate::Or, Gate::And])` accepts every
    /// ∧-∨-∧ formula of depth at most three.
    pub fn fits_layers(&self, layers: &[Gate]) -> bool {
        match self.gate_kind() {
            None => true,
            Some(g) => match layers.iter().position(|&l| l == g) {
                Some(i) => self
                    .children()
                    .iter()
                    .all(|c| c.fits_layers(&layers[i + 1..])),
                None => false,
            },
        }
    }

    /// Substitutes the fixed variables and simplifies constant subtrees away.
    pub fn restrict(&self, fixed: &HashMap<Var, bool>) -> Restricted {
        match self {
            Formula::Var(v) => match fixed.get(v) {
                Some(&b) => Restricted::Const(b),
                None => Restricted::Formula(self.clone()),
            },
            Formula::And(c) => {
                Restricted::combine(Gate::And, c.iter().map(|ch| ch.restrict(fixed)))
            }
            Formula::Or(c) => Restricted::combine(Gate::Or, c.iter().map(|ch| ch.restrict(fixed))),
        }
    }

    /// Fully parenthesized rendering using names from `registry`.
    pub fn display<'a>(&'a self, registry: &'a Registry) -> Display<'a> {
        Display {
            formula: self,
            registry,
        }
    }
}

pub struct Display<'a> {
    formula: &'a Formula,
    registry: &'a Registry,
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.formula {
            Formula::Var(v) => f.write_str(self.registry.name(*v)),
            Formula::And(c) | Formula::Or(c) => {
                let op = if matches!(self.formula, Formula::And(_)) {
                    " & "
                } else {
                    " | "
                };
                f.write_str("(")?;
                for (i, ch) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(op)?;
                    }
                    write!(f, "{}", ch.display(self.registry))?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Result of [`Formula::restrict`]: either a constant or a formula over the
/// remaining variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Restricted {
    Const(bool),
    Formula(Formula),
}

impl Restricted {
    /// Combines partial results under `gate`, absorbing constants.
    ///
    /// An empty conjunction is `Const(true)` and an empty disjunction `Const(false)`.
    pub fn combine(gate: Gate, parts: impl IntoIterator<Item = Restricted>) -> Restricted {
        let absorbing = gate == Gate::Or;
        let mut kept = Vec::new();
        for part in parts {
            match part {
                Restricted::Const(b) if b == absorbing => return Restricted::Const(absorbing),
                Restricted::Const(_) => {}
                Restricted::Formula(f) => kept.push(f),
            }
        }
        if kept.is_empty() {
            Restricted::Const(!absorbing)
        } else {
            Restricted::Formula(Formula::gate(gate, kept))
        }
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        match self {
            Restricted::Const(b) => *b,
            Restricted::Formula(f) => f.eval(a),
        }
    }

    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            Restricted::Formula(f) => Some(f),
            Restricted::Const(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("empty formula")]
    Empty,
    #[error("negation not allowed")]
    Negation,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("expected {expected}, found {found}")]
    Unexpected {
        expected: &'static str,
        found: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    And,
    Or,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("name `{n}`"),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
    let mut toks = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let (l, cl) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            continue;
        }
        col += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '!' | '~' => {
                return Err(ParseError {
                    kind: ParseErrorKind::Negation,
                    line: l,
                    column: cl,
                })
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::from(c);
                while let Some(&n) = chars.peek() {
                    if n.is_ascii_alphanumeric() || n == '_' {
                        name.push(n);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                Tok::Name(name)
            }
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(other),
                    line: l,
                    column: cl,
                })
            }
        };
        toks.push((tok, l, cl));
    }
    toks.push((Tok::End, line, col));
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    registry: &'a mut Registry,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let (tok, line, column) = &self.toks[self.pos];
        ParseError {
            kind: ParseErrorKind::Unexpected {
                expected,
                found: tok.describe(),
            },
            line: *line,
            column: *column,
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut items = vec![self.conjunction()?];
        while *self.peek() == Tok::Or {
            self.pos += 1;
            items.push(self.conjunction()?);
        }
        Ok(Formula::or(items))
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut items = vec![self.atom()?];
        while *self.peek() == Tok::And {
            self.pos += 1;
            items.push(self.atom()?);
        }
        Ok(Formula::and(items))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Name(n) => {
                self.pos += 1;
                Ok(Formula::Var(self.registry.intern(&n)))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error("variable name or `(`")),
        }
    }
}

/// Parses `text`, interning unseen variable names into `registry`.
pub fn parse_formula(text: &str, registry: &mut Registry) -> Result<Formula, ParseError> {
    let toks = tokenize(text)?;
    if toks.len() == 1 {
        let (_, line, column) = toks[0];
        return Err(ParseError {
            kind: ParseErrorKind::Empty,
            line,
            column,
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        registry,
    };
    let f = p.disjunction()?;
    if *p.peek() != Tok::End {
        return Err(p.error("`&`, `|` or end of input"));
    }
    Ok(f)
}

/// Names in `text` in order of first appearance, without touching any registry.
pub fn scan_names(text: &str) -> Result<Vec<String>, ParseError> {
    let mut scratch = Registry::new();
    parse_formula(text, &mut scratch)?;
    Ok(scratch.vars().map(|v| scratch.name(v).to_owned()).collect())
}
