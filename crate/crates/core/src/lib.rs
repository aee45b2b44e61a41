//! Read-once recognition for monotone expressions `C ∨ D`, where `C` is a
//! read-once CNF and `D` a read-once DNF covering every variable of `C`.
//!
//! The crate is organized around a few layers:
//!
//! - [`formula`] and [`varset`]: the monotone formula AST, its parser, and
//!   bitmask variable sets shared by every other module;
//! - [`oracle`]: exhaustive minterm/maxterm enumeration and the brute-force
//!   read-once test used as ground truth;
//! - [`read2`]: a polynomial read-2 SAT solver and the `C → D` implication test;
//! - [`recognizer`]: the polynomial-time recognition pipeline with
//!   certified (minterm, maxterm) witnesses;
//! - [`hardness`]: generators of hard instances from clique problems;
//! - [`io`] and [`cli`]: file formats and the command-line front end.

pub mod cli;
pub mod formula;
pub mod hardness;
pub mod io;
pub mod oracle;
pub mod read2;
pub mod recognizer;
pub mod varset;

pub use formula::{parse_formula, Formula, Gate, ParseError, Restricted};
pub use oracle::{Oracle, OracleError, ReadOnceVerdict, TermKind, TermList, Witness};
pub use read2::{implies_tautology, solve_read2, Lit, LiteralCnf, Read2Error, SatResult};
pub use recognizer::{
    Instance, InstanceError, ReadOnceCnf, ReadOnceDnf, RecognitionResult, Step, Verdict,
};
pub use varset::{Assignment, Registry, Var, VarSet};
