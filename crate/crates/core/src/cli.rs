//! Command-line front end.
//!
//! Exit codes: `0` when the property holds (read-once, tautology, files
//! written), `1` when it fails and a certificate is printed, `2` on any error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hardness::{build_reduction, wrapper_formula, Graph};
use crate::io::{self, render_family, render_graph, Manifest};
use crate::oracle::{Oracle, DEFAULT_MAX_VARS};
use crate::recognizer::Verdict;
use crate::varset::{Registry, VarSet};

#[derive(Debug, Parser)]
#[command(
    name = "readonce",
    version,
    about = "Read-once recognition for C ∨ D expressions"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest variable count the exhaustive oracle will scan.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_VARS, value_parser = parse_max_vars)]
    pub max_vars: usize,
    /// Seed for randomly generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether C ∨ D is read-once in polynomial time.
    Check { cnf: PathBuf, dnf: PathBuf },
    /// Decide whether a formula is read-once by exhaustive term enumeration.
    Oracle { formula: PathBuf },
    /// Decide whether C → D is a tautology.
    Taut { cnf: PathBuf, dnf: PathBuf },
    /// Generate Ψ and D_n from a clique instance.
    Reduce {
        /// Graph file; omit when using --random.
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        graph: Option<PathBuf>,
        /// Clique size.
        #[arg(short, long)]
        k: usize,
        /// Use a random graph on this many vertices, drawn with --seed.
        #[arg(long)]
        random: Option<usize>,
        /// Edge probability for --random.
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Also emit the read-once wrapper formula.
        #[arg(long)]
        corollary: bool,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_max_vars(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

#[derive(Serialize)]
struct VerdictReport {
    verdict: String,
    step: Option<String>,
    minterm: Option<Vec<String>>,
    maxterm: Option<Vec<String>>,
}

impl VerdictReport {
    fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string(self).expect("report serializes") + "\n";
        }
        let mut out = format!("{}\n", self.verdict);
        if let Some(step) = &self.step {
            writeln!(out, "step: {step}").unwrap();
        }
        if let (Some(s), Some(t)) = (&self.minterm, &self.maxterm) {
            writeln!(out, "minterm: {{{}}}", s.join(", ")).unwrap();
            writeln!(out, "maxterm: {{{}}}", t.join(", ")).unwrap();
        }
        out
    }
}

#[derive(Serialize)]
struct TautReport {
    verdict: &'static str,
    counterexample: Option<Vec<String>>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(0, text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Check { cnf, dnf } => check(cnf, dnf, cli.json),
        Command::Oracle { formula } => oracle(formula, cli.max_vars, cli.json),
        Command::Taut { cnf, dnf } => taut(cnf, dnf, cli.json),
        Command::Reduce {
            graph,
            k,
            random,
            density,
            corollary,
            out,
        } => {
            let graph = match (graph, random) {
                (Some(path), _) => io::load_graph(path).map_err(|e| e.to_string()),
                (None, Some(n)) => random_graph(*n, *density, cli.seed),
                (None, None) => Err("either a graph file or --random is required".into()),
            };
            graph.and_then(|g| reduce(&g, *k, *corollary, out, random.is_some(), cli.json))
        }
    };
    result.unwrap_or_else(Outcome::error)
}

fn random_graph(n: usize, density: f64, seed: u64) -> Result<Graph, String> {
    if !(0.0..=1.0).contains(&density) {
        return Err(format!("density {density} is not in [0, 1]"));
    }
    Graph::random(n, density, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(|e| e.to_string())
}

fn names(registry: &Registry, set: &VarSet) -> Vec<String> {
    registry.sorted_names(set)
}

fn exit_for(holds: bool) -> i32 {
    if holds {
        0
    } else {
        1
    }
}

fn check(cnf: &Path, dnf: &Path, json: bool) -> Result<Outcome, String> {
    let inst = io::load_instance(cnf, dnf).map_err(|e| e.to_string())?;
    let result = inst.recognize().map_err(|e| e.to_string())?;
    let reg = inst.registry();
    let report = VerdictReport {
        verdict: result.verdict.to_string(),
        step: Some(result.step.to_string()),
        minterm: result.witness.as_ref().map(|w| names(reg, &w.minterm)),
        maxterm: result.witness.as_ref().map(|w| names(reg, &w.maxterm)),
    };
    Ok(Outcome::ok(
        exit_for(result.verdict == Verdict::ReadOnce),
        report.render(json),
    ))
}

fn oracle(path: &Path, max_vars: usize, json: bool) -> Result<Outcome, String> {
    let (reg, f) = io::load_formula(path).map_err(|e| e.to_string())?;
    let verdict = Oracle::new(max_vars)
        .is_read_once(&f)
        .map_err(|e| e.to_string())?;
    let report = VerdictReport {
        verdict: if verdict.read_once {
            Verdict::ReadOnce
        } else {
            Verdict::NotReadOnce
        }
        .to_string(),
        step: None,
        minterm: verdict.witness.as_ref().map(|w| names(&reg, &w.minterm)),
        maxterm: verdict.witness.as_ref().map(|w| names(&reg, &w.maxterm)),
    };
    Ok(Outcome::ok(
        exit_for(verdict.read_once),
        report.render(json),
    ))
}

fn taut(cnf: &Path, dnf: &Path, json: bool) -> Result<Outcome, String> {
    let inst = io::load_instance(cnf, dnf).map_err(|e| e.to_string())?;
    let cex =
        crate::read2::implies_tautology(inst.clauses(), inst.terms()).map_err(|e| e.to_string())?;
    let report = TautReport {
        verdict: if cex.is_none() {
            "TAUTOLOGY"
        } else {
            "NOT_TAUTOLOGY"
        },
        counterexample: cex.as_ref().map(|s| names(inst.registry(), s)),
    };
    let text = if json {
        serde_json::to_string(&report).expect("report serializes") + "\n"
    } else {
        match &report.counterexample {
            None => format!("{}\n", report.verdict),
            Some(s) => format!("{}\ncounterexample: {{{}}}\n", report.verdict, s.join(", ")),
        }
    };
    Ok(Outcome::ok(exit_for(cex.is_none()), text))
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, String> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(path)
}

fn reduce(
    graph: &Graph,
    k: usize,
    corollary: bool,
    out: &Path,
    save_graph: bool,
    json: bool,
) -> Result<Outcome, String> {
    let mut reduction = build_reduction(graph, k).map_err(|e| e.to_string())?;
    std::fs::create_dir_all(out).map_err(|e| format!("{}: {e}", out.display()))?;
    let manifest = Manifest::of(&reduction);
    let mut written = Vec::new();
    if save_graph {
        written.push(write(out, "graph.txt", &render_graph(graph))?);
    }
    written.push(write(
        out,
        "psi.txt",
        &format!("{}\n", reduction.psi.display(&reduction.registry)),
    )?);
    written.push(write(
        out,
        "dn.txt",
        &render_family(reduction.dn.terms(), &reduction.registry),
    )?);
    if corollary {
        let wrapper = wrapper_formula(&reduction.psi, &reduction.dn, &mut reduction.registry)
            .map_err(|e| e.to_string())?;
        written.push(write(
            out,
            "wrapper.txt",
            &format!("{}\n", wrapper.display(&reduction.registry)),
        )?);
    }
    let manifest_json =
        serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    written.push(write(out, "manifest.json", &manifest_json)?);

    let text = if json {
        serde_json::to_string(&manifest).expect("manifest serializes") + "\n"
    } else {
        let mut s = format!(
            "n_vars: {}\nconf_size: {}\n",
            manifest.n_vars, manifest.conf_size
        );
        for p in &written {
            writeln!(s, "wrote {}", p.display()).unwrap();
        }
        s
    };
    Ok(Outcome::ok(0, text))
}
