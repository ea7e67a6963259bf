//! Command-line front end: argument parsing, file I/O and output formatting
//! around `mvmlab-core`.

mod repro;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use mvmlab_core::algebra::AlgebraError;
use mvmlab_core::axioms::{is_mv_monoid, is_positive_mv, si_necessary_condition};
use mvmlab_core::congruence::{congruence_lattice, is_simple, monolith, CongruenceError};
use mvmlab_core::constructions::{
    catalog, cn_delta, cn_nabla, gamma_of_lex, lattice_chain, lm_delta, lm_nabla, ln_plus,
    ConstructionError,
};
use mvmlab_core::enumerate::{
    enumerate_chain, enumerate_chain_with_threads, EnumerationError, Filter,
};
use mvmlab_core::limits::{self, Limits};
use mvmlab_core::morphisms::{downset_lattice, hs_closure, si_poset, MorphismError};
use mvmlab_core::names::display_name;
use mvmlab_core::poset::{Poset, PosetError};
use mvmlab_core::tau::{
    classify_variety, membership, phi, sigma, AxiomSet, DivisorClosedSet, TauError,
};
use mvmlab_core::term::{parse, satisfies, satisfies_quasi, Parsed, SyntaxError, Verdict};
use mvmlab_core::{FiniteAlgebra, FiniteLMonoid};

pub use repro::{repro, ReproOutput, TARGETS};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Algebra { path: PathBuf, source: AlgebraError },
    #[error("{path}: {source}")]
    PosetFile { path: PathBuf, source: PosetError },
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Tau(#[from] TauError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("unknown repro target `{0}`; valid targets: {targets}", targets = TARGETS.join(", "))]
    UnknownTarget(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Limits(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mvmlab", version, about = "Finite MV-monoid workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the MV-monoid axioms, positivity and the SI-necessary condition
    Axioms { file: PathBuf },
    /// Congruence lattice as JSON, or its Hasse diagram with --dot
    Congruences {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Build a named algebra (catalog name or family with --n), or gamma-lex <lmonoid.json>
    Construct {
        name: String,
        /// Lattice-monoid file for gamma-lex
        file: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All MV-monoids on the N-element chain
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "all", value_parser = parse_filter)]
        filter: Filter,
        #[arg(long)]
        count_only: bool,
        /// Write one chainN_K.json per algebra into this directory
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check an equation or quasi-equation in an algebra
    CheckEq {
        #[arg(long)]
        eq: String,
        file: PathBuf,
    },
    /// Check the idempotency axioms for tau_{n,k}
    Phi {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        file: PathBuf,
    },
    /// Check the threshold and non-divisor axioms for a divisor-closed set
    Sigma {
        #[arg(long, value_parser = parse_set)]
        set: DivisorClosedSet,
        file: PathBuf,
    },
    /// Membership in the variety generated by the Lukasiewicz chains indexed by a set
    Member {
        #[arg(long, value_parser = parse_set)]
        set: DivisorClosedSet,
        file: PathBuf,
    },
    /// Divisor-closed set of the variety generated by positive MV-algebras
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Isomorphism classes of HS of the given algebras
    Hsu {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Algebras ordered by A <= B iff A in HS(B)
    Poset {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        dot: bool,
    },
    /// Lattice of downward-closed subsets of a poset file
    Downsets {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Regenerate a figure or the catalog counts
    Repro {
        target: String,
        #[arg(long)]
        dot: bool,
        /// Chain depth for fig2 and largest Lukasiewicz index for fig1
        #[arg(long)]
        depth: Option<usize>,
    },
}

fn parse_filter(text: &str) -> Result<Filter, String> {
    Filter::parse(text)
        .ok_or_else(|| format!("`{text}` is not one of all, si-necessary, si, positive"))
}

fn parse_set(text: &str) -> Result<DivisorClosedSet, String> {
    DivisorClosedSet::parse(text).map_err(|e| e.to_string())
}

fn filter_name(f: Filter) -> &'static str {
    match f {
        Filter::All => "all",
        Filter::SINecessary => "si-necessary",
        Filter::SI => "si",
        Filter::PositiveMV => "positive",
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = Limits::from_env().map_err(CliError::Limits).and_then(|l| {
        limits::install(l);
        dispatch(cli.command, out, err)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| {
        if source.kind() == io::ErrorKind::NotFound {
            CliError::FileNotFound(path.to_path_buf())
        } else {
            CliError::Read {
                path: path.to_path_buf(),
                source,
            }
        }
    })
}

fn load_algebra(path: &Path) -> Result<FiniteAlgebra, CliError> {
    let text = read_text(path)?;
    let a = FiniteAlgebra::from_json(&text).map_err(|source| CliError::Algebra {
        path: path.to_path_buf(),
        source,
    })?;
    if a.name().is_empty() {
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        return Ok(a.with_name(stem));
    }
    Ok(a)
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<FiniteAlgebra>, CliError> {
    paths.iter().map(|p| load_algebra(p)).collect()
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

/// The algebra document as a JSON value.
pub(crate) fn algebra_value(a: &FiniteAlgebra) -> Value {
    serde_json::from_str(&a.to_json()).expect("algebra JSON is valid")
}

fn verdict_value(v: &Verdict) -> Value {
    match v {
        Verdict::Holds => json!({"holds": true}),
        Verdict::Fails(w) => json!({"holds": false, "witness": w}),
    }
}

fn axiom_set_value(set: &AxiomSet, a: &FiniteAlgebra) -> Value {
    let verdict = set.check(a);
    let mut v = json!({
        "algebra": a.name(),
        "axioms": set.name.to_string(),
        "equations": set.equations.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "holds": verdict.holds,
    });
    if let (Some(i), Some(w)) = (verdict.failing_equation, verdict.witness) {
        v["failing_equation"] = json!(set.equations[i].to_string());
        v["witness"] = json!(w);
    }
    v
}

fn family(name: &str, n: Option<usize>) -> Result<Option<FiniteAlgebra>, CliError> {
    let builder: fn(usize) -> Result<FiniteAlgebra, ConstructionError> = match name {
        "ln-plus" | "ln" => ln_plus,
        "cn-delta" => cn_delta,
        "cn-nabla" => cn_nabla,
        "lm-delta" => lm_delta,
        "lm-nabla" => lm_nabla,
        "lattice-chain" => |n| lattice_chain(n + 1),
        _ => return Ok(None),
    };
    let n = n.ok_or_else(|| CliError::Usage(format!("construct {name} needs --n N")))?;
    Ok(Some(builder(n)?))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Axioms { file } => {
            let a = load_algebra(&file)?;
            let report = is_mv_monoid(&a);
            emit(
                out,
                &json!({
                    "algebra": a.name(),
                    "passed": report.passed,
                    "failures": report.failures,
                    "positive": report.passed && is_positive_mv(&a),
                    "si_necessary_condition": si_necessary_condition(&a),
                }),
            )
        }
        Command::Congruences { file, dot } => {
            let a = load_algebra(&file)?;
            let con = congruence_lattice(&a)?;
            if dot {
                write!(
                    out,
                    "{}",
                    con.to_poset().to_dot(&format!("Con({})", a.name()))
                )?;
                return Ok(());
            }
            let mono = monolith(&a)?;
            emit(
                out,
                &json!({
                    "algebra": a.name(),
                    "congruences": con.elements.iter().map(|c| c.blocks()).collect::<Vec<_>>(),
                    "covers": con.covers,
                    "subdirectly_irreducible": mono.is_some(),
                    "monolith": mono.map(|m| m.blocks()),
                    "simple": is_simple(&a)?,
                }),
            )
        }
        Command::Construct {
            name,
            file,
            n,
            out: target,
        } => {
            let a = if name == "gamma-lex" {
                let path = file.ok_or_else(|| {
                    CliError::Usage("construct gamma-lex needs an l-monoid file".into())
                })?;
                let text = read_text(&path)?;
                let m = FiniteLMonoid::from_json(&text).map_err(|source| CliError::Algebra {
                    path: path.clone(),
                    source,
                })?;
                let g = gamma_of_lex(&m)?;
                let label = display_name(&g.clone().with_name(format!("Gamma({})", m.name())));
                g.with_name(label)
            } else if let Some(a) = family(&name, n)? {
                a
            } else {
                if file.is_some() {
                    return Err(CliError::Usage(format!(
                        "construct {name} takes no file argument"
                    )));
                }
                catalog(&name)?
            };
            match target {
                Some(path) => write_file(&path, &format!("{}\n", a.to_json())),
                None => {
                    writeln!(out, "{}", a.to_json())?;
                    Ok(())
                }
            }
        }
        Command::Enumerate {
            size,
            filter,
            count_only,
            out: dir,
            threads,
        } => {
            let found = match threads {
                Some(t) => enumerate_chain_with_threads(size, filter, t)?,
                None => enumerate_chain(size, filter)?,
            };
            let mut summary =
                json!({"size": size, "filter": filter_name(filter), "count": found.len()});
            if let Some(dir) = dir {
                fs::create_dir_all(&dir).map_err(|source| CliError::Write {
                    path: dir.clone(),
                    source,
                })?;
                let mut files = Vec::new();
                for (k, a) in found.iter().enumerate() {
                    let path = dir.join(format!("chain{size}_{k}.json"));
                    write_file(&path, &format!("{}\n", a.to_json()))?;
                    files.push(path.display().to_string());
                }
                summary["files"] = json!(files);
            } else if !count_only {
                summary["algebras"] = Value::Array(found.iter().map(algebra_value).collect());
            }
            emit(out, &summary)
        }
        Command::CheckEq { eq, file } => {
            let a = load_algebra(&file)?;
            let verdict = match parse(&eq)? {
                Parsed::Equation(e) => satisfies(&a, &e),
                Parsed::Quasi(q) => satisfies_quasi(&a, &q),
                Parsed::Term(_) => {
                    return Err(CliError::Usage(format!(
                        "`{eq}` is a term, not an equation"
                    )))
                }
            };
            let mut v = verdict_value(&verdict);
            v["algebra"] = json!(a.name());
            v["equation"] = json!(eq);
            emit(out, &v)
        }
        Command::Phi { n, file } => {
            let a = load_algebra(&file)?;
            emit(out, &axiom_set_value(&phi(n), &a))
        }
        Command::Sigma { set, file } => {
            let a = load_algebra(&file)?;
            emit(out, &axiom_set_value(&sigma(&set), &a))
        }
        Command::Member { set, file } => {
            let a = load_algebra(&file)?;
            let m = membership(&a, &set);
            emit(
                out,
                &json!({"algebra": a.name(), "set": set.to_string(), "lcm": set.lcm(), "result": m}),
            )
        }
        Command::Classify { files } => {
            let gens = load_all(&files)?;
            let set = classify_variety(&gens)?;
            emit(
                out,
                &json!({"generators": gens.iter().map(|g| g.name()).collect::<Vec<_>>(), "set": set.to_string(), "members": set.iter().collect::<Vec<_>>()}),
            )
        }
        Command::Hsu { files } => {
            let classes = hs_closure(&load_all(&files)?)?;
            let list: Vec<Value> = classes
                .iter()
                .map(|(k, a)| json!({"name": a.name(), "size": a.size(), "key": k.hash_prefix(8)}))
                .collect();
            emit(out, &json!({"count": list.len(), "classes": list}))
        }
        Command::Poset { files, dot } => {
            let p = si_poset(&load_all(&files)?)?;
            for w in &p.warnings {
                writeln!(err, "warning: {w}")?;
            }
            if dot {
                write!(out, "{}", p.poset.to_dot("HS"))?;
                Ok(())
            } else {
                emit(out, &p.poset.to_json())
            }
        }
        Command::Downsets { file, dot } => {
            let text = read_text(&file)?;
            let p = Poset::from_json(&text).map_err(|source| CliError::PosetFile {
                path: file.clone(),
                source,
            })?;
            let d = downset_lattice(&p)?;
            if dot {
                write!(out, "{}", d.poset.to_dot("downsets"))?;
                Ok(())
            } else {
                emit(out, &d.poset.to_json())
            }
        }
        Command::Repro { target, dot, depth } => {
            let output = repro(&target, depth)?;
            match (dot, output.dot) {
                (true, Some(text)) => write!(out, "{text}")?,
                (true, None) => {
                    writeln!(err, "note: {target} has no diagram; printing JSON")?;
                    emit(out, &output.json)?
                }
                (false, _) => emit(out, &output.json)?,
            }
            Ok(())
        }
    }
}
