//! Command dispatch for `qcsolve`. [`run`] takes the argument list and the two
//! output streams and returns the process exit code, so it can be driven from tests.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use wdvv_core::algebra::{validate_algebra, Algebra};
use wdvv_core::degrees::{Cone, CurveClass, Degree};
use wdvv_core::dsl::{parse_definition, print_definition, Definition};
use wdvv_core::linalg::{parse_rational, Q};
use wdvv_core::presets::get_preset;
use wdvv_core::problem::Problem;
use wdvv_core::solver::{reconstruct, verify_table, Policy, SolutionTable, VerifyOutcome};
use wdvv_core::tableio::{export_csv, export_json, import_csv, import_json};
use wdvv_core::wdvv::{brute_count, count_formulas, enumerate_relations, run_identity_suite, BRUTE_COUNT_MAX};

pub const EXIT_OK: i32 = 0;
pub const EXIT_HALT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_VALIDATION: i32 = 66;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Validation(_) | CliError::Io(_) => EXIT_VALIDATION,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse { .. } => "parse",
            CliError::Validation(_) => "validation",
            CliError::Io(_) => "io",
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "qcsolve", version, about = "Exact solver for associativity relations of small quantum cohomology rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    Strict,
    Pins,
    Zero,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the standing hypotheses on an algebra definition.
    Validate { file: PathBuf },
    /// Extend seed values class by class and write the resulting table.
    Solve {
        file: PathBuf,
        /// Largest `⟨β,ω⟩` to solve for (a rational).
        #[arg(long)]
        bound: String,
        /// Table with the starting values (JSON, or CSV by extension).
        #[arg(long)]
        seed: Option<PathBuf>,
        /// Fix a value, as `N(β;d)=p/q`; repeatable.
        #[arg(long = "pin")]
        pins: Vec<String>,
        /// Defaults to `pins` when any `--pin` is given, `strict` otherwise.
        #[arg(long, value_enum)]
        policy: Option<PolicyArg>,
        /// Insertion bound `|d| <= K`, required when the file has no canonical class.
        #[arg(long)]
        dbound: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate every relation up to the bound on a table.
    Verify {
        file: PathBuf,
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        bound: String,
        /// Read numbers absent from the table as 0.
        #[arg(long)]
        zero_default: bool,
        #[arg(long)]
        dbound: Option<u32>,
    },
    /// Print the canonical relations in one curve class.
    Relations {
        file: PathBuf,
        /// Curve class, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Restrict to one degree vector, comma-separated.
        #[arg(long)]
        degree: Option<String>,
        #[arg(long)]
        dbound: Option<u32>,
    },
    /// Number of relations for an algebra of rank R, by closed form and by enumeration.
    Count {
        #[arg(long)]
        rank: u32,
    },
    /// Randomized checks of the relation identities.
    Identities {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long = "seed-rng", default_value_t = 0)]
        seed_rng: u64,
        /// Largest `⟨β,ω⟩` sampled.
        #[arg(long, default_value_t = 3)]
        max_class: i64,
        #[arg(long)]
        dbound: Option<u32>,
    },
    /// Print the definition file of a built-in algebra.
    Preset {
        name: String,
        /// Preset parameter, as `KEY=VALUE`; repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Convert a table to JSON or CSV in canonical order.
    Export {
        file: PathBuf,
        #[arg(long)]
        table: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        dbound: Option<u32>,
    },
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.kind());
            e.code()
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("QCSOLVE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn io_err(path: &Path, e: impl Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn emit(out: &mut dyn Write, text: impl Display) -> CliResult<()> {
    writeln!(out, "{text}").map_err(|e| CliError::Io(format!("standard output: {e}")))
}

fn load_definition(path: &Path) -> CliResult<Definition> {
    parse_definition(&read(path)?).map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })
}

fn load_problem(path: &Path, dbound: Option<u32>) -> CliResult<Problem> {
    let def = load_definition(path)?;
    let algebra = Algebra::new(def.algebra()).map_err(|r| CliError::Validation(format!("{}: algebra {r}", path.display())))?;
    let cone = Cone::new(def.cone_spec()).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    Problem::new(algebra, cone, def.canonical_class(), dbound).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn load_table(path: &Path, p: &Problem) -> CliResult<SolutionTable> {
    let text = read(path)?;
    let is_csv = path.extension().is_some_and(|x| x.eq_ignore_ascii_case("csv"));
    let table = if is_csv { import_csv(&text, p.algebra().name()) } else { import_json(&text) }
        .map_err(|e| CliError::Parse { path: path.display().to_string(), message: e.to_string() })?;
    for (v, _) in table.values() {
        let shape_ok = v.beta.rank() == p.algebra().r() && v.d.len() == p.algebra().s();
        if !shape_ok || !p.cone().contains(&v.beta) || !p.is_admissible(v) {
            return Err(CliError::Validation(format!("{}: {v} is not an admissible number", path.display())));
        }
    }
    Ok(table)
}

fn parse_bound(s: &str) -> CliResult<Q> {
    parse_rational(s).ok_or_else(|| CliError::Usage(format!("--bound expects a rational, got `{s}`")))
}

fn parse_vector<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("{what} expects comma-separated integers, got `{s}`"))))
        .collect()
}

/// `N(1,0;2,0,0)=3/2`.
fn parse_pin(s: &str) -> CliResult<(Degree, Q)> {
    let bad = || CliError::Usage(format!("--pin expects N(β;d)=p/q, got `{s}`"));
    let (lhs, rhs) = s.split_once('=').ok_or_else(bad)?;
    let inner = lhs.trim().strip_prefix("N(").and_then(|x| x.strip_suffix(')')).ok_or_else(bad)?;
    let (b, d) = inner.split_once(';').ok_or_else(bad)?;
    let beta = parse_vector::<i64>(b, "--pin")?;
    let d = if d.trim().is_empty() { Vec::new() } else { parse_vector::<u32>(d, "--pin")? };
    let value = parse_rational(rhs).ok_or_else(bad)?;
    Ok((Degree { beta: CurveClass(beta), d }, value))
}

fn parse_param(s: &str) -> CliResult<(String, i64)> {
    let (k, v) = s.split_once('=').ok_or_else(|| CliError::Usage(format!("--param expects KEY=VALUE, got `{s}`")))?;
    let v = v.trim().parse().map_err(|_| CliError::Usage(format!("--param value must be an integer, got `{v}`")))?;
    Ok((k.trim().to_string(), v))
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Validate { file } => {
            let def = load_definition(&file)?;
            let report = validate_algebra(&def.algebra());
            emit(out, format_args!("algebra {}: {report}", def.name))?;
            let cone = Cone::new(def.cone_spec());
            match &cone {
                Ok(c) => emit(out, format_args!("cone: pass (omega = {:?})", c.omega()))?,
                Err(e) => emit(out, format_args!("cone: fail: {e}"))?,
            }
            Ok(if report.is_ok() && cone.is_ok() { EXIT_OK } else { EXIT_HALT })
        }
        Command::Solve { file, bound, seed, pins, policy, dbound, out: target } => {
            let p = load_problem(&file, dbound)?;
            let bound = parse_bound(&bound)?;
            let pins = pins.iter().map(|s| parse_pin(s)).collect::<CliResult<Vec<_>>>()?;
            for (v, _) in &pins {
                if !p.is_admissible(v) {
                    return Err(CliError::Validation(format!("pinned {v} is not an admissible number")));
                }
            }
            let seeds = match seed {
                Some(path) => load_table(&path, &p)?,
                None => SolutionTable::new(p.algebra().name()),
            };
            let default = if pins.is_empty() { PolicyArg::Strict } else { PolicyArg::Pins };
            let policy = match policy.unwrap_or(default) {
                PolicyArg::Strict => Policy::Strict,
                PolicyArg::Pins => Policy::Pins,
                PolicyArg::Zero => Policy::ZeroFrees,
            };
            let r = reconstruct(&p, &seeds, &bound, policy, &pins).map_err(|e| CliError::Validation(e.to_string()))?;
            for v in &r.seed_violations {
                emit(out, format_args!("seed relation {} = {} (should vanish)", v.relation.describe(p.algebra()), v.value))?;
            }
            for rep in &r.reports {
                emit(out, rep)?;
            }
            let omega = p.cone().omega().to_vec();
            let text = match target.extension().is_some_and(|x| x.eq_ignore_ascii_case("csv")) {
                true => export_csv(&r.table, &omega),
                false => export_json(&r.table, &omega),
            };
            write_file(&target, &text)?;
            match &r.halted {
                Some(h) => {
                    emit(out, format_args!("halted: {h}"))?;
                    Ok(EXIT_HALT)
                }
                None => {
                    emit(out, format_args!("complete: {} numbers written to {}", r.table.len(), target.display()))?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Verify { file, table, bound, zero_default, dbound } => {
            let p = load_problem(&file, dbound)?;
            let bound = parse_bound(&bound)?;
            let t = load_table(&table, &p)?;
            match verify_table(&p, &t, &bound, zero_default) {
                Ok(VerifyOutcome::Ok { checked }) => {
                    emit(out, format_args!("OK: {checked} relations vanish"))?;
                    Ok(EXIT_OK)
                }
                Ok(VerifyOutcome::Failure { relation, residual }) => {
                    emit(
                        out,
                        format_args!(
                            "FAIL: beta ({}) d ({}) relation {} residual {residual}",
                            relation.degree.beta,
                            relation.degree.d.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
                            relation.describe(p.algebra()),
                        ),
                    )?;
                    Ok(EXIT_VERIFY)
                }
                Err(e) => {
                    emit(out, format_args!("FAIL: {e}"))?;
                    Ok(EXIT_VERIFY)
                }
            }
        }
        Command::Relations { file, beta, degree, dbound } => {
            let p = load_problem(&file, dbound)?;
            let beta = CurveClass(parse_vector(&beta, "--beta")?);
            if beta.rank() != p.algebra().r() || !p.cone().contains(&beta) || beta.is_zero() {
                return Err(CliError::Validation(format!("({beta}) is not a curve class of the cone")));
            }
            let degree = degree.map(|d| parse_vector::<u32>(&d, "--degree")).transpose()?;
            let mut rels = enumerate_relations(&p, &beta);
            rels.sort_by(|a, b| a.0.degree.cmp(&b.0.degree).then(a.0.tuple.cmp(&b.0.tuple)));
            let mut shown = 0;
            for (id, poly) in rels.iter().filter(|(id, _)| degree.as_ref().is_none_or(|d| *d == id.degree.d)) {
                emit(out, format_args!("{}: {poly} = 0", id.describe(p.algebra())))?;
                shown += 1;
            }
            emit(out, format_args!("{shown} relations"))?;
            Ok(EXIT_OK)
        }
        Command::Count { rank } => {
            if rank == 0 {
                return Err(CliError::Usage("--rank must be at least 1".into()));
            }
            let (a, b) = count_formulas(rank).map_err(|e| CliError::Validation(e.to_string()))?;
            emit(out, format_args!("formula: {a} modulo sign, {b} modulo two-out-of-three"))?;
            if rank <= BRUTE_COUNT_MAX {
                let (c, d) = brute_count(rank).map_err(|e| CliError::Validation(e.to_string()))?;
                emit(out, format_args!("brute force: {c} modulo sign, {d} modulo two-out-of-three"))?;
            } else {
                emit(out, format_args!("brute force: skipped (rank above {BRUTE_COUNT_MAX})"))?;
            }
            Ok(EXIT_OK)
        }
        Command::Identities { file, samples, seed_rng, max_class, dbound } => {
            let p = load_problem(&file, dbound)?;
            let rep = run_identity_suite(&p, samples, seed_rng, max_class).map_err(|e| CliError::Validation(e.to_string()))?;
            for (name, t) in [
                ("two-out-of-three", rep.two_of_three),
                ("three symbols", rep.three_symbols),
                ("m-diagonal", rep.m_diagonal),
                ("five symbols, linear part", rep.five_symbols_linear),
            ] {
                emit(out, format_args!("{name}: {}/{} hold", t.passed, t.total))?;
            }
            Ok(if rep.all_passed() { EXIT_OK } else { EXIT_VERIFY })
        }
        Command::Preset { name, params } => {
            let params = params.iter().map(|s| parse_param(s)).collect::<CliResult<Vec<_>>>()?;
            let params: Vec<(&str, i64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
            let preset = get_preset(&name, &params).map_err(|e| CliError::Usage(e.to_string()))?;
            let def = Definition::from_parts(preset.algebra.raw(), preset.cone.spec(), preset.canonical.as_ref());
            write!(out, "# {}\n{}", preset.doc, print_definition(&def)).map_err(|e| CliError::Io(e.to_string()))?;
            Ok(EXIT_OK)
        }
        Command::Export { file, table, format, dbound } => {
            let p = load_problem(&file, dbound)?;
            let t = load_table(&table, &p)?;
            let omega = p.cone().omega();
            let text = match format {
                Format::Json => export_json(&t, omega),
                Format::Csv => export_csv(&t, omega),
            };
            write!(out, "{text}").map_err(|e| CliError::Io(e.to_string()))?;
            Ok(EXIT_OK)
        }
    }
}
