//! The `bbar` command-line tool. `run` is the whole program minus process exit,
//! so it can be driven from tests.

pub mod error;
pub mod file;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use bbar_core::classify::{
    certify_positive_definite, classify_all, ClassifyOptions, PdVerdict, QuasiRule, Verdict,
};
use bbar_core::heig::{
    heig_exact_n2, sshopm_both_ends, verify_containment, ExactOptions, HEigenpair, NamedSet,
    SshopmOptions,
};
use bbar_core::inclusion::{all_sets, has_guarantee, TildeMode};
use bbar_core::interval::{format_sig, IntervalSet};
use bbar_core::profile::{all_pair_profiles, row_profile};
use bbar_core::Tensor;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use error::CliError;
use file::TensorFile;

/// Exit code for a `check` that found an eigenvalue outside some set.
pub const EXIT_VIOLATION: u8 = 3;

const DIGITS: usize = 6;

#[derive(Debug, Parser)]
#[command(
    name = "bbar",
    version,
    about = "Tensor dominance classes and H-eigenvalue inclusion intervals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-row and per-pair off-diagonal statistics.
    Profile {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Membership in every dominance class, with a witness for each failure.
    Classify {
        file: PathBuf,
        /// Which printed form of the quasi-double B pair inequality to use.
        #[arg(long, value_enum, default_value_t = QuasiDef::Theorem)]
        quasi_def: QuasiDef,
        #[arg(long)]
        json: bool,
    },
    /// Real eigenvalue inclusion sets.
    Intervals {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SetName::All)]
        set: SetName,
        /// Print only the convex hull of each set.
        #[arg(long)]
        hull: bool,
        #[arg(long, value_enum, default_value_t = Tilde::Corrected)]
        tilde: Tilde,
        #[arg(long)]
        json: bool,
    },
    /// Real H-eigenpairs.
    Eigs {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        json: bool,
    },
    /// Sufficient-condition test for positive definiteness.
    Certify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Eigenpairs checked against every inclusion set; exit 3 on a miss.
    Check {
        file: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = Tilde::Corrected)]
        tilde: Tilde,
        #[arg(long)]
        json: bool,
    },
    /// Rewrite a tensor file in dense or coords form.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: OutFormat,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
pub struct SolverArgs {
    /// Defaults to exact2 for dimension 2 and sshopm otherwise.
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long, default_value_t = 20)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Residual bound for reported power-iteration pairs.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuasiDef {
    Paper,
    Theorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetName {
    Gersh,
    Brauer,
    DoubleBBar,
    QuasiDoubleBBar,
    Upsilon,
    All,
}

impl SetName {
    fn key(self) -> Option<&'static str> {
        match self {
            SetName::Gersh => Some("gersh"),
            SetName::Brauer => Some("brauer"),
            SetName::DoubleBBar => Some("double-b-bar"),
            SetName::QuasiDoubleBBar => Some("quasi-double-b-bar"),
            SetName::Upsilon => Some("upsilon"),
            SetName::All => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Tilde {
    Literal,
    Corrected,
}

impl From<Tilde> for TildeMode {
    fn from(t: Tilde) -> Self {
        match t {
            Tilde::Literal => TildeMode::Literal,
            Tilde::Corrected => TildeMode::Corrected,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact2,
    Sshopm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Dense,
    Coords,
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    match cmd {
        Command::Profile { file, json } => profile(&file::load(file)?, *json, out),
        Command::Classify {
            file,
            quasi_def,
            json,
        } => {
            let rule = match quasi_def {
                QuasiDef::Paper => QuasiRule::Definition,
                QuasiDef::Theorem => QuasiRule::Theorem,
            };
            classify(&file::load(file)?, rule, *json, out)
        }
        Command::Intervals {
            file,
            set,
            hull,
            tilde,
            json,
        } => intervals(
            &file::load(file)?,
            *set,
            *hull,
            (*tilde).into(),
            *json,
            out,
            err,
        ),
        Command::Eigs { file, solver, json } => {
            let t = file::load(file)?;
            let pairs = solve(&t, solver)?;
            if *json {
                write_json(out, &pairs)?;
            } else if pairs.is_empty() {
                writeln!(out, "no real H-eigenpairs found")?;
            } else {
                for p in &pairs {
                    writeln!(out, "{}", pair_line(p))?;
                }
            }
            Ok(0)
        }
        Command::Certify { file, json } => {
            let c = certify_positive_definite(&file::load(file)?);
            if *json {
                write_json(out, &c)?;
            } else {
                let verdict = match c.verdict {
                    PdVerdict::Certified => "certified positive definite",
                    PdVerdict::Unknown => "unknown",
                    PdVerdict::NotApplicable => "not applicable",
                };
                writeln!(out, "verdict: {verdict}")?;
                writeln!(out, "reason: {}", c.reason)?;
                if let Some(b) = c.eigen_lower_bound {
                    writeln!(out, "eigenvalue lower bound: {}", format_sig(b, DIGITS))?;
                }
            }
            Ok(0)
        }
        Command::Check {
            file,
            solver,
            tilde,
            json,
        } => check(&file::load(file)?, solver, (*tilde).into(), *json, out),
        Command::Convert { file, to, output } => {
            let t = file::load(file)?;
            let f = match to {
                OutFormat::Dense => TensorFile::dense_from(&t),
                OutFormat::Coords => TensorFile::coords_from(&t),
            };
            match output {
                Some(path) => file::save(path, &f)?,
                None => write_json(out, &f)?,
            }
            Ok(0)
        }
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn g(x: f64) -> String {
    format_sig(x, DIGITS)
}

fn profile(t: &Tensor, json: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut rows = row_profile(t);
    let mut pairs = all_pair_profiles(t);
    rows.iter_mut().for_each(|r| r.index += 1);
    pairs.iter_mut().for_each(|p| {
        p.i += 1;
        p.j += 1;
    });
    if json {
        #[derive(Serialize)]
        struct Out<T, U> {
            rows: T,
            pairs: U,
        }
        write_json(out, &Out { rows, pairs })?;
        return Ok(0);
    }
    writeln!(
        out,
        "{:>4} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "i", "a_ii", "r", "beta", "gamma", "Delta", "Theta", "alpha"
    )?;
    for r in &rows {
        writeln!(
            out,
            "{:>4} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
            r.index,
            g(r.diag),
            g(r.r),
            g(r.beta),
            g(r.gamma),
            g(r.delta),
            g(r.theta),
            g(r.alpha)
        )?;
    }
    if !pairs.is_empty() {
        writeln!(out)?;
        writeln!(
            out,
            "{:>4} {:>4} {:>12} {:>12} {:>12} {:>12}",
            "i", "j", "a_ji..i", "r_j^i", "Delta_j^i", "Theta_j^i"
        )?;
        for p in &pairs {
            writeln!(
                out,
                "{:>4} {:>4} {:>12} {:>12} {:>12} {:>12}",
                p.i,
                p.j,
                g(p.a_ji),
                g(p.r_j_i),
                g(p.delta_j_i),
                g(p.theta_j_i)
            )?;
        }
    }
    Ok(0)
}

/// A failed inequality with 1-based indices. Asymmetry witnesses name the
/// two entries that differ instead of a row or pair.
#[derive(Debug, Serialize)]
struct WitnessOut {
    rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    entry: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    permuted: Option<Vec<usize>>,
    lhs: f64,
    relation: String,
    rhs: f64,
}

#[derive(Debug, Serialize)]
struct ClassRow {
    class: &'static str,
    holds: bool,
    witness: Option<WitnessOut>,
}

fn multi_index(t: &Tensor, lin: usize) -> Vec<usize> {
    let mut idx = vec![0; t.order()];
    t.decode_into(lin, &mut idx);
    idx.into_iter().map(|v| v + 1).collect()
}

fn witness_out(t: &Tensor, v: &Verdict) -> Option<WitnessOut> {
    let w = v.witness.as_ref()?;
    let linear = w.rule.starts_with("symmetric");
    Some(WitnessOut {
        rule: w.rule.clone(),
        i: (!linear).then_some(w.i + 1),
        j: if linear { None } else { w.j.map(|j| j + 1) },
        entry: linear.then(|| multi_index(t, w.i)),
        permuted: if linear {
            w.j.map(|j| multi_index(t, j))
        } else {
            None
        },
        lhs: w.lhs,
        relation: w.relation.clone(),
        rhs: w.rhs,
    })
}

fn witness_text(w: &WitnessOut) -> String {
    let at = match (&w.entry, &w.permuted, w.i, w.j) {
        (Some(e), Some(p), _, _) => format!("a{e:?} vs a{p:?}"),
        (_, _, Some(i), Some(j)) => format!("i={i}, j={j}"),
        (_, _, Some(i), None) => format!("i={i}"),
        _ => String::new(),
    };
    format!(
        "{} ({at}): {} {} {} fails",
        w.rule,
        g(w.lhs),
        w.relation,
        g(w.rhs)
    )
}

fn classify(t: &Tensor, rule: QuasiRule, json: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let report = classify_all(t, ClassifyOptions { quasi_rule: rule })?;
    let rows: Vec<ClassRow> = report
        .rows()
        .into_iter()
        .map(|(class, v)| ClassRow {
            class,
            holds: v.holds,
            witness: witness_out(t, v),
        })
        .collect();
    if json {
        write_json(out, &rows)?;
        return Ok(0);
    }
    for r in &rows {
        let mark = if r.holds { "✓" } else { "✗" };
        match &r.witness {
            Some(w) => writeln!(out, "{:<20} {mark}  {}", r.class, witness_text(w))?,
            None => writeln!(out, "{:<20} {mark}", r.class)?,
        }
    }
    Ok(0)
}

fn selected_sets(t: &Tensor, set: SetName, tilde: TildeMode) -> Vec<(&'static str, IntervalSet)> {
    let mut sets = all_sets(t, tilde);
    if let Some(key) = set.key() {
        sets.retain(|(name, _)| *name == key);
    }
    sets
}

fn render_set(s: &IntervalSet, hull: bool) -> String {
    if hull {
        match s.hull() {
            Some(h) => IntervalSet::from(h).display_with(DIGITS),
            None => IntervalSet::empty().display_with(DIGITS),
        }
    } else {
        s.display_with(DIGITS)
    }
}

fn intervals(
    t: &Tensor,
    set: SetName,
    hull: bool,
    tilde: TildeMode,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, CliError> {
    let sets = selected_sets(t, set, tilde);
    let uses_bar = sets.iter().any(|(n, _)| !matches!(*n, "gersh" | "brauer"));
    if uses_bar && !has_guarantee(t) {
        writeln!(
            err,
            "note: the B-bar sets are only guaranteed to contain H-eigenvalues of even-order symmetric tensors"
        )?;
    }
    if json {
        let map: serde_json::Map<String, serde_json::Value> = sets
            .iter()
            .map(|(name, s)| {
                let v = if hull {
                    serde_json::to_value(s.hull())
                } else {
                    serde_json::to_value(s)
                };
                v.map(|v| (name.to_string(), v))
            })
            .collect::<Result<_, _>>()?;
        write_json(out, &map)?;
        return Ok(0);
    }
    if sets.len() == 1 {
        writeln!(out, "{}", render_set(&sets[0].1, hull))?;
    } else {
        for (name, s) in &sets {
            writeln!(out, "{:<20} {}", name, render_set(s, hull))?;
        }
    }
    Ok(0)
}

fn solve(t: &Tensor, args: &SolverArgs) -> Result<Vec<HEigenpair>, CliError> {
    let method = args.method.unwrap_or(if t.dim() == 2 {
        Method::Exact2
    } else {
        Method::Sshopm
    });
    match method {
        Method::Exact2 => Ok(heig_exact_n2(t, &ExactOptions::default())?),
        Method::Sshopm => {
            if !(args.tol.is_finite() && args.tol > 0.0) {
                return Err(CliError::Input(format!(
                    "--tol must be positive (got {})",
                    args.tol
                )));
            }
            let opts = SshopmOptions {
                starts: args.starts,
                seed: args.seed,
                tol: args.tol,
                ..Default::default()
            };
            Ok(sshopm_both_ends(t, &opts)?)
        }
    }
}

fn pair_line(p: &HEigenpair) -> String {
    let x: Vec<String> = p.x.iter().map(|v| g(*v)).collect();
    format!(
        "lambda = {:<12} x = ({})  residual = {:.2e}",
        g(p.lambda),
        x.join(", "),
        p.residual
    )
}

fn check(
    t: &Tensor,
    solver: &SolverArgs,
    tilde: TildeMode,
    json: bool,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let pairs = solve(t, solver)?;
    let report = verify_containment(&pairs, &NamedSet::standard(t, tilde));
    if json {
        write_json(out, &report)?;
    } else {
        if !has_guarantee(t) {
            writeln!(
                out,
                "note: tensor is not even-order symmetric; misses are possible and not a defect"
            )?;
        }
        for row in &report.rows {
            let marks: Vec<String> = row
                .members
                .iter()
                .map(|(name, ok)| format!("{name} {}", if *ok { "✓" } else { "✗" }))
                .collect();
            writeln!(out, "lambda = {:<12} {}", g(row.lambda), marks.join("  "))?;
        }
        writeln!(
            out,
            "{} eigenvalue(s), {} violation(s)",
            report.rows.len(),
            report.violations
        )?;
    }
    Ok(if report.all_contained() {
        0
    } else {
        EXIT_VIOLATION
    })
}
