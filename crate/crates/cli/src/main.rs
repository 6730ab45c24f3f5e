//! `slfock`: build Fock representation matrices, verify relations and run
//! exclusion statistics from the command line.
//!
//! Exit codes: 0 success, 1 a verification instance failed, 2 usage error.

mod output;
mod parse;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use slfock::fockspace::DEFAULT_STATE_CAP;
use slfock::relations::{
    verify_cartan_weyl, verify_classical, verify_deformed_defining, verify_gl, verify_serre, verify_vacuum,
};
use slfock::statistics::{
    parse_boxes, partition_function, verify_ladder_with_form, EnergyLevels, HamiltonianForm, OrbitalConfig, Verdict,
};
use slfock::{
    BasisConvention, ClassicalQ, Deformation, ExactQ, FockBasis, FockOperators, GradedMatrix, NumericQ, RelationReport,
    Signature, Summary,
};

use output::Render;

#[derive(Parser)]
#[command(name = "slfock", version, about = "Fock representations of sl(n+1|m) and U_q[sl(n+1|m)]")]
struct Cli {
    /// Worker threads for relation checks (default: available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of W_p and the number of states per total particle number.
    Dim(DimArgs),
    /// Dump one operator matrix.
    Matrix(MatrixArgs),
    /// Run relation suites.
    Verify(VerifyArgs),
    /// Exclusion statistics.
    Stats {
        #[command(subcommand)]
        command: StatsCommand,
    },
}

#[derive(Subcommand)]
enum StatsCommand {
    /// Validate a box diagram such as "••◦|•◦||||" or "2b1f|1b".
    Config(ConfigArgs),
    /// Partition function over a range of β.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SigArgs {
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    m: usize,
    #[arg(long)]
    p: u32,
    /// Refuse to enumerate more than this many basis states.
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Generic q, Laurent polynomial entries.
    Exact,
    /// Numeric complex q given by --q.
    Numeric,
    /// q = 1, rational entries.
    Classical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    Orthonormal,
    Unnormalized,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Coord,
}

#[derive(Args)]
struct ModeArgs {
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// q for numeric mode: "7/10", "0.7", "0.5+0.75i".
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Default: unnormalized in exact and classical mode, orthonormal in numeric mode.
    #[arg(long, value_enum)]
    convention: Option<Convention>,
}

#[derive(Args)]
struct DimArgs {
    #[command(flatten)]
    sig: SigArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MatrixArgs {
    /// One of a+, a-, H, L, Lbar, E, e^, f^, h^.
    op: String,
    /// 1-based index (two 0-based indices for E).
    #[arg(required = true)]
    idx: Vec<usize>,
    #[command(flatten)]
    sig: SigArgs,
    #[command(flatten)]
    mode: ModeArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Suite {
    Deformed,
    CartanWeyl,
    Classical,
    Serre,
    Gl,
    Vacuum,
    Ladder,
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["suite", "all"])))]
struct VerifyArgs {
    #[command(flatten)]
    sig: SigArgs,
    #[command(flatten)]
    mode: ModeArgs,
    /// Suites to run; repeat or separate with commas.
    #[arg(long, value_enum, value_delimiter = ',')]
    suite: Vec<Suite>,
    /// Every suite that applies to the signature and mode.
    #[arg(long)]
    all: bool,
    /// Relative tolerance for numeric residuals.
    #[arg(long, default_value_t = slfock::relations::DEFAULT_TOLERANCE)]
    tol: f64,
    /// Orbital energies for the ladder suite, comma separated (default 1,2,…,n).
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConfigArgs {
    boxes: String,
    #[arg(long)]
    p: u32,
    /// Expected number of orbitals.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    sig: SigArgs,
    /// Orbital energies, comma separated (default 1,2,…,n).
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    /// start:stop:step, inclusive.
    #[arg(long)]
    beta: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Verification,
}

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Dim(a) => cmd_dim(a),
        Command::Matrix(a) => cmd_matrix(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Stats { command: StatsCommand::Config(a) } => cmd_config(a),
        Command::Stats { command: StatsCommand::Sweep(a) } => cmd_sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

impl SigArgs {
    fn signature(&self) -> Result<Signature, Failure> {
        Ok(Signature::new(self.n, self.m, self.p)?)
    }

    fn basis(&self) -> Result<FockBasis, Failure> {
        Ok(FockBasis::enumerate_with_cap(self.signature()?, self.cap)?)
    }
}

fn cmd_dim(a: DimArgs) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Doc {
        dimension: u128,
        histogram: BTreeMap<usize, usize>,
        signature: Signature,
    }
    let basis = a.sig.basis()?;
    let doc = Doc {
        dimension: basis.dim() as u128,
        histogram: basis.count_by_total().into_iter().enumerate().collect(),
        signature: *basis.signature(),
    };
    output::emit(&(serde_json::to_string(&doc)? + "\n"), a.out.as_deref())?;
    Ok(())
}

/// Operators in the scalar ring chosen on the command line.
enum AnyOps {
    Exact(FockOperators<ExactQ>),
    Classical(FockOperators<ClassicalQ>),
    Numeric(FockOperators<NumericQ>),
}

macro_rules! with_ops {
    ($any:expr, $ops:ident => $body:expr) => {
        match $any {
            AnyOps::Exact($ops) => $body,
            AnyOps::Classical($ops) => $body,
            AnyOps::Numeric($ops) => $body,
        }
    };
}

#[derive(Clone, Copy)]
enum Resolved {
    Exact,
    Classical,
    Numeric(Complex64, BasisConvention),
}

impl ModeArgs {
    fn resolve(&self) -> Result<Resolved, Failure> {
        let convention = self.convention.map(|c| match c {
            Convention::Orthonormal => BasisConvention::Orthonormal,
            Convention::Unnormalized => BasisConvention::Unnormalized,
        });
        match self.mode {
            Mode::Exact | Mode::Classical => {
                if convention == Some(BasisConvention::Orthonormal) {
                    return usage("the orthonormal convention needs square roots; use --mode numeric");
                }
                if let Some(q) = &self.q {
                    let value = parse::complex(q)?;
                    if self.mode == Mode::Exact || value != Complex64::new(1.0, 0.0) {
                        return usage("--q is only used in numeric mode");
                    }
                }
                Ok(if self.mode == Mode::Exact { Resolved::Exact } else { Resolved::Classical })
            }
            Mode::Numeric => {
                let Some(q) = &self.q else {
                    return usage("numeric mode needs --q");
                };
                let q = parse::complex(q)?;
                if q != Complex64::new(1.0, 0.0) {
                    NumericQ::new(q)?;
                }
                Ok(Resolved::Numeric(q, convention.unwrap_or(BasisConvention::Orthonormal)))
            }
        }
    }
}

fn numeric_q(q: Complex64) -> Result<NumericQ, Failure> {
    if q == Complex64::new(1.0, 0.0) {
        Ok(NumericQ::classical())
    } else {
        Ok(NumericQ::new(q)?)
    }
}

fn build_ops(basis: FockBasis, mode: Resolved) -> Result<AnyOps, Failure> {
    let unnorm = BasisConvention::Unnormalized;
    Ok(match mode {
        Resolved::Exact => AnyOps::Exact(FockOperators::new(basis, ExactQ, unnorm)?),
        Resolved::Classical => AnyOps::Classical(FockOperators::new(basis, ClassicalQ, unnorm)?),
        Resolved::Numeric(q, conv) => AnyOps::Numeric(FockOperators::new(basis, numeric_q(q)?, conv)?),
    })
}

fn cmd_matrix(a: MatrixArgs) -> Result<(), Failure> {
    let mode = a.mode.resolve()?;
    let ops = build_ops(a.sig.basis()?, mode)?;
    let name = format!("{} {}", a.op, a.idx.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    let text = with_ops!(&ops, ops => {
        let m = select_operator(ops, &a.op, &a.idx)?;
        render_matrix(&name, ops.signature(), &m, a.format)?
    });
    output::emit(&text, a.out.as_deref())?;
    Ok(())
}

fn select_operator<D: Deformation>(
    ops: &FockOperators<D>,
    op: &str,
    idx: &[usize],
) -> Result<GradedMatrix<D::Scalar>, Failure> {
    let rank = ops.rank();
    let one = |idx: &[usize]| -> Result<usize, Failure> {
        match idx {
            [i] if (1..=rank).contains(i) => Ok(*i),
            [i] => usage(format!("index {i} out of range 1..={rank}")),
            _ => usage(format!("{op} takes one index")),
        }
    };
    Ok(match op {
        "a+" => ops.a_plus(one(idx)?).clone(),
        "a-" => ops.a_minus(one(idx)?).clone(),
        "H" => ops.h(one(idx)?).clone(),
        "L" => ops.l(one(idx)?).clone(),
        "Lbar" => ops.lbar(one(idx)?).clone(),
        "E" => match idx {
            [i, j] => ops.gl_generator(*i, *j)?,
            _ => return usage("E takes two indices"),
        },
        "e^" | "e" => ops.chevalley()?.e(one(idx)?).clone(),
        "f^" | "f" => ops.chevalley()?.f(one(idx)?).clone(),
        "h^" | "h" => ops.chevalley()?.h(one(idx)?).clone(),
        other => return usage(format!("unknown operator {other:?}")),
    })
}

fn render_matrix<S: Render>(
    name: &str,
    sig: &Signature,
    m: &GradedMatrix<S>,
    format: Format,
) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => output::matrix_json(name, sig, m),
        Format::Coord => output::matrix_coord(m),
        Format::Csv => output::matrix_csv(m)?,
    })
}

#[derive(Serialize)]
struct SuiteDoc {
    suite: Suite,
    /// Value of q the suite was evaluated at.
    q: String,
    summary: Summary,
    reports: Vec<RelationReport>,
}

#[derive(Serialize)]
struct NotRun {
    suite: Suite,
    reason: String,
}

#[derive(Serialize)]
struct VerifyDoc {
    signature: Signature,
    mode: &'static str,
    convention: &'static str,
    tolerance: f64,
    summary: Summary,
    suites: Vec<SuiteDoc>,
    not_run: Vec<NotRun>,
}

fn q_label(mode: Resolved) -> String {
    match mode {
        Resolved::Exact => "generic".into(),
        Resolved::Classical => "1".into(),
        Resolved::Numeric(q, _) if q.im == 0.0 => output::float(q.re),
        Resolved::Numeric(q, _) => format!("{}{:+.16e}i", output::float(q.re), q.im),
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    if a.tol.is_nan() || a.tol <= 0.0 {
        return usage("--tol must be positive");
    }
    if a.format != Format::Json {
        return usage("verify writes JSON only");
    }
    let mode = a.mode.resolve()?;
    let sig = a.sig.signature()?;
    let generic = match mode {
        Resolved::Exact => true,
        Resolved::Classical => false,
        Resolved::Numeric(q, _) => q != Complex64::new(1.0, 0.0),
    };
    // The suites that live at q = 1 use the same scalar family at q = 1.
    let classical_mode = match mode {
        Resolved::Exact | Resolved::Classical => Resolved::Classical,
        Resolved::Numeric(_, conv) => Resolved::Numeric(Complex64::new(1.0, 0.0), conv),
    };

    let requested: Vec<Suite> = if a.all {
        Suite::value_variants().to_vec()
    } else {
        let mut s = a.suite.clone();
        s.sort();
        s.dedup();
        s
    };
    let mut suites = Vec::new();
    let mut not_run = Vec::new();
    let mut main_ops = None;
    let mut q1_ops = None;
    for suite in requested {
        let why_not = match suite {
            Suite::Deformed | Suite::CartanWeyl if !generic => Some("needs generic q".to_string()),
            Suite::Ladder if sig.n != sig.m => Some(format!("needs n = m (got n = {}, m = {})", sig.n, sig.m)),
            _ => None,
        };
        if let Some(reason) = why_not {
            if !a.all {
                return usage(format!("suite {} {reason}", suite_name(suite)));
            }
            not_run.push(NotRun { suite, reason });
            continue;
        }
        let (q, reports) = match suite {
            Suite::Deformed | Suite::CartanWeyl | Suite::Vacuum => {
                if main_ops.is_none() {
                    main_ops = Some(build_ops(a.sig.basis()?, mode)?);
                }
                let ops = main_ops.as_ref().unwrap();
                let reports = with_ops!(ops, ops => match suite {
                    Suite::Deformed => verify_deformed_defining(ops, a.tol)?,
                    Suite::CartanWeyl => verify_cartan_weyl(ops, a.tol)?,
                    _ => verify_vacuum(ops, a.tol)?,
                });
                (q_label(mode), reports)
            }
            Suite::Classical | Suite::Serre | Suite::Gl => {
                if q1_ops.is_none() {
                    q1_ops = Some(build_ops(a.sig.basis()?, classical_mode)?);
                }
                let ops = q1_ops.as_ref().unwrap();
                let reports = with_ops!(ops, ops => match suite {
                    Suite::Classical => verify_classical(ops, a.tol)?,
                    Suite::Serre => verify_serre(ops, a.tol)?,
                    _ => verify_gl(ops, a.tol)?,
                });
                ("1".to_string(), reports)
            }
            Suite::Ladder => {
                let levels = match &a.eps {
                    Some(s) => parse::levels(s)?,
                    None => (1..=sig.n as i64).map(|k| BigRational::from_integer(k.into())).collect(),
                };
                if levels.len() != sig.n {
                    return usage(format!("--eps needs {} values, got {}", sig.n, levels.len()));
                }
                let reports = verify_ladder_with_form(sig, &levels, HamiltonianForm::Bracket)?;
                ("1".to_string(), reports)
            }
        };
        suites.push(SuiteDoc { suite, q, summary: Summary::of(&reports), reports });
    }

    let all_reports: Vec<&RelationReport> = suites.iter().flat_map(|s| &s.reports).collect();
    let summary = Summary::of(&all_reports.into_iter().cloned().collect::<Vec<_>>());
    let doc = VerifyDoc {
        signature: sig,
        mode: match a.mode.mode {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
            Mode::Classical => "classical",
        },
        convention: match mode {
            Resolved::Numeric(_, BasisConvention::Orthonormal) => "orthonormal",
            _ => "unnormalized",
        },
        tolerance: a.tol,
        summary,
        suites,
        not_run,
    };
    output::emit(&(serde_json::to_string(&doc)? + "\n"), a.out.as_deref())?;
    eprintln!("passed={} failed={} skipped={}", summary.passed, summary.failed, summary.skipped);
    if summary.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn suite_name(s: Suite) -> String {
    s.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn cmd_config(a: ConfigArgs) -> Result<(), Failure> {
    #[derive(Serialize)]
    struct Addition {
        orbital: usize,
        b: bool,
        f: bool,
    }
    #[derive(Serialize)]
    struct Doc {
        p: u32,
        orbitals: Vec<slfock::statistics::Orbital>,
        total: u64,
        verdict: Verdict,
        allowed_additions: Option<Vec<Addition>>,
    }
    let counts = parse_boxes(&a.boxes)?;
    if let Some(n) = a.n {
        if counts.len() != n {
            return usage(format!("expected {n} orbitals, got {}", counts.len()));
        }
    }
    let config = OrbitalConfig::new(a.p, &counts)?;
    let verdict = config.validate();
    let allowed_additions = config
        .allowed_additions()
        .ok()
        .map(|v| v.into_iter().enumerate().map(|(k, (b, f))| Addition { orbital: k + 1, b, f }).collect());
    let doc = Doc { p: a.p, total: config.total(), orbitals: config.orbitals, verdict, allowed_additions };
    output::emit(&(serde_json::to_string(&doc)? + "\n"), a.out.as_deref())?;
    Ok(())
}

fn cmd_sweep(a: SweepArgs) -> Result<(), Failure> {
    let basis = a.sig.basis()?;
    let n = a.sig.n;
    let eps: Vec<f64> = match &a.eps {
        Some(s) => parse::levels(s)?.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
        None => (1..=n).map(|k| k as f64).collect(),
    };
    let levels = EnergyLevels::new(eps)?;
    let betas = parse::beta_range(&a.beta)?;
    let rows =
        betas.into_iter().map(|beta| partition_function(&basis, &levels, beta)).collect::<Result<Vec<_>, _>>()?;
    let text = match a.format {
        Format::Csv => output::sweep_csv(&rows, n)?,
        Format::Json => output::sweep_json(&rows),
        Format::Coord => return usage("sweep writes csv or json"),
    };
    output::emit(&text, a.out.as_deref())?;
    Ok(())
}
