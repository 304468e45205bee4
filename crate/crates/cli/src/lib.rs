//! Argument definitions and command implementations for the `batchgeo`
//! binary. Commands write their report to a caller-supplied writer and
//! return a [`CliError`] whose [`CliError::exit_code`] the binary exits with.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use batchgeo::bounds::{bound_report, figure1_csv, random_redundancy_target};
use batchgeo::code::{
    build_explicit, build_random, BatchCode, GreedyOptions, Holds, RandomOptions, VerifyMode,
    VerifyOptions, DEFAULT_VERIFY_BUDGET,
};
use batchgeo::field::Field;
use batchgeo::geometry::{
    construction1, max_nice_collection, NiceCollection, Niceness, DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_SEARCH_BUDGET,
};
use batchgeo::io::{read_code, read_collection, write_assignment, write_code, write_collection};
use batchgeo::multiset::{multiset_count, MultisetRequest};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable consulted when `--budget` is absent.
pub const BUDGET_ENV: &str = "BATCHGEO_BUDGET";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Precondition(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl From<batchgeo::Error> for CliError {
    fn from(e: batchgeo::Error) -> Self {
        match e {
            batchgeo::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            batchgeo::Error::GreedyExhausted { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Precondition(e.to_string())
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "batchgeo",
    version,
    about = "Batch codes over F2 from finite geometry"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code and write it in BATCHCODE v1 format.
    #[command(subcommand)]
    Construct(Construct),
    /// Check the batch property over every multiset of size k.
    Verify(VerifyArgs),
    /// Answer one multiset request with disjoint recovering sets.
    Serve(ServeArgs),
    /// Niceness certification and exhaustive search.
    #[command(subcommand)]
    Nice(Nice),
    /// Redundancy bounds as CSV.
    #[command(subcommand)]
    Bounds(Bounds),
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Cosets of an L-nice subspace collection in GF(q)^(2ℓ+1).
    Explicit(ExplicitArgs),
    /// Random subsets of random lines of the affine plane AG(2, q).
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct ExplicitArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    #[arg(long)]
    pub k: usize,
    /// Add the line through (1, 0, 0) as an extra member (ℓ = 1 only).
    #[arg(long)]
    pub include_zero_block: bool,
    /// Keep the claimed niceness level instead of enumerating cosets.
    #[arg(long)]
    pub no_certify: bool,
    #[arg(long, env = BUDGET_ENV)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Line probability; default min(1, 36 k^(3/2) ln(n) / sqrt(n)) with
    /// the natural logarithm.
    #[arg(long)]
    pub p1: Option<f64>,
    /// Point probability; default 1 / sqrt(8k).
    #[arg(long)]
    pub p2: Option<f64>,
    /// Accept k >= q/12 with a warning.
    #[arg(long)]
    pub allow_large_k: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Simple,
    ExhaustiveSmall,
}

impl From<ModeArg> for VerifyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Simple => VerifyMode::Simple,
            ModeArg::ExhaustiveSmall => VerifyMode::ExhaustiveSmall,
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Simple)]
    pub mode: ModeArg,
    /// Do not use the systematic position of a symbol as a recovering set.
    #[arg(long)]
    pub no_singleton: bool,
    #[arg(long, env = BUDGET_ENV)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long)]
    pub code: PathBuf,
    /// Comma-separated information indices, repeats allowed, e.g. "5,5,5".
    #[arg(long)]
    pub request: String,
    /// Skip parities whose support contains another requested symbol.
    #[arg(long)]
    pub avoid_requested: bool,
    #[arg(long)]
    pub allow_singleton: bool,
}

#[derive(Debug, Subcommand)]
pub enum Nice {
    /// Exact niceness level of a construction output or a NICE v1 file.
    Check(NiceCheckArgs),
    /// Largest L-nice collection, by exhaustive search.
    Search(NiceSearchArgs),
}

#[derive(Debug, Args)]
pub struct NiceCheckArgs {
    #[arg(long, required_unless_present = "collection")]
    pub q: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    #[arg(long)]
    pub zero_block: bool,
    /// Number of evaluation blocks; default (q - 1) / ℓ.
    #[arg(long)]
    pub m: Option<usize>,
    /// Read the collection from a NICE v1 file instead.
    #[arg(long, conflicts_with_all = ["q", "zero_block", "m"])]
    pub collection: Option<PathBuf>,
    #[arg(long, env = BUDGET_ENV)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct NiceSearchArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    #[arg(long = "level", short = 'L')]
    pub level: u32,
    #[arg(long, env = BUDGET_ENV)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Bounds {
    /// Bounds at one (n, k) as name,value,exact,valid rows.
    Report {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Segment endpoints of the (availability, redundancy) exponent plot.
    Figure,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Construct(Construct::Explicit(a)) => construct_explicit(a, out),
        Command::Construct(Construct::Random(a)) => construct_random(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Serve(a) => serve(a, out),
        Command::Nice(Nice::Check(a)) => nice_check(a, out),
        Command::Nice(Nice::Search(a)) => nice_search(a, out),
        Command::Bounds(Bounds::Report { n, k }) => {
            if *n == 0 || *k == 0 {
                return Err(CliError::Precondition("n and k must be positive".into()));
            }
            out.write_all(bound_report(*n, *k).to_csv().as_bytes())?;
            Ok(())
        }
        Command::Bounds(Bounds::Figure) => {
            out.write_all(figure1_csv().as_bytes())?;
            Ok(())
        }
    }
}

fn field(q: u64) -> CliResult<Arc<Field>> {
    Ok(Arc::new(Field::new(q)?))
}

fn load_code(path: &Path) -> CliResult<BatchCode> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Precondition(format!("{}: {e}", path.display())))?;
    Ok(read_code(&text)?)
}

fn save(path: Option<&PathBuf>, text: &str, out: &mut dyn Write) -> CliResult {
    if let Some(p) = path {
        fs::write(p, text).map_err(|e| CliError::Precondition(format!("{}: {e}", p.display())))?;
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(())
}

fn construct_explicit(a: &ExplicitArgs, out: &mut dyn Write) -> CliResult {
    let f = field(a.q)?;
    if a.ell == 0 || a.k == 0 {
        return Err(CliError::Precondition(
            "ell and k must be at least 1".into(),
        ));
    }
    let k_max = a.q as usize / (a.ell * a.ell);
    if a.k > k_max {
        return Err(CliError::Precondition(format!(
            "k = {} exceeds ⌊q/ℓ²⌋ = {k_max}",
            a.k
        )));
    }
    let full = construction1(f, a.ell, None, a.include_zero_block)?;
    let m = a.ell * a.k;
    if m > full.m() {
        return Err(CliError::Precondition(format!(
            "ℓ·k = {m} exceeds the {} members available",
            full.m()
        )));
    }
    let mut c = full.truncated(m)?;
    if !a.no_certify {
        c.certify(a.budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET))?;
    }
    let code = build_explicit(&c, true)?;

    let (q, ell) = (a.q, a.ell as u32);
    writeln!(out, "n = {} = q^{{2ℓ+1}} = {q}^{}", code.n(), 2 * ell + 1)?;
    writeln!(
        out,
        "r = {} = m·q^{{ℓ+1}} = {m}·{}",
        code.r(),
        q.pow(ell + 1)
    )?;
    writeln!(out, "N = {} = n + r", code.length())?;
    writeln!(out, "m = {m} = ℓ·k = {}·{}", a.ell, a.k)?;
    writeln!(out, "L* = {}", c.niceness())?;
    if let Some(floor) = code.claimed_availability() {
        writeln!(out, "k = {} (requested), ⌊m/L*⌋ = {floor}", a.k)?;
    }
    save(a.out.as_ref(), &write_code(&code), out)
}

fn construct_random(a: &RandomArgs, out: &mut dyn Write) -> CliResult {
    let f = field(a.q)?;
    let opts = RandomOptions {
        p1: a.p1,
        p2: a.p2,
        allow_large_k: a.allow_large_k,
    };
    let built = build_random(f, a.k, a.seed, opts)?;
    for w in &built.warnings {
        writeln!(out, "warning: {w}")?;
    }
    let code = &built.code;
    let (q, n) = (a.q as f64, code.n() as u64);
    writeln!(out, "n = {n} = q^2")?;
    writeln!(out, "r = {} (realized)", code.r())?;
    writeln!(out, "N = {} = n + r", code.length())?;
    writeln!(
        out,
        "p1 = {} p2 = {} seed = {}; p1·(q²+q) = {:.1}",
        built.p1,
        built.p2,
        a.seed,
        built.p1 * (q * q + q)
    )?;
    writeln!(
        out,
        "target 108·k^{{3/2}}·√n·ln n = {:.1}",
        random_redundancy_target(n, a.k as u64)
    )?;
    save(a.out.as_ref(), &write_code(code), out)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let code = load_code(&a.code)?;
    let opts = VerifyOptions {
        allow_singleton: !a.no_singleton,
        budget: a.budget.unwrap_or(DEFAULT_VERIFY_BUDGET),
    };
    let v = code.verify_batch(a.k, a.mode.into(), opts)?;
    let join = |w: &[usize]| w.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    match v.holds {
        Holds::True => {
            let total = multiset_count(code.n() as u64, a.k as u64).unwrap_or(0);
            writeln!(out, "holds = true")?;
            writeln!(
                out,
                "{} multisets verified = C(n+k-1, k) = C({}, {})",
                v.checked,
                code.n() + a.k - 1,
                a.k
            )?;
            debug_assert_eq!(u128::from(v.checked), total);
            Ok(())
        }
        Holds::False => {
            let w = v.witness.as_deref().map(join).unwrap_or_default();
            writeln!(out, "holds = false after {} multisets", v.checked)?;
            writeln!(out, "witness = {w}")?;
            Err(CliError::Verification(format!(
                "no disjoint recovering sets for {w}"
            )))
        }
        Holds::Inconclusive => {
            let w = v.witness.as_deref().map(join).unwrap_or_default();
            writeln!(out, "holds = inconclusive after {} multisets", v.checked)?;
            writeln!(out, "unresolved = {w}")?;
            Err(CliError::Verification(format!(
                "simple recovering sets do not serve {w}; try --mode exhaustive-small"
            )))
        }
    }
}

fn serve(a: &ServeArgs, out: &mut dyn Write) -> CliResult {
    let code = load_code(&a.code)?;
    let req: MultisetRequest = a
        .request
        .parse()
        .map_err(|e| CliError::Precondition(format!("bad request {:?}: {e}", a.request)))?;
    let opts = GreedyOptions {
        allow_singleton: a.allow_singleton,
        avoid_requested: a.avoid_requested,
    };
    match code.greedy_assign(&req, opts) {
        Ok(assignment) => {
            out.write_all(write_assignment(&assignment).as_bytes())?;
            Ok(())
        }
        Err(e @ batchgeo::Error::GreedyExhausted { .. }) => {
            writeln!(out, "failure: {e}")?;
            Err(e.into())
        }
        Err(e) => Err(e.into()),
    }
}

fn nice_check(a: &NiceCheckArgs, out: &mut dyn Write) -> CliResult {
    let mut c: NiceCollection = match (&a.collection, a.q) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Precondition(format!("{}: {e}", path.display())))?;
            read_collection(&text)?
        }
        (None, Some(q)) => construction1(field(q)?, a.ell, a.m, a.zero_block)?,
        (None, None) => return Err(CliError::Precondition("need --q or --collection".into())),
    };
    writeln!(
        out,
        "q = {} ell = {} m = {}",
        c.field().size(),
        c.ell(),
        c.m()
    )?;
    if !c.check_pairwise() {
        return Err(CliError::Precondition(
            "members do not intersect pairwise trivially".into(),
        ));
    }
    let claimed = c.niceness();
    let level = c.certify(a.budget.unwrap_or(DEFAULT_ENUMERATION_BUDGET))?;
    writeln!(out, "L* = {level}")?;
    if let Some(l) = claimed.level() {
        let rel = if level <= l { "≤" } else { ">" };
        writeln!(out, "claimed L = {l}; L* {rel} {l}")?;
    }
    save(a.out.as_ref(), &write_collection(&c), out)
}

fn nice_search(a: &NiceSearchArgs, out: &mut dyn Write) -> CliResult {
    let f = field(a.q)?;
    let (m, witness) =
        max_nice_collection(f, a.ell, a.level, a.budget.unwrap_or(DEFAULT_SEARCH_BUDGET))?;
    let bound = (a.level as u64 + 1) * a.q;
    let rel = if m as u64 <= bound { "≤" } else { ">" };
    writeln!(out, "m_max = {m} {rel} {bound} = (L+1)q")?;
    if let Niceness::BruteForce(l) = witness.niceness() {
        writeln!(out, "witness L* = {l}")?;
    }
    save(a.out.as_ref(), &write_collection(&witness), out)
}
