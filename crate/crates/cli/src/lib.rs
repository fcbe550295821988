//! Argument parsing and command dispatch for the `macsym` binary.

pub mod cache;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use macsym::coeffring::RationalFunction;
use macsym::geometry::{self, CometSpec, GeometryError, TwistSpec};
use macsym::hashtag::{self, CCoefficientQuery, HashtagError};
use macsym::hlvkernel::{self, KernelError, Specialization};
use macsym::macdonald::MacdonaldError;
use macsym::partitions::Partition;
use macsym::symfunc::{parse_symfunc, Basis, SymError, SymFunc};
use macsym::verify::{run_suite, Suite};

#[derive(Debug, Parser)]
#[command(name = "macsym", version, about = "Exact modified Macdonald polynomials, # products and HLV kernels")]
pub struct Cli {
    /// Directory holding cached Macdonald tables.
    #[arg(long, global = true, env = "MACDONALD_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest degree any command may touch.
    #[arg(long, global = true, default_value_t = 8)]
    pub max_n: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Modified Macdonald polynomials in the Schur basis.
    Macdonald {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_partition)]
        show: Option<Partition>,
    },
    /// Modified Kostka matrix, or its inverse.
    Kostka {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        inverse: bool,
    },
    /// Structure coefficient of the # product.
    Ccoef {
        /// Semicolon-separated factors, e.g. "[2,2];[2,1,1]".
        #[arg(long, value_parser = parse_factors)]
        factors: Factors,
        #[arg(long, value_parser = parse_partition)]
        target: Partition,
    },
    /// q,t-Catalan number ⟨e_n, ∇^m e_n⟩.
    Catalan {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Applies ∇ to e_n, h_n, p_n, s_n or a symmetric function in text form.
    Nabla {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "e")]
        on: String,
    },
    /// Degree-n HLV kernel in the Schur basis.
    Kernel(KernelArgs),
    /// (Twisted) Poincaré polynomial of a comet-shaped variety.
    Poincare {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        twist: Option<PathBuf>,
    },
    /// c^{1ⁿ}_{μν}(0, t) through the trace formula.
    Ctrace(PairArgs),
    /// Mixed Hodge right-hand side for c^{1ⁿ}_{μν}(q, t).
    MixedHodge(PairArgs),
    /// Runs the self-check suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub genus: usize,
    #[arg(long, default_value_t = 1)]
    pub points: usize,
    #[arg(long, value_enum)]
    pub specialize: Option<SpecArg>,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, value_parser = parse_partition)]
    pub mu: Partition,
    #[arg(long, value_parser = parse_partition)]
    pub nu: Partition,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SpecArg {
    Poincare,
    MixedHodge,
    Q1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    All,
    Macdonald,
    Hashtag,
    Kernel,
    Geometry,
}

#[derive(Debug, Clone)]
pub struct Factors(pub Vec<Partition>);

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_factors(s: &str) -> Result<Factors, String> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(|p| parse_partition(p.trim())).collect::<Result<_, _>>().map(Factors)
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input that the argument parser could not catch; exit code 2.
    Usage(String),
    /// A failed computation, tagged with the error type name; exit code 1.
    Compute { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute { .. } => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Compute { kind, message } => write!(f, "{kind}: {message}"),
        }
    }
}

macro_rules! compute_error {
    ($($ty:ty => $kind:literal),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Compute { kind: $kind, message: e.to_string() }
            }
        })*
    };
}

compute_error!(
    MacdonaldError => "MacdonaldError",
    HashtagError => "HashtagError",
    KernelError => "KernelError",
    GeometryError => "GeometryError",
    SymError => "SymError",
    std::io::Error => "IoError",
    serde_json::Error => "JsonError",
);

struct Ctx<'a> {
    cache_dir: Option<&'a Path>,
    json: bool,
    max_n: usize,
}

impl Ctx<'_> {
    fn degree(&self, n: usize) -> Result<usize, CliError> {
        if n == 0 || n > self.max_n {
            return Err(CliError::Usage(format!("degree {n} is outside 1..={}", self.max_n)));
        }
        Ok(n)
    }

    /// Loads or builds every table up to degree n through the disk cache.
    fn tables(&self, n: usize) -> Result<(), CliError> {
        for d in 1..=n {
            cache::obtain_table(self.cache_dir, d)?;
        }
        Ok(())
    }
}

type Sf = SymFunc<RationalFunction>;

fn schur_json(f: &Sf) -> Result<Value, CliError> {
    Ok(serde_json::to_value(f.to_json(Basis::Schur)?)?)
}

fn emit(out: &mut dyn Write, ctx: &Ctx, text: &str, value: Value) -> Result<(), CliError> {
    if ctx.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn nabla_input(n: usize, on: &str) -> Result<Sf, CliError> {
    let row = Partition::row(n);
    Ok(match on {
        "e" => Sf::e(&row),
        "h" => Sf::h(&row),
        "p" => Sf::p(&row),
        "s" => Sf::s(&row),
        text => parse_symfunc(text).map_err(|e| CliError::Usage(e.to_string()))?,
    })
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let ctx = Ctx { cache_dir: cli.cache_dir.as_deref(), json: cli.json, max_n: cli.max_n };
    match &cli.command {
        Command::Macdonald { n, show } => {
            let n = ctx.degree(*n)?;
            ctx.tables(n)?;
            let tab = cache::obtain_table(ctx.cache_dir, n)?;
            let shown: Vec<Partition> = match show {
                Some(l) if l.size() != n => return Err(CliError::Usage(format!("{l} is not a partition of {n}"))),
                Some(l) => vec![l.clone()],
                None => tab.partitions.clone(),
            };
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for lam in &shown {
                let h = tab.h_tilde(lam)?;
                lines.push(format!("H~{lam} = {}", h.to_text(Basis::Schur)?));
                items.push(json!({ "partition": lam, "schur": schur_json(h)? }));
            }
            emit(out, &ctx, &lines.join("\n"), json!({ "n": n, "polynomials": items }))
        }
        Command::Kostka { n, inverse } => {
            let n = ctx.degree(*n)?;
            ctx.tables(n)?;
            let tab = cache::obtain_table(ctx.cache_dir, n)?;
            let (name, m) = if *inverse { ("L~", &tab.kostka_inv) } else { ("K~", &tab.kostka) };
            let mut lines = Vec::new();
            for (i, a) in tab.partitions.iter().enumerate() {
                for (j, b) in tab.partitions.iter().enumerate() {
                    lines.push(format!("{name}{a}{b} = {}", m[i][j]));
                }
            }
            let matrix: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
            emit(out, &ctx, &lines.join("\n"), json!({ "n": n, "inverse": inverse, "partitions": tab.partitions, "matrix": matrix }))
        }
        Command::Ccoef { factors, target } => {
            let n = ctx.degree(target.size())?;
            let query = CCoefficientQuery::new(factors.0.clone(), target.clone())?;
            ctx.tables(n)?;
            let v = hashtag::ccoef(&query)?;
            emit(out, &ctx, &v.to_string(), json!({ "factors": factors.0, "target": target, "value": v.to_string() }))
        }
        Command::Catalan { n, m } => {
            let n = ctx.degree(*n)?;
            ctx.tables(n)?;
            let v = hashtag::qt_catalan(n, *m)?;
            emit(out, &ctx, &v.to_string(), json!({ "n": n, "m": m, "value": v.to_string() }))
        }
        Command::Nabla { n, on } => {
            let n = ctx.degree(*n)?;
            let f = nabla_input(n, on)?;
            ctx.tables(n)?;
            let g = hashtag::nabla(&f)?;
            emit(out, &ctx, &g.to_text(Basis::Schur)?, json!({ "input": schur_json(&f)?, "result": schur_json(&g)? }))
        }
        Command::Kernel(args) => kernel(&ctx, args, out),
        Command::Poincare { spec, twist } => {
            let spec: CometSpec = read_json(spec)?;
            spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            let n = ctx.degree(spec.n)?;
            ctx.tables(n)?;
            let d = geometry::total_dim(&spec)?;
            let v = match twist {
                Some(path) => geometry::twisted_poincare(&spec, &read_json::<TwistSpec>(path)?)?,
                None => geometry::poincare(&spec)?,
            };
            emit(out, &ctx, &v.to_string(), json!({ "dimension": d, "value": v.to_string() }))
        }
        Command::Ctrace(p) | Command::MixedHodge(p) => {
            if p.mu.size() != p.nu.size() {
                return Err(CliError::Usage(format!("{} and {} have different sizes", p.mu, p.nu)));
            }
            let n = ctx.degree(p.mu.size())?;
            ctx.tables(n)?;
            let v = if matches!(cli.command, Command::Ctrace(_)) {
                geometry::c_from_trace(&p.mu, &p.nu)?
            } else {
                geometry::mixed_hodge_rhs(&p.mu, &p.nu)?
            };
            emit(out, &ctx, &v.to_string(), json!({ "mu": p.mu, "nu": p.nu, "value": v.to_string() }))
        }
        Command::Verify { suite } => verify(&ctx, *suite, out),
    }
}

fn kernel(ctx: &Ctx, args: &KernelArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let n = ctx.degree(args.n)?;
    if args.points == 0 {
        return Err(CliError::Usage("at least one point is required".into()));
    }
    ctx.tables(n)?;
    let h = hlvkernel::hlv(n, args.genus, args.points)?;
    let header = json!({ "n": n, "genus": args.genus, "points": args.points });
    match args.specialize {
        Some(s) => {
            let spec = match s {
                SpecArg::Poincare => Specialization::Poincare,
                SpecArg::MixedHodge => Specialization::MixedHodge,
                SpecArg::Q1 => Specialization::QEqualsOne,
            };
            let f = hlvkernel::specialize_named(&h, spec)?;
            emit(out, ctx, &f.to_text(Basis::Schur)?, json!({ "kernel": header, "schur": schur_json(&f)? }))
        }
        None => {
            // Coefficients live in ℚ(Z,W)[ε]; JSON keeps both components.
            let terms: Vec<Value> = h
                .convert_all(Basis::Schur)?
                .into_iter()
                .rev()
                .map(|(k, c)| json!({ "partitions": k, "base": c.base.to_string(), "epsilon": c.odd.to_string() }))
                .collect();
            emit(out, ctx, &h.to_text(Basis::Schur)?, json!({ "kernel": header, "schur": terms }))
        }
    }
}

fn verify(ctx: &Ctx, suite: SuiteArg, out: &mut dyn Write) -> Result<(), CliError> {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Macdonald => Suite::Macdonald,
        SuiteArg::Hashtag => Suite::Hashtag,
        SuiteArg::Kernel => Suite::Kernel,
        SuiteArg::Geometry => Suite::Geometry,
    };
    ctx.tables(ctx.max_n.min(6))?;
    let reports = run_suite(suite, ctx.max_n);
    if ctx.json {
        let v: Vec<Value> = reports
            .iter()
            .map(|r| {
                let checks: Vec<Value> =
                    r.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
                json!({ "criterion": r.id, "title": r.title, "passed": r.passed(), "report_only": r.report_only,
                        "seconds": r.elapsed.as_secs_f64(), "checks": checks })
            })
            .collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
    } else {
        for r in &reports {
            write!(out, "{r}")?;
        }
    }
    let failed: Vec<usize> = reports.iter().filter(|r| !r.acceptable()).map(|r| r.id).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Compute { kind: "VerificationFailed", message: format!("criteria {failed:?} failed") })
    }
}
