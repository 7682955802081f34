//! Command-line front end.
//!
//! Catalog keys (`build`):
//!
//! ```text
//! sts:dim2:i:alpha=A  sts:dim2:ii:eps=E  sts:sts8
//! sts:jordan:{h3_k,h3_kk,h3_quat,h3_oct,k_jordq:m=M,jordq:m=M,ground,zero}
//! sts:classical:{symplectic:n=N,special:m=M,orthogonal:m=M,g2}
//! ots:classical:{orthogonal:n=N,unitarian:m=M,symplectic:m=M}
//! ots:dmu:lambda=L[:det=D][:null]  ots:dalpha:alpha=A  ots:gtype:alpha=A
//! ots:ftype  ots:jordan:{h3_k,h3_kk,h3_quat,h3_oct}
//! ```
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 malformed file, 4 invalid file contents, 5 unsupported format tag.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use triplesys::catalog::CatalogKey;
use triplesys::exactla::Fp;
use triplesys::functors::{build_g_null, build_g_ots, build_g_sts, build_gtilde_ots, build_gtilde_sts};
use triplesys::galg::{AlgebraKind, Verdict};
use triplesys::persist::{self, Artifact, PersistError};
use triplesys::report::acceptance_report;
use triplesys::search::{search_null_sts, SearchParams};
use triplesys::triples::is_simple_triple;

#[derive(Parser)]
#[command(name = "triplesys", version, about = "Symplectic and orthogonal triple systems over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalog entry and write it as tsc-1 JSON, or one of its algebras as gsc-1
    Build {
        key: String,
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// g_sts, gtilde_sts, g_ots, gtilde_ots or g_null; default writes the triple system
        #[arg(long)]
        functor: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check triple-system axioms or (super) Jacobi identities of a file
    Verify {
        file: PathBuf,
        #[arg(long)]
        axioms: bool,
        #[arg(long)]
        jacobi: bool,
    },
    /// Structure analysis of a file
    Analyze(AnalyzeArgs),
    /// Dimension and simplicity table over the catalog
    Report {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sample symmetric tensors looking for simple null symplectic triple systems
    SearchNullSts {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long)]
    center: bool,
    #[arg(long)]
    derived: bool,
    #[arg(long)]
    simple: bool,
    #[arg(long)]
    killing: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failure with a specific exit code.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Exit(2, msg.into()).into()
}

fn import_error(e: PersistError) -> anyhow::Error {
    let code = match e {
        PersistError::Malformed(_) => 3,
        PersistError::Invalid(_) => 4,
        PersistError::UnsupportedFormat(_) => 5,
    };
    Exit(code, format!("error[{}]: {e}", e.code())).into()
}

fn field(p: u32) -> Result<Fp> {
    Fp::new(p).map_err(|e| usage(format!("--p {p}: {e}")))
}

/// Stdout write that stops quietly when the reader hangs up.
fn say(bytes: &[u8]) -> Result<()> {
    match std::io::stdout().write_all(bytes) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e).context("writing stdout"),
        _ => Ok(()),
    }
}

macro_rules! sayln {
    ($($arg:tt)*) => {
        say(format!("{}\n", format_args!($($arg)*)).as_bytes())?
    };
}

fn emit(out: Option<&PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => say(bytes),
    }
}

fn read(path: &PathBuf) -> Result<Artifact> {
    let bytes = std::fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    persist::import(&bytes).map_err(import_error)
}

fn build(key: &str, p: u32, functor: Option<&str>, out: Option<&PathBuf>) -> Result<bool> {
    let f = field(p)?;
    let key = CatalogKey::parse(key).map_err(|e| usage(e.to_string()))?;
    let t = key.build(f).map_err(|e| Exit(1, e.to_string()))?;
    let bytes = match functor {
        None => persist::export_triple(&t),
        Some(name) => {
            let g = match name {
                "g_sts" => build_g_sts(&t),
                "gtilde_sts" => build_gtilde_sts(&t),
                "g_ots" => build_g_ots(&t),
                "gtilde_ots" => build_gtilde_ots(&t),
                "g_null" => build_g_null(&t),
                other => return Err(usage(format!("unknown functor {other}"))),
            }
            .map_err(|e| Exit(1, e.to_string()))?;
            persist::export_algebra(&g)
        }
    };
    emit(out, &bytes)?;
    eprintln!("built {key} over GF({p}): dim {}, kind {}", t.dim(), t.kind().name());
    Ok(true)
}

fn verify(file: &PathBuf, axioms: bool, jacobi: bool) -> Result<bool> {
    let (axioms, jacobi) = if axioms || jacobi { (axioms, jacobi) } else { (true, true) };
    match read(file)? {
        Artifact::Triple(t) => {
            if !axioms {
                return Err(usage("--jacobi needs an algebra file"));
            }
            let report = t.check_axioms();
            sayln!("{}", report.summary());
            Ok(report.passed())
        }
        Artifact::Algebra(g) => {
            if !jacobi {
                return Err(usage("--axioms needs a triple-system file"));
            }
            let report = match g.kind() {
                AlgebraKind::Lie => g.check_jacobi(),
                AlgebraKind::Superlie => g.check_super_jacobi(),
            }
            .map_err(|e| Exit(1, e.to_string()))?;
            sayln!("{} triples checked, {} violations", report.triples_checked, report.violations.len());
            for v in report.violations.iter().take(10) {
                sayln!("violation at {v:?}");
            }
            Ok(report.passed())
        }
    }
}

fn analyze(args: &AnalyzeArgs) -> Result<bool> {
    let all = !(args.center || args.derived || args.simple || args.killing);
    match read(&args.file)? {
        Artifact::Triple(t) => {
            sayln!("kind {}, dim {}, inder dim {}", t.kind().name(), t.dim(), t.inder().map_err(|e| Exit(1, e.to_string()))?.dim());
            if all || args.simple {
                let s = is_simple_triple(&t);
                sayln!("simple: {}", s.simple);
                if let Some(ideal) = &s.ideal {
                    sayln!("ideal of dim {}", ideal.dim());
                }
            }
            Ok(true)
        }
        Artifact::Algebra(g) => {
            sayln!("dim {} = {} + {}", g.dim(), g.dim_even(), g.dim_odd());
            if all || args.center {
                sayln!("center dim {}", g.center().dim());
            }
            if all || args.derived {
                sayln!("derived dim {}", g.derived_subalgebra().dim());
            }
            if all || args.killing {
                let (_, rank) = g.killing_form();
                sayln!("killing form rank {rank}");
            }
            if all || args.simple {
                let cert = g.is_simple(args.seed);
                let verdict = match cert.verdict {
                    Verdict::Simple => "simple",
                    Verdict::NotSimple => "not_simple",
                    Verdict::ProbablySimple => "probably_simple",
                };
                sayln!("verdict: {verdict} ({})", cert.reason);
                if let Some(w) = &cert.witness {
                    sayln!("witness ideal of dim {}", w.dim());
                }
            }
            Ok(true)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.command {
        Command::Build { key, p, functor, out } => build(key, *p, functor.as_deref(), out.as_ref()),
        Command::Verify { file, axioms, jacobi } => verify(file, *axioms, *jacobi),
        Command::Analyze(args) => analyze(args),
        Command::Report { p, seed } => {
            field(*p)?;
            let report = acceptance_report(*p, *seed).map_err(|e| Exit(1, e.to_string()))?;
            say(report.table().as_bytes())?;
            sayln!("{}", serde_json::to_string(&report)?);
            Ok(report.passed)
        }
        Command::SearchNullSts { dim, p, trials, seed } => {
            field(*p)?;
            if *dim == 0 {
                return Err(usage("--dim must be positive"));
            }
            let report = search_null_sts(SearchParams { dim: *dim, p: *p, trials: *trials, seed: *seed }).map_err(|e| Exit(1, e.to_string()))?;
            for s in &report.simple {
                eprintln!("simple null STS at trial {} (inder dim {})", s.trial, s.inder_dim);
            }
            if report.simple_above_dim2() {
                eprintln!("found a simple null STS of dimension {}", report.dim);
            }
            sayln!("{}", serde_json::to_string_pretty(&report)?);
            Ok(report.dxx_squared_zero != Some(false))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e:#}");
            match e.downcast_ref::<Exit>() {
                Some(Exit(code, _)) => ExitCode::from(*code),
                None => ExitCode::from(1),
            }
        }
    }
}
