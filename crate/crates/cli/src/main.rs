//! `psisum`: compute ψ(G), enumerate small groups and run the verification
//! suites from the command line.
//!
//! Exit status is 0 when everything checked holds, 1 when a claim fails
//! (reports are still printed) and 2 for usage or input errors.

mod render;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psisum::arith::is_prime;
use psisum::enumeration::{Catalog, EnumError, EnumerationConfig, DEFAULT_BOUND};
use psisum::group::{build_group, GroupError, GroupSpec};
use psisum::theorems::{proof_inequality_audit, ClaimId, SuiteParams, TheoremError, Verifier};
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "psisum", version, about = "Sum of element orders of finite groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Directory for persisted catalogs (`<dir>/catalog/n=<n>.json`).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    /// Largest order enumerated exhaustively.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_BOUND)]
    enum_bound: usize,
    /// Required with an `--enum-bound` above the default.
    #[arg(long, global = true)]
    allow_slow_enumeration: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ψ of one group, e.g. `Q8`, `C2xC2xC3`, `SD(5,4,2)`, `table:<path>`.
    Psi { spec: String },
    /// Distinct ψ values among the groups of order `n`, largest first.
    Spectrum { n: usize },
    /// Every group of order `n` up to isomorphism.
    Catalog { n: usize },
    /// Run verification suites; `all` runs every claim.
    Verify(VerifyArgs),
    /// Exact audit of the inequalities used in the proofs.
    Audit(AuditArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Claim ids (`AAI`, `Thm1`..`Thm5`, `Prop6`, `Prop7`, `Lem2.1(1)`..`Lem2.1(7)`,
    /// `Prop6-audit`, `f-monotone`, `Mqr`) or `all`.
    #[arg(required = true, value_name = "CLAIM")]
    claims: Vec<String>,
    /// Restrict the prime-specific suites to these least primes.
    #[arg(long = "q", value_delimiter = ',', value_name = "PRIME")]
    primes: Vec<u64>,
    /// Largest cofactor k in the (C_q x C_q) x C_k families.
    #[arg(long)]
    kmax: Option<u64>,
    /// Orders above the enumeration bound checked against the construction families.
    #[arg(long)]
    family_max: Option<u64>,
    /// Bound on m*k for the semidirect product suites.
    #[arg(long)]
    mk_max: Option<u64>,
    /// Bound on n for the cyclic closed-form checks.
    #[arg(long)]
    cyclic_max: Option<u64>,
    /// Bound on n for the cyclic lower bound.
    #[arg(long)]
    lower_bound_max: Option<u64>,
    #[command(flatten)]
    audit: AuditArgs,
}

#[derive(Args, Debug)]
struct AuditArgs {
    /// Largest prime q in the audit.
    #[arg(long, default_value_t = 97)]
    q_max: u64,
    /// Largest prime p in the audit.
    #[arg(long, default_value_t = 199)]
    p_max: u64,
    /// Largest exponent s in the audit.
    #[arg(long, default_value_t = 6)]
    s_max: u32,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Theorem(#[from] TheoremError),
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
    #[error("writing csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("writing json: {0}")]
    Json(#[from] serde_json::Error),
}

/// What a successful run found.
enum Status {
    Ok,
    ClaimFailed,
}

fn enumeration_config(cli: &Cli) -> Result<EnumerationConfig, CliError> {
    if cli.enum_bound > DEFAULT_BOUND && !cli.allow_slow_enumeration {
        return Err(CliError::Usage(format!(
            "--enum-bound {} is above the default {DEFAULT_BOUND}; pass --allow-slow-enumeration to confirm",
            cli.enum_bound
        )));
    }
    Ok(EnumerationConfig::new(cli.enum_bound)?)
}

fn parse_claims(raw: &[String]) -> Result<Vec<ClaimId>, CliError> {
    let mut claims = Vec::new();
    for text in raw {
        if text.eq_ignore_ascii_case("all") {
            claims.extend(ClaimId::all());
        } else {
            claims.push(text.parse()?);
        }
    }
    claims.sort();
    claims.dedup();
    Ok(claims)
}

fn suite_params(args: &VerifyArgs) -> Result<SuiteParams, CliError> {
    if let Some(&q) = args.primes.iter().find(|&&q| !is_prime(q)) {
        return Err(CliError::Usage(format!("--q {q} is not a prime")));
    }
    if args.kmax == Some(0) {
        return Err(CliError::Usage("--kmax must be at least 1".into()));
    }
    let defaults = SuiteParams::default();
    Ok(SuiteParams {
        primes: (!args.primes.is_empty()).then(|| args.primes.clone()),
        kmax: args.kmax,
        family_max: args.family_max.unwrap_or(defaults.family_max),
        mk_max: args.mk_max.unwrap_or(defaults.mk_max),
        cyclic_max: args.cyclic_max.unwrap_or(defaults.cyclic_max),
        lower_bound_max: args.lower_bound_max.unwrap_or(defaults.lower_bound_max),
        q_max: args.audit.q_max,
        p_max: args.audit.p_max,
        s_max: args.audit.s_max,
        ..defaults
    })
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    let config = enumeration_config(cli)?;
    match &cli.command {
        Command::Psi { spec } => {
            let spec: GroupSpec = spec.parse()?;
            let group = build_group(&spec)?;
            render::psi(out, cli.format, &spec, &group)?;
            Ok(Status::Ok)
        }
        Command::Spectrum { n } => {
            let catalog = Catalog::load_or_generate(*n, &config, cli.cache_dir.as_deref())?;
            render::spectrum(out, cli.format, &catalog)?;
            Ok(Status::Ok)
        }
        Command::Catalog { n } => {
            let catalog = Catalog::load_or_generate(*n, &config, cli.cache_dir.as_deref())?;
            render::catalog(out, cli.format, &catalog)?;
            Ok(Status::Ok)
        }
        Command::Verify(args) => {
            let claims = parse_claims(&args.claims)?;
            let params = suite_params(args)?;
            let verifier = Verifier::new(config, cli.cache_dir.clone(), params);
            let reports = verifier.verify_all(&claims)?;
            render::reports(out, cli.format, &reports)?;
            Ok(if reports.iter().all(|r| r.passed()) { Status::Ok } else { Status::ClaimFailed })
        }
        Command::Audit(args) => {
            let report = proof_inequality_audit(args.q_max, args.p_max, args.s_max);
            let passed = report.passed();
            render::reports(out, cli.format, &[report])?;
            Ok(if passed { Status::Ok } else { Status::ClaimFailed })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // clap exits with status 2 on usage errors.
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = run(&cli, &mut out).and_then(|status| {
        out.flush()?;
        Ok(status)
    });
    match result {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::ClaimFailed) => ExitCode::from(1),
        Err(e) => {
            log::debug!("{e:?}");
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
