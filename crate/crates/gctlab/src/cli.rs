//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use gctlab_core::gct::{
    classify, find_separating_rho_n2, nonzero_mod_case, verify_certificate, SeparabilityCertificate,
};
use gctlab_core::kron::{kronecker, Method};
use gctlab_core::plethysm::PLETHYSM_CEILING;
use gctlab_core::{Error, Partition};

use crate::cache::{default_cache_dir, CachedCharacters};
use crate::output::{CandidateOutput, CertificateOutput, KronOutput, ObstructOutput, OutputRecord, VerifyOutput};
use crate::suites;

#[derive(Debug, Parser)]
#[command(name = "gctlab", version, about = "Exact Kronecker, plethysm and obstruction computations")]
pub struct Cli {
    /// Cache directory; overrides GCTLAB_CACHE_DIR.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Largest n for which whole character tables are built and cached.
    #[arg(long, global = true, default_value_t = 20)]
    pub max_n: usize,

    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Print the JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kronecker coefficient c(α, β, γ).
    Kron(KronArgs),
    /// Separability certificate for (λ, μ).
    Separate(SeparateArgs),
    /// Strong-obstruction candidate sweep over λ ⊢ m·d.
    Obstruct(ObstructArgs),
    /// Run self-verification suites.
    Verify(VerifyArgs),
}

fn partition_arg(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct KronArgs {
    #[arg(long, value_parser = partition_arg, allow_hyphen_values = true)]
    pub alpha: Partition,
    #[arg(long, value_parser = partition_arg, allow_hyphen_values = true)]
    pub beta: Partition,
    #[arg(long, value_parser = partition_arg, allow_hyphen_values = true)]
    pub gamma: Partition,
    /// auto, oracle, two-row or four-row.
    #[arg(long, default_value = "auto", value_parser = |s: &str| s.parse::<Method>().map_err(|e| e.to_string()))]
    pub method: Method,
    /// Also run the oracle and fail on disagreement.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct SeparateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = partition_arg, allow_hyphen_values = true)]
    pub lambda: Partition,
    #[arg(long, value_parser = partition_arg, allow_hyphen_values = true, default_value = "")]
    pub mu: Partition,
    /// Route |λ| ≡ |μ| ≢ 0 (mod n) inputs to the nonzero residue construction.
    #[arg(long)]
    pub allow_nonzero_mod: bool,
}

#[derive(Debug, Args)]
pub struct ObstructArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub d: usize,
    /// Include partitions that fail a filter.
    #[arg(long)]
    pub emit_all: bool,
    /// Print the table as CSV.
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// rw, four-row, parity, psl2, plethysm, branching, symmetry or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
}

/// Command failure with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// What a command produced: the record, any alternate text form, and
/// whether it counts as a failure (exit 1) despite producing output.
pub struct Outcome {
    pub record: OutputRecord,
    pub csv: Option<String>,
    pub failed: bool,
}

fn partition_json(p: &Partition) -> serde_json::Value {
    json!(p.parts())
}

fn cmd_kron(src: &CachedCharacters, a: &KronArgs) -> Result<Outcome, CliError> {
    let r = kronecker(src, &a.alpha, &a.beta, &a.gamma, a.method, a.verify)?;
    let out = KronOutput::from(&r);
    let inputs = json!({
        "alpha": partition_json(&a.alpha),
        "beta": partition_json(&a.beta),
        "gamma": partition_json(&a.gamma),
        "method": method_name(a.method),
        "verify": a.verify,
    });
    let record = OutputRecord::new("kron", inputs, serde_json::to_value(&out).expect("serializes"), &out.method);
    Ok(Outcome { record, csv: None, failed: false })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Auto => "auto",
        Method::Oracle => "oracle",
        Method::TwoRow => "two-row",
        Method::FourRow => "four-row",
    }
}

fn is_even_row(p: &Partition) -> bool {
    p.height() <= 1 && p.size().is_multiple_of(2)
}

fn cmd_separate(src: &CachedCharacters, a: &SeparateArgs) -> Result<Outcome, CliError> {
    let (l, m, n) = (&a.lambda, &a.mu, a.n);
    if n < 2 {
        return Err(CliError::Usage("--n must be at least 2".into()));
    }
    if l.is_empty() && m.is_empty() {
        return Err(CliError::Usage("(λ, μ) must be nontrivial".into()));
    }
    let residue = l.size() % n;
    let cert: SeparabilityCertificate = if n == 2 && is_even_row(l) && is_even_row(m) {
        find_separating_rho_n2(src, l, m)?
    } else if a.allow_nonzero_mod && residue != 0 && m.size() % n == residue {
        nonzero_mod_case(src, l, m, n)?
    } else if n == 2 {
        return Err(CliError::Usage(format!(
            "n = 2 certificates need row shapes of even size, got ({l}) and ({m}); \
             --allow-nonzero-mod accepts |λ| ≡ |μ| ≢ 0 (mod n)"
        )));
    } else {
        return Err(CliError::Usage(format!(
            "for n = {n} only |λ| ≡ |μ| ≢ 0 (mod n) is supported, with --allow-nonzero-mod"
        )));
    };
    verify_certificate(src, &cert)?;
    let inputs = json!({
        "n": n,
        "lambda": partition_json(l),
        "mu": partition_json(m),
        "allow_nonzero_mod": a.allow_nonzero_mod,
    });
    let result = serde_json::to_value(CertificateOutput::from(&cert)).expect("serializes");
    Ok(Outcome {
        record: OutputRecord::new("separate", inputs, result, "oracle"),
        csv: None,
        failed: false,
    })
}

fn cmd_obstruct(src: &CachedCharacters, a: &ObstructArgs) -> Result<Outcome, CliError> {
    let (n, m, d) = (a.n, a.m, a.d);
    if n == 0 || m == 0 || d == 0 {
        return Err(CliError::Usage("--n, --m and --d must be positive".into()));
    }
    let ceiling = PLETHYSM_CEILING.min(src.max_n());
    let size = m.checked_mul(d).ok_or_else(|| CliError::Usage("m·d overflows".into()))?;
    if size > ceiling {
        return Err(CliError::Usage(format!(
            "m·d = {size} exceeds the ceiling {ceiling} (min of {PLETHYSM_CEILING} and --max-n)"
        )));
    }
    let ambient = src.plethysm(d, m)?;
    let shapes = Partition::enumerate(size, None);
    let rows = shapes
        .par_iter()
        .map(|lam| classify(src, lam, n, m, d, &ambient))
        .collect::<Result<Vec<_>, _>>()?;
    let candidates = rows.iter().filter(|r| r.is_candidate).count();
    let rows: Vec<CandidateOutput> = rows
        .iter()
        .filter(|r| a.emit_all || r.is_candidate)
        .map(CandidateOutput::from)
        .collect();
    let out = ObstructOutput {
        n,
        m,
        d,
        stabilizer: "GL_m x GL_m (connected component)".into(),
        rows,
        candidates,
    };
    let inputs = json!({"n": n, "m": m, "d": d, "emit_all": a.emit_all});
    let csv = a.csv.then(|| out.to_csv());
    let result = serde_json::to_value(&out).expect("serializes");
    Ok(Outcome {
        record: OutputRecord::new("obstruct", inputs, result, "auto"),
        csv,
        failed: false,
    })
}

fn cmd_verify(src: &CachedCharacters, a: &VerifyArgs) -> Result<Outcome, CliError> {
    let reports = suites::run_named(&a.suite, src).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown suite {:?}; expected one of {} or all",
            a.suite,
            suites::SUITES.join(", ")
        ))
    })?;
    let passed = reports.iter().all(|r| r.passed);
    let out = VerifyOutput { passed, suites: reports };
    Ok(Outcome {
        record: OutputRecord::new(
            "verify",
            json!({"suite": a.suite}),
            serde_json::to_value(&out).expect("serializes"),
            "oracle",
        ),
        csv: None,
        failed: !passed,
    })
}

/// Parses `args`, runs the command and writes to the given sinks.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    let start = Instant::now();
    let src = CachedCharacters::new(cli.cache_dir.clone().or_else(default_cache_dir), cli.max_n);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start worker pool: {e}");
            return 2;
        }
    };
    let outcome = pool.install(|| match &cli.command {
        Command::Kron(a) => cmd_kron(&src, a),
        Command::Separate(a) => cmd_separate(&src, a),
        Command::Obstruct(a) => cmd_obstruct(&src, a),
        Command::Verify(a) => cmd_verify(&src, a),
    });
    match outcome {
        Ok(mut o) => {
            o.record.cache_hits = src.cache_hits();
            o.record.elapsed_ms = start.elapsed().as_millis() as u64;
            let text = match (&o.csv, cli.json) {
                (Some(csv), _) => csv.clone(),
                (None, true) => format!("{}\n", o.record.to_json()),
                (None, false) => o.record.to_human(),
            };
            let _ = stdout.write_all(text.as_bytes());
            if o.failed {
                let _ = writeln!(stderr, "error: verification failed");
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main_entry() -> ExitCode {
    let code = run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
