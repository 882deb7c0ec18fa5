//! Command-line front end: verification runs, scans, sieve and dimension
//! reports, with JSON/CSV/text output and an incremental per-`d` cache.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::matrixint::fnv64;
use crate::origami::{make_staircase, orbit};
use crate::quaternion::QElem;
use crate::verifier::{
    admissible_range, density_profile, dimension_report, error_verdict, verify, Conclusion, Scope,
    Verdict, VerifyOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_EXCLUDED: i32 = 2;
pub const EXIT_CONDITION_FAILED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum ScopeArg {
    #[value(name = "proof-min")]
    ProofMin,
    Exhaustive,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::ProofMin => Scope::ProofMin,
            ScopeArg::Exhaustive => Scope::Exhaustive,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CommonOpts {
    /// Condition-(4) coverage: the blocks the irreducibility proof consumes,
    /// or every off-diagonal pair.
    #[arg(long, value_enum, default_value = "proof-min", env = "SOSTAR_SCOPE")]
    pub scope: ScopeArg,
    /// Worker count; 1 runs fully sequentially.
    #[arg(long, default_value_t = 1, env = "SOSTAR_JOBS")]
    pub jobs: usize,
    #[arg(long, value_enum, default_value = "text", env = "SOSTAR_FORMAT")]
    pub format: Format,
    /// Directory for per-d verdict caching.
    #[arg(long, env = "SOSTAR_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Write N and the pairing blocks as plain-text integer grids.
    #[arg(long, value_name = "DIR")]
    pub dump_matrices: Option<PathBuf>,
    /// Write traced cores of the first two sheared models as TSV/SVG.
    #[arg(long, value_name = "DIR")]
    pub dump_trajectories: Option<PathBuf>,
    /// Seed for the determinant-certificate prime sampling.
    #[arg(long, default_value_t = 0x5eed_0001, env = "SOSTAR_PRIME_SEED")]
    pub prime_seed: u64,
}

impl CommonOpts {
    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            scope: self.scope.into(),
            jobs: self.jobs.max(1),
            prime_seed: self.prime_seed,
            dump_matrices: self.dump_matrices.clone(),
            dump_trajectories: self.dump_trajectories.clone(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sostar",
    about = "Exact certification of quaternionic monodromy conditions on square-tiled covers",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify the conditions for a single d ≡ 3 (mod 8).
    Verify {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Certify every admissible d in a range, with incremental caching.
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sieve statistics: middle-binomial counts and admissible density.
    Density {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Lie-algebra dimension comparisons for one d.
    Dims {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Orbit of the d-square staircase under T and S.
    Orbit {
        #[arg(long)]
        d: u64,
        /// Also print each orbit vertex as cycle-notation permutation pairs.
        #[arg(long)]
        dump: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn cache_path(dir: &Path, d: u64, scope: Scope) -> PathBuf {
    let key = fnv64(
        crate::CONVENTION_FINGERPRINT
            .bytes()
            .chain(crate::TOOL_VERSION.bytes())
            .map(|b| b as i64),
    );
    dir.join(format!("{key:016x}"))
        .join(format!("d{d}-{scope}.json"))
}

fn cache_read(dir: &Path, d: u64, scope: Scope) -> Option<Verdict> {
    let path = cache_path(dir, d, scope);
    let text = fs::read_to_string(path).ok()?;
    serde_json::from_str(&text).ok()
}

fn cache_write(dir: &Path, verdict: &Verdict) -> std::io::Result<()> {
    let path = cache_path(dir, verdict.d, verdict.scope);
    fs::create_dir_all(path.parent().unwrap())?;
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_string_pretty(verdict).unwrap())?;
    fs::rename(tmp, path)
}

fn status_char(s: crate::verifier::ConditionStatus) -> &'static str {
    use crate::verifier::ConditionStatus::*;
    match s {
        Pass => "pass",
        Fail => "FAIL",
        Skipped => "skipped",
        Error => "ERROR",
    }
}

fn verdict_text(v: &Verdict) -> String {
    let mut out = String::new();
    writeln!(out, "d = {}  scope = {}", v.d, v.scope).unwrap();
    match &v.witness {
        None => writeln!(out, "  sieve: d in D").unwrap(),
        Some(w) => writeln!(
            out,
            "  sieve: d not in D  (2d = {} = C({}, {}))",
            w.binomial,
            w.p + 1,
            w.r
        )
        .unwrap(),
    }
    let rows = [
        ("eight equal cylinders per direction", &v.c1),
        ("deck-equivariant core families", &v.c2),
        ("hatted cores form a basis (det N != 0)", &v.c3),
        ("pairing blocks nonsingular", &v.c4),
        ("twist composites span (quartic identity)", &v.c5),
    ];
    for (ix, (label, report)) in rows.iter().enumerate() {
        writeln!(
            out,
            "  ({}) {:<42} {}  [{} ms]",
            ix + 1,
            label,
            status_char(report.status),
            report.millis
        )
        .unwrap();
    }
    writeln!(out, "  conclusion: {}", conclusion_phrase(v)).unwrap();
    out
}

fn conclusion_phrase(v: &Verdict) -> String {
    match v.conclusion {
        Conclusion::Certified => format!(
            "CERTIFIED — conditions certified; SO*({}) follows for d = {}",
            2 * v.d,
            v.d
        ),
        Conclusion::ExcludedNotInD => format!(
            "EXCLUDED_NOT_IN_D — conditions hold but d = {} fails the sieve",
            v.d
        ),
        Conclusion::ConditionFailed => "CONDITION_FAILED".to_string(),
        Conclusion::Error => "ERROR".to_string(),
    }
}

fn verdict_csv_row(v: &Verdict) -> String {
    let witness = v
        .witness
        .as_ref()
        .map(|w| format!("C({};{})={}", w.p + 1, w.r, w.binomial))
        .unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{}",
        v.d,
        v.in_d,
        witness,
        status_char(v.c1.status),
        status_char(v.c2.status),
        status_char(v.c3.status),
        status_char(v.c4.status),
        status_char(v.c5.status),
        v.conclusion
    )
}

pub const CSV_HEADER: &str = "d,in_D,witness,c1,c2,c3,c4,c5,conclusion";

fn emit_verdict(v: &Verdict, format: Format) {
    match format {
        Format::Text => print!("{}", verdict_text(v)),
        Format::Json => println!("{}", serde_json::to_string_pretty(v).unwrap()),
        Format::Csv => {
            println!("{}", CSV_HEADER);
            println!("{}", verdict_csv_row(v));
        }
    }
}

fn verdict_exit_code(v: &Verdict) -> i32 {
    match v.conclusion {
        Conclusion::Certified => EXIT_OK,
        Conclusion::ExcludedNotInD => EXIT_EXCLUDED,
        Conclusion::ConditionFailed => EXIT_CONDITION_FAILED,
        Conclusion::Error => EXIT_ERROR,
    }
}

fn verify_cached(d: u64, common: &CommonOpts) -> Verdict {
    let scope: Scope = common.scope.into();
    if let Some(dir) = &common.cache_dir {
        if let Some(hit) = cache_read(dir, d, scope) {
            return hit;
        }
    }
    let verdict = match verify(d, &common.verify_options()) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: d = {}: {}", d, e);
            error_verdict(d, scope)
        }
    };
    if let Some(dir) = &common.cache_dir {
        if let Err(e) = cache_write(dir, &verdict) {
            eprintln!("warning: cache write failed: {}", e);
        }
    }
    verdict
}

#[cfg(feature = "parallel")]
fn init_pool(jobs: usize) {
    if jobs > 1 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn init_pool(_jobs: usize) {}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { d, common } => {
            if d % 8 != 3 || d < 11 {
                eprintln!(
                    "usage error: verify requires d ≡ 3 (mod 8) and d ≥ 11, got {}",
                    d
                );
                return EXIT_USAGE;
            }
            init_pool(common.jobs);
            let verdict = verify_cached(d, &common);
            emit_verdict(&verdict, common.format);
            verdict_exit_code(&verdict)
        }
        Command::Scan { from, to, common } => {
            if from > to {
                eprintln!("usage error: --from must not exceed --to");
                return EXIT_USAGE;
            }
            init_pool(common.jobs);
            let ds = admissible_range(from, to);
            let mut verdicts = Vec::with_capacity(ds.len());
            if common.format == Format::Csv {
                println!("{}", CSV_HEADER);
            }
            for d in ds {
                let verdict = verify_cached(d, &common);
                match common.format {
                    Format::Text => {
                        println!("d = {:>4}  {}", verdict.d, conclusion_phrase(&verdict))
                    }
                    Format::Json => println!("{}", serde_json::to_string(&verdict).unwrap()),
                    Format::Csv => println!("{}", verdict_csv_row(&verdict)),
                }
                verdicts.push(verdict);
            }
            if common.format == Format::Text {
                print!("{}", scan_summary(&verdicts));
            }
            if verdicts.iter().any(|v| v.conclusion == Conclusion::Error) {
                EXIT_ERROR
            } else {
                EXIT_OK
            }
        }
        Command::Density { n, common } => {
            if n < 8 {
                eprintln!("usage error: --n must be at least 8");
                return EXIT_USAGE;
            }
            let profile = density_profile(n);
            match common.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&profile).unwrap()),
                Format::Csv => {
                    println!("n,b_count,p2,p4,bound,bound_ok,admissible_count,admissible_density");
                    println!(
                        "{},{},{},{},{},{},{},{:.6}",
                        profile.n,
                        profile.b_count,
                        profile.p2,
                        profile.p4,
                        profile.bound,
                        profile.bound_ok,
                        profile.admissible_count,
                        profile.admissible_density
                    );
                }
                Format::Text => {
                    println!("n = {}", profile.n);
                    println!("middle binomial values ≤ n: {}", profile.b_count);
                    println!(
                        "count bound p4(p4-1) + 2(p2-1) = {} (p2 = {}, p4 = {}): {}",
                        profile.bound,
                        profile.p2,
                        profile.p4,
                        if profile.bound_ok {
                            "holds"
                        } else {
                            "VIOLATED"
                        }
                    );
                    println!(
                        "admissible d ≤ n: {} (density {:.6}, target 1/8)",
                        profile.admissible_count, profile.admissible_density
                    );
                }
            }
            EXIT_OK
        }
        Command::Dims { d, common } => {
            if d < 3 {
                eprintln!("usage error: --d must be at least 3");
                return EXIT_USAGE;
            }
            let report = dimension_report(d);
            match common.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Csv => {
                    println!(
                        "d,so_star_dim,su_dim,su_strict,witness_p,witness_r,exterior_dim,reversal"
                    );
                    if report.witnesses.is_empty() {
                        println!(
                            "{},{},{},{},,,,",
                            report.d, report.so_star_dim, report.su_dim, report.su_strict
                        );
                    }
                    for w in &report.witnesses {
                        println!(
                            "{},{},{},{},{},{},{},{}",
                            report.d,
                            report.so_star_dim,
                            report.su_dim,
                            report.su_strict,
                            w.p,
                            w.r,
                            w.exterior_dim,
                            w.reversal
                        );
                    }
                }
                Format::Text => {
                    println!(
                        "dim so*(2d) = {}  <  dim su(p,q) = {}  (strict: {})",
                        report.so_star_dim, report.su_dim, report.su_strict
                    );
                    if report.witnesses.is_empty() {
                        println!("no exterior-power coincidence: 2d is not a middle binomial");
                    }
                    for w in &report.witnesses {
                        println!(
                            "witness 2d = C({}, {}): dim Λ^{} su({},1) = {} {} {} = dim so*(2d){}",
                            w.p + 1,
                            w.r,
                            w.r,
                            w.p,
                            w.exterior_dim,
                            if w.reversal { "≤" } else { ">" },
                            report.so_star_dim,
                            if w.reversal { "  [reversal]" } else { "" }
                        );
                    }
                }
            }
            EXIT_OK
        }
        Command::Orbit { d, dump, common } => {
            let Ok(staircase) = make_staircase(d) else {
                eprintln!("usage error: --d must be odd and at least 3");
                return EXIT_USAGE;
            };
            let graph = orbit(&staircase);
            println!(
                "orbit of the {}-square staircase: {} vertices",
                d,
                graph.vertices.len()
            );
            for (ix, v) in graph.vertices.iter().enumerate() {
                if dump {
                    println!("  vertex {}: {}", ix, v.dump());
                } else {
                    println!("  vertex {}: {} squares", ix, v.n());
                }
            }
            for (a, letter, b) in &graph.edges {
                println!("  {} --{}--> {}", a, letter, b);
            }
            let _ = common;
            EXIT_OK
        }
    }
}

fn scan_summary(verdicts: &[Verdict]) -> String {
    let mut out = String::new();
    let certified: Vec<u64> = verdicts
        .iter()
        .filter(|v| v.conclusion == Conclusion::Certified)
        .map(|v| v.d)
        .collect();
    let excluded: Vec<u64> = verdicts
        .iter()
        .filter(|v| v.conclusion == Conclusion::ExcludedNotInD)
        .map(|v| v.d)
        .collect();
    let failed: Vec<u64> = verdicts
        .iter()
        .filter(|v| {
            matches!(
                v.conclusion,
                Conclusion::ConditionFailed | Conclusion::Error
            )
        })
        .map(|v| v.d)
        .collect();
    writeln!(
        out,
        "summary: {} of {} admissible d certified",
        certified.len(),
        verdicts.len()
    )
    .unwrap();
    if !excluded.is_empty() {
        let list: Vec<String> = excluded.iter().map(u64::to_string).collect();
        writeln!(
            out,
            "certified except possibly d = {} (sieve exclusions)",
            list.join(", ")
        )
        .unwrap();
    }
    if !failed.is_empty() {
        let list: Vec<String> = failed.iter().map(u64::to_string).collect();
        writeln!(out, "failures/errors at d = {}", list.join(", ")).unwrap();
    }
    out
}

/// Exposed for tests: deck elements listed the way `--dump-trajectories`
/// names its files.
pub fn core_file_stem(r: u64, gix: usize) -> String {
    format!("core_r{}_g{}", r, QElem::ALL[gix])
}
