//! The `wfano` command-line tool.
//!
//! Subcommands: `decompose` (recover the head/cycle structure of a
//! weight system), `basis` (enumerate the degree-d monomials and compare
//! with the closed form), `certify` (build a head perturbation and
//! certify it klt and exceptional), `search` (enumerate structured
//! systems in bounds and emit one JSON record per line), and `reproduce`
//! (recompute bundled reference systems and compare against their pinned
//! outcomes).
//!
//! Exit codes: 0 success, 1 reproduce mismatch, 2 structural failure
//! (the weights do not decompose or the perturbation cannot be built),
//! 3 usage error, 4 convention discrepancy under `--mode strict`,
//! 5 output I/O failure.

use std::fs::File;
use std::io::{BufWriter, Write as _};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::core::{
    anticanonical_cycle_degree, is_ambient_well_formed, is_hypersurface_well_formed, Rat,
    WeightVector,
};
use crate::exceptional::{certify_exceptional, ExceptionalityCertificate, Mode, Verdict};
use crate::fixtures::{fixture, fixture_ids, verify_case};
use crate::newton::KltCertificate;
use crate::sections::{closed_form_basis, monomials_of_degree, MonomialBasis};
use crate::smoothness::{ke_estimate, make_perturbation, KeEstimate, Perturbation};
use crate::search::{run as run_search, SearchBounds};
use crate::structure::{classify_heads, decompose, HeadClassification, StructuredWeights};

const SCHEMA_VERSION: &str = "1";

const EXIT_OK: i32 = 0;
const EXIT_MISMATCH: i32 = 1;
const EXIT_STRUCTURAL: i32 = 2;
const EXIT_USAGE: i32 = 3;
const EXIT_DISCREPANCY: i32 = 4;
const EXIT_IO: i32 = 5;

/// Exact certificates for exceptional weighted Fano hypersurface
/// families.
#[derive(Debug, Parser)]
#[command(name = "wfano", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// The available subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recover the head/cycle structure of a weight system.
    Decompose(DecomposeArgs),
    /// Enumerate the degree-d monomials and compare with the closed form.
    Basis(BasisArgs),
    /// Certify a head perturbation klt and exceptional.
    Certify(CertifyArgs),
    /// Enumerate structured systems within bounds, one JSON record per
    /// line.
    Search(SearchArgs),
    /// Recompute bundled reference systems and compare with their pinned
    /// outcomes.
    Reproduce(ReproduceArgs),
}

/// Output format of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    /// Human-readable lines.
    Text,
    /// A single JSON document.
    Json,
}

/// Convention for the smooth-point bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Divide the minimal pair product by I d.
    Strict,
    /// Divide the minimal pair product by d.
    Paper,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Paper => Mode::Paper,
        }
    }
}

/// Perturbation kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// Pure power plus mixed monomial.
    A,
    /// Two mixed monomials.
    B,
}

fn parse_weights(s: &str) -> Result<[u64; 5], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 5 {
        return Err(format!("expected five comma-separated weights, got {}", parts.len()));
    }
    let mut out = [0u64; 5];
    for (i, part) in parts.iter().enumerate() {
        let value: u64 =
            part.trim().parse().map_err(|_| format!("invalid weight {part:?}"))?;
        if value == 0 {
            return Err("weights must be positive".to_string());
        }
        out[i] = value;
    }
    Ok(out)
}

fn parse_max_a(s: &str) -> Result<[u64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse_one = |part: &str| -> Result<u64, String> {
        let value: u64 =
            part.trim().parse().map_err(|_| format!("invalid bound {part:?}"))?;
        if value == 0 {
            return Err("bounds must be positive".to_string());
        }
        Ok(value)
    };
    match parts.as_slice() {
        [single] => {
            let v = parse_one(single)?;
            Ok([v, v, v])
        }
        [first, second, third] => {
            Ok([parse_one(first)?, parse_one(second)?, parse_one(third)?])
        }
        _ => Err(format!(
            "expected one bound or three comma-separated bounds, got {}",
            parts.len()
        )),
    }
}

/// Arguments of `decompose`.
#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Ambient weights w0,w1,w2,w3,w4.
    #[arg(short, long, value_parser = parse_weights)]
    pub weights: [u64; 5],
    /// Hypersurface degree d.
    #[arg(short, long)]
    pub degree: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
}

/// Arguments of `basis`.
#[derive(Debug, Args)]
pub struct BasisArgs {
    /// Ambient weights w0,w1,w2,w3,w4.
    #[arg(short, long, value_parser = parse_weights)]
    pub weights: [u64; 5],
    /// Hypersurface degree d.
    #[arg(short, long)]
    pub degree: u64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
}

/// Arguments of `certify`.
#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Ambient weights w0,w1,w2,w3,w4.
    #[arg(short, long, value_parser = parse_weights)]
    pub weights: [u64; 5],
    /// Hypersurface degree d.
    #[arg(short, long)]
    pub degree: u64,
    /// Perturbation kind.
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Head exponents: a0,beta0,beta1 for kind a;
    /// alpha0,alpha1,beta0,beta1 for kind b.
    #[arg(long, value_delimiter = ',', required = true)]
    pub exponents: Vec<u64>,
    /// Convention for the smooth-point bound.
    #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
    pub mode: ModeArg,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
}

/// Arguments of `search`.
#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Upper bound for the cycle exponents: one value for all three, or
    /// a comma triple for (a2, a3, a4).
    #[arg(long, value_parser = parse_max_a)]
    pub max_a: [u64; 3],
    /// Upper bound for the cycle cofactor m2.
    #[arg(long)]
    pub max_m2: u64,
    /// Upper bound for the head multiplicities v0 and v1.
    #[arg(long)]
    pub max_v: u64,
    /// Upper bound for the degree d = m2 m3.
    #[arg(long)]
    pub max_degree: u64,
    /// Keep only well-formed records.
    #[arg(long)]
    pub require_well_formed: bool,
    /// Keep only records whose Kähler-Einstein estimate holds.
    #[arg(long)]
    pub require_ke: bool,
    /// Keep only records with an exceptional perturbation (paper
    /// convention).
    #[arg(long)]
    pub require_exceptional: bool,
    /// Write the JSON lines to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Number of analysis threads (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Arguments of `reproduce`.
#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Fixture identifier; all fixtures when omitted.
    pub id: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Decompose(args) => run_decompose(args),
        Command::Basis(args) => run_basis(args),
        Command::Certify(args) => run_certify(args),
        Command::Search(args) => run_search_command(args),
        Command::Reproduce(args) => run_reproduce(args),
    }
}

#[derive(Serialize)]
struct DecomposeReport {
    schema_version: &'static str,
    structure: StructuredWeights,
    ambient_well_formed: bool,
    hypersurface_well_formed: bool,
    head: HeadClassification,
    anticanonical_degree: Option<Rat>,
    ke: Option<KeEstimate>,
}

fn run_decompose(args: DecomposeArgs) -> i32 {
    let w = WeightVector::new(args.weights).expect("parser enforces positive weights");
    let s = match decompose(&w, args.degree) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_STRUCTURAL;
        }
    };
    let report = DecomposeReport {
        schema_version: SCHEMA_VERSION,
        structure: s,
        ambient_well_formed: is_ambient_well_formed(&w),
        hypersurface_well_formed: is_hypersurface_well_formed(&w, args.degree),
        head: classify_heads(&w, args.degree),
        anticanonical_degree: anticanonical_cycle_degree(&w, args.degree).ok(),
        ke: ke_estimate(&w, args.degree).ok(),
    };
    match args.format {
        FormatArg::Json => print_json(&report),
        FormatArg::Text => {
            println!("weights {} degree {}", w, s.degree);
            println!(
                "m2 = {}, m3 = {}, a = ({},{},{}), v = ({},{},{},{},{}), index = {}",
                s.m2, s.m3, s.a[0], s.a[1], s.a[2], s.v[0], s.v[1], s.v[2], s.v[3], s.v[4],
                s.index
            );
            let cycle: Vec<String> =
                s.cycle_monomials().iter().map(|m| m.to_string()).collect();
            println!("cycle: {}", cycle.join(" + "));
            println!(
                "ambient well formed: {}, hypersurface well formed: {}",
                report.ambient_well_formed, report.hypersurface_well_formed
            );
            match &report.head.effective {
                Some(h) => println!("effective head type: {h}"),
                None => println!("effective head type: none"),
            }
            match &report.anticanonical_degree {
                Some(v) => println!("anticanonical degree: {v}"),
                None => println!("anticanonical degree: undefined (index not positive)"),
            }
            match &report.ke {
                Some(ke) => println!("KE estimate: {}", ke.comparison),
                None => println!("KE estimate: undefined (index not positive)"),
            }
        }
    }
    EXIT_OK
}

#[derive(Serialize)]
struct BasisReport {
    schema_version: &'static str,
    weights: WeightVector,
    degree: u64,
    size: usize,
    monomials: MonomialBasis,
    closed_form: Option<MonomialBasis>,
    closed_form_agrees: Option<bool>,
}

fn run_basis(args: BasisArgs) -> i32 {
    let w = WeightVector::new(args.weights).expect("parser enforces positive weights");
    let basis = monomials_of_degree(&w, args.degree);
    let closed = decompose(&w, args.degree).ok().and_then(|s| {
        let head = classify_heads(&w, args.degree).effective?;
        closed_form_basis(&s, &head).ok()
    });
    let agrees = closed.as_ref().map(|c| c == &basis);
    let report = BasisReport {
        schema_version: SCHEMA_VERSION,
        weights: w,
        degree: args.degree,
        size: basis.len(),
        monomials: basis,
        closed_form: closed,
        closed_form_agrees: agrees,
    };
    match args.format {
        FormatArg::Json => print_json(&report),
        FormatArg::Text => {
            println!(
                "weights {} degree {}: {} monomials",
                report.weights, report.degree, report.size
            );
            for m in report.monomials.iter() {
                println!("  {m}");
            }
            match report.closed_form_agrees {
                Some(true) => println!("closed form: agrees"),
                Some(false) => println!("closed form: DISAGREES with enumeration"),
                None => println!("closed form: not applicable"),
            }
        }
    }
    EXIT_OK
}

fn perturbation_from_args(kind: KindArg, exponents: &[u64]) -> Result<Perturbation, String> {
    match kind {
        KindArg::A => match exponents {
            [a0, beta0, beta1] => {
                Ok(Perturbation::A { a0: *a0, beta0: *beta0, beta1: *beta1 })
            }
            _ => Err(format!(
                "kind a takes exactly three exponents a0,beta0,beta1, got {}",
                exponents.len()
            )),
        },
        KindArg::B => match exponents {
            [alpha0, alpha1, beta0, beta1] => Ok(Perturbation::B {
                alpha0: *alpha0,
                alpha1: *alpha1,
                beta0: *beta0,
                beta1: *beta1,
            }),
            _ => Err(format!(
                "kind b takes exactly four exponents alpha0,alpha1,beta0,beta1, got {}",
                exponents.len()
            )),
        },
    }
}

#[derive(Serialize)]
struct CertifyReport {
    schema_version: &'static str,
    weights: WeightVector,
    degree: u64,
    perturbation: Perturbation,
    certificate: ExceptionalityCertificate,
}

fn print_klt_text(klt: &KltCertificate) {
    println!("klt verdict: {}", klt.verdict);
    for check in &klt.hypotheses {
        println!("  {check}");
    }
    for chart in &klt.charts {
        let lp = match &chart.lp {
            Some(witness) => format!("lp witness max ratio {}", witness.max_ratio),
            None => "lp witness missing".to_string(),
        };
        println!(
            "  chart {} (head exponent {}): explicit witness max ratio {}; {}",
            chart.chart, chart.head_exponent, chart.explicit.max_ratio, lp
        );
    }
}

fn run_certify(args: CertifyArgs) -> i32 {
    let perturbation = match perturbation_from_args(args.kind, &args.exponents) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };
    let w = WeightVector::new(args.weights).expect("parser enforces positive weights");
    let s = match decompose(&w, args.degree) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_STRUCTURAL;
        }
    };
    let basis = monomials_of_degree(&w, args.degree);
    let family = match make_perturbation(&s, &basis, perturbation) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_STRUCTURAL;
        }
    };
    let cert = certify_exceptional(&family, args.mode.into());
    let exit = match cert.verdict {
        Verdict::DiscrepancyFlagged => EXIT_DISCREPANCY,
        _ => EXIT_OK,
    };
    match args.format {
        FormatArg::Json => {
            let report = CertifyReport {
                schema_version: SCHEMA_VERSION,
                weights: w,
                degree: args.degree,
                perturbation: family.perturbation,
                certificate: cert,
            };
            print_json(&report);
        }
        FormatArg::Text => {
            println!(
                "weights {} degree {} perturbation {}",
                w, args.degree, family.perturbation
            );
            let support: Vec<String> =
                family.support.iter().map(|m| m.to_string()).collect();
            println!("support: {}", support.join(", "));
            println!("hypotheses:");
            for check in &cert.hypotheses {
                println!("  {check}");
            }
            print_klt_text(&cert.klt);
            for cone in &cert.cones {
                println!(
                    "cone at chart {}: weights ({},{},{},{}), degree {}, index {}",
                    cone.cone.chart,
                    cone.cone.weights[0],
                    cone.cone.weights[1],
                    cone.cone.weights[2],
                    cone.cone.weights[3],
                    cone.cone.degree,
                    cone.cone.index
                );
                for check in &cone.checks {
                    println!("  {check}");
                }
                println!("  index bound: {}", cone.index_bound);
                println!("  multiplicity bound: {}", cone.multiplicity_bound);
            }
            println!("headline strict: {}", cert.headline_strict);
            println!("headline paper: {}", cert.headline_paper);
            let eps = |e: &Option<Rat>| match e {
                Some(v) => v.to_string(),
                None => "undefined".to_string(),
            };
            println!(
                "epsilon: strict {}, paper {}",
                eps(&cert.epsilon_strict),
                eps(&cert.epsilon_paper)
            );
            println!(
                "verdicts: strict {}, paper {} ({})",
                cert.verdict_strict,
                cert.verdict_paper,
                if cert.modes_agree { "conventions agree" } else { "conventions disagree" }
            );
            println!("verdict ({} mode): {}", cert.mode, cert.verdict);
        }
    }
    exit
}

fn run_search_command(args: SearchArgs) -> i32 {
    let bounds = SearchBounds {
        max_a: args.max_a,
        max_m2: args.max_m2,
        max_v: args.max_v,
        max_degree: args.max_degree,
        require_well_formed: args.require_well_formed,
        require_ke: args.require_ke,
        require_exceptional: args.require_exceptional,
    };
    let records = match args.threads {
        Some(threads) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                Ok(pool) => pool,
                Err(e) => {
                    eprintln!("error: cannot build thread pool: {e}");
                    return EXIT_IO;
                }
            };
            pool.install(|| run_search(&bounds))
        }
        None => run_search(&bounds),
    };
    let mut lines = String::new();
    for record in &records {
        let line = serde_json::to_string(record).expect("records serialize");
        lines.push_str(&line);
        lines.push('\n');
    }
    match &args.out {
        Some(path) => {
            let file = match File::create(path) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: cannot create {}: {e}", path.display());
                    return EXIT_IO;
                }
            };
            let mut writer = BufWriter::new(file);
            if let Err(e) =
                writer.write_all(lines.as_bytes()).and_then(|_| writer.flush())
            {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_IO;
            }
            eprintln!("wrote {} records to {}", records.len(), path.display());
        }
        None => print!("{lines}"),
    }
    EXIT_OK
}

#[derive(Serialize)]
struct ReproduceResult {
    id: String,
    label: String,
    ok: bool,
    detail: Option<String>,
}

#[derive(Serialize)]
struct ReproduceReport {
    schema_version: &'static str,
    results: Vec<ReproduceResult>,
}

fn run_reproduce(args: ReproduceArgs) -> i32 {
    let ids: Vec<String> = match &args.id {
        Some(id) => {
            if fixture(id).is_none() {
                eprintln!(
                    "error: unknown fixture {:?}; available: {}",
                    id,
                    fixture_ids().join(", ")
                );
                return EXIT_USAGE;
            }
            vec![id.clone()]
        }
        None => fixture_ids().iter().map(|s| s.to_string()).collect(),
    };
    let mut results = Vec::new();
    for id in &ids {
        for case in fixture(id).expect("validated id") {
            let outcome = verify_case(&case);
            results.push(ReproduceResult {
                id: id.clone(),
                label: case.label.clone(),
                ok: outcome.is_ok(),
                detail: outcome.err(),
            });
        }
    }
    let all_ok = results.iter().all(|r| r.ok);
    match args.format {
        FormatArg::Json => {
            print_json(&ReproduceReport { schema_version: SCHEMA_VERSION, results });
        }
        FormatArg::Text => {
            for r in &results {
                match &r.detail {
                    None => println!("{}: ok", r.label),
                    Some(detail) => println!("{}: mismatch: {detail}", r.label),
                }
            }
        }
    }
    if all_ok {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}
