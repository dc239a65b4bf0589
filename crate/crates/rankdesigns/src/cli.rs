//! Command-line front end: parse code/design files, dispatch computations,
//! and emit JSON reports or plain-text tables.
//!
//! Exit codes: 0 on success, 1 on a mathematical negative (hypothesis fails,
//! design fails verification, code is not MRD, budget exhausted), 2 on usage
//! or parse errors. Domain negatives still emit a machine-readable JSON
//! diagnostic on stdout.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::am::{am_hypothesis, am_run};
use crate::codes::{macwilliams_transform, Budget, MatrixCode, WeightDistribution};
use crate::designs::VerifyOutcome;
use crate::fixtures;
use crate::gf::FiniteField;
use crate::io::{AmReportSpec, CodeSpec, DesignSpec, ParsedCode, WeightDistributionSpec};
use crate::linalg::FqMatrix;
use crate::qcomb::BigCount;

#[derive(Debug, Parser)]
#[command(name = "rankdesigns", version, about = "Exact toolkit for rank-metric codes and the subspace designs held by their codeword supports")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Output format; commands without a table rendering always emit JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; falls back to RANKDESIGNS_THREADS, then all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Enumeration budget: maximum codewords visited per scan.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    max_codewords: u64,
    /// Enumeration budget: maximum ambient matrices visited (covering radius).
    #[arg(long, global = true, default_value_t = 1 << 20)]
    max_ambient: u64,
    /// Enumeration budget: maximum subspaces per design enumeration.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    max_subspaces: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact rank weight distribution of a code by full enumeration.
    WeightDist {
        #[arg(long)]
        code: PathBuf,
    },
    /// Trace-form dual of a matrix code.
    Dual {
        #[arg(long)]
        code: PathBuf,
    },
    /// MacWilliams transform of a weight distribution.
    Macwilliams {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: u64,
        /// Leading counts W_0, W_1, ... ; remaining entries are zero.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<String>,
    },
    /// Punctured code Pi(C, A, s).
    Puncture {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        s: usize,
        /// JSON file {"rows": [[...]]} with an invertible n x n matrix;
        /// identity when omitted.
        #[arg(long)]
        transform: Option<PathBuf>,
    },
    /// Shortened code Sigma(C, A, s).
    Shorten {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        transform: Option<PathBuf>,
    },
    /// Check the Assmus-Mattson hypothesis at strength t.
    AmCheck {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Full Assmus-Mattson run: designs extracted and re-verified.
    AmRun {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        t: usize,
        /// Largest primal rank to examine (default: minimum distance).
        #[arg(long)]
        w: Option<usize>,
        /// Largest dual rank to examine (default: dual minimum distance).
        #[arg(long)]
        w_star: Option<usize>,
    },
    /// Brute-force verification of a design file at strength t.
    DesignVerify {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// Dual design with predicted and re-verified lambda.
    DesignDual {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// MRD and dually-QMRD check; exits 1 if the code is not MRD.
    MrdCheck {
        #[arg(long)]
        code: PathBuf,
    },
    /// Emit a Gabidulin code over F_{q^m} with polynomial-basis points.
    Gabidulin {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Full report: distributions, distances, MRD flags, tau, rho, and an
    /// optional Assmus-Mattson run.
    Report {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Write the canonical fixture files into a directory.
    GenExamples {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

/// Errors already sorted by exit code.
enum Failure {
    /// Exit 2: bad usage, unreadable or unparsable input.
    Usage(String),
    /// Exit 1: mathematically negative or infeasible result.
    Domain(serde_json::Value),
}

type CliResult = Result<String, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(json!({ "error": e.to_string() }))
}

/// Entry point for the binary: parse, dispatch, print, map to exit code.
pub fn main_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 2;
        }
    };
    configure_threads(&cli.common);
    let out = run(&cli.command, &cli.common);
    match out {
        Ok(text) => match write_output(&cli.common.output, &text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Domain(diag)) => {
            let text = serde_json::to_string_pretty(&diag).expect("diagnostic is serializable");
            if write_output(&cli.common.output, &text).is_err() {
                eprintln!("{text}");
            }
            1
        }
    }
}

fn configure_threads(common: &Common) {
    let n = common.threads.or_else(|| {
        std::env::var("RANKDESIGNS_THREADS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(n) = n {
        // ignore failure: the global pool may already exist (tests)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn budget(common: &Common) -> Budget {
    Budget {
        max_codewords: common.max_codewords,
        max_ambient: common.max_ambient,
        max_subspaces: common.max_subspaces,
    }
}

fn load_code(path: &Path) -> Result<ParsedCode, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let spec: CodeSpec = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    spec.parse().map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_matrix_code(path: &Path) -> Result<MatrixCode, Failure> {
    load_code(path)?.to_matrix().map_err(|e| usage(format!("{}: {e}", path.display())))
}

#[derive(Serialize, Deserialize)]
struct TransformSpec {
    rows: Vec<Vec<u64>>,
}

fn load_transform(path: &Option<PathBuf>, code: &MatrixCode) -> Result<FqMatrix, Failure> {
    match path {
        None => Ok(FqMatrix::identity(code.field().clone(), code.n())),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
            let spec: TransformSpec =
                serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            FqMatrix::from_rows(code.field().clone(), spec.rows, code.n())
                .map_err(|e| usage(format!("{}: {e}", p.display())))
        }
    }
}

fn load_design(path: &Path) -> Result<crate::designs::DesignInstance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let spec: DesignSpec = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    spec.parse().map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output is serializable")
}

fn distribution_output(wd: &WeightDistribution, format: Format) -> String {
    match format {
        Format::Json => pretty(&WeightDistributionSpec::of(wd)),
        Format::Table => {
            let mut lines = vec![format!("{:>4}  {:>12}", "rank", "count")];
            for (i, c) in wd.counts().iter().enumerate() {
                lines.push(format!("{i:>4}  {c:>12}"));
            }
            lines.join("\n")
        }
    }
}

fn run(command: &Command, common: &Common) -> CliResult {
    let budget = budget(common);
    match command {
        Command::WeightDist { code } => {
            let mc = load_matrix_code(code)?;
            let wd = mc.weight_distribution(budget).map_err(domain)?;
            Ok(distribution_output(&wd, common.format))
        }
        Command::Dual { code } => {
            let mc = load_matrix_code(code)?;
            Ok(pretty(&CodeSpec::of_matrix(&mc.dual())))
        }
        Command::Macwilliams { n, m, k, q, weights } => {
            if *k > n * m {
                return Err(usage(format!("k = {k} exceeds nm = {}", n * m)));
            }
            let mut counts = Vec::with_capacity(n + 1);
            for w in weights {
                counts.push(
                    w.parse::<BigCount>().map_err(|e| usage(format!("weight {w:?}: {e}")))?,
                );
            }
            if counts.len() > n + 1 {
                return Err(usage(format!("{} counts for n = {n}", counts.len())));
            }
            counts.resize(n + 1, BigCount::from(0u32));
            let wd = WeightDistribution::new(counts);
            let dual = macwilliams_transform(&wd, *n, *m, *k, *q).map_err(domain)?;
            Ok(distribution_output(&dual, common.format))
        }
        Command::Puncture { code, s, transform } => {
            let mc = load_matrix_code(code)?;
            let a = load_transform(transform, &mc)?;
            let out = mc.puncture(&a, *s).map_err(domain)?;
            Ok(pretty(&CodeSpec::of_matrix(&out)))
        }
        Command::Shorten { code, s, transform } => {
            let mc = load_matrix_code(code)?;
            let a = load_transform(transform, &mc)?;
            let out = mc.shorten(&a, *s).map_err(domain)?;
            Ok(pretty(&CodeSpec::of_matrix(&out)))
        }
        Command::AmCheck { code, t } => {
            let mc = load_matrix_code(code)?;
            let (holds, diag) = am_hypothesis(&mc, *t, budget).map_err(domain)?;
            let out = json!({
                "t": t,
                "hypothesis_holds": holds,
                "d": diag.d,
                "d_star": diag.d_star,
                "dual_weights_in_window": diag.window_weights,
                "allowed": diag.allowed,
                "dual_distribution": WeightDistributionSpec::of(&diag.dual_distribution),
            });
            if holds {
                Ok(pretty(&out))
            } else {
                Err(Failure::Domain(out))
            }
        }
        Command::AmRun { code, t, w, w_star } => {
            let mc = load_matrix_code(code)?;
            let report = am_run(&mc, *t, *w, *w_star, budget).map_err(domain)?;
            let spec = AmReportSpec::of(&report);
            if report.hypothesis_holds {
                Ok(pretty(&spec))
            } else {
                Err(Failure::Domain(
                    serde_json::to_value(&spec).expect("report is serializable"),
                ))
            }
        }
        Command::DesignVerify { design, t } => {
            let mut d = load_design(design)?;
            match d.verify(*t, budget).map_err(domain)? {
                VerifyOutcome::Design { lambda } => Ok(pretty(&json!({
                    "t": t,
                    "lambda": lambda.to_string(),
                    "blocks": d.blocks().len(),
                }))),
                VerifyOutcome::NotDesign { witness_a, count_a, witness_b, count_b } => {
                    Err(Failure::Domain(json!({
                        "error": "not a design",
                        "t": t,
                        "witnesses": [
                            { "subspace": witness_a.basis().rows_vec(), "count": count_a },
                            { "subspace": witness_b.basis().rows_vec(), "count": count_b },
                        ],
                    })))
                }
            }
        }
        Command::DesignDual { design, t } => {
            let mut d = load_design(design)?;
            match d.verify(*t, budget).map_err(domain)? {
                VerifyOutcome::Design { .. } => {}
                VerifyOutcome::NotDesign { .. } => {
                    return Err(domain("input is not a design at this strength"))
                }
            }
            let dual = d.dual(budget).map_err(domain)?;
            Ok(pretty(&DesignSpec::of(&dual)))
        }
        Command::MrdCheck { code } => {
            let mc = load_matrix_code(code)?;
            let d = mc.min_distance(budget).map_err(domain)?;
            let is_mrd = mc.is_mrd(budget).map_err(domain)?;
            let dually_qmrd = mc.is_dually_qmrd(budget).unwrap_or(false);
            let out = json!({
                "n": mc.n(), "m": mc.m(), "k": mc.dim(), "d": d,
                "is_mrd": is_mrd,
                "is_dually_qmrd": dually_qmrd,
            });
            if is_mrd {
                Ok(pretty(&out))
            } else {
                Err(Failure::Domain(out))
            }
        }
        Command::Gabidulin { q, m, n, k } => {
            let (code, basis) = fixtures::gabidulin_fixture(*q, *m, *n, *k).map_err(usage)?;
            Ok(pretty(&CodeSpec::of_vector(&code, &basis)))
        }
        Command::Report { code, t } => {
            let mc = load_matrix_code(code)?;
            let wd = mc.weight_distribution(budget).map_err(domain)?;
            let d = wd.min_distance();
            let dual = mc.dual();
            let dual_wd =
                macwilliams_transform(&wd, mc.n(), mc.m(), mc.dim(), mc.field().order())
                    .map_err(domain)?;
            let tau = dual_wd.nonzero_weights().len();
            let rho = mc.covering_radius(budget).ok();
            let mut out = json!({
                "q": mc.field().order(),
                "n": mc.n(), "m": mc.m(), "k": mc.dim(),
                "d": d,
                "d_star": if dual.dim() == 0 { None } else { dual_wd.min_distance() },
                "weight_distribution": WeightDistributionSpec::of(&wd),
                "dual_weight_distribution": WeightDistributionSpec::of(&dual_wd),
                "is_mrd": mc.is_mrd(budget).ok(),
                "is_dually_qmrd": mc.is_dually_qmrd(budget).ok(),
                "external_distance": tau,
                "covering_radius": rho,
            });
            if let Some(t) = t {
                let report = am_run(&mc, *t, None, None, budget).map_err(domain)?;
                out["am"] = serde_json::to_value(AmReportSpec::of(&report))
                    .expect("report is serializable");
            }
            Ok(pretty(&out))
        }
        Command::GenExamples { dir } => generate_examples(dir),
    }
}

/// Write the canonical fixture files: the spread example for s = 1 and
/// s = 2, three Gabidulin instances, and the zero-column counterexample.
fn generate_examples(dir: &Path) -> CliResult {
    std::fs::create_dir_all(dir).map_err(usage)?;
    let mut written = Vec::new();
    let mut emit = |name: &str, spec: &CodeSpec| -> Result<(), Failure> {
        let path = dir.join(name);
        std::fs::write(&path, format!("{}\n", pretty(spec)))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        written.push(path.display().to_string());
        Ok(())
    };

    let full = fixtures::spread_dual_expansion(1).map_err(usage)?;
    emit("spread_s1.json", &CodeSpec::of_matrix(&full))?;
    let (spread, basis) = fixtures::spread_code(2).map_err(usage)?;
    emit("spread_s2.json", &CodeSpec::of_vector(&spread, &basis))?;
    for (q, m, n, k) in [(2u64, 4u32, 4usize, 2usize), (2, 4, 4, 1), (3, 3, 3, 1)] {
        let (code, basis) = fixtures::gabidulin_fixture(q, m, n, k).map_err(usage)?;
        emit(&format!("gabidulin_{q}_{m}_{n}_{k}.json"), &CodeSpec::of_vector(&code, &basis))?;
    }
    let (_, counterexample) = fixtures::zero_column_counterexample().map_err(usage)?;
    emit("counterexample.json", &CodeSpec::of_matrix(&counterexample))?;
    Ok(pretty(&json!({ "written": written })))
}
