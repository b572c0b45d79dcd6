//! Command-line front end: homology reports, discrete systoles, flat-torus
//! bounds, metric-family tables (text/CSV/JSON/SVG), and complex validation.
//!
//! Exit codes: 0 success, 1 bad input file, 2 infeasible request, 64 usage.

mod render;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use render::{fmt9, freedom_csv, freedom_svg, freedom_text};
use systolab::discsys::{self, DiscsysError, Mode, WeightedComplex};
use systolab::families::{self, FamilyError, FamilyModel};
use systolab::homology::{self, ChainComplex};
use systolab::lattice::{self, FlatTorus};
use systolab::IntMatrix;

#[derive(Parser)]
#[command(name = "systolab", version, about = "Systolic geometry toolkit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Exact homology (Betti numbers, torsion, mod-2 Betti) of a complex
    Homology {
        /// named complex from the built-in catalog
        #[arg(long, conflicts_with = "input")]
        catalog: Option<String>,
        /// chain complex JSON file
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: String,
        /// write here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Minimum-weight nontrivial cycle of a weighted complex
    Systole {
        /// weighted complex JSON file (plain complexes get unit weights)
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// coefficient mode: all | modtorsion | z2
        #[arg(long, default_value = "all")]
        mode: String,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Flat-torus shortest-vector bounds
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Freedom-ratio tables for the two metric families
    Family {
        /// gromov | hodge
        model: String,
        /// comma-separated parameter list
        #[arg(long, value_delimiter = ',', required = true)]
        j: Vec<u64>,
        /// text | csv | json
        #[arg(long, default_value = "text")]
        format: String,
        /// also write the table as CSV here
        #[arg(long)]
        csv: Option<PathBuf>,
        /// also write a log-log ratio plot here
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// The cheap mod-2 relative cycle on the T²×I family (even j)
    Mod2cycle {
        #[arg(long)]
        j: u64,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a complex JSON file; exit 1 with a report if it is not valid
    Validate {
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Loewner ratio L₁L₂/A against the bound 2/√3
    Loewner {
        #[command(flatten)]
        source: LatticeSource,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LatticeSource {
    /// the hexagonal (equality) torus
    #[arg(long)]
    hex: bool,
    /// N seeded random 2D tori (seed from SYSTOLE_LAB_SEED, default 0)
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    /// Gram matrix JSON file
    #[arg(long, value_name = "FILE")]
    gram: Option<PathBuf>,
}

enum Failure {
    BadInput(String),
    Infeasible(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::BadInput(_) => 1,
            Failure::Infeasible(_) => 2,
            Failure::Usage(_) => 64,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::BadInput(m) | Failure::Infeasible(m) | Failure::Usage(m) => m,
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        Failure::Infeasible(e.to_string())
    }
}

impl From<DiscsysError> for Failure {
    fn from(e: DiscsysError) -> Self {
        match e {
            DiscsysError::NoNontrivialClass { .. } | DiscsysError::SearchBoxExhausted => {
                Failure::Infeasible(e.to_string())
            }
            other => Failure::BadInput(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.verb {
        Verb::Homology { catalog, input, format, output } => {
            let complex = match (catalog, input) {
                (Some(name), None) => homology::catalog(&name)
                    .map_err(|e| Failure::BadInput(e.to_string()))?,
                (None, Some(path)) => read_json::<ChainComplex>(&path)?,
                _ => return Err(Failure::BadInput("need exactly one of --catalog or --input".into())),
            };
            let summary = complex
                .homology()
                .map_err(|e| Failure::BadInput(e.to_string()))?;
            let text = match parse_format(&format, &["text", "json"])? {
                "json" => {
                    let report = HomologyReport {
                        cells: complex.cell_counts().to_vec(),
                        boundaries: (1..=complex.top_degree()).map(|k| complex.boundary(k)).collect(),
                        betti: summary.betti.clone(),
                        torsion: summary
                            .torsion
                            .iter()
                            .map(|t| t.iter().map(BigInt::to_string).collect())
                            .collect(),
                        betti_mod2: summary.betti_mod2.clone(),
                    };
                    to_json(&report)
                }
                _ => {
                    let mut s = format!("cells      {:?}\n", complex.cell_counts());
                    let _ = writeln!(s, "betti      {:?}", summary.betti);
                    let torsion: Vec<Vec<String>> = summary
                        .torsion
                        .iter()
                        .map(|t| t.iter().map(BigInt::to_string).collect())
                        .collect();
                    let _ = writeln!(s, "torsion    {:?}", torsion);
                    let _ = writeln!(s, "betti mod2 {:?}", summary.betti_mod2);
                    s
                }
            };
            emit(&output, &text)
        }
        Verb::Systole { file, degree, mode, format, output } => {
            let mode: Mode = mode
                .parse()
                .map_err(Failure::Usage)?;
            let wc = read_weighted(&file)?;
            let result = discsys::systole(&wc, degree, mode)?;
            let value_float = result.value.to_f64().unwrap_or(f64::NAN);
            let text = match parse_format(&format, &["text", "json"])? {
                "json" => to_json(&SystoleReport {
                    degree,
                    mode,
                    value: lattice::format_rational(&result.value),
                    value_float,
                    witness: result.witness.coefficients.iter().map(BigInt::to_string).collect(),
                    certificate: result.certificate,
                    warnings: result.warnings.clone(),
                }),
                _ => {
                    let mut s = format!(
                        "systole (degree {}, mode {:?}) = {} ({})\n",
                        degree,
                        mode,
                        lattice::format_rational(&result.value),
                        fmt9(value_float)
                    );
                    let _ = writeln!(s, "witness    {:?}", result.witness.coefficients.iter().map(BigInt::to_string).collect::<Vec<_>>());
                    let _ = writeln!(s, "certificate {:?}", result.certificate);
                    for w in &result.warnings {
                        let _ = writeln!(s, "warning: {}", w);
                    }
                    s
                }
            };
            emit(&output, &text)
        }
        Verb::Lattice { cmd } => {
            let LatticeCmd::Loewner { source, format, output } = cmd;
            let format = parse_format(&format, &["text", "json"])?.to_string();
            if let Some(n) = source.random {
                let seed = lab_seed();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let bound = 2.0 / 3.0_f64.sqrt();
                let mut max_ratio = f64::NEG_INFINITY;
                for _ in 0..n {
                    let t = lattice::random_torus(&mut rng, 2);
                    let r = lattice::loewner_ratio(&t).map_err(|e| Failure::BadInput(e.to_string()))?;
                    max_ratio = max_ratio.max(r);
                }
                let report = RandomLoewnerReport {
                    count: n,
                    seed,
                    max_ratio,
                    bound,
                    all_within: max_ratio <= bound + 1e-9,
                };
                let text = if format == "json" {
                    to_json(&report)
                } else {
                    format!(
                        "{} random tori (seed {}): max ratio {} <= bound {}: {}\n",
                        n, seed, fmt9(max_ratio), fmt9(bound), report.all_within
                    )
                };
                return emit(&output, &text);
            }
            let torus = if source.hex {
                lattice::hexagonal_torus()
            } else {
                let path = source.gram.expect("clap group guarantees a source");
                read_json::<FlatTorus>(&path)?
            };
            let minima = lattice::successive_minima(&torus)
                .map_err(|e| Failure::Infeasible(e.to_string()))?;
            let ratio = lattice::loewner_ratio(&torus)
                .map_err(|e| Failure::Infeasible(e.to_string()))?;
            let report = LoewnerReport {
                dim: torus.dimension(),
                gram: torus
                    .gram()
                    .iter()
                    .map(|row| row.iter().map(lattice::format_rational).collect())
                    .collect(),
                lambda1: minima.lambda1(),
                lambda2: minima.lambda2(),
                ratio,
                bound: 2.0 / 3.0_f64.sqrt(),
            };
            let text = if format == "json" {
                to_json(&report)
            } else {
                format!(
                    "dim {}  lambda1 {}  lambda2 {}  ratio {}  bound {}\n",
                    report.dim,
                    fmt9(report.lambda1),
                    fmt9(report.lambda2),
                    fmt9(report.ratio),
                    fmt9(report.bound)
                )
            };
            emit(&output, &text)
        }
        Verb::Family { model, j, format, csv, svg, output } => {
            let model: FamilyModel = model.parse().map_err(Failure::Usage)?;
            let model_name = match model {
                FamilyModel::Gromov => "gromov",
                FamilyModel::Hodge => "hodge",
            };
            let rows = families::freedom_table(model, &j)?;
            if let Some(path) = csv {
                write_file(&path, &freedom_csv(&rows))?;
            }
            if let Some(path) = svg {
                write_file(&path, &freedom_svg(model_name, &rows))?;
            }
            let text = match parse_format(&format, &["text", "csv", "json", "svg"])? {
                "csv" => freedom_csv(&rows),
                "json" => to_json(&rows),
                "svg" => freedom_svg(model_name, &rows),
                _ => freedom_text(model_name, &rows),
            };
            emit(&output, &text)
        }
        Verb::Mod2cycle { j, format, output } => {
            let cycle = families::mod2_cycle(j)?;
            let text = match parse_format(&format, &["text", "json"])? {
                "json" => to_json(&cycle),
                _ => {
                    let mut s = format!(
                        "mod-2 relative cycle, j = {}: {} copies of area {} (total {})\n",
                        cycle.j,
                        cycle.copies.len(),
                        fmt9(cycle.copy_area),
                        fmt9(cycle.total_area)
                    );
                    for c in &cycle.copies {
                        let _ = writeln!(
                            s,
                            "  shear h^{} on [{}, {}]",
                            c.shear_power, c.support.0, c.support.1
                        );
                    }
                    s
                }
            };
            emit(&output, &text)
        }
        Verb::Validate { file } => {
            let raw = std::fs::read_to_string(&file)
                .map_err(|e| Failure::BadInput(format!("{}: {}", file.display(), e)))?;
            let wire: RawComplexWire = serde_json::from_str(&raw)
                .map_err(|e| Failure::BadInput(format!("{}: {}", file.display(), e)))?;
            let report = homology::validate_raw(wire.cells, wire.boundaries);
            if report.valid {
                println!("valid");
                Ok(())
            } else {
                let mut msg = String::from("invalid complex:");
                for v in &report.violations {
                    let _ = write!(msg, "\n  degree {}: {}", v.degree, v.message);
                }
                Err(Failure::BadInput(msg))
            }
        }
    }
}

#[derive(Serialize)]
struct HomologyReport {
    cells: Vec<usize>,
    boundaries: Vec<IntMatrix>,
    betti: Vec<usize>,
    torsion: Vec<Vec<String>>,
    betti_mod2: Vec<usize>,
}

#[derive(Serialize)]
struct SystoleReport {
    degree: usize,
    mode: Mode,
    value: String,
    value_float: f64,
    witness: Vec<String>,
    certificate: discsys::Certificate,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct LoewnerReport {
    dim: usize,
    gram: Vec<Vec<String>>,
    lambda1: f64,
    lambda2: f64,
    ratio: f64,
    bound: f64,
}

#[derive(Serialize)]
struct RandomLoewnerReport {
    count: usize,
    seed: u64,
    max_ratio: f64,
    bound: f64,
    all_within: bool,
}

/// Complex JSON accepted without the ∂∂ = 0 check, so broken files can be
/// reported instead of rejected at parse time.
#[derive(Deserialize)]
struct RawComplexWire {
    cells: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

fn lab_seed() -> u64 {
    std::env::var("SYSTOLE_LAB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}

fn parse_format<'a>(format: &'a str, allowed: &[&'a str]) -> Result<&'a str, Failure> {
    if allowed.contains(&format) {
        Ok(format)
    } else {
        Err(Failure::BadInput(format!(
            "unsupported format {:?} (expected one of {})",
            format,
            allowed.join("|")
        )))
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Failure::BadInput(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&raw).map_err(|e| Failure::BadInput(format!("{}: {}", path.display(), e)))
}

/// Weighted complex JSON, or a plain complex which then gets unit weights.
fn read_weighted(path: &PathBuf) -> Result<WeightedComplex, Failure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Failure::BadInput(format!("{}: {}", path.display(), e)))?;
    if let Ok(wc) = serde_json::from_str::<WeightedComplex>(&raw) {
        return Ok(wc);
    }
    let complex: ChainComplex = serde_json::from_str(&raw)
        .map_err(|e| Failure::BadInput(format!("{}: {}", path.display(), e)))?;
    let weights = complex
        .cell_counts()
        .iter()
        .map(|&n| vec![BigRational::from_integer(BigInt::from(1)); n])
        .collect();
    WeightedComplex::new(complex, weights, None).map_err(|e| Failure::BadInput(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization is infallible");
    s.push('\n');
    s
}

fn write_file(path: &PathBuf, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content).map_err(|e| Failure::BadInput(format!("{}: {}", path.display(), e)))
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => write_file(path, text),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}
