//! Command-line front end: positive bases, gap listings, counting reports,
//! minima verification, and the number-field pipeline. Reports are JSON (or
//! CSV for radius series), embed the configuration that produced them, and
//! are byte-identical across runs with the same inputs, seed, and precision.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use conegaps::enumerate::{
    enumerate, verify_gap_asymptotics, verify_general_cone_count, CountingReport, Region,
};
use conegaps::error::Error as CoreError;
use conegaps::lattice::{generate_positive_basis, Cone, Lattice, PositiveBasis};
use conegaps::linalg::{parse_rational, Rat, RationalMatrix, RationalVector};
use conegaps::minima::{covering_radius, minima_report, verify_gen_small, verify_small_gap};
use conegaps::nf::height::{sample_elements, verify_height_inequalities, weil_height};
use conegaps::nf::ideal::IdealLattice;
use conegaps::nf::verify::verify_ideal_gaps;
use conegaps::nf::{init_field, parse_poly, NumberField};
use conegaps::semigroup::{classify, GapCertificate, GapStatus};
use num_bigint::BigInt;

const EXIT_INTERNAL: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_NOT_POSITIVE: u8 = 3;
const EXIT_IDENTITY: u8 = 4;
const EXIT_INEQUALITY: u8 = 5;
const EXIT_NOT_TOTALLY_REAL: u8 = 6;

#[derive(Parser)]
#[command(
    name = "conegaps",
    version,
    about = "Positive lattice bases, semigroup gaps, restricted minima, and totally real number fields in exact arithmetic"
)]
struct Cli {
    /// Seed for all randomized constructions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Working precision in bits for interval refinements.
    #[arg(long, global = true, default_value_t = 256)]
    precision: u32,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate distinct positive bases of a lattice.
    Basis {
        lattice: PathBuf,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// List the gaps of S(X) in L+ up to a sup-norm bound.
    Gaps {
        lattice: PathBuf,
        basis: PathBuf,
        #[arg(long)]
        bound: String,
        #[arg(long)]
        primitive_only: bool,
    },
    /// Count L+, S(X), and gaps along a radius grid against the predicted
    /// leading terms.
    #[command(alias = "verify-asymptotics")]
    Count {
        lattice: PathBuf,
        basis: PathBuf,
        #[arg(long)]
        tmax: String,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        /// Write the radius series as CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// General cone: the basis file is then a positive basis of Y^-1 L.
        #[arg(long)]
        cone: Option<PathBuf>,
    },
    /// Successive minima of the three families plus the covering radius.
    Minima { lattice: PathBuf, basis: PathBuf },
    /// Verify the restricted-minima inequalities on one instance.
    VerifyThm {
        lattice: PathBuf,
        basis: PathBuf,
        /// Verify the general-cone transfer bounds instead; the basis file
        /// is then a positive basis of Y^-1 L.
        #[arg(long)]
        cone: Option<PathBuf>,
    },
    /// Totally real number field commands.
    Nf {
        #[command(subcommand)]
        command: NfCommand,
    },
}

#[derive(Subcommand)]
enum NfCommand {
    /// Construct a field from a monic integer polynomial such as "x^2-2".
    Init { poly: String },
    /// Build an ideal and check the determinant identity.
    Ideal {
        poly: String,
        /// Ideal basis file {"basis": <integer matrix>}.
        #[arg(long)]
        basis: Option<PathBuf>,
        /// Principal ideal generator, comma-separated integral coordinates.
        #[arg(long)]
        principal: Option<String>,
    },
    /// Weil heights and the height inequality chain on sample elements.
    Heights {
        poly: String,
        #[arg(long, default_value_t = 25)]
        count: usize,
        /// Also report the height of this element (comma-separated coords).
        #[arg(long)]
        element: Option<String>,
    },
    /// Run the full ideal-gaps verification pipeline.
    VerifyGaps {
        poly: String,
        #[arg(long)]
        ideal: Option<PathBuf>,
        #[arg(long)]
        principal: Option<String>,
        /// Positive basis file: JSON list of coordinate vectors.
        #[arg(long)]
        beta: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match &e {
            CoreError::NotPositive { .. } => EXIT_NOT_POSITIVE,
            CoreError::NotTotallyReal { .. }
            | CoreError::Reducible(_)
            | CoreError::IrreducibilityUndetermined(_)
            | CoreError::NotMonicInteger => EXIT_NOT_TOTALLY_REAL,
            CoreError::NonSquare { .. }
            | CoreError::Singular
            | CoreError::RankDeficient
            | CoreError::DimensionMismatch { .. }
            | CoreError::NonInteger
            | CoreError::NotPrimitive { .. }
            | CoreError::DimensionTooSmall(_)
            | CoreError::NotInLattice
            | CoreError::NotABasis
            | CoreError::OrthogonalBasis
            | CoreError::CoordinateHyperplane { .. }
            | CoreError::SingularCone
            | CoreError::NotInCone { .. }
            | CoreError::NotAnIdeal
            | CoreError::ZeroArgument
            | CoreError::InvalidInput(_) => EXIT_BAD_INPUT,
            _ => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("{}: {e}", path.display())))
}

fn emit(json_path: &Option<PathBuf>, report: &impl Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| Failure::new(EXIT_INTERNAL, e.to_string()))?;
    text.push('\n');
    match json_path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::new(EXIT_INTERNAL, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Configuration block embedded in every report for replayability.
#[derive(Serialize)]
struct Config {
    command: String,
    seed: u64,
    precision: u32,
    inputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<Vec<String>>,
}

impl Config {
    fn new(command: &str, seed: u64, precision: u32, inputs: Vec<String>) -> Self {
        Self {
            command: command.to_string(),
            seed,
            precision,
            inputs,
            bound: None,
            grid: None,
        }
    }
}

fn parse_coords(s: &str) -> Result<Vec<Rat>, Failure> {
    s.split(',')
        .map(|t| parse_rational(t.trim()).map_err(Failure::from))
        .collect()
}

fn parse_bound(s: &str) -> Result<Rat, Failure> {
    let r = parse_rational(s)?;
    if r <= Rat::from_integer(BigInt::from(0)) {
        return Err(Failure::new(EXIT_BAD_INPUT, "bound must be positive"));
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Basis { lattice, count } => cmd_basis(cli, lattice, *count),
        Command::Gaps {
            lattice,
            basis,
            bound,
            primitive_only,
        } => cmd_gaps(cli, lattice, basis, bound, *primitive_only),
        Command::Count {
            lattice,
            basis,
            tmax,
            steps,
            csv,
            cone,
        } => cmd_count(cli, lattice, basis, tmax, *steps, csv, cone),
        Command::Minima { lattice, basis } => cmd_minima(cli, lattice, basis),
        Command::VerifyThm {
            lattice,
            basis,
            cone,
        } => cmd_verify_thm(cli, lattice, basis, cone),
        Command::Nf { command } => match command {
            NfCommand::Init { poly } => cmd_nf_init(cli, poly),
            NfCommand::Ideal {
                poly,
                basis,
                principal,
            } => cmd_nf_ideal(cli, poly, basis, principal),
            NfCommand::Heights {
                poly,
                count,
                element,
            } => cmd_nf_heights(cli, poly, *count, element),
            NfCommand::VerifyGaps {
                poly,
                ideal,
                principal,
                beta,
            } => cmd_nf_verify_gaps(cli, poly, ideal, principal, beta),
        },
    }
}

// ---------------------------------------------------------------------------
// Lattice commands
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct BasisEntry {
    matrix: RationalMatrix,
    change_of_basis: RationalMatrix,
    #[serde(serialize_with = "conegaps::linalg::serde_text::rational")]
    change_det: Rat,
}

#[derive(Serialize)]
struct BasisReport {
    config: Config,
    bases: Vec<BasisEntry>,
}

fn cmd_basis(cli: &Cli, lattice_path: &Path, count: usize) -> Result<u8, Failure> {
    let lattice: Lattice = read_json(lattice_path)?;
    let mut seen = HashSet::new();
    let mut bases = Vec::new();
    let mut sub_seed = cli.seed;
    let mut attempts = 0;
    while bases.len() < count {
        attempts += 1;
        if attempts > 10_000 {
            return Err(Failure::new(
                EXIT_INTERNAL,
                "could not generate enough distinct bases",
            ));
        }
        let pb = generate_positive_basis(&lattice, sub_seed);
        sub_seed = sub_seed.wrapping_add(1);
        if !seen.insert(format!("{:?}", pb.matrix())) {
            continue;
        }
        let change = pb.change_of_basis();
        let det = change.det().map_err(Failure::from)?;
        bases.push(BasisEntry {
            matrix: pb.matrix().clone(),
            change_of_basis: change,
            change_det: det,
        });
    }
    let report = BasisReport {
        config: Config::new(
            "basis",
            cli.seed,
            cli.precision,
            vec![lattice_path.display().to_string()],
        ),
        bases,
    };
    emit(&cli.json, &report)?;
    Ok(0)
}

#[derive(Serialize)]
struct GapsReport {
    config: Config,
    count: usize,
    gaps: Vec<GapCertificate>,
}

fn load_positive_basis(lattice: &Lattice, path: &Path) -> Result<PositiveBasis, Failure> {
    let matrix: RationalMatrix = read_json(path)?;
    PositiveBasis::new(lattice.clone(), matrix).map_err(Failure::from)
}

fn cmd_gaps(
    cli: &Cli,
    lattice_path: &Path,
    basis_path: &Path,
    bound: &str,
    primitive_only: bool,
) -> Result<u8, Failure> {
    let lattice: Lattice = read_json(lattice_path)?;
    let basis = load_positive_basis(&lattice, basis_path)?;
    let t = parse_bound(bound)?;
    let mut gaps = Vec::new();
    for p in enumerate(&lattice, &Region::Cube(t)).map_err(Failure::from)? {
        let cert = classify(&basis, &p.point).map_err(Failure::from)?;
        if cert.status == GapStatus::Gap && (!primitive_only || cert.primitive) {
            gaps.push(cert);
        }
    }
    let mut config = Config::new(
        "gaps",
        cli.seed,
        cli.precision,
        vec![
            lattice_path.display().to_string(),
            basis_path.display().to_string(),
        ],
    );
    config.bound = Some(bound.to_string());
    let report = GapsReport {
        config,
        count: gaps.len(),
        gaps,
    };
    emit(&cli.json, &report)?;
    Ok(0)
}

#[derive(Serialize)]
struct CountReportOut {
    config: Config,
    report: CountingReport,
    partition_identity_holds: bool,
}

fn cmd_count(
    cli: &Cli,
    lattice_path: &Path,
    basis_path: &Path,
    tmax: &str,
    steps: usize,
    csv: &Option<PathBuf>,
    cone: &Option<PathBuf>,
) -> Result<u8, Failure> {
    if steps == 0 {
        return Err(Failure::new(EXIT_BAD_INPUT, "steps must be positive"));
    }
    let lattice: Lattice = read_json(lattice_path)?;
    let tmax = parse_bound(tmax)?;
    let grid: Vec<Rat> = (1..=steps)
        .map(|i| &tmax * Rat::new(BigInt::from(i as i64), BigInt::from(steps as i64)))
        .collect();
    let report = match cone {
        None => {
            let basis = load_positive_basis(&lattice, basis_path)?;
            verify_gap_asymptotics(&lattice, &basis, &grid).map_err(Failure::from)?
        }
        Some(cone_path) => {
            let cone: Cone = read_json(cone_path)?;
            let m = lattice.transport(&cone).map_err(Failure::from)?;
            let basis = load_positive_basis(&m, basis_path)?;
            verify_general_cone_count(&lattice, &cone, &basis, &grid).map_err(Failure::from)?
        }
    };
    if let Some(p) = csv {
        std::fs::write(p, report.to_csv())
            .map_err(|e| Failure::new(EXIT_INTERNAL, format!("{}: {e}", p.display())))?;
    }
    let holds = report.partition_identity_holds();
    let mut config = Config::new(
        "count",
        cli.seed,
        cli.precision,
        vec![
            lattice_path.display().to_string(),
            basis_path.display().to_string(),
        ],
    );
    config.grid = Some(grid.iter().map(conegaps::linalg::format_rat).collect());
    let out = CountReportOut {
        config,
        report,
        partition_identity_holds: holds,
    };
    emit(&cli.json, &out)?;
    if !holds {
        eprintln!("error: partition identity violated; this indicates a counting bug");
        return Ok(EXIT_IDENTITY);
    }
    Ok(0)
}

#[derive(Serialize)]
struct MinimaReportOut {
    config: Config,
    minima: conegaps::minima::MinimaReport,
    covering: conegaps::minima::CoveringRadius,
}

fn cmd_minima(cli: &Cli, lattice_path: &Path, basis_path: &Path) -> Result<u8, Failure> {
    let lattice: Lattice = read_json(lattice_path)?;
    let basis = load_positive_basis(&lattice, basis_path)?;
    let minima = minima_report(&lattice, &basis).map_err(Failure::from)?;
    let covering = covering_radius(&lattice).map_err(Failure::from)?;
    let out = MinimaReportOut {
        config: Config::new(
            "minima",
            cli.seed,
            cli.precision,
            vec![
                lattice_path.display().to_string(),
                basis_path.display().to_string(),
            ],
        ),
        minima,
        covering,
    };
    emit(&cli.json, &out)?;
    Ok(0)
}

#[derive(Serialize)]
#[serde(untagged)]
enum ThmRecord {
    Orthant(Box<conegaps::minima::SmallGapRecord>),
    Cone(Box<conegaps::minima::GenSmallRecord>),
}

#[derive(Serialize)]
struct ThmReportOut {
    config: Config,
    record: ThmRecord,
    all_hold: bool,
}

fn cmd_verify_thm(
    cli: &Cli,
    lattice_path: &Path,
    basis_path: &Path,
    cone: &Option<PathBuf>,
) -> Result<u8, Failure> {
    let lattice: Lattice = read_json(lattice_path)?;
    let (record, all_hold, inputs) = match cone {
        None => {
            let basis = load_positive_basis(&lattice, basis_path)?;
            let rec = verify_small_gap(&lattice, &basis).map_err(Failure::from)?;
            let hold = rec.all_hold;
            (
                ThmRecord::Orthant(Box::new(rec)),
                hold,
                vec![
                    lattice_path.display().to_string(),
                    basis_path.display().to_string(),
                ],
            )
        }
        Some(cone_path) => {
            let cone: Cone = read_json(cone_path)?;
            let m = lattice.transport(&cone).map_err(Failure::from)?;
            let basis = load_positive_basis(&m, basis_path)?;
            let rec = verify_gen_small(&lattice, &cone, &basis).map_err(Failure::from)?;
            let hold = rec.all_hold;
            (
                ThmRecord::Cone(Box::new(rec)),
                hold,
                vec![
                    lattice_path.display().to_string(),
                    basis_path.display().to_string(),
                    cone_path.display().to_string(),
                ],
            )
        }
    };
    let out = ThmReportOut {
        config: Config::new("verify-thm", cli.seed, cli.precision, inputs),
        record,
        all_hold,
    };
    emit(&cli.json, &out)?;
    if !all_hold {
        eprintln!("error: a proved inequality failed on this instance");
        return Ok(EXIT_INEQUALITY);
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// Number field commands
// ---------------------------------------------------------------------------

fn load_field(poly: &str) -> Result<NumberField, Failure> {
    let coeffs = parse_poly(poly).map_err(Failure::from)?;
    init_field(&coeffs, None).map_err(Failure::from)
}

#[derive(Serialize)]
struct RootOut {
    #[serde(serialize_with = "conegaps::linalg::serde_text::rational")]
    lo: Rat,
    #[serde(serialize_with = "conegaps::linalg::serde_text::rational")]
    hi: Rat,
}

#[derive(Serialize)]
struct FieldReport {
    config: Config,
    field: NumberField,
    degree: usize,
    #[serde(serialize_with = "conegaps::linalg::serde_text::bigint")]
    discriminant: BigInt,
    trace_gram: RationalMatrix,
    roots: Vec<RootOut>,
}

fn cmd_nf_init(cli: &Cli, poly: &str) -> Result<u8, Failure> {
    let field = load_field(poly)?;
    let width = Rat::new(BigInt::from(1), BigInt::from(1) << cli.precision.min(512));
    let roots = field
        .roots_refined(&width)
        .into_iter()
        .map(|r| RootOut { lo: r.lo, hi: r.hi })
        .collect();
    let report = FieldReport {
        config: Config::new("nf-init", cli.seed, cli.precision, vec![poly.to_string()]),
        degree: field.degree(),
        discriminant: field.discriminant().clone(),
        trace_gram: field.trace_gram().clone(),
        roots,
        field,
    };
    emit(&cli.json, &report)?;
    Ok(0)
}

fn load_ideal(
    field: &NumberField,
    basis: &Option<PathBuf>,
    principal: &Option<String>,
) -> Result<IdealLattice, Failure> {
    match (basis, principal) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(EXIT_BAD_INPUT, format!("{}: {e}", path.display())))?;
            let mut de = serde_json::Deserializer::from_str(&text);
            conegaps::nf::ideal::ideal_from_json(field, &mut de)
                .map_err(|e| Failure::new(EXIT_BAD_INPUT, e.to_string()))
        }
        (None, Some(coords)) => {
            let gen = field
                .element(parse_coords(coords)?)
                .map_err(Failure::from)?;
            IdealLattice::principal(field, &gen).map_err(Failure::from)
        }
        (None, None) => Ok(IdealLattice::whole_ring(field)),
        (Some(_), Some(_)) => Err(Failure::new(
            EXIT_BAD_INPUT,
            "give either --basis or --principal, not both",
        )),
    }
}

#[derive(Serialize)]
struct IdealReport {
    config: Config,
    ideal: IdealLattice,
    #[serde(serialize_with = "conegaps::linalg::serde_text::bigint")]
    norm: BigInt,
    gram: RationalMatrix,
    det_identity_holds: bool,
}

fn cmd_nf_ideal(
    cli: &Cli,
    poly: &str,
    basis: &Option<PathBuf>,
    principal: &Option<String>,
) -> Result<u8, Failure> {
    let field = load_field(poly)?;
    let ideal = load_ideal(&field, basis, principal)?;
    let report = IdealReport {
        config: Config::new("nf-ideal", cli.seed, cli.precision, vec![poly.to_string()]),
        norm: ideal.norm().clone(),
        gram: ideal.gram().clone(),
        det_identity_holds: ideal.det_identity_holds(&field),
        ideal,
    };
    emit(&cli.json, &report)?;
    Ok(0)
}

#[derive(Serialize)]
struct HeightsReport {
    config: Config,
    #[serde(skip_serializing_if = "Option::is_none")]
    element_height: Option<conegaps::nf::height::HeightValue>,
    report: conegaps::nf::height::HeightReport,
}

fn cmd_nf_heights(
    cli: &Cli,
    poly: &str,
    count: usize,
    element: &Option<String>,
) -> Result<u8, Failure> {
    let field = load_field(poly)?;
    let element_height = match element {
        Some(coords) => {
            let el = field
                .element(parse_coords(coords)?)
                .map_err(Failure::from)?;
            Some(weil_height(&field, &el, cli.precision).map_err(Failure::from)?)
        }
        None => None,
    };
    let sample = sample_elements(&field, count, cli.seed);
    let report =
        verify_height_inequalities(&field, &sample, cli.precision).map_err(Failure::from)?;
    let passed = report.all_passed;
    let decided = report.all_decided;
    let out = HeightsReport {
        config: Config::new(
            "nf-heights",
            cli.seed,
            cli.precision,
            vec![poly.to_string()],
        ),
        element_height,
        report,
    };
    emit(&cli.json, &out)?;
    if !decided {
        eprintln!(
            "error: a height comparison stayed undecided at {} bits",
            cli.precision
        );
        return Ok(EXIT_INTERNAL);
    }
    if !passed {
        eprintln!("error: a height inequality failed");
        return Ok(EXIT_INEQUALITY);
    }
    Ok(0)
}

#[derive(Serialize)]
struct IdealGapsReport {
    config: Config,
    record: conegaps::nf::verify::IdealGapsRecord,
}

fn cmd_nf_verify_gaps(
    cli: &Cli,
    poly: &str,
    ideal: &Option<PathBuf>,
    principal: &Option<String>,
    beta: &Option<PathBuf>,
) -> Result<u8, Failure> {
    let field = load_field(poly)?;
    let ideal = load_ideal(&field, ideal, principal)?;
    let beta = match beta {
        Some(path) => {
            let raw: Vec<RationalVector> = read_json(path)?;
            let mut out = Vec::with_capacity(raw.len());
            for v in raw {
                out.push(field.element(v.entries().to_vec()).map_err(Failure::from)?);
            }
            Some(out)
        }
        None => None,
    };
    let record = verify_ideal_gaps(&field, &ideal, beta, cli.seed).map_err(Failure::from)?;
    let pass = record.all_pass;
    let out = IdealGapsReport {
        config: Config::new(
            "nf-verify-gaps",
            cli.seed,
            cli.precision,
            vec![poly.to_string()],
        ),
        record,
    };
    emit(&cli.json, &out)?;
    if !pass {
        eprintln!("error: an ideal-gap bound failed on this instance");
        return Ok(EXIT_INEQUALITY);
    }
    Ok(0)
}
