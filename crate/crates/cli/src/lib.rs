//! Command-line front end: JSON in and out for the core operations, CSV
//! boundary traces, and the `verify-paper` reproduction suite.

pub mod checks;
pub mod trace;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use xdisc_core::automorphisms::{aut_e_apply, aut_g2_apply, AutE, AutR2};
use xdisc_core::cjson::ComplexVec;
use xdisc_core::constructions::{
    ball_nongeodesic, ball_three_extremal, family_lem1, family_thla, family_thlb, lift_to_r2,
    verify_three_extremal_shape, ConstructionError, Lem1Params, LiftBranch, ThlaParams,
};
use xdisc_core::disc::Disc;
use xdisc_core::domains::{self, DomainId, Mode};
use xdisc_core::extremality::{certify_disc, four_extremal_scan, NodeSet, DEFAULT_PICK_TOL};
use xdisc_core::matrix2::CMatrix2;
use xdisc_core::rational::{BlaschkeProduct, DiscAutomorphism};

pub use checks::{run_all, VerifyReport, DEFAULT_SEED};

pub const SEED_ENV: &str = "XDISC_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) | CliError::Io(_) => EXIT_FAILURE,
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::ParameterOutOfRange(_) | ConstructionError::ParameterInvalid(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

fn failure(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "xdisc", version, about = "Extremal analytic discs: domains, automorphisms, certificates and constructions")]
pub struct Cli {
    /// Numerical tolerance for commands that take one.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for randomised commands; defaults to $XDISC_SEED, then a fixed value.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit JSON on stdout where a text summary would be printed.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Membership of a point in a domain.
    Check(CheckArgs),
    /// Apply an automorphism.
    Aut(AutArgs),
    /// Pick certificate of a disc at given nodes (discs into the symmetrised
    /// bidisc are lifted first).
    Certify(CertifyArgs),
    /// Build a disc from one of the extremal families.
    Construct(ConstructArgs),
    /// Lift a disc into the symmetrised bidisc to a symmetric 2×2 disc.
    Lift(LiftArgs),
    /// Degree and innerness report for a disc into the symmetrised bidisc.
    VerifyShape(DiscArg),
    /// Minimum of the four-extremal obstruction over a parameter grid.
    ScanFourExtremal(ScanArgs),
    /// Boundary traces as CSV.
    Trace(TraceArgs),
    /// Run the reproduction suite.
    VerifyPaper(VerifyArgs),
}

/// JSON arguments are given inline, as `@path`, or as `-` for stdin.
#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Domain tag, e.g. `g2`, `tetrablock`, `ball:3`, `cartanII`.
    #[arg(long)]
    pub domain: String,
    /// Point as a JSON list of `[re, im]` pairs.
    #[arg(long)]
    pub point: String,
    #[arg(long, value_enum, default_value = "open", conflicts_with_all = ["closed", "shilov"])]
    pub mode: ModeArg,
    /// Same as `--mode closed`.
    #[arg(long, conflicts_with = "shilov")]
    pub closed: bool,
    /// Test membership in the Shilov boundary instead, within `--tol`
    /// (default 1e-10).
    #[arg(long)]
    pub shilov: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Open,
    Closed,
}

#[derive(Debug, Args)]
pub struct AutArgs {
    #[arg(value_enum, default_value = "r2")]
    pub kind: AutKind,
    /// The automorphism: an `R_II` chain `{"steps": [...]}`, a tetrablock
    /// map `{"a", "b", "torus", "swap"}`, or a disc automorphism
    /// `{"rotation", "alpha"}`.
    #[arg(long, alias = "chain")]
    pub map: String,
    /// Point: a 2×2 matrix, a tetrablock triple, or an `(s, p)` pair.
    #[arg(long)]
    pub point: String,
    /// Apply the inverse (not offered for the tetrablock).
    #[arg(long)]
    pub inverse: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AutKind {
    /// Composition of `Φ_a` and `L_U` steps on `R_II`.
    R2,
    /// Automorphism of the tetrablock.
    E,
    /// Automorphism of the symmetrised bidisc induced by a disc automorphism.
    G2,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Disc JSON.
    #[arg(long)]
    pub disc: String,
    /// Nodes as a JSON list of `[re, im]` pairs.
    #[arg(long)]
    pub nodes: String,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Family parameters as JSON.
    #[arg(long, default_value = "{}")]
    pub params: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `{"a1", "m"?, "n"?}`: three-extremal discs into the ball.
    Ball3,
    /// `{"k", "a1"}`: (k+2)-extremal discs into `B_2` that are not geodesics.
    BallK2,
    /// `{"a_list", "u", "z"}`: nested `Φ_a` discs into `R_II`, pushed to `𝔾₂`.
    Lem1,
    /// Normal forms of three-extremals in `𝔾₂`; params carry `"case"`.
    Thla,
    Thla1,
    Thla2,
    Thla3,
    Thla4,
    /// `{"b1", "b2"}`: `(B1 + B2, B1 B2)` for Blaschke products of degree ≤ 2.
    Thlb,
}

#[derive(Debug, Args)]
pub struct DiscArg {
    /// Disc JSON.
    #[arg(long)]
    pub disc: String,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    /// Disc JSON.
    #[arg(long)]
    pub disc: String,
    #[arg(long, value_enum, default_value = "zero-free-corner")]
    pub branch: BranchArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BranchArg {
    ZeroFreeCorner,
    EvenSplit,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Number of `a1` values in `[0.1, 0.9]`; the default grids are the
    /// 65 × 64 reproduction grid.
    #[arg(long)]
    pub a1_points: Option<usize>,
    /// Number of circles `|γ| = r`, `r` in `[0, 0.95]`.
    #[arg(long)]
    pub radii: Option<usize>,
    /// Number of angles per circle.
    #[arg(long)]
    pub angles: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(value_enum)]
    pub what: TraceKind,
    /// Grid size per angle for torus traces.
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    /// `|x₂|` on the tetrablock trace.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Number of boundary samples for family-orbit.
    #[arg(long, default_value_t = 360)]
    pub samples: usize,
    /// Disc JSON for family-orbit; alternatively `--family` and `--params`.
    #[arg(long)]
    pub disc: Option<String>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long, default_value = "{}")]
    pub params: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TraceKind {
    ShilovG2,
    TetraBoundary,
    FamilyOrbit,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Multiplies every tolerance; values below 1 tighten the suite.
    #[arg(long, default_value_t = 1.0)]
    pub tol_scale: f64,
}

/// Parses the arguments and runs the command, printing errors to stderr.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Resolves the seed: the flag, then `XDISC_SEED`, then [`DEFAULT_SEED`].
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{SEED_ENV}={v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read_arg(s: &str) -> Result<String, CliError> {
    if s == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else if let Some(path) = s.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
    } else {
        Ok(s.to_string())
    }
}

fn parse_arg<T: DeserializeOwned>(what: &str, s: &str) -> Result<T, CliError> {
    let text = read_arg(s)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad {what}: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

/// Writes `text` to `--out` if given, otherwise to `stdout`.
fn emit(out: &Option<PathBuf>, stdout: &mut impl Write, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            writeln!(stdout, "{text}")?;
            Ok(())
        }
    }
}

fn write_file(p: &Path, text: &str) -> Result<(), CliError> {
    let mut f = fs::File::create(p)?;
    f.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        f.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Ball3Params {
    a1: f64,
    #[serde(default = "DiscAutomorphism::identity")]
    m: DiscAutomorphism,
    #[serde(default = "two")]
    n: usize,
}

fn two() -> usize {
    2
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BallK2Params {
    k: usize,
    a1: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ThlbParams {
    b1: BlaschkeProduct,
    b2: BlaschkeProduct,
}

/// Builds a disc of the given family from its JSON parameters.
pub fn construct(family: Family, params: &str) -> Result<Disc, CliError> {
    let text = read_arg(params)?;
    let bad = |e: serde_json::Error| CliError::Usage(format!("bad parameters for {family:?}: {e}"));
    let disc = match family {
        Family::Ball3 => {
            let p: Ball3Params = serde_json::from_str(&text).map_err(bad)?;
            ball_three_extremal(p.a1, &p.m, p.n)?
        }
        Family::BallK2 => {
            let p: BallK2Params = serde_json::from_str(&text).map_err(bad)?;
            ball_nongeodesic(p.k, p.a1)?
        }
        Family::Lem1 => {
            let p: Lem1Params = serde_json::from_str(&text).map_err(bad)?;
            family_lem1(&p)?
        }
        Family::Thla | Family::Thla1 | Family::Thla2 | Family::Thla3 | Family::Thla4 => {
            let mut value: serde_json::Value = serde_json::from_str(&text).map_err(bad)?;
            let case = match family {
                Family::Thla1 => Some("1"),
                Family::Thla2 => Some("2"),
                Family::Thla3 => Some("3"),
                Family::Thla4 => Some("4"),
                _ => None,
            };
            if let (Some(case), Some(obj)) = (case, value.as_object_mut()) {
                obj.insert("case".into(), json!(case));
            }
            let p: ThlaParams = serde_json::from_value(value).map_err(bad)?;
            family_thla(&p)?
        }
        Family::Thlb => {
            let p: ThlbParams = serde_json::from_str(&text).map_err(bad)?;
            family_thlb(&p.b1, &p.b2)?
        }
    };
    Ok(disc)
}

/// Runs a parsed command. `Ok` carries the exit code, which is
/// [`EXIT_FAILURE`] when the command ran but its check failed.
pub fn execute(cli: &Cli, stdout: &mut impl Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Check(a) => {
            let domain: DomainId = a.domain.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            let point: ComplexVec = parse_arg("point", &a.point)?;
            let x = point.0;
            let defect = domains::defect(domain, &x).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = if a.shilov {
                let tol = cli.tol.unwrap_or(1e-10);
                let member = domains::shilov_test(domain, &x, tol).map_err(|e| CliError::Usage(e.to_string()))?;
                json!({ "domain": domain, "shilov": true, "member": member, "defect": defect, "tolerance": tol })
            } else {
                let mode = match (a.mode, a.closed) {
                    (ModeArg::Closed, _) | (_, true) => Mode::Closed,
                    _ => Mode::Open,
                };
                let member = domains::contains(domain, &x, mode).map_err(|e| CliError::Usage(e.to_string()))?;
                let minkowski = if domain.is_balanced() {
                    Some(domains::minkowski(domain, &x, cli.tol.unwrap_or(1e-12)).map_err(failure)?)
                } else {
                    None
                };
                json!({ "domain": domain, "mode": mode, "member": member, "defect": defect, "minkowski": minkowski })
            };
            let member = report["member"].as_bool() == Some(true);
            emit(&cli.out, stdout, &to_json(&report))?;
            Ok(if member { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Aut(a) => {
            let text = match a.kind {
                AutKind::R2 => {
                    let chain: AutR2 = parse_arg("R_II automorphism", &a.map)?;
                    let chain = if a.inverse { chain.inverse() } else { chain };
                    let z: CMatrix2 = parse_arg("matrix", &a.point)?;
                    to_json(&chain.apply(&z).map_err(failure)?)
                }
                AutKind::E => {
                    if a.inverse {
                        return Err(CliError::Usage("--inverse is only offered for R_II chains".into()));
                    }
                    let psi: AutE = parse_arg("tetrablock automorphism", &a.map)?;
                    let x: ComplexVec = parse_arg("point", &a.point)?;
                    let x: [Complex64; 3] = x.0.try_into().map_err(|_| CliError::Usage("tetrablock points have three coordinates".into()))?;
                    to_json(&ComplexVec(aut_e_apply(&psi, &x).map_err(failure)?.to_vec()))
                }
                AutKind::G2 => {
                    let nu: DiscAutomorphism = parse_arg("disc automorphism", &a.map)?;
                    let nu = if a.inverse { nu.inverse() } else { nu };
                    let x: ComplexVec = parse_arg("point", &a.point)?;
                    let [s, p]: [Complex64; 2] = x.0.try_into().map_err(|_| CliError::Usage("points of G2 are pairs (s, p)".into()))?;
                    let (s2, p2) = aut_g2_apply(&nu, s, p);
                    to_json(&ComplexVec(vec![s2, p2]))
                }
            };
            emit(&cli.out, stdout, &text)?;
            Ok(EXIT_OK)
        }
        Command::Certify(a) => {
            let f: Disc = parse_arg("disc", &a.disc)?;
            // Discs into the symmetrised bidisc are certified on their lift.
            let f = if f.target() == DomainId::SymBidisc { lift_to_r2(&f, LiftBranch::ZeroFreeCorner)?.disc } else { f };
            let nodes: ComplexVec = parse_arg("nodes", &a.nodes)?;
            let nodes = NodeSet::new(nodes.0).map_err(|e| CliError::Usage(e.to_string()))?;
            let cert = certify_disc(&f, &nodes, cli.tol.unwrap_or(DEFAULT_PICK_TOL)).map_err(failure)?;
            emit(&cli.out, stdout, &to_json(&cert))?;
            Ok(EXIT_OK)
        }
        Command::Construct(a) => {
            let f = construct(a.family, &a.params)?;
            emit(&cli.out, stdout, &to_json(&f))?;
            Ok(EXIT_OK)
        }
        Command::Lift(a) => {
            let f: Disc = parse_arg("disc", &a.disc)?;
            let branch = match a.branch {
                BranchArg::ZeroFreeCorner => LiftBranch::ZeroFreeCorner,
                BranchArg::EvenSplit => LiftBranch::EvenSplit,
            };
            let lift = lift_to_r2(&f, branch)?;
            emit(&cli.out, stdout, &to_json(&lift))?;
            Ok(EXIT_OK)
        }
        Command::VerifyShape(a) => {
            let f: Disc = parse_arg("disc", &a.disc)?;
            let rep = verify_three_extremal_shape(&f)?;
            emit(&cli.out, stdout, &to_json(&rep))?;
            Ok(if rep.degree_ok && rep.inner { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::ScanFourExtremal(a) => {
            let (mut a1, mut gamma) = checks::four_extremal_grids();
            if a.a1_points.is_some() || a.radii.is_some() || a.angles.is_some() {
                a1 = xdisc_core::extremality::linspace(0.1, 0.9, a.a1_points.unwrap_or(65));
                let angles = a.angles.unwrap_or(8);
                gamma = xdisc_core::extremality::linspace(0.0, 0.95, a.radii.unwrap_or(8))
                    .into_iter()
                    .flat_map(|r| (0..angles).map(move |k| Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / angles as f64)))
                    .collect();
            }
            let scan = four_extremal_scan(&a1, &gamma).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&cli.out, stdout, &to_json(&scan))?;
            Ok(EXIT_OK)
        }
        Command::Trace(a) => {
            let mut buf = Vec::new();
            match a.what {
                TraceKind::ShilovG2 => trace::shilov_g2(a.grid, &mut buf)?,
                TraceKind::TetraBoundary => {
                    if !(0.0..=1.0).contains(&a.radius) {
                        return Err(CliError::Usage(format!("radius {} not in [0, 1]", a.radius)));
                    }
                    trace::tetra_boundary(a.grid, a.radius, &mut buf)?
                }
                TraceKind::FamilyOrbit => {
                    let f = match (&a.disc, a.family) {
                        (Some(d), None) => parse_arg("disc", d)?,
                        (None, Some(fam)) => construct(fam, &a.params)?,
                        _ => return Err(CliError::Usage("family-orbit needs exactly one of --disc and --family".into())),
                    };
                    trace::family_orbit(&f, a.samples, &mut buf)?
                }
            };
            let text = String::from_utf8(buf).expect("ascii csv");
            match &cli.out {
                Some(p) => write_file(p, &text)?,
                None => stdout.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::VerifyPaper(a) => {
            if !(a.tol_scale > 0.0) {
                return Err(CliError::Usage(format!("--tol-scale must be positive, got {}", a.tol_scale)));
            }
            let seed = resolve_seed(cli.seed)?;
            let report = run_all(seed, a.tol_scale);
            if let Some(p) = &cli.out {
                write_file(p, &to_json(&report))?;
            }
            if cli.json {
                writeln!(stdout, "{}", to_json(&report))?;
            } else {
                writeln!(stdout, "seed {seed}")?;
                for c in &report.checks {
                    let status = if c.status == checks::Status::Pass { "PASS" } else { "FAIL" };
                    writeln!(stdout, "{status} {} max_error={:.3e} tol={:.1e} | {}", c.id, c.max_error, c.tolerance, c.detail)?;
                }
                let s = &report.summary;
                writeln!(stdout, "{} passed, {} failed, {} total", s.passed, s.failed, s.total)?;
            }
            Ok(if report.all_pass() { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}
