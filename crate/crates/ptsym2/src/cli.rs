//! The `ptsym2` command-line front end.
//!
//! Subcommands map one-to-one onto library operations:
//!
//! ```text
//! algebra decompose     --matrix <J>  [--anti]           Pauli/τ coefficients
//! parity construct      --time-reversal <J>              commuting parity
//! commute check         --parity <J> --time-reversal <J> commutation + residual
//! commutant basis       --time-reversal <J>              oracle basis + involutions
//! geometry hyperboloid  --time-reversal <J> --n N --seed S [--format csv|json]
//! geometry ellipse      --parity <J> --n N [--format csv|json]
//! hamiltonian classify  --matrix <J>                     spectral class
//! hamiltonian family    --time-reversal <J> --params a,b,c,d
//! hamiltonian scan-bender --r F --theta a:b:n --s a:b:n [--format csv|json] [--jobs N]
//! ```
//!
//! Operator arguments take inline JSON or `@path` to read a file. Range
//! flags use `start:stop:count`, inclusive of both endpoints. Exit codes:
//! 0 success, 2 validation failure, 3 parse failure. Errors go to stderr
//! as single-line JSON; stdout carries only the payload, so pipelines can
//! consume it directly. Identical argv and seed produce byte-identical
//! output. `--tol` (or `PTSYM2_TOL`) overrides the constraint tolerance.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{pauli_decompose, tau_decompose_with_tol, AlgebraError, LinOp2};
use crate::geometry::{
    ellipse_for_parity, parity_to_point_with_tol, sample_hyperboloid,
    time_reversal_on_ellipse_with_tol, GeometryError,
};
use crate::hamiltonian::{
    bender_hamiltonian, classify_with_tol, family_from_symmetry, HamiltonianError,
};
use crate::json::{
    fmt_g17, parse_anti_op, parse_linop, parse_parity, parse_time_reversal, to_json_string,
    WireError,
};
use crate::symmetry::{
    commutant_basis, commute_residual_matrix, commutes_matrix_with_tol, construct_parity_with_tol,
    involutions_in_commutant, SymmetryError,
};
use crate::tol;

#[derive(Parser)]
#[command(
    name = "ptsym2",
    version,
    about = "Parity and time-reversal operator algebra on C^2",
    disable_help_subcommand = true
)]
struct Cli {
    /// Constraint-validation tolerance (default 1e-9).
    #[arg(long, global = true, env = "PTSYM2_TOL")]
    tol: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basis decompositions of linear and anti-linear operators.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Parity construction.
    #[command(subcommand)]
    Parity(ParityCmd),
    /// Commutation checks.
    #[command(subcommand)]
    Commute(CommuteCmd),
    /// Brute-force commutant oracle.
    #[command(subcommand)]
    Commutant(CommutantCmd),
    /// Hyperboloid and ellipse geometry.
    #[command(subcommand)]
    Geometry(GeometryCmd),
    /// PT-symmetric Hamiltonian tools.
    #[command(subcommand)]
    Hamiltonian(HamiltonianCmd),
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Coefficients over the Pauli basis, or the τ basis with --anti.
    Decompose {
        /// Inline JSON or @file: a matrix, or {"mat": ...} with --anti.
        #[arg(long)]
        matrix: String,
        /// Treat the input as an anti-linear operator.
        #[arg(long)]
        anti: bool,
    },
}

#[derive(Subcommand)]
enum ParityCmd {
    /// Build a nontrivial parity commuting with the time reversal.
    Construct {
        #[arg(long = "time-reversal")]
        time_reversal: String,
    },
}

#[derive(Subcommand)]
enum CommuteCmd {
    /// Matrix-level commutation check with residual.
    Check {
        #[arg(long)]
        parity: String,
        #[arg(long = "time-reversal")]
        time_reversal: String,
    },
}

#[derive(Subcommand)]
enum CommutantCmd {
    /// Basis of the commutant and the involutive solutions found in it.
    Basis {
        #[arg(long = "time-reversal")]
        time_reversal: String,
    },
}

#[derive(Subcommand)]
enum GeometryCmd {
    /// Sample commuting parities from the hyperboloid.
    Hyperboloid(HyperboloidArgs),
    /// Sweep time reversals around the commuting ellipse.
    Ellipse(EllipseArgs),
}

#[derive(Args)]
struct HyperboloidArgs {
    #[arg(long = "time-reversal")]
    time_reversal: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct EllipseArgs {
    #[arg(long)]
    parity: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum HamiltonianCmd {
    /// Unbroken/defective/broken classification with eigenvalues.
    Classify {
        #[arg(long)]
        matrix: String,
    },
    /// Member of the four-parameter family commuting with a time reversal.
    Family {
        #[arg(long = "time-reversal")]
        time_reversal: String,
        /// Four comma-separated reals.
        #[arg(long)]
        params: String,
    },
    /// Grid scan of [[r e^{iθ}, s], [s, r e^{-iθ}]] over θ and s.
    ScanBender(ScanBenderArgs),
}

#[derive(Args)]
struct ScanBenderArgs {
    #[arg(long)]
    r: f64,
    /// θ range start:stop:count, endpoints included.
    #[arg(long)]
    theta: String,
    /// s range start:stop:count, endpoints included.
    #[arg(long)]
    s: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
    /// Worker threads for grid cells; row order is independent of it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug)]
enum CliError {
    /// Exit 3: malformed input before any domain validation.
    Parse { message: String },
    /// Exit 2: well-formed input failing a domain constraint.
    Validation {
        kind: &'static str,
        message: String,
        residual: Option<f64>,
    },
}

impl CliError {
    fn parse(message: impl Into<String>) -> CliError {
        CliError::Parse {
            message: message.into(),
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 3,
            CliError::Validation { .. } => 2,
        }
    }

    fn stderr_json(&self) -> String {
        #[derive(Serialize)]
        struct Wire<'a> {
            error: &'a str,
            message: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            residual: Option<f64>,
        }
        let wire = match self {
            CliError::Parse { message } => Wire {
                error: "ParseError",
                message,
                residual: None,
            },
            CliError::Validation {
                kind,
                message,
                residual,
            } => Wire {
                error: kind,
                message,
                residual: *residual,
            },
        };
        to_json_string(&wire)
    }
}

fn validation(kind: &'static str, message: String, residual: Option<f64>) -> CliError {
    CliError::Validation {
        kind,
        message,
        residual,
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> CliError {
        let kind = match &e {
            AlgebraError::NonFinite => "NonFinite",
            AlgebraError::ZeroOperator => "ZeroOperator",
            AlgebraError::NotPhaseReal { .. } => "NotPhaseReal",
            AlgebraError::NotUnimodular { .. } => "NotUnimodular",
        };
        let residual = match &e {
            AlgebraError::NotPhaseReal { residual } | AlgebraError::NotUnimodular { residual } => {
                Some(*residual)
            }
            _ => None,
        };
        validation(kind, e.to_string(), residual)
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> CliError {
        if let SymmetryError::Algebra(inner) = &e {
            return inner.clone().into();
        }
        let kind = match &e {
            SymmetryError::Algebra(_) => unreachable!("handled above"),
            SymmetryError::ConstraintViolated { .. } => "ConstraintViolated",
            SymmetryError::NotUnimodular { .. } => "NotUnimodular",
            SymmetryError::NotInvolutionLike { .. } => "NotInvolutionLike",
            SymmetryError::NegativeSquare => "NegativeSquare",
            SymmetryError::TrivialParity => "TrivialParity",
            SymmetryError::NotDistinct => "NotDistinct",
            SymmetryError::NonRealPhase => "NonRealPhase",
        };
        let residual = match &e {
            SymmetryError::ConstraintViolated { residual }
            | SymmetryError::NotUnimodular { residual } => Some(*residual),
            SymmetryError::NotInvolutionLike { form } => Some(*form),
            _ => None,
        };
        validation(kind, e.to_string(), residual)
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> CliError {
        if let GeometryError::Symmetry(inner) = &e {
            return inner.clone().into();
        }
        let kind = match &e {
            GeometryError::Symmetry(_) => unreachable!("handled above"),
            GeometryError::ZeroAxis => "ZeroAxis",
            GeometryError::NotCommuting { .. } => "NotCommuting",
            GeometryError::NegativeSquare => "NegativeSquare",
            GeometryError::OffSurface { .. } => "OffSurface",
            GeometryError::TrivialParity => "TrivialParity",
        };
        let residual = match &e {
            GeometryError::NotCommuting { residual } | GeometryError::OffSurface { residual } => {
                Some(*residual)
            }
            _ => None,
        };
        validation(kind, e.to_string(), residual)
    }
}

impl From<HamiltonianError> for CliError {
    fn from(e: HamiltonianError) -> CliError {
        if let HamiltonianError::Symmetry(inner) = &e {
            return inner.clone().into();
        }
        let kind = match &e {
            HamiltonianError::Symmetry(_) => unreachable!("handled above"),
            HamiltonianError::ConditionsViolated { .. } => "ConditionsViolated",
            HamiltonianError::NotHermitian { .. } => "NotHermitian",
            HamiltonianError::BrokenSymmetry => "BrokenSymmetry",
            HamiltonianError::DefectiveCase => "DefectiveCase",
            HamiltonianError::NotCommuting { .. } => "NotCommuting",
            HamiltonianError::NegativeSquare => "NegativeSquare",
        };
        let residual = match &e {
            HamiltonianError::ConditionsViolated { residual }
            | HamiltonianError::NotHermitian { residual }
            | HamiltonianError::NotCommuting { residual } => Some(*residual),
            _ => None,
        };
        validation(kind, e.to_string(), residual)
    }
}

impl From<WireError> for CliError {
    fn from(e: WireError) -> CliError {
        match e {
            WireError::Syntax(err) => CliError::parse(err.to_string()),
            WireError::Domain(err) => err.into(),
            WireError::SquareMismatch { .. } => validation("SquareMismatch", e.to_string(), None),
            WireError::BadSign(_) => validation("BadSign", e.to_string(), None),
        }
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let err = CliError::parse(e.to_string());
            eprintln!("{}", err.stderr_json());
            return 3;
        }
    };
    let tolerance = cli.tol.unwrap_or(tol::CONSTRAINT);
    match dispatch(cli.command, tolerance) {
        Ok(payload) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(payload.as_bytes());
            0
        }
        Err(e) => {
            eprintln!("{}", e.stderr_json());
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, tolerance: f64) -> Result<String, CliError> {
    match command {
        Command::Algebra(AlgebraCmd::Decompose { matrix, anti }) => {
            let payload = read_payload(&matrix)?;
            if anti {
                let op = parse_anti_op(&payload)?;
                let coeffs = tau_decompose_with_tol(op, tolerance)?;
                Ok(json_line(&coeffs))
            } else {
                let op = parse_linop(&payload)?;
                Ok(json_line(&pauli_decompose(op)))
            }
        }
        Command::Parity(ParityCmd::Construct { time_reversal }) => {
            let t = parse_time_reversal(&read_payload(&time_reversal)?, tolerance)?;
            let p = construct_parity_with_tol(&t, tolerance)?;
            Ok(json_line(&p))
        }
        Command::Commute(CommuteCmd::Check {
            parity,
            time_reversal,
        }) => {
            let p = parse_parity(&read_payload(&parity)?, tolerance)?;
            let t = parse_time_reversal(&read_payload(&time_reversal)?, tolerance)?;
            #[derive(Serialize)]
            struct Out {
                commutes: bool,
                residual: f64,
            }
            Ok(json_line(&Out {
                commutes: commutes_matrix_with_tol(&p, &t, tolerance),
                residual: commute_residual_matrix(&p, &t),
            }))
        }
        Command::Commutant(CommutantCmd::Basis { time_reversal }) => {
            let t = parse_time_reversal(&read_payload(&time_reversal)?, tolerance)?;
            #[derive(Serialize)]
            struct Out {
                basis: Vec<LinOp2>,
                involutive: Vec<LinOp2>,
            }
            Ok(json_line(&Out {
                basis: commutant_basis(&t),
                involutive: involutions_in_commutant(&t),
            }))
        }
        Command::Geometry(GeometryCmd::Hyperboloid(args)) => hyperboloid_cmd(args, tolerance),
        Command::Geometry(GeometryCmd::Ellipse(args)) => ellipse_cmd(args, tolerance),
        Command::Hamiltonian(HamiltonianCmd::Classify { matrix }) => {
            let h = parse_linop(&read_payload(&matrix)?)?;
            Ok(json_line(&classify_with_tol(h, tolerance)?))
        }
        Command::Hamiltonian(HamiltonianCmd::Family {
            time_reversal,
            params,
        }) => {
            let t = parse_time_reversal(&read_payload(&time_reversal)?, tolerance)?;
            let params = parse_params4(&params)?;
            Ok(json_line(&family_from_symmetry(&t, params)))
        }
        Command::Hamiltonian(HamiltonianCmd::ScanBender(args)) => scan_bender_cmd(args, tolerance),
    }
}

#[derive(Serialize, Clone, Copy)]
struct HyperboloidRow {
    x: f64,
    y: f64,
    z: f64,
    f1: f64,
    f2: f64,
    f3: f64,
    b1: f64,
    b2: f64,
    b3: f64,
}

fn hyperboloid_cmd(args: HyperboloidArgs, tolerance: f64) -> Result<String, CliError> {
    check_count(args.n)?;
    let t = parse_time_reversal(&read_payload(&args.time_reversal)?, tolerance)?;
    let parities = sample_hyperboloid(&t, args.n, args.seed)?;
    let mut rows = Vec::with_capacity(parities.len());
    for p in &parities {
        let point = parity_to_point_with_tol(p, &t, tolerance)?;
        let (f, b) = p.fb().expect("samples are nontrivial");
        rows.push(HyperboloidRow {
            x: point.m.x,
            y: point.m.y,
            z: point.m.z,
            f1: f.x,
            f2: f.y,
            f3: f.z,
            b1: b.x,
            b2: b.y,
            b3: b.z,
        });
    }
    Ok(match args.format {
        OutputFormat::Json => json_line(&rows),
        OutputFormat::Csv => {
            let mut out = String::from("x,y,z,f1,f2,f3,b1,b2,b3\n");
            for r in &rows {
                let cells = [r.x, r.y, r.z, r.f1, r.f2, r.f3, r.b1, r.b2, r.b3];
                out.push_str(&csv_row(&cells));
            }
            out
        }
    })
}

#[derive(Serialize, Clone, Copy)]
struct EllipseRow {
    phi: f64,
    c1p: f64,
    c2p: f64,
    c0: f64,
    c1: f64,
    c2: f64,
    c3: f64,
}

fn ellipse_cmd(args: EllipseArgs, tolerance: f64) -> Result<String, CliError> {
    check_count(args.n)?;
    let p = parse_parity(&read_payload(&args.parity)?, tolerance)?;
    let spec = ellipse_for_parity(&p)?;
    let mut rows = Vec::with_capacity(args.n);
    for k in 0..args.n {
        let phi = k as f64 * std::f64::consts::TAU / args.n as f64;
        let t = time_reversal_on_ellipse_with_tol(&p, phi, tolerance)?;
        let c = t.coeffs().c();
        let cp = spec.frame.to_frame(t.c_tilde());
        rows.push(EllipseRow {
            phi,
            c1p: cp.x,
            c2p: cp.y,
            c0: c[0],
            c1: c[1],
            c2: c[2],
            c3: c[3],
        });
    }
    Ok(match args.format {
        OutputFormat::Json => json_line(&rows),
        OutputFormat::Csv => {
            let mut out = String::from("phi,c1p,c2p,c0,c1,c2,c3\n");
            for r in &rows {
                out.push_str(&csv_row(&[r.phi, r.c1p, r.c2p, r.c0, r.c1, r.c2, r.c3]));
            }
            out
        }
    })
}

#[derive(Serialize, Clone)]
struct ScanRow {
    theta: f64,
    s: f64,
    disc: f64,
    tag: &'static str,
}

fn scan_bender_cmd(args: ScanBenderArgs, tolerance: f64) -> Result<String, CliError> {
    if !args.r.is_finite() {
        return Err(CliError::parse("r must be finite"));
    }
    let thetas = parse_range(&args.theta)?;
    let ss = parse_range(&args.s)?;
    let jobs = args.jobs.clamp(1, thetas.len().max(1));
    let scan_column = |theta: f64| -> Vec<ScanRow> {
        ss.iter()
            .map(|&s| {
                let h = bender_hamiltonian(args.r, theta, s);
                let class = classify_with_tol(h.matrix(), tolerance)
                    .expect("bender matrices satisfy the symmetry conditions");
                ScanRow {
                    theta,
                    s,
                    disc: class.discriminant,
                    tag: class.tag.as_str(),
                }
            })
            .collect()
    };
    // strided fan-out over theta indices; rows re-assembled in index order
    let mut columns: Vec<Option<Vec<ScanRow>>> = vec![None; thetas.len()];
    if jobs <= 1 {
        for (i, &theta) in thetas.iter().enumerate() {
            columns[i] = Some(scan_column(theta));
        }
    } else {
        let chunks: Vec<Vec<(usize, Vec<ScanRow>)>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let thetas = &thetas;
                    let scan_column = &scan_column;
                    scope.spawn(move || {
                        let mut acc = Vec::new();
                        let mut i = j;
                        while i < thetas.len() {
                            acc.push((i, scan_column(thetas[i])));
                            i += jobs;
                        }
                        acc
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scan worker"))
                .collect()
        });
        for chunk in chunks {
            for (i, rows) in chunk {
                columns[i] = Some(rows);
            }
        }
    }
    let rows: Vec<ScanRow> = columns
        .into_iter()
        .flat_map(|c| c.expect("every theta index scanned"))
        .collect();
    Ok(match args.format {
        OutputFormat::Json => json_line(&rows),
        OutputFormat::Csv => {
            let mut out = String::from("theta,s,disc,tag\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt_g17(r.theta),
                    fmt_g17(r.s),
                    fmt_g17(r.disc),
                    r.tag
                ));
            }
            out
        }
    })
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = to_json_string(value);
    s.push('\n');
    s
}

fn csv_row(cells: &[f64]) -> String {
    let mut parts = Vec::with_capacity(cells.len());
    for c in cells {
        parts.push(fmt_g17(*c));
    }
    let mut row = parts.join(",");
    row.push('\n');
    row
}

const MAX_COUNT: usize = 10_000_000;

fn check_count(n: usize) -> Result<(), CliError> {
    if n > MAX_COUNT {
        return Err(CliError::parse(format!("count {n} exceeds the limit {MAX_COUNT}")));
    }
    Ok(())
}

/// Inline JSON, or the contents of a file when prefixed with `@`.
fn read_payload(arg: &str) -> Result<String, CliError> {
    if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::parse(format!("cannot read {path}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

/// `start:stop:count` with both endpoints included; `count = 1` yields
/// just `start`, `count = 0` nothing.
fn parse_range(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(CliError::parse(format!(
            "range must be start:stop:count, got {s:?}"
        )));
    };
    let start: f64 = start
        .parse()
        .map_err(|_| CliError::parse(format!("bad range start {start:?}")))?;
    let stop: f64 = stop
        .parse()
        .map_err(|_| CliError::parse(format!("bad range stop {stop:?}")))?;
    let count: usize = count
        .parse()
        .map_err(|_| CliError::parse(format!("bad range count {count:?}")))?;
    check_count(count)?;
    if !start.is_finite() || !stop.is_finite() {
        return Err(CliError::parse("range endpoints must be finite"));
    }
    Ok(match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..count)
            .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
            .collect(),
    })
}

fn parse_params4(s: &str) -> Result<[f64; 4], CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::parse(format!(
            "params must be four comma-separated reals, got {s:?}"
        )));
    }
    let mut out = [0.0; 4];
    for (slot, part) in out.iter_mut().zip(&parts) {
        let value: f64 = part
            .trim()
            .parse()
            .map_err(|_| CliError::parse(format!("bad parameter {part:?}")))?;
        if !value.is_finite() {
            return Err(CliError::parse("parameters must be finite"));
        }
        *slot = value;
    }
    Ok(out)
}
