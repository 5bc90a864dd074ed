//! `sympcliff` — exact quaternion / symplectic / Poisson algebra toolkit.
//!
//! Subcommands expose the unit multiplication tables, the expression
//! evaluator (Poisson brackets, commutators, quantization), Hamiltonian
//! field matrices, truncated operator matrices and their spectra, the
//! m-particle phase-space decomposition, and the named verification
//! suite with its canonical JSON report.
//!
//! Exit codes: 0 success, 1 evaluation error, 2 usage error, 3 at least
//! one verification check failed.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use sympcliff_core::dsl::{self, Mode, PolyValue, Value};
use sympcliff_core::endf::{EndfUnit, ENDF_TABLE};
use sympcliff_core::poisson::{ham, QuadPoly};
use sympcliff_core::process::{ProcessKind, SignedProcess, PROCESS_TABLE};
use sympcliff_core::quantize::{fock_realize, spectrum, weyl_quantize, FockMatrix, WeylElement};
use sympcliff_core::quaternion::Quaternion;
use sympcliff_core::symplectic::particle_phase_space;
use sympcliff_core::verify::run_suite;
use sympcliff_core::{ComplexF64, Endo2};

#[derive(Parser)]
#[command(
    name = "sympcliff",
    version,
    about = "Exact quaternion, symplectic, and Poisson algebra toolkit",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algebra {
    /// The eight-element signed exchange algebra.
    Process,
    /// The quaternion units e, i, j, k.
    Quaternion,
    /// The 2x2 matrix units id, J, A, B.
    Endf,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalMode {
    Quaternion,
    Poly,
    Endf,
}

impl From<EvalMode> for Mode {
    fn from(m: EvalMode) -> Mode {
        match m {
            EvalMode::Quaternion => Mode::Quaternion,
            EvalMode::Poly => Mode::Poly,
            EvalMode::Endf => Mode::Endf,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a 4x4 unit multiplication table (row times column)
    Tables {
        #[arg(long, value_enum)]
        algebra: Algebra,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Evaluate an expression of q and p (Poisson brackets included)
    Bracket {
        /// Expression such as "{q*p, p^2/2}"
        expr: String,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Matrix of the Hamiltonian vector field of a quadratic
    Ham {
        /// Quadratic polynomial in q and p, e.g. "q^2/2 + p^2/2"
        poly: String,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Normal-ordered operator image of a quadratic
    Quantize {
        /// Quadratic polynomial in q and p
        poly: String,
        /// Also print the truncated matrix at this dimension (3..=64)
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=64))]
        fock_dim: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Sorted eigenvalues of the Hermitian realization of a quadratic
    Spectrum {
        /// Quadratic polynomial in q and p
        poly: String,
        /// Truncation dimension (3..=64)
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..=64))]
        fock_dim: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Phase-space structure of an m-particle system (3 planes each)
    Decompose {
        /// Number of particles (at least 1)
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        particles: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Run every named check and print the canonical JSON report
    Verify {
        /// Master seed (default: $SYMPCLIFF_SEED, else 0)
        #[arg(long)]
        seed: Option<u64>,
        /// Random samples per randomized check
        #[arg(long, default_value_t = 100)]
        cases: u32,
        /// Also write the report to this file (same bytes as stdout)
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Evaluate an expression in a chosen algebra
    Eval {
        #[arg(long, value_enum)]
        mode: EvalMode,
        /// Expression in the mode's symbols (see long help of the mode)
        expr: String,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

/// Failure classes mapped onto exit codes: evaluation errors exit 1,
/// usage errors print help to stderr and exit 2.
enum CliError {
    Eval(String),
    Usage(String),
}

impl From<String> for CliError {
    fn from(message: String) -> Self {
        CliError::Eval(message)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(CliError::Eval(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(message)) => {
            let help = <Cli as clap::CommandFactory>::command().render_help();
            eprintln!("error: {message}\n\n{help}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Tables { algebra, format } => tables(algebra, format),
        Command::Bracket { expr, format } => eval(Mode::Poly, &expr, format),
        Command::Eval { mode, expr, format } => eval(mode.into(), &expr, format),
        Command::Ham { poly, format } => ham_command(&poly, format),
        Command::Quantize { poly, fock_dim, format } => {
            quantize_command(&poly, fock_dim.map(|d| d as usize), format)
        }
        Command::Spectrum { poly, fock_dim, format } => {
            spectrum_command(&poly, fock_dim as usize, format)
        }
        Command::Decompose { particles, format } => decompose(particles as usize, format),
        Command::Verify { seed, cases, report } => verify(seed, cases, report),
    }
}

// ---------------------------------------------------------------------------
// tables
// ---------------------------------------------------------------------------

fn quat_unit_label(q: &Quaternion) -> String {
    let units = [
        (Quaternion::e(), "e"),
        (Quaternion::i(), "i"),
        (Quaternion::j(), "j"),
        (Quaternion::k(), "k"),
    ];
    for (unit, name) in &units {
        if q == unit {
            return (*name).to_string();
        }
        if *q == -unit {
            return format!("-{name}");
        }
    }
    q.to_string()
}

fn endf_unit_label(unit: EndfUnit) -> &'static str {
    match unit {
        EndfUnit::Id => "id",
        EndfUnit::J => "J",
        EndfUnit::A => "A",
        EndfUnit::B => "B",
    }
}

fn tables(algebra: Algebra, format: OutputFormat) -> Result<ExitCode, CliError> {
    let (name, headers, cells): (&str, Vec<String>, Vec<Vec<String>>) = match algebra {
        Algebra::Process => {
            let headers: Vec<String> =
                ProcessKind::ALL.iter().map(|k| k.to_string()).collect();
            let cells = PROCESS_TABLE
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&(sign, kind)| SignedProcess::new(sign, kind).to_string())
                        .collect()
                })
                .collect();
            ("process", headers, cells)
        }
        Algebra::Quaternion => {
            let units =
                [Quaternion::e(), Quaternion::i(), Quaternion::j(), Quaternion::k()];
            let headers: Vec<String> = units.iter().map(quat_unit_label).collect();
            let cells = units
                .iter()
                .map(|a| units.iter().map(|b| quat_unit_label(&(a * b))).collect())
                .collect();
            ("quaternion", headers, cells)
        }
        Algebra::Endf => {
            let headers: Vec<String> =
                EndfUnit::ALL.iter().map(|&u| endf_unit_label(u).to_string()).collect();
            let cells = ENDF_TABLE
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&(sign, unit)| match sign {
                            sympcliff_core::process::Sign::Plus => {
                                endf_unit_label(unit).to_string()
                            }
                            sympcliff_core::process::Sign::Minus => {
                                format!("-{}", endf_unit_label(unit))
                            }
                        })
                        .collect()
                })
                .collect();
            ("endf", headers, cells)
        }
    };
    match format {
        OutputFormat::Text => {
            let width = headers
                .iter()
                .chain(cells.iter().flatten())
                .map(String::len)
                .max()
                .unwrap_or(1)
                + 2;
            println!("{name} unit table (row * column):");
            let mut head = format!("{:width$}", "");
            for h in &headers {
                head.push_str(&format!("{h:width$}"));
            }
            println!("{}", head.trim_end());
            for (h, row) in headers.iter().zip(&cells) {
                let mut line = format!("{h:width$}");
                for cell in row {
                    line.push_str(&format!("{cell:width$}"));
                }
                println!("{}", line.trim_end());
            }
        }
        OutputFormat::Json => print_json(&json!({
            "kind": "table",
            "algebra": name,
            "units": headers,
            "products": cells,
        })),
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// expression commands
// ---------------------------------------------------------------------------

fn poly_value_json(p: &PolyValue) -> serde_json::Value {
    json!({
        "kind": "polynomial",
        "coefficients": {
            "q^2": p.quad.cqq.to_string(),
            "q*p": p.quad.cqp.to_string(),
            "p^2": p.quad.cpp.to_string(),
            "q": p.linear.cq.to_string(),
            "p": p.linear.cp.to_string(),
            "1": p.scalar.to_string(),
        },
        "display": p.to_string(),
    })
}

fn endo_rows_json(m: &Endo2) -> serde_json::Value {
    json!([
        [m.m[0][0].to_string(), m.m[0][1].to_string()],
        [m.m[1][0].to_string(), m.m[1][1].to_string()],
    ])
}

fn endo_json(m: &Endo2) -> serde_json::Value {
    json!({
        "kind": "matrix",
        "rows": endo_rows_json(m),
        "display": m.to_string(),
    })
}

fn weyl_json(w: &WeylElement) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = w
        .terms()
        .iter()
        .map(|(&(m, n), c)| {
            json!({
                "q_power": m,
                "p_power": n,
                "re": c.re.to_string(),
                "im": c.im.to_string(),
            })
        })
        .collect();
    json!({ "kind": "operator", "terms": terms, "display": w.to_string() })
}

fn value_json(v: &Value) -> serde_json::Value {
    match v {
        Value::Scalar(r) => json!({ "kind": "scalar", "value": r.to_string() }),
        Value::Quaternion(q) => json!({
            "kind": "quaternion",
            "e": q.s.to_string(),
            "i": q.v.x.to_string(),
            "j": q.v.y.to_string(),
            "k": q.v.z.to_string(),
            "display": q.to_string(),
        }),
        Value::Poly(p) => poly_value_json(p),
        Value::Endf(m) => endo_json(m),
        Value::Weyl(w) => weyl_json(w),
        Value::Spectrum(eigs) => json!({ "kind": "spectrum", "eigenvalues": eigs }),
    }
}

fn eval(mode: Mode, expr: &str, format: OutputFormat) -> Result<ExitCode, CliError> {
    let value = dsl::eval_str(expr, mode).map_err(|e| e.to_string())?;
    match format {
        OutputFormat::Text => println!("{value}"),
        OutputFormat::Json => print_json(&value_json(&value)),
    }
    Ok(ExitCode::SUCCESS)
}

/// Evaluates an expression that must come out a homogeneous quadratic.
fn require_pure_quad(expr: &str, what: &str) -> Result<QuadPoly, String> {
    match dsl::eval_str(expr, Mode::Poly).map_err(|e| e.to_string())? {
        Value::Poly(p) if p.is_pure_quad() => Ok(p.quad),
        Value::Poly(_) => Err(format!(
            "{what} needs a homogeneous quadratic; drop the scalar/linear part"
        )),
        other => Err(format!(
            "{what} needs a quadratic polynomial in q and p, got a {}",
            other.kind_name()
        )),
    }
}

fn ham_command(poly: &str, format: OutputFormat) -> Result<ExitCode, CliError> {
    let f = require_pure_quad(poly, "ham")?;
    let m = ham(&f);
    match format {
        OutputFormat::Text => println!("{m}"),
        OutputFormat::Json => print_json(&endo_json(&m)),
    }
    Ok(ExitCode::SUCCESS)
}

fn fmt_complex(z: ComplexF64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im < 0.0 {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn fock_json(m: &FockMatrix) -> serde_json::Value {
    let entries: Vec<Vec<[f64; 2]>> = (0..m.dim())
        .map(|r| {
            (0..m.dim())
                .map(|c| {
                    let z = m.get(r, c);
                    [z.re, z.im]
                })
                .collect()
        })
        .collect();
    json!({ "kind": "fock-matrix", "dim": m.dim(), "entries": entries })
}

fn quantize_command(
    poly: &str,
    fock_dim: Option<usize>,
    format: OutputFormat,
) -> Result<ExitCode, CliError> {
    let f = require_pure_quad(poly, "quantize")?;
    let w = weyl_quantize(&f);
    let matrix = match fock_dim {
        Some(dim) => Some(fock_realize(&w, dim).map_err(|e| e.to_string())?),
        None => None,
    };
    match format {
        OutputFormat::Text => {
            println!("{w}");
            if let Some(m) = &matrix {
                for r in 0..m.dim() {
                    let row: Vec<String> =
                        (0..m.dim()).map(|c| fmt_complex(m.get(r, c))).collect();
                    println!("[{}]", row.join(", "));
                }
            }
        }
        OutputFormat::Json => {
            let mut out = weyl_json(&w);
            if let Some(m) = &matrix {
                out["matrix"] = fock_json(m);
            }
            print_json(&out);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn spectrum_command(poly: &str, dim: usize, format: OutputFormat) -> Result<ExitCode, CliError> {
    let f = require_pure_quad(poly, "spectrum")?;
    let mut eigs = spectrum(&f, dim).map_err(|e| e.to_string())?;
    eigs.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    match format {
        OutputFormat::Text => {
            for e in &eigs {
                println!("{e}");
            }
        }
        OutputFormat::Json => {
            print_json(&json!({ "kind": "spectrum", "dim": dim, "eigenvalues": eigs }))
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

fn decompose(particles: usize, format: OutputFormat) -> Result<ExitCode, CliError> {
    let space = particle_phase_space(particles);
    match format {
        OutputFormat::Text => {
            println!("particles: {particles}");
            println!("planes: {} (3 per particle)", space.planes.len());
            println!("phase-space dimension: {}", space.dimension());
            for (i, plane) in space.planes.iter().enumerate() {
                println!(
                    "plane {}: omega = {}, g = {}, j = {}, kappa = {}",
                    i + 1,
                    plane.omega,
                    plane.g,
                    plane.j,
                    plane.kappa
                );
            }
        }
        OutputFormat::Json => {
            let planes: Vec<serde_json::Value> = space
                .planes
                .iter()
                .map(|p| {
                    json!({
                        "omega": endo_rows_json(p.omega.matrix()),
                        "g": endo_rows_json(p.g.matrix()),
                        "j": endo_rows_json(&p.j),
                        "kappa": p.kappa.to_string(),
                    })
                })
                .collect();
            print_json(&json!({
                "kind": "phase-space",
                "particles": particles,
                "dimension": space.dimension(),
                "planes": planes,
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn verify(
    seed: Option<u64>,
    cases: u32,
    report_path: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let seed = match seed {
        Some(s) => s,
        None => match std::env::var("SYMPCLIFF_SEED") {
            Ok(raw) => raw.trim().parse().map_err(|_| {
                CliError::Usage(format!(
                    "SYMPCLIFF_SEED must be an unsigned integer, got {raw:?}"
                ))
            })?,
            Err(_) => 0,
        },
    };
    let report = run_suite(seed, cases);
    let rendered = report.canonical_json();
    print!("{rendered}");
    if let Some(path) = &report_path {
        std::fs::write(path, &rendered)
            .map_err(|e| format!("cannot write report to {}: {e}", path.display()))?;
    }
    eprintln!(
        "{} checks: {} passed, {} failed (seed {seed}, {cases} cases per check)",
        report.checks.len(),
        report.summary.passed,
        report.summary.failed
    );
    if report.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values are always printable")
    );
}
