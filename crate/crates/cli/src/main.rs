//! `fint` — command-line front end for the fint-core numerical engine.
//!
//! Exit codes: `0` success, `1` a numerical tolerance was violated (only
//! verification subcommands can fail this way), `2` validation error (bad
//! flags, malformed input files, inadmissible parameters).
//!
//! Every computational subcommand prints exactly one JSON object to stdout;
//! `report-all` prints a pass/fail matrix plus a `checksum` line. Floats are
//! printed in the shortest form that parses back to the identical IEEE-754
//! double, so equal results produce byte-equal output. `--manifest FILE`
//! records the argument vector, seed, tool version, and a SHA-256 checksum
//! of the output; re-running the recorded argv reproduces the checksum
//! exactly. The environment variable `FINT_THREADS` caps the worker pool
//! (builds without the `parallel` feature accept and ignore it).

mod jsonio;
mod manifest;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Value};

use fint_core::gamma_poisson::dyson::{dyson_evolution, OperatorHamiltonian};
use fint_core::gamma_poisson::incomplete::{
    lower_incomplete, upper_incomplete, upper_incomplete_cf,
};
use fint_core::gamma_poisson::kernels::delta_functional;
use fint_core::gamma_poisson::poisson::{poisson_tail, waiting_time_volume};
use fint_core::gamma_poisson::{
    gamma_normalization, gamma_normalization_closed, GammaMode, GammaSpec,
};
use fint_core::gaussian::{
    char_pair, free_kernel, normalization, propagator, GaussianSpec, LimitRegime, PropagatorKind,
    PropagatorRequest, PropagatorValue, QuadraticFormSpec,
};
use fint_core::group::{verify_propositions, GroupFunction, GroupSpec};
use fint_core::linalg::operator_norm;
use fint_core::report;
use fint_core::slicing::TimeGrid;
use fint_core::symplectic::{pfaffian, symplectic_char_pair, SkewFormSpec};

use jsonio::{
    constant_matrix, dvector_or_zeros, load_complex_matrix, load_group_fixtures,
    load_hamiltonian, load_real_matrix, matrix_pairs, parse_complex, HamiltonianFile,
};

#[derive(Parser)]
#[command(
    name = "fint",
    version,
    about = "Sliced functional integrals: Gaussian, skew, gamma, and Poisson kernels",
    propagate_version = true
)]
struct Cli {
    /// Write a reproducibility manifest (argv, seed, version, output
    /// checksum) to this file.
    #[arg(long, global = true, value_name = "FILE")]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Endpoint amplitude of a sliced free or harmonic kernel
    Propagator(PropagatorArgs),
    /// Gaussian kernel integrals against their closed forms
    #[command(subcommand)]
    Gaussian(GaussianCmd),
    /// Skew-form kernel integrals against their Pfaffian closed forms
    #[command(subcommand)]
    Symplectic(SymplecticCmd),
    /// Pfaffian of a real antisymmetric matrix, with a Pf² = det cross-check
    Pfaffian(PfaffianArgs),
    /// Product-gamma normalizations and incomplete-gamma functions
    #[command(subcommand)]
    Gamma(GammaCmd),
    /// Poisson tail probabilities and waiting-time volumes
    #[command(subcommand)]
    Poisson(PoissonCmd),
    /// Time-ordered operator evolution via the truncated series
    Dyson(DysonArgs),
    /// Convolution-algebra identity checks on a group
    #[command(subcommand)]
    Group(GroupCmd),
    /// Concentration and scale limits of the projected delta kernel
    #[command(subcommand)]
    Delta(DeltaCmd),
    /// Run the verification battery and print its pass/fail matrix
    ReportAll(ReportAllArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelKind {
    Free,
    Harmonic,
}

#[derive(Args)]
struct PropagatorArgs {
    /// Kernel kind.
    #[arg(long, value_enum)]
    kind: KernelKind,
    /// Oscillator frequency (harmonic kind only).
    #[arg(long, allow_hyphen_values = true, required_if_eq("kind", "harmonic"))]
    omega: Option<f64>,
    /// Particle mass (positive).
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    mass: f64,
    /// Scale s as `re[,im]`, Re(s) > 0; Re(s) = 0 needs --continuation.
    #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
    scale: Complex64,
    /// Number of uniform time slices.
    #[arg(long, default_value_t = 64)]
    slices: usize,
    /// Total time T > 0; the grid is uniform on [0, T].
    #[arg(long = "t", allow_hyphen_values = true)]
    t_total: f64,
    /// Left endpoint x(0).
    #[arg(long, allow_hyphen_values = true)]
    xa: f64,
    /// Right endpoint x(T).
    #[arg(long, allow_hyphen_values = true)]
    xb: f64,
    /// Allow the oscillatory boundary Re(s) = 0.
    #[arg(long)]
    continuation: bool,
}

#[derive(Subcommand)]
enum GaussianCmd {
    /// Kernel integral at a dual point, against the closed form
    Char(GaussianCharArgs),
    /// Closed-form normalization Z(0); √s in the 1-d fiducial case
    Norm(GaussianNormArgs),
}

#[derive(Args)]
struct GaussianCharArgs {
    /// Dimension d (defaults to 1, or to the --matrix size).
    #[arg(long)]
    dim: Option<usize>,
    /// Hermitian form Q as a JSON 2-D array of [re, im] pairs; identity if
    /// omitted.
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Scale s as `re[,im]`, Re(s) > 0.
    #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
    scale: Complex64,
    /// Dual point component `re[,im]`; repeat d times (zeros if omitted).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    zprime: Vec<Complex64>,
    /// Mean component `re[,im]`; repeat d times (zeros if omitted).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    mean: Vec<Complex64>,
    /// Boundary scalar B as `re[,im]`.
    #[arg(long, value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
    boundary: Complex64,
    /// Gauss–Hermite order per coordinate.
    #[arg(long, default_value_t = 48)]
    order: usize,
}

#[derive(Args)]
struct GaussianNormArgs {
    /// Dimension d (defaults to 1, or to the --matrix size).
    #[arg(long)]
    dim: Option<usize>,
    /// Hermitian form Q as a JSON 2-D array of [re, im] pairs; identity if
    /// omitted.
    #[arg(long, value_name = "FILE")]
    matrix: Option<PathBuf>,
    /// Scale s as `re[,im]`, Re(s) > 0.
    #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
    scale: Complex64,
    /// Boundary scalar B as `re[,im]`.
    #[arg(long, value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
    boundary: Complex64,
}

#[derive(Subcommand)]
enum SymplecticCmd {
    /// Skew kernel integral at a dual point, against the Pfaffian closed
    /// form
    Char(SymplecticCharArgs),
}

#[derive(Args)]
struct SymplecticCharArgs {
    /// Hermitian representative A of the skew form (Ω = iA), as a JSON 2-D
    /// array of [re, im] pairs.
    #[arg(long, value_name = "FILE")]
    matrix: PathBuf,
    /// Scale s as `re[,im]`, Re(s) > 0.
    #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
    scale: Complex64,
    /// Dual point component `re[,im]`; repeat d times (zeros if omitted).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    etaprime: Vec<Complex64>,
    /// Mean component `re[,im]`; repeat d times (zeros if omitted).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    mean: Vec<Complex64>,
    /// Boundary scalar B as `re[,im]`.
    #[arg(long, value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
    boundary: Complex64,
    /// Gauss–Hermite order per coordinate.
    #[arg(long, default_value_t = 48)]
    order: usize,
}

#[derive(Args)]
struct PfaffianArgs {
    /// Real antisymmetric matrix as a JSON 2-D array of numbers.
    #[arg(long, value_name = "FILE")]
    matrix: PathBuf,
}

#[derive(Subcommand)]
enum GammaCmd {
    /// Quadrature normalization against the closed form Π βₖ^(−α)
    Norm(GammaNormArgs),
    /// Lower/upper incomplete functions with a continued-fraction
    /// cross-check
    Incomplete(GammaIncompleteArgs),
}

#[derive(Args)]
struct GammaNormArgs {
    /// Exponent α as `re[,im]`, Re(α) > 0.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    alpha: Complex64,
    /// Rate βₖ as `re[,im]` with Re(βₖ) > 0; repeat once per factor.
    #[arg(long, value_parser = parse_complex, required = true, allow_hyphen_values = true)]
    beta: Vec<Complex64>,
}

#[derive(Args)]
struct GammaIncompleteArgs {
    /// Exponent α as `re[,im]`, Re(α) > 0.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    alpha: Complex64,
    /// Upper limit c as `re[,im]`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    c: Complex64,
}

#[derive(Subcommand)]
enum PoissonCmd {
    /// Tail probability P(N ≥ n) of a Poisson variable with intensity c
    Tail(PoissonTailArgs),
    /// Ordered waiting-time volume by seeded Monte Carlo
    Wait(PoissonWaitArgs),
}

#[derive(Args)]
struct PoissonTailArgs {
    /// Threshold level n ≥ 0.
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    /// Intensity c as `re[,im]`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    c: Complex64,
}

#[derive(Args)]
struct PoissonWaitArgs {
    /// Number of ordered arrivals k ≥ 0.
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    /// Window length c > 0.
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// RNG seed (runs replay bit-identically for a fixed seed).
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Args)]
struct DysonArgs {
    /// Generator file: {"kind":"sz_plus_t_sx"} or
    /// {"kind":"constant","matrix":[[[re,im],...],...]}.
    #[arg(long, value_name = "FILE")]
    hamiltonian: PathBuf,
    /// Truncation order of the time-ordered series.
    #[arg(long, default_value_t = 12)]
    order: usize,
    /// Evolution start time.
    #[arg(long, allow_hyphen_values = true)]
    t0: f64,
    /// Evolution end time.
    #[arg(long, allow_hyphen_values = true)]
    t1: f64,
    /// Uniform mesh panels for the nested integrals.
    #[arg(long, default_value_t = 2000)]
    panels: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupChoice {
    /// The cyclic group of order 6.
    Z6,
    /// The affine line (ax + b, a > 0) with its left Haar measure.
    Affine,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Check the five convolution-algebra identities on a group
    Verify(GroupVerifyArgs),
}

#[derive(Args)]
struct GroupVerifyArgs {
    /// Built-in group.
    #[arg(long, value_enum)]
    group: GroupChoice,
    /// Finite-group fixture file {order, product_table, functions}; its
    /// multiplication table defines the group. Finite groups only.
    #[arg(long, value_name = "FILE")]
    fixtures: Option<PathBuf>,
    /// Seed for the default random z6 function tables.
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TestFunction {
    /// exp(−ω²), value 1 at the origin.
    Gaussian,
    /// A smooth bump supported on [lo, hi].
    Window,
}

#[derive(Subcommand)]
enum DeltaCmd {
    /// Pair the truncated kernel with a test function; the result
    /// concentrates on f(0) as the cutoff grows
    Pairing(DeltaPairingArgs),
    /// Concentration / decay reports along canonical scale sequences
    Limits(DeltaLimitsArgs),
}

#[derive(Args)]
struct DeltaPairingArgs {
    /// Spectral cutoff.
    #[arg(long, default_value_t = 1e3)]
    cutoff: f64,
    /// Test function.
    #[arg(long, value_enum, default_value_t = TestFunction::Gaussian)]
    test: TestFunction,
    /// Window support start (window test only).
    #[arg(long, default_value_t = 0.05, allow_hyphen_values = true)]
    lo: f64,
    /// Window support end (window test only).
    #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
    hi: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gaussian,
    Skew,
}

#[derive(Clone, Copy, ValueEnum)]
enum Regime {
    /// |s| → 0: the kernel concentrates at the mean.
    Small,
    /// |s| → ∞: the closed form decays in the dual variable.
    Large,
}

#[derive(Args)]
struct DeltaLimitsArgs {
    /// Kernel family.
    #[arg(long, value_enum)]
    family: Family,
    /// Scale regime.
    #[arg(long, value_enum)]
    regime: Regime,
}

#[derive(Args)]
struct ReportAllArgs {
    /// Master seed; randomized criteria derive their streams from it.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Run a single criterion by its 1-based id instead of all of them.
    #[arg(long, value_name = "ID")]
    criterion: Option<usize>,
    /// Also write the full JSON report to this file.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// What a subcommand produced: a canonical JSON payload (checksummed and
/// normally printed), optional human-readable lines that replace it on
/// stdout, the seed that drove it, and whether a tolerance was violated.
struct Outcome {
    label: &'static str,
    payload: Value,
    matrix_lines: Option<Vec<String>>,
    seed: Option<u64>,
    tolerance_failed: bool,
}

impl Outcome {
    fn value(label: &'static str, payload: Value) -> Self {
        Outcome {
            label,
            payload,
            matrix_lines: None,
            seed: None,
            tolerance_failed: false,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(&cli));
}

fn run(cli: &Cli) -> i32 {
    if let Err(msg) = configure_threads() {
        eprintln!("fint: {msg}");
        return 2;
    }
    match dispatch(&cli.command) {
        Err(msg) => {
            eprintln!("fint: {msg}");
            2
        }
        Ok(out) => {
            let canonical = serde_json::to_string(&out.payload).expect("payload serializes");
            let checksum = manifest::sha256_hex(&canonical);
            match &out.matrix_lines {
                Some(lines) => {
                    for line in lines {
                        println!("{line}");
                    }
                    println!("checksum sha256:{checksum}");
                }
                None => println!("{canonical}"),
            }
            if let Some(path) = &cli.manifest {
                if let Err(msg) = manifest::write(path, out.label, out.seed, &checksum) {
                    eprintln!("fint: {msg}");
                    return 2;
                }
            }
            if out.tolerance_failed {
                1
            } else {
                0
            }
        }
    }
}

/// Apply the `FINT_THREADS` cap before any parallel work starts.
fn configure_threads() -> Result<(), String> {
    use std::env::VarError;
    let raw = match std::env::var("FINT_THREADS") {
        Err(VarError::NotPresent) => return Ok(()),
        Err(VarError::NotUnicode(_)) => {
            return Err("FINT_THREADS is not valid UTF-8".into());
        }
        Ok(raw) => raw,
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("FINT_THREADS must be a positive integer, got `{raw}`"))?;
    if n == 0 {
        return Err("FINT_THREADS must be a positive integer".into());
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| format!("cannot configure the thread pool: {e}"))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n; // sequential builds accept and ignore the cap
    Ok(())
}

fn dispatch(cmd: &Command) -> Result<Outcome, String> {
    match cmd {
        Command::Propagator(a) => run_propagator(a),
        Command::Gaussian(GaussianCmd::Char(a)) => run_gaussian_char(a),
        Command::Gaussian(GaussianCmd::Norm(a)) => run_gaussian_norm(a),
        Command::Symplectic(SymplecticCmd::Char(a)) => run_symplectic_char(a),
        Command::Pfaffian(a) => run_pfaffian(a),
        Command::Gamma(GammaCmd::Norm(a)) => run_gamma_norm(a),
        Command::Gamma(GammaCmd::Incomplete(a)) => run_gamma_incomplete(a),
        Command::Poisson(PoissonCmd::Tail(a)) => run_poisson_tail(a),
        Command::Poisson(PoissonCmd::Wait(a)) => run_poisson_wait(a),
        Command::Dyson(a) => run_dyson(a),
        Command::Group(GroupCmd::Verify(a)) => run_group_verify(a),
        Command::Delta(DeltaCmd::Pairing(a)) => run_delta_pairing(a),
        Command::Delta(DeltaCmd::Limits(a)) => run_delta_limits(a),
        Command::ReportAll(a) => run_report_all(a),
    }
}

fn compose(
    a: &PropagatorArgs,
    kind: PropagatorKind,
    slices: usize,
) -> Result<PropagatorValue, String> {
    let grid = TimeGrid::uniform(0.0, a.t_total, slices).map_err(|e| e.to_string())?;
    propagator(&PropagatorRequest {
        kind,
        mass: a.mass,
        scale: a.scale,
        grid,
        x_a: a.xa,
        x_b: a.xb,
        analytic_continuation: a.continuation,
    })
    .map_err(|e| e.to_string())
}

fn run_propagator(a: &PropagatorArgs) -> Result<Outcome, String> {
    if a.slices == 0 {
        return Err("--slices must be at least 1".into());
    }
    let kind = match a.kind {
        KernelKind::Free => PropagatorKind::Free,
        KernelKind::Harmonic => PropagatorKind::Harmonic {
            omega: a.omega.ok_or("--omega is required for --kind harmonic")?,
        },
    };
    let value = compose(a, kind, a.slices)?;
    // Error estimate: the free kernel has a closed form; the harmonic one
    // is compared against its own refinement at twice the slice count.
    let error = match kind {
        PropagatorKind::Free => {
            let closed = free_kernel(a.mass, a.scale, a.t_total, a.xa, a.xb);
            (value.value - closed).norm()
        }
        PropagatorKind::Harmonic { .. } => {
            let refined = compose(a, kind, a.slices * 2)?;
            (value.value - refined.value).norm()
        }
    };
    Ok(Outcome::value(
        "propagator",
        json!({
            "error": error,
            "method": value.method.as_str(),
            "slices": value.slices,
            "value_im": value.value.im,
            "value_re": value.value.re,
        }),
    ))
}

/// The explicit form matrix, or the identity in the requested dimension.
fn load_form_matrix(
    path: Option<&Path>,
    dim: Option<usize>,
) -> Result<DMatrix<Complex64>, String> {
    let q = match path {
        Some(p) => load_complex_matrix(p)?,
        None => {
            let d = dim.unwrap_or(1);
            if d == 0 {
                return Err("--dim must be at least 1".into());
            }
            DMatrix::identity(d, d)
        }
    };
    if let Some(d) = dim {
        if q.nrows() != d {
            return Err(format!(
                "--dim {d} conflicts with the {}×{} --matrix",
                q.nrows(),
                q.ncols()
            ));
        }
    }
    Ok(q)
}

fn run_gaussian_char(a: &GaussianCharArgs) -> Result<Outcome, String> {
    let q = load_form_matrix(a.matrix.as_deref(), a.dim)?;
    let d = q.nrows();
    let form = QuadraticFormSpec::new(q).map_err(|e| e.to_string())?;
    let mean = dvector_or_zeros(&a.mean, d, "--mean")?;
    let zprime = dvector_or_zeros(&a.zprime, d, "--zprime")?;
    let spec = GaussianSpec::new(form, mean, a.scale, a.boundary).map_err(|e| e.to_string())?;
    let pair = char_pair(&spec, &zprime, a.order).map_err(|e| e.to_string())?;
    let v = pair.theta_integral.value;
    Ok(Outcome::value(
        "gaussian char",
        json!({
            "closed_im": pair.z_closed.im,
            "closed_re": pair.z_closed.re,
            "error": pair.theta_integral.abs_error_estimate,
            "gap": (v - pair.z_closed).norm(),
            "method": pair.theta_integral.method.as_str(),
            "order": pair.theta_integral.samples_or_order,
            "value_im": v.im,
            "value_re": v.re,
        }),
    ))
}

fn run_gaussian_norm(a: &GaussianNormArgs) -> Result<Outcome, String> {
    let q = load_form_matrix(a.matrix.as_deref(), a.dim)?;
    let d = q.nrows();
    let form = QuadraticFormSpec::new(q).map_err(|e| e.to_string())?;
    let spec = GaussianSpec::new(form, nalgebra::DVector::zeros(d), a.scale, a.boundary)
        .map_err(|e| e.to_string())?;
    let z0 = normalization(&spec).map_err(|e| e.to_string())?;
    Ok(Outcome::value(
        "gaussian norm",
        json!({
            "value_im": z0.im,
            "value_re": z0.re,
        }),
    ))
}

fn run_symplectic_char(a: &SymplecticCharArgs) -> Result<Outcome, String> {
    let rep = load_complex_matrix(&a.matrix)?;
    let d = rep.nrows();
    let mean = dvector_or_zeros(&a.mean, d, "--mean")?;
    let spec = SkewFormSpec::from_representative(rep, a.scale, mean, a.boundary)
        .map_err(|e| e.to_string())?;
    let eta = dvector_or_zeros(&a.etaprime, d, "--etaprime")?;
    let pair = symplectic_char_pair(&spec, &eta, a.order).map_err(|e| e.to_string())?;
    let v = pair.theta_integral.value;
    Ok(Outcome::value(
        "symplectic char",
        json!({
            "closed_im": pair.z_closed.im,
            "closed_re": pair.z_closed.re,
            "error": pair.theta_integral.abs_error_estimate,
            "gap": (v - pair.z_closed).norm(),
            "method": pair.theta_integral.method.as_str(),
            "order": pair.theta_integral.samples_or_order,
            "value_im": v.im,
            "value_re": v.re,
        }),
    ))
}

fn run_pfaffian(a: &PfaffianArgs) -> Result<Outcome, String> {
    let m = load_real_matrix(&a.matrix)?;
    let pf = pfaffian(&m).map_err(|e| e.to_string())?;
    let det = m.determinant();
    let det_residual = (pf * pf - det).abs() / det.abs().max(1.0);
    Ok(Outcome::value(
        "pfaffian",
        json!({
            "det_residual": det_residual,
            "value": pf,
        }),
    ))
}

fn run_gamma_norm(a: &GammaNormArgs) -> Result<Outcome, String> {
    let spec = GammaSpec::new(a.alpha, a.beta.clone(), None, GammaMode::RealPositive)
        .map_err(|e| e.to_string())?;
    let quad = gamma_normalization(&spec).map_err(|e| e.to_string())?;
    let closed = gamma_normalization_closed(&spec);
    Ok(Outcome::value(
        "gamma norm",
        json!({
            "closed_im": closed.im,
            "closed_re": closed.re,
            "error": quad.abs_error_estimate,
            "gap": (quad.value - closed).norm(),
            "method": quad.method.as_str(),
            "value_im": quad.value.im,
            "value_re": quad.value.re,
        }),
    ))
}

fn run_gamma_incomplete(a: &GammaIncompleteArgs) -> Result<Outcome, String> {
    let lower = lower_incomplete(a.alpha, a.c).map_err(|e| e.to_string())?;
    let upper = upper_incomplete(a.alpha, a.c).map_err(|e| e.to_string())?;
    let cf = upper_incomplete_cf(a.alpha, a.c).map_err(|e| e.to_string())?;
    Ok(Outcome::value(
        "gamma incomplete",
        json!({
            "cf_gap": (upper - cf).norm(),
            "lower_im": lower.im,
            "lower_re": lower.re,
            "upper_im": upper.im,
            "upper_re": upper.re,
        }),
    ))
}

fn run_poisson_tail(a: &PoissonTailArgs) -> Result<Outcome, String> {
    let v = poisson_tail(a.n, a.c).map_err(|e| e.to_string())?;
    // Real intensities give exactly real tails; print the scalar then.
    let payload = if v.im == 0.0 {
        json!({ "value": v.re })
    } else {
        json!({ "value_im": v.im, "value_re": v.re })
    };
    Ok(Outcome::value("poisson tail", payload))
}

fn run_poisson_wait(a: &PoissonWaitArgs) -> Result<Outcome, String> {
    let r = waiting_time_volume(a.k, a.c, a.samples, a.seed).map_err(|e| e.to_string())?;
    Ok(Outcome {
        label: "poisson wait",
        payload: json!({
            "error": r.abs_error_estimate,
            "samples": r.samples_or_order,
            "seed": a.seed,
            "value_im": r.value.im,
            "value_re": r.value.re,
        }),
        matrix_lines: None,
        seed: Some(a.seed),
        tolerance_failed: false,
    })
}

fn run_dyson(a: &DysonArgs) -> Result<Outcome, String> {
    let h = match load_hamiltonian(&a.hamiltonian)? {
        HamiltonianFile::SzPlusTSx => OperatorHamiltonian::sz_plus_t_sx(a.t0, a.t1),
        HamiltonianFile::Constant { matrix } => {
            let m = constant_matrix(&a.hamiltonian, matrix)?;
            OperatorHamiltonian::constant(m, a.t0, a.t1)
        }
    }
    .map_err(|e| e.to_string())?;
    let grid = TimeGrid::uniform(a.t0, a.t1, a.panels).map_err(|e| e.to_string())?;
    let ev = dyson_evolution(&h, a.order, &grid, None).map_err(|e| e.to_string())?;
    let dim = ev.matrix.nrows();
    let drift = operator_norm(&(ev.matrix.adjoint() * &ev.matrix - DMatrix::identity(dim, dim)));
    Ok(Outcome::value(
        "dyson",
        json!({
            "dim": dim,
            "matrix": matrix_pairs(&ev.matrix),
            "nodes": ev.nodes,
            "order": ev.order,
            "truncation_bound": ev.truncation_bound,
            "unitarity_drift": drift,
        }),
    ))
}

fn group_outcome(
    label: &str,
    g: &GroupSpec,
    fixtures: &[GroupFunction<Complex64>],
    seed: Option<u64>,
) -> Result<Outcome, String> {
    let rep = verify_propositions(g, fixtures).map_err(|e| e.to_string())?;
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|ch| {
            json!({
                "identity": ch.identity,
                "passed": ch.passed,
                "residual": ch.residual,
                "tolerance": ch.tolerance,
            })
        })
        .collect();
    let all_passed = rep.all_passed();
    Ok(Outcome {
        label: "group verify",
        payload: json!({
            "all_passed": all_passed,
            "checks": checks,
            "group": label,
            "max_residual": rep.max_residual(),
        }),
        matrix_lines: None,
        seed,
        tolerance_failed: !all_passed,
    })
}

fn run_group_verify(a: &GroupVerifyArgs) -> Result<Outcome, String> {
    match (a.group, &a.fixtures) {
        (GroupChoice::Affine, Some(_)) => Err(
            "--fixtures applies to finite groups; the affine fixtures (smooth bumps) are built in"
                .into(),
        ),
        (GroupChoice::Affine, None) => {
            let fixtures = report::affine_demo_fixtures();
            group_outcome("affine", &GroupSpec::affine_line(), &fixtures, None)
        }
        (GroupChoice::Z6, Some(path)) => {
            let file = load_group_fixtures(path)?;
            let g = GroupSpec::finite(file.product_table, None).map_err(|e| e.to_string())?;
            let fixtures = file
                .functions
                .iter()
                .map(|f| {
                    GroupFunction::table(
                        f.values
                            .iter()
                            .map(|p| Complex64::new(p[0], p[1]))
                            .collect(),
                    )
                    .map_err(|e| format!("function `{}`: {e}", f.label))
                })
                .collect::<Result<Vec<_>, _>>()?;
            group_outcome("z6", &g, &fixtures, None)
        }
        (GroupChoice::Z6, None) => {
            let g = GroupSpec::cyclic(6).map_err(|e| e.to_string())?;
            let fixtures = report::z6_scalar_fixtures(a.seed);
            group_outcome("z6", &g, &fixtures, Some(a.seed))
        }
    }
}

/// Smooth bump on (0, 1), peak-normalized to 1 — the same window shape the
/// verification battery pairs against.
fn bump01(t: f64) -> f64 {
    if t > 0.0 && t < 1.0 {
        (4.0 - 1.0 / (t * (1.0 - t))).exp()
    } else {
        0.0
    }
}

fn window(x: f64, lo: f64, hi: f64) -> f64 {
    bump01((x - lo) / (hi - lo))
}

fn run_delta_pairing(a: &DeltaPairingArgs) -> Result<Outcome, String> {
    let spectrum = [Complex64::new(1.0, 0.0)];
    let (result, expected) = match a.test {
        TestFunction::Gaussian => {
            let r = delta_functional(&spectrum, a.cutoff, |w| Complex64::new((-w * w).exp(), 0.0))
                .map_err(|e| e.to_string())?;
            (r, 1.0)
        }
        TestFunction::Window => {
            if !(a.lo < a.hi) {
                return Err("--lo must be below --hi".into());
            }
            let (lo, hi) = (a.lo, a.hi);
            let r = delta_functional(&spectrum, a.cutoff, move |w| {
                Complex64::new(window(w, lo, hi), 0.0)
            })
            .map_err(|e| e.to_string())?;
            // The pairing concentrates on the test function's value at 0.
            (r, window(0.0, lo, hi))
        }
    };
    Ok(Outcome::value(
        "delta pairing",
        json!({
            "error": result.abs_error_estimate,
            "expected": expected,
            "gap": (result.value - Complex64::new(expected, 0.0)).norm(),
            "value_im": result.value.im,
            "value_re": result.value.re,
        }),
    ))
}

fn run_delta_limits(a: &DeltaLimitsArgs) -> Result<Outcome, String> {
    let regime = match a.regime {
        Regime::Small => LimitRegime::SmallScale,
        Regime::Large => LimitRegime::LargeScale,
    };
    let rep = match a.family {
        Family::Gaussian => report::gaussian_scale_report(regime),
        Family::Skew => report::skew_scale_report(regime),
    };
    let samples: Vec<Value> = rep
        .samples
        .iter()
        .map(|s| {
            json!({
                "density": s.density_at_probe,
                "normalized_im": s.normalized_theta.im,
                "normalized_re": s.normalized_theta.re,
                "s_im": s.s.im,
                "s_re": s.s.re,
                "z_im": s.z_value.im,
                "z_re": s.z_value.re,
            })
        })
        .collect();
    Ok(Outcome::value(
        "delta limits",
        json!({
            "family": match a.family { Family::Gaussian => "gaussian", Family::Skew => "skew" },
            "fitted_slope": rep.fitted_decay_slope,
            "predicted_slope": rep.predicted_decay_slope,
            "regime": match a.regime { Regime::Small => "small", Regime::Large => "large" },
            "samples": samples,
        }),
    ))
}

fn run_report_all(a: &ReportAllArgs) -> Result<Outcome, String> {
    let reports = match a.criterion {
        Some(id) => vec![report::run_one(id, a.seed).ok_or_else(|| {
            format!("--criterion must be in 1..={}", report::CRITERION_COUNT)
        })?],
        None => report::run_all(a.seed),
    };
    let lines: Vec<String> = reports.iter().map(|r| r.line()).collect();
    let failed = reports.iter().any(|r| !r.passed);
    let payload = json!({
        "criteria": reports,
        "schema_version": 1,
        "seed": a.seed,
    });
    if let Some(out) = &a.out {
        let pretty = serde_json::to_string_pretty(&payload).expect("payload serializes");
        std::fs::write(out, pretty + "\n")
            .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    }
    Ok(Outcome {
        label: "report-all",
        payload,
        matrix_lines: Some(lines),
        seed: Some(a.seed),
        tolerance_failed: failed,
    })
}
