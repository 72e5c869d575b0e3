//! Command-line front end: identity verification, φ², figure data and radial
//! tabulation.

use crate::blackhole::{lambda_of, radial_solutions, DeficitGeometry};
use crate::error::Error;
use crate::identities::{spheroidal_factor_audit, FactorAudit, IdentityCase, Manifest};
use crate::specfun::{axis_p, legendre_q, DegreeOrder};
use crate::vacuumpol::{cos_grid, figure1_data, phi2, DEFAULT_POLE_MARGIN};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Built-in manifest used when `--manifest` is not given.
pub const DEFAULT_MANIFEST: &str = include_str!("../manifests/default.toml");
const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "cosmic-horizon", version, about = "Vacuum polarization on a Schwarzschild horizon threaded by a cosmic string")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Residual tolerance, in [1e-12, 1e-3]
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Grid manifest (TOML); defaults to the built-in grid
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Output file; standard output when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub parallelism: Option<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity suite over a manifest
    Verify,
    /// φ² on the horizon by the closed form and by the point-splitting limit
    Phi2 {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
    },
    /// M²φ² against cos θ for several deficits
    Figure1 {
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 0.9, 0.75, 0.5])]
        alphas: Vec<f64>,
        /// Number of cos θ samples
        #[arg(long, default_value_t = 201)]
        points: usize,
        /// Largest |cos θ|
        #[arg(long, default_value_t = DEFAULT_POLE_MARGIN)]
        pole_margin: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
    },
    /// Tabulate the radial solutions of one mode
    Radial {
        #[arg(long, allow_hyphen_values = true)]
        n: i32,
        #[arg(long)]
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 20.0)]
        eta_max: f64,
        #[arg(long, default_value_t = 40)]
        points: usize,
    },
}

/// A failed run: exit code plus message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn config(msg: impl Into<String>) -> Self {
        Self { code: EXIT_CONFIG, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::Index(_) => EXIT_CONFIG,
            _ => EXIT_NUMERIC,
        };
        Self { code, msg: e.to_string() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    let mut warnings = Vec::new();
    let result = execute(&cli, &mut warnings);
    for w in &warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let written = result.and_then(|(body, code)| {
        match &cli.global.out {
            Some(path) => std::fs::write(path, &body)
                .map_err(|e| Failure { code: EXIT_CONFIG, msg: format!("cannot write {}: {e}", path.display()) })?,
            None => stdout
                .write_all(body.as_bytes())
                .map_err(|e| Failure { code: EXIT_CONFIG, msg: format!("cannot write output: {e}") })?,
        }
        Ok(code)
    });
    match written {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.msg);
            f.code
        }
    }
}

fn execute(cli: &Cli, warnings: &mut Vec<String>) -> Result<(String, i32), Failure> {
    let g = &cli.global;
    let threads = match g.parallelism {
        Some(n) => usize::from(n),
        None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::config(format!("cannot start worker pool: {e}")))?;
    if let Some(t) = g.tolerance {
        check_tolerance(t)?;
    }
    pool.install(|| match &cli.command {
        Command::Verify => cmd_verify(g, warnings),
        Command::Phi2 { theta, alpha, mass } => cmd_phi2(g, *theta, *alpha, *mass),
        Command::Figure1 { alphas, points, pole_margin, mass } => cmd_figure1(g, alphas, *points, *pole_margin, *mass),
        Command::Radial { n, l, m, alpha, mass, eta_max, points } => {
            cmd_radial(g, *n, *l, *m, *alpha, *mass, *eta_max, *points)
        }
    })
}

fn check_tolerance(t: f64) -> Result<(), Failure> {
    if (1e-12..=1e-3).contains(&t) {
        Ok(())
    } else {
        Err(Failure::config(format!("--tolerance {t:e} outside [1e-12, 1e-3]")))
    }
}

/// Shortest decimal at full precision: 17 significant digits.
fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn json<T: Serialize>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure { code: EXIT_NUMERIC, msg: e.to_string() })?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Serialize)]
struct VerifySummary {
    total: usize,
    passed: usize,
    failed: usize,
    errored: usize,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    tolerance: f64,
    summary: VerifySummary,
    cases: Vec<IdentityCase>,
    spheroidal_audit: Vec<FactorAudit>,
}

fn load_manifest(g: &GlobalOpts) -> Result<Manifest, Failure> {
    let (text, origin) = match &g.manifest {
        Some(p) => (
            std::fs::read_to_string(p).map_err(|e| Failure::config(format!("cannot read {}: {e}", p.display())))?,
            p.display().to_string(),
        ),
        None => (DEFAULT_MANIFEST.to_string(), "built-in manifest".to_string()),
    };
    Manifest::from_toml(&text).map_err(|e| Failure::config(format!("{origin}: {e}")))
}

fn cmd_verify(g: &GlobalOpts, warnings: &mut Vec<String>) -> Result<(String, i32), Failure> {
    let manifest = load_manifest(g)?;
    let tol = match (g.tolerance, manifest.tolerance) {
        (Some(t), _) => t,
        (None, Some(t)) => {
            check_tolerance(t)?;
            t
        }
        (None, None) => DEFAULT_TOLERANCE,
    };
    let specs = manifest.cases();
    if specs.is_empty() {
        warnings.push("manifest contains no cases".into());
    }
    let cases: Vec<IdentityCase> = specs.par_iter().map(|c| c.run(tol)).collect();
    let mut audits = Vec::new();
    if let Some(sph) = &manifest.spheroidal {
        let pts: Vec<(u32, f64, f64, f64, f64)> = sph
            .m
            .iter()
            .flat_map(|&m| sph.points.iter().map(move |[t, tp, s, sp]| (m, t.0, tp.0, s.0, sp.0)))
            .collect();
        for a in &sph.alpha {
            match spheroidal_factor_audit(a.0, &pts, tol) {
                Ok(audit) => audits.push(audit),
                Err(e) => warnings.push(format!("spheroidal audit at alpha = {} skipped: {e}", a.0)),
            }
        }
    }
    let errored = cases.iter().filter(|c| c.error.is_some()).count();
    let passed = cases.iter().filter(|c| c.passed).count();
    let failed = cases.len() - passed - errored;
    for c in cases.iter().filter(|c| !c.passed) {
        let what = c.error.clone().unwrap_or_else(|| format!("residual {:e}", c.residual));
        warnings.push(format!("{} {:?}: {what}", c.name, c.params));
    }
    let code = if errored > 0 {
        EXIT_NUMERIC
    } else if failed > 0 {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    };
    let summary = VerifySummary { total: cases.len(), passed, failed, errored };
    let body = match g.format.unwrap_or(Format::Json) {
        Format::Json => json(&VerifyReport { tolerance: tol, summary, cases, spheroidal_audit: audits })?,
        Format::Csv => {
            let mut s = String::from("name,params,lhs,rhs,residual,certified_tail,passed,error\n");
            for c in &cases {
                let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={}", num(*v))).collect();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    c.name,
                    params.join(";"),
                    num(c.lhs),
                    num(c.rhs),
                    num(c.residual),
                    num(c.certified_tail),
                    c.passed,
                    c.error_kind().unwrap_or("")
                );
            }
            s
        }
    };
    Ok((body, code))
}

fn cmd_phi2(g: &GlobalOpts, theta: f64, alpha: f64, mass: f64) -> Result<(String, i32), Failure> {
    let r = phi2(theta, alpha, mass)?;
    let body = match g.format {
        Some(Format::Json) => json(&r)?,
        Some(Format::Csv) => format!(
            "theta,alpha,mass,value_closed,value_limit,extrapolation_error,route_agreement\n{},{},{},{},{},{},{}\n",
            num(r.theta),
            num(r.alpha),
            num(r.mass),
            num(r.value_closed),
            num(r.value_limit),
            num(r.extrapolation_error),
            num(r.route_agreement)
        ),
        None => format!(
            "theta = {}\nalpha = {}\nmass = {}\nclosed form          = {:.12e}\npoint-splitting limit = {:.12e}\nextrapolation error  = {:.3e}\nroute agreement      = {:.3e}\n",
            r.theta, r.alpha, r.mass, r.value_closed, r.value_limit, r.extrapolation_error, r.route_agreement
        ),
    };
    let code = if r.route_agreement <= r.extrapolation_error { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok((body, code))
}

fn cmd_figure1(g: &GlobalOpts, alphas: &[f64], points: usize, margin: f64, mass: f64) -> Result<(String, i32), Failure> {
    let rows = figure1_data(alphas, &cos_grid(points, margin)?, mass)?;
    let body = match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("cos_theta,alpha,phi2_M2\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{}", num(r.cos_theta), num(r.alpha), num(r.phi2_m2));
            }
            s
        }
        Format::Json => json(&rows)?,
    };
    Ok((body, EXIT_OK))
}

#[derive(Debug, Serialize)]
struct RadialRow {
    eta: f64,
    p: f64,
    q: f64,
    /// `(η²−1)W[p, q]`
    wronskian: f64,
}

#[derive(Debug, Serialize)]
struct RadialReport {
    n: i32,
    l: u32,
    m: i32,
    alpha: f64,
    mass: f64,
    lambda: f64,
    /// "legendre" for `n = 0`, "numeric" otherwise
    branch: &'static str,
    expected_exponent: f64,
    exponent_fit: f64,
    wronskian_spread: f64,
    rows: Vec<RadialRow>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_radial(
    g: &GlobalOpts,
    n: i32,
    l: u32,
    m: i32,
    alpha: f64,
    mass: f64,
    eta_max: f64,
    points: usize,
) -> Result<(String, i32), Failure> {
    DeficitGeometry::new(alpha, mass)?;
    let lambda = lambda_of(l, m, alpha)?;
    if points < 2 || !(eta_max > 1.001) {
        return Err(Failure::config(format!("need --points ≥ 2 and --eta-max > 1.001, got {points}, {eta_max}")));
    }
    // η − 1 log-spaced from 10⁻³ to η_max − 1
    let (lo, hi) = (1e-3f64.ln(), (eta_max - 1.0).ln());
    let etas: Vec<f64> =
        (0..points).map(|i| 1.0 + (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp()).map(|e| e.min(eta_max)).collect();
    let expected = 0.5 * n.unsigned_abs() as f64;
    let (rows, fit, spread, branch) = if n == 0 {
        let d = DegreeOrder::new(lambda, 0.0);
        let rows = etas
            .iter()
            .map(|&e| {
                let (p, q) = (axis_p(d, e)?, legendre_q(lambda, e)?);
                // W[P_λ, Q_λ] = −1/(η²−1)
                Ok(RadialRow { eta: e, p, q, wronskian: -1.0 })
            })
            .collect::<crate::Result<Vec<_>>>()?;
        // exact exponent fit of ln P = c + s ln δ + a δ at δ ∈ {2, 4, 8}·10⁻⁴
        let fit = legendre_exponent(d)?;
        (rows, fit, 0.0, "legendre")
    } else {
        let pair = radial_solutions(n, lambda, eta_max)?;
        let rows = etas
            .iter()
            .map(|&e| Ok(RadialRow { eta: e, p: pair.p(e)?, q: pair.q(e)?, wronskian: pair.wronskian(e)? }))
            .collect::<crate::Result<Vec<_>>>()?;
        (rows, pair.exponent_fit()?, pair.wronskian_spread(&etas)?, "numeric")
    };
    let ok = (fit - expected).abs() <= 1e-3 && spread <= 1e-6;
    let report = RadialReport {
        n,
        l,
        m,
        alpha,
        mass,
        lambda,
        branch,
        expected_exponent: expected,
        exponent_fit: fit,
        wronskian_spread: spread,
        rows,
    };
    let body = match g.format.unwrap_or(Format::Json) {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut s = format!(
                "# n={n} l={l} m={m} alpha={} lambda={} exponent_fit={} wronskian_spread={}\neta,p,q,wronskian\n",
                num(alpha),
                num(lambda),
                num(fit),
                num(spread)
            );
            for r in &report.rows {
                let _ = writeln!(s, "{},{},{},{}", num(r.eta), num(r.p), num(r.q), num(r.wronskian));
            }
            s
        }
    };
    Ok((body, if ok { EXIT_OK } else { EXIT_VERIFY_FAILED }))
}

fn legendre_exponent(d: DegreeOrder) -> crate::Result<f64> {
    let ds = [2e-4f64, 4e-4, 8e-4];
    let mut rows = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for (i, &x) in ds.iter().enumerate() {
        rows[i] = [1.0, x.ln(), x];
        rhs[i] = axis_p(d, 1.0 + x)?.ln();
    }
    // eliminate c and a: two differences, then solve for s
    let r1 = [rows[1][1] - rows[0][1], rows[1][2] - rows[0][2], rhs[1] - rhs[0]];
    let r2 = [rows[2][1] - rows[1][1], rows[2][2] - rows[1][2], rhs[2] - rhs[1]];
    Ok((r1[2] * r2[1] - r2[2] * r1[1]) / (r1[0] * r2[1] - r2[0] * r1[1]))
}
