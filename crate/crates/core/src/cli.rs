//! Command-line front end: `analyze`, `scan volume|integrability|decay` and
//! `verify loja|chebyshev|remez|degenerate`.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::admissibility::{admissible_degree, is_admissible, AdmissibilityError};
use crate::bounds::{admissible_volume_bound, baseline_ccw_bound, chain_volume_bound, BoundsError};
use crate::integral::{decay_scan, integrability_scan, DecayScanResult, IntegralError, LevelConfig, QuadratureConfig};
use crate::lojacheck::{chebyshev_floor_check, lojasiewicz_check, LojaConfig, LojaError};
use crate::montecarlo::degenerate::degenerate_scenario_scan;
use crate::montecarlo::remez::remez_check;
use crate::montecarlo::{bound_tightness, log_grid, volume_scan, Axis, LabError, ScanConfig, ScanResult, Tightness};
use crate::poly::{parse_polynomial, ExponentVector, PolyError, Polynomial};
use crate::report::{analyze, Envelope, Header};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

/// `println!` that ignores a closed stdout (e.g. output piped into `head`).
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Debug, Parser)]
#[command(
    name = "polyvol",
    version,
    about = "Sublevel-set volume, integrability and oscillatory-decay bounds for real polynomials"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Polynomial in x1..xn, e.g. "x1^5 + x1*x2^3 + x2^2".
    #[arg(long, global = true)]
    pub poly: Option<String>,
    /// Number of variables; defaults to the largest index used.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Write the JSON result to this file.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Write JSON and column files into this directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Base seed for all random streams (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true, env = "POLYVOL_THREADS")]
    pub threads: Option<usize>,
    /// JSON configuration file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symbolic analysis: admissible monomials, Newton distance, predicted exponents.
    Analyze,
    /// Numerical labs: volume, integrability and decay scans.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Empirical checks of individual inequalities.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand)]
pub enum ScanCommand {
    /// Sublevel-set volumes over a δ × r grid.
    Volume(ScanFlags),
    /// Finite/divergent verdicts for ∫|P|^(-mu) over a mu grid.
    Integrability(ScanFlags),
    /// |∫ exp(i λ P)| over a λ grid.
    Decay(ScanFlags),
}

#[derive(Debug, Args, Default)]
pub struct ScanFlags {
    /// Samples per cell (volume) or per level (integrability).
    #[arg(long)]
    pub samples: Option<u64>,
    /// Comma-separated radii.
    #[arg(long, value_delimiter = ',')]
    pub r_grid: Option<Vec<f64>>,
    /// Comma-separated exponents.
    #[arg(long, value_delimiter = ',')]
    pub mu_grid: Option<Vec<f64>>,
    /// Relative accuracy requested from the decay quadrature.
    #[arg(long)]
    pub target_rel_err: Option<f64>,
    /// Box half-width for the decay scan.
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Sample the global Łojasiewicz inequality for an admissible monomial.
    Loja {
        /// Admissible exponent, e.g. "1,3"; defaults to the admissible-degree minimizer.
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<u32>>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
    },
    /// Minimum of 2^(2d-1) max_[0,1] |q| over random monic q of degree d.
    Chebyshev {
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Doubling inequality sup_box |P| <= (4n/f)^d sup_omega |P|.
    Remez {
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        #[arg(long, default_value_t = 0.5)]
        fraction: f64,
    },
    /// Volume scan of (x2 - x1^3)^2 + (x1 - x2^3)^2.
    Degenerate {
        #[arg(long)]
        samples: Option<u64>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Syntax { .. } | PolyError::VariableOutOfRange { .. } | PolyError::DivisionByZero { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Poly(p) => p.into(),
            BoundsError::InvalidInput(_) => CliError::Usage(e.to_string()),
            _ => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<IntegralError> for CliError {
    fn from(e: IntegralError) -> Self {
        match e {
            IntegralError::Lab(l) => l.into(),
            IntegralError::Bounds(b) => b.into(),
            IntegralError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            IntegralError::Precondition(_) => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<LojaError> for CliError {
    fn from(e: LojaError) -> Self {
        match e {
            LojaError::Poly(p) => p.into(),
            LojaError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            LojaError::InvalidCertificate => CliError::Unsupported(e.to_string()),
        }
    }
}

impl From<AdmissibilityError> for CliError {
    fn from(e: AdmissibilityError) -> Self {
        CliError::Unsupported(e.to_string())
    }
}

/// Contents of a `--config` file. One schema serves every lab; fields a
/// command does not use are ignored by it.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub delta_grid: Option<Vec<f64>>,
    pub delta_range: Option<[f64; 2]>,
    pub points: Option<usize>,
    pub r_grid: Option<Vec<f64>>,
    pub samples_per_cell: Option<u64>,
    pub seed: Option<u64>,
    pub lambda_grid: Option<Vec<f64>>,
    pub mu_grid: Option<Vec<f64>>,
    pub target_rel_err: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: FileConfig =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("invalid configuration: {e}")))?;
        cfg.delta_values()?;
        Ok(cfg)
    }

    /// `delta_grid`, or `points` log-spaced values over `delta_range`.
    pub fn delta_values(&self) -> Result<Option<Vec<f64>>, CliError> {
        match (&self.delta_grid, &self.delta_range, self.points) {
            (Some(_), Some(_), _) => Err(CliError::Usage(
                "give either delta_grid or delta_range, not both".into(),
            )),
            (Some(g), None, None) => Ok(Some(g.clone())),
            (None, Some([lo, hi]), Some(n)) if n >= 2 && *lo > 0.0 && lo < hi => Ok(Some(log_grid(*lo, *hi, n))),
            (None, Some(_), _) => Err(CliError::Usage("delta_range needs 0 < lo < hi and points >= 2".into())),
            (_, None, Some(_)) => Err(CliError::Usage("points is only meaningful with delta_range".into())),
            (None, None, None) => Ok(None),
        }
    }
}

/// Largest `k` such that `xk` appears in the text.
fn inferred_dimension(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 1;
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'x' {
            let digits: String = text[i + 1..].chars().take_while(|c| c.is_ascii_digit()).collect();
            if let Ok(k) = digits.parse::<usize>() {
                best = best.max(k);
            }
        }
    }
    best
}

fn polynomial(common: &Common) -> Result<Polynomial, CliError> {
    let text = common
        .poly
        .as_deref()
        .ok_or_else(|| CliError::Usage("--poly is required".into()))?;
    let dim = common.dim.unwrap_or_else(|| inferred_dimension(text));
    Ok(parse_polynomial(text, dim)?)
}

fn nonconstant(common: &Common) -> Result<Polynomial, CliError> {
    let p = polynomial(common)?;
    if p.is_constant() {
        return Err(CliError::Unsupported("constant polynomial".into()));
    }
    Ok(p)
}

struct Output<'a> {
    common: &'a Common,
    argv: Vec<String>,
}

impl Output<'_> {
    fn emit<T: Serialize>(&self, kind: &str, result: &T, columns: Option<String>) -> Result<(), CliError> {
        let envelope = Envelope {
            header: Header::now(self.argv.clone()),
            kind: kind.into(),
            result,
        };
        let json = serde_json::to_string_pretty(&envelope).expect("results serialize") + "\n";
        if let Some(path) = &self.common.json {
            std::fs::write(path, &json)?;
        }
        if let Some(dir) = &self.common.out {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(format!("{kind}.json")), &json)?;
            if let Some(c) = columns {
                std::fs::write(dir.join(format!("{kind}.dat")), c)?;
            }
        }
        Ok(())
    }
}

/// Parses the arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    if let Some(t) = cli.common.threads {
        if t == 0 {
            eprintln!("error: --threads must be positive");
            return EXIT_USAGE;
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let out = Output {
        common: &cli.common,
        argv: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
    };
    match dispatch(&cli, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, out: &Output) -> Result<i32, CliError> {
    let file = match &cli.common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let seed = cli.common.seed.or(file.seed).unwrap_or(0);
    match &cli.command {
        Command::Analyze => cmd_analyze(&cli.common, out),
        Command::Scan(ScanCommand::Volume(f)) => cmd_scan_volume(&cli.common, out, &file, f, seed),
        Command::Scan(ScanCommand::Integrability(f)) => cmd_scan_integrability(&cli.common, out, &file, f, seed),
        Command::Scan(ScanCommand::Decay(f)) => cmd_scan_decay(&cli.common, out, &file, f),
        Command::Verify(v) => cmd_verify(&cli.common, out, &file, v, seed),
    }
}

fn cmd_analyze(common: &Common, out: &Output) -> Result<i32, CliError> {
    let p = nonconstant(common)?;
    let report = analyze(&p)?;
    say!(
        "polynomial: {}  (n = {}, degree {})",
        report.polynomial,
        report.dimension,
        report.degree.unwrap_or(0)
    );
    for c in &report.admissible {
        say!("admissible {} witnessed by order {}", c.alpha, c.witness);
    }
    say!("ad(P) = {}", report.admissible_degree);
    if let Some(nd) = &report.newton_distance {
        say!("ND(P) = {}", nd.exact);
    }
    for b in &report.volume_bounds {
        say!(
            "{:<24} delta^{} r^{}  [{}]",
            b.source,
            b.delta_exponent,
            b.r_exponent,
            b.constraint_text
        );
    }
    if let Some(i) = &report.integrability {
        let upper = i.upper_nd.as_ref().map_or("-".to_string(), |u| u.to_string());
        say!("integrability index in [{}, {}]", i.best_lower(), upper);
    }
    if let Some(e) = &report.oscillatory.admissible.lambda_exponent {
        say!("oscillatory decay lambda^{e}");
    }
    for n in &report.notes {
        say!("{} ({}): {}", n.label, n.topic, n.text);
    }
    out.emit("analysis", &report, None)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VolumeScanOutput {
    scan: ScanResult,
    tightness: Vec<Tightness>,
}

fn cmd_scan_volume(
    common: &Common,
    out: &Output,
    file: &FileConfig,
    f: &ScanFlags,
    seed: u64,
) -> Result<i32, CliError> {
    let p = nonconstant(common)?;
    let d = ScanConfig::default();
    let config = ScanConfig {
        delta_grid: file.delta_values()?.unwrap_or(d.delta_grid),
        r_grid: f.r_grid.clone().or(file.r_grid.clone()).unwrap_or(d.r_grid),
        samples_per_cell: f.samples.or(file.samples_per_cell).unwrap_or(d.samples_per_cell),
        seed,
    };
    let scan = volume_scan(&p, &config)?;
    for fit in &scan.fitted {
        say!(
            "{}-exponent at {} = {}: {:.4} [{:.4}, {:.4}]",
            fit.axis,
            match fit.axis {
                Axis::Delta => "r",
                Axis::R => "delta",
            },
            fit.fixed_value,
            fit.fit.exponent,
            fit.fit.confidence_95.0,
            fit.fit.confidence_95.1
        );
    }
    let mut predictions = Vec::new();
    for cert in crate::admissibility::admissible_indices(&p)? {
        predictions.push(admissible_volume_bound(&p, &cert)?);
    }
    for l in 1..=p.dimension() {
        if let Ok(b) = chain_volume_bound(&p, l, None) {
            predictions.push(b);
        }
    }
    predictions.push(baseline_ccw_bound(&p)?);
    let mut tightness = Vec::new();
    for pred in &predictions {
        let t = bound_tightness(pred, &scan)?;
        say!("{:<24} {:<5} {}", t.source, t.status.to_string(), t.comparison);
        tightness.push(t);
    }
    let columns = scan.to_columns();
    out.emit("volume", &VolumeScanOutput { scan, tightness }, Some(columns))?;
    Ok(EXIT_OK)
}

fn cmd_scan_integrability(
    common: &Common,
    out: &Output,
    file: &FileConfig,
    f: &ScanFlags,
    seed: u64,
) -> Result<i32, CliError> {
    let p = nonconstant(common)?;
    let mu_grid = f
        .mu_grid
        .clone()
        .or(file.mu_grid.clone())
        .unwrap_or_else(|| (1..=15).map(|k| k as f64 / 10.0).collect());
    let r_grid = f
        .r_grid
        .clone()
        .or(file.r_grid.clone())
        .unwrap_or_else(|| vec![0.25, 1.0, 2.0, 4.0, 8.0]);
    let config = LevelConfig {
        samples_per_level: f.samples.or(file.samples_per_cell).unwrap_or(1_000_000),
        seed,
        ..LevelConfig::default()
    };
    let scan = integrability_scan(&p, &mu_grid, &r_grid, &config)?;
    for v in &scan.per_mu {
        let growth = v.r_growth.as_ref().map_or(String::new(), |g| {
            format!(
                "  r-growth {:.3} (predicted <= {})",
                g.exponent,
                v.predicted_growth.map_or("-".into(), |x| format!("{x:.3}"))
            )
        });
        say!(
            "mu = {}: {}{}",
            v.mu,
            if v.divergent { "divergent" } else { "finite" },
            growth
        );
    }
    say!(
        "transition in ({}, {}); bounds [{:.4}, {}]: {}",
        scan.largest_finite.map_or("-".into(), |x| x.to_string()),
        scan.smallest_divergent.map_or("-".into(), |x| x.to_string()),
        scan.theoretical_lower,
        scan.theoretical_upper.map_or("-".into(), |x| format!("{x:.4}")),
        scan.status
    );
    for c in &scan.contradictions {
        say!("  {c}");
    }
    let columns = scan.to_columns();
    out.emit("integrability", &scan, Some(columns))?;
    Ok(EXIT_OK)
}

fn cmd_scan_decay(common: &Common, out: &Output, file: &FileConfig, f: &ScanFlags) -> Result<i32, CliError> {
    let p = nonconstant(common)?;
    let grid = file.lambda_grid.clone().unwrap_or_else(|| log_grid(10.0, 1e3, 64));
    let config = QuadratureConfig {
        target_rel_err: f.target_rel_err.or(file.target_rel_err).unwrap_or(1e-6),
        ..QuadratureConfig::default()
    };
    let res: DecayScanResult = decay_scan(&p, f.r.unwrap_or(1.0), &grid, &config)?;
    say!(
        "envelope slope {} vs predicted {}: {} ({} of {} cells unconverged)",
        res.envelope_exponent.map_or("-".into(), |s| format!("{s:.4}")),
        res.predicted_exponent.map_or("-".into(), |s| format!("{s:.4}")),
        res.status,
        res.unconverged,
        res.lambda_grid.len()
    );
    let columns = res.to_columns();
    out.emit("decay", &res, Some(columns))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LojaOutput {
    polynomial: String,
    config: LojaConfig,
    report: crate::lojacheck::LojaReport,
    confirmed_fraction: f64,
}

fn cmd_verify(common: &Common, out: &Output, file: &FileConfig, v: &VerifyCommand, seed: u64) -> Result<i32, CliError> {
    match v {
        VerifyCommand::Loja { alpha, samples, r } => {
            let p = nonconstant(common)?;
            let cert = match alpha {
                Some(a) => {
                    let e = ExponentVector::new(a.clone());
                    if e.len() != p.dimension() {
                        return Err(CliError::Usage(format!("--alpha needs {} entries", p.dimension())));
                    }
                    is_admissible(&p, &e)?
                        .ok_or_else(|| CliError::Unsupported(format!("{e} is not admissible for {p}")))?
                }
                None => admissible_degree(&p)?.argmin,
            };
            let config = LojaConfig::new(*samples, *r, seed);
            let report = lojasiewicz_check(&p, &cert, &config)?;
            say!(
                "alpha {}: {} of {} samples confirmed ({:.4}), {} inconclusive",
                report.alpha,
                report.confirmed,
                report.samples,
                report.confirmed_fraction(),
                report.inconclusive
            );
            let confirmed_fraction = report.confirmed_fraction();
            out.emit(
                "loja",
                &LojaOutput {
                    polynomial: p.to_string(),
                    config,
                    report,
                    confirmed_fraction,
                },
                None,
            )?;
            Ok(EXIT_OK)
        }
        VerifyCommand::Chebyshev { degree, trials } => {
            let report = chebyshev_floor_check(*degree, *trials, seed)?;
            let ok = report.min_product >= 1.0 - 1e-9;
            say!(
                "min product {:.9} over {} trials: {}",
                report.min_product,
                report.trials,
                if ok { "PASS" } else { "VIOLATED" }
            );
            out.emit("chebyshev", &report, None)?;
            Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
        }
        VerifyCommand::Remez { r, fraction } => {
            let p = polynomial(common)?;
            let report = remez_check(&p, *r, *fraction)?;
            say!(
                "sup over box {:.6} <= {:.6} x {:.6} = {:.6}: {}",
                report.lhs,
                report.factor,
                report.small_norm,
                report.rhs,
                if report.satisfied { "satisfied" } else { "VIOLATED" }
            );
            out.emit("remez", &report, None)?;
            Ok(if report.satisfied { EXIT_OK } else { EXIT_VIOLATION })
        }
        VerifyCommand::Degenerate { samples } => {
            let d = ScanConfig::default();
            let config = ScanConfig {
                delta_grid: file.delta_values()?.unwrap_or_else(|| log_grid(1e-4, 1e-2, 7)),
                r_grid: file.r_grid.clone().unwrap_or_else(|| vec![1.0, 3.0, 6.0, 12.0]),
                samples_per_cell: samples.or(file.samples_per_cell).unwrap_or(d.samples_per_cell),
                seed,
            };
            let report = degenerate_scenario_scan(&config)?;
            for u in &report.r_uniformity {
                say!(
                    "delta = {:.3e}: max pairwise z {:.2} across r >= 3 -> {}",
                    u.delta,
                    u.max_pairwise_z,
                    if u.agree_within_3se {
                        "r-independent"
                    } else {
                        "r-dependent"
                    }
                );
            }
            if let Some(nu) = &report.nu {
                say!(
                    "nu = {:.4} [{:.4}, {:.4}]",
                    nu.fit.exponent,
                    nu.fit.confidence_95.0,
                    nu.fit.confidence_95.1
                );
            }
            let columns = report.scan.to_columns();
            out.emit("degenerate", &report, Some(columns))?;
            Ok(EXIT_OK)
        }
    }
}
