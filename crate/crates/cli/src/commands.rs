//! Subcommands. Each returns the text for standard output.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use foxbarnes::dgamma::{DGammaConfig, DoubleGamma};
use foxbarnes::eval::{evaluate_h, IFunction};
use foxbarnes::kilbas_saigo::{
    ks_as_i, ks_laplace_series, ks_laplace_via_image, ks_series, KSLaplace, FIG1_PAIRS,
};
use foxbarnes::params::{classify_contour, laplace_image, transform_invert, ContourDecision, IParams};
use foxbarnes::{Complex64, Error};
use serde_json::json;

use crate::document::{KSRecord, ParamFile, Record};
use crate::output::{complex_text, csv, evaluate_grid, fixed, parse_complex, CsvRow, Grid};
use crate::CliError;

const DGAMMA_TOL: f64 = 1e-8;
const CONTOUR_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "foxbarnes", version, about = "Double gamma, Fox-Barnes I-function and Kilbas–Saigo evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Double gamma function G(z; τ) and log G(z; τ).
    EvalDgamma(DgammaArgs),
    /// I-function from a parameter file, at one point or on a real grid.
    EvalI(PointArgs),
    /// Fox H-function from a parameter file, at one point or on a real grid.
    EvalH(PointArgs),
    /// Contour classification report.
    Classify(ClassifyArgs),
    /// Kilbas–Saigo series E(−λ t^ν).
    KsSeries(KsSeriesArgs),
    /// Laplace transform of E(−λ t^ν).
    KsLaplace(KsLaplaceArgs),
    /// The three relaxation curves as CSV files.
    PlotFig1(Fig1Args),
}

#[derive(Debug, Args)]
pub struct Format {
    /// Significant digits of printed values.
    #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub digits: u8,
    /// Print a JSON document instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DgammaArgs {
    /// Argument as re,im.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    /// Period ratio τ > 0.
    #[arg(long)]
    pub tau: f64,
    /// Tolerance of the integral route.
    #[arg(long, default_value_t = DGAMMA_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    /// Parameter file.
    #[arg(long)]
    pub params: PathBuf,
    /// Argument as re,im.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid")]
    pub z: Option<String>,
    /// Real grid lo:hi:step; emits CSV.
    #[arg(long)]
    pub grid: Option<String>,
    /// Overrides the file's tolerance (default 1e-6).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the loaded parameters back as a normalised document.
    #[arg(long)]
    pub save_params: Option<PathBuf>,
    #[command(flatten)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Parameter file (I-function or Kilbas–Saigo).
    #[arg(long)]
    pub params: PathBuf,
    /// Argument as re,im.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    /// For a Kilbas–Saigo file, classify the Laplace image instead of the
    /// representation of E(−λ t^ν).
    #[arg(long)]
    pub laplace: bool,
    /// Print a JSON document instead of text.
    #[arg(long)]
    pub json: bool,
}

/// Kilbas–Saigo parameters: a file, the relaxation pair, or a, m, l, ν.
#[derive(Debug, Args)]
pub struct KsInput {
    /// Parameter file.
    #[arg(long, conflicts_with_all = ["alpha", "gamma", "a", "m", "l", "nu"])]
    pub params: Option<PathBuf>,
    /// Relaxation order α.
    #[arg(long, allow_hyphen_values = true, requires = "gamma")]
    pub alpha: Option<f64>,
    /// Relaxation order γ, with ν = α + γ.
    #[arg(long, allow_hyphen_values = true, requires = "alpha", conflicts_with_all = ["a", "m", "l", "nu"])]
    pub gamma: Option<f64>,
    /// Index a of E_{a,m,l}.
    #[arg(long, requires_all = ["m", "l", "nu"])]
    pub a: Option<f64>,
    /// Index m of E_{a,m,l}.
    #[arg(long)]
    pub m: Option<f64>,
    /// Index l of E_{a,m,l}.
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<f64>,
    /// Exponent ν of t.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Rate λ (default 1).
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Args)]
pub struct KsSeriesArgs {
    #[command(flatten)]
    pub input: KsInput,
    /// Time t ≥ 0.
    #[arg(long, conflicts_with = "grid")]
    pub t: Option<f64>,
    /// Real grid of t, lo:hi:step; emits CSV.
    #[arg(long)]
    pub grid: Option<String>,
    /// Series stopping tolerance (default 1e-15).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LaplaceMethod {
    /// The simplified contour integral.
    Contour,
    /// The Laplace image of the I-function representation.
    Image,
    /// The termwise series, for ν < a.
    Series,
}

#[derive(Debug, Args)]
pub struct KsLaplaceArgs {
    #[command(flatten)]
    pub input: KsInput,
    /// Argument as re,im; z = 0 gives the limit when ν > 1.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["grid", "fig1"])]
    pub z: Option<String>,
    /// Real grid lo:hi:step; emits CSV.
    #[arg(long, conflicts_with = "fig1")]
    pub grid: Option<String>,
    /// Write the three relaxation curves into --out-dir.
    #[arg(long, requires = "out_dir")]
    pub fig1: bool,
    /// Directory for the --fig1 files.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Evaluation route.
    #[arg(long, value_enum, default_value_t = LaplaceMethod::Contour)]
    pub method: LaplaceMethod,
    /// Quadrature tolerance (default 1e-6).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct Fig1Args {
    /// Directory for the three CSV files.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
    /// Quadrature tolerance (default 1e-6).
    #[arg(long)]
    pub tol: Option<f64>,
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::EvalDgamma(a) => eval_dgamma(a),
        Command::EvalI(a) => eval_i(a),
        Command::EvalH(a) => eval_h(a),
        Command::Classify(a) => classify(a),
        Command::KsSeries(a) => ks_series_cmd(a),
        Command::KsLaplace(a) => ks_laplace_cmd(a),
        Command::PlotFig1(a) => plot_fig1(&a.out_dir, tolerance(a.tol, None, CONTOUR_TOL)?),
    }
}

fn tolerance(flag: Option<f64>, file: Option<f64>, default: f64) -> Result<f64, CliError> {
    let tol = flag.or(file).unwrap_or(default);
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(CliError::Parse(format!("tol must lie in (0, 1e-2], got {tol}")));
    }
    Ok(tol)
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn point_text(label: &str, z: Complex64, value: Complex64, abs_err: f64, fmt: &Format) -> String {
    if fmt.json {
        return json!({ "z": pair(z), "value": pair(value), "abs_err": abs_err }).to_string() + "\n";
    }
    let d = fmt.digits as usize;
    format!("{label} = {}\nabs_err = {}\n", complex_text(value, d), fixed(abs_err, d))
}

fn emit_csv(rows: &[CsvRow], out: Option<&Path>) -> Result<String, CliError> {
    let text = csv(rows);
    match out {
        None => Ok(text),
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(format!("wrote {} rows to {}\n", rows.len(), path.display()))
        }
    }
}

fn eval_dgamma(a: &DgammaArgs) -> Result<String, CliError> {
    let z = parse_complex(&a.z)?;
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(CliError::Parse(format!("tol must lie in (0, 1), got {}", a.tol)));
    }
    let dg = DoubleGamma::with_config(a.tau, DGammaConfig { quad_tol: a.tol, ..DGammaConfig::default() })?;
    let log = dg.log(z)?;
    let value = log.exp();
    if a.format.json {
        return Ok(json!({ "z": pair(z), "tau": a.tau, "value": pair(value), "log": pair(log) }).to_string() + "\n");
    }
    let d = a.format.digits as usize;
    Ok(format!("G(z; tau) = {}\nlog G(z; tau) = {}\n", complex_text(value, d), complex_text(log, d)))
}

/// The loaded file, with `--save-params` applied.
fn load_points_file(a: &PointArgs) -> Result<ParamFile, CliError> {
    let file = ParamFile::load(&a.params)?;
    if let Some(path) = &a.save_params {
        std::fs::write(path, file.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(file)
}

/// Single point or grid for a complex-valued evaluator.
fn points<F>(a: &PointArgs, file: &ParamFile, label: &str, f: F) -> Result<String, CliError>
where
    F: Fn(Complex64, f64) -> Result<(Complex64, f64), Error> + Sync,
{
    let tol = tolerance(a.tol, file.tol, CONTOUR_TOL)?;
    let grid = a.grid.as_ref().or(if a.z.is_none() { file.grid.as_ref() } else { None });
    match (&a.z, grid) {
        (Some(z), _) => {
            let z = parse_complex(z)?;
            let (v, e) = f(z, tol)?;
            Ok(point_text(label, z, v, e, &a.format))
        }
        (None, Some(g)) => {
            let rows = evaluate_grid(&Grid::parse(g)?.points(), |x| {
                let (value, abs_error) = f(Complex64::new(x, 0.0), tol)
                    .map_err(|e| CliError::Eval(annotate(e, &format!("at z = {x}"))))?;
                Ok(CsvRow { x, value, abs_error })
            })?;
            emit_csv(&rows, a.out.as_deref())
        }
        (None, None) => Err(CliError::Parse("give --z or --grid (or a grid in the parameter file)".into())),
    }
}

/// Prefixes the location to the message of a failure.
fn annotate(e: Error, at: &str) -> Error {
    match e {
        Error::QuadratureFailure(m) => Error::QuadratureFailure(format!("{at}: {m}")),
        Error::TruncationFailure(m) => Error::TruncationFailure(format!("{at}: {m}")),
        Error::NoConvergentContour(m) => Error::NoConvergentContour(format!("{at}: {m}")),
        Error::Domain(m) => Error::Domain(format!("{at}: {m}")),
        other => other,
    }
}

fn eval_i(a: &PointArgs) -> Result<String, CliError> {
    let file = load_points_file(a)?;
    let Record::I(params) = &file.record else {
        return Err(CliError::Parse("eval-i needs an I-function document".into()));
    };
    let f = IFunction::new(params)?;
    points(a, &file, "I(z)", |z, tol| f.evaluate(z, tol).map(|r| (r.value, r.abs_error_estimate)))
}

fn eval_h(a: &PointArgs) -> Result<String, CliError> {
    let file = load_points_file(a)?;
    let Record::H(hp) = &file.record else {
        return Err(CliError::Parse("eval-h needs an H-function document".into()));
    };
    points(a, &file, "H(z)", |z, tol| evaluate_h(z, hp, tol).map(|r| (r.value, r.abs_error_estimate)))
}

/// Clause of the vertical-line definition and the case that established it.
fn vl_line(d: &ContourDecision) -> String {
    match d.vl_condition {
        None => "VL condition: none".into(),
        Some(k) => {
            let (clause, case) = match k {
                1 => ("clause 1", 'a'),
                2 => ("clause 2", 'c'),
                3 => ("clause 3 analogue", 'o'),
                _ => ("clause 4", 'q'),
            };
            format!("VL condition {k}: {clause}, case ({case})")
        }
    }
}

fn decision_text(d: &ContourDecision, what: &str, json_out: bool) -> String {
    let kinds: Vec<String> = d.admissible_alternatives.iter().map(|k| k.to_string()).collect();
    if json_out {
        return json!({
            "classified": what,
            "kind": d.kind.to_string(),
            "abscissa": d.abscissa(),
            "vl_condition": d.vl_condition,
            "vl_summary": vl_line(d),
            "admissible": kinds,
            "report": d.constraint_report,
        })
        .to_string()
            + "\n";
    }
    format!(
        "classified: {what}\ncontour: {}\n{}\nadmissible: {}\n{}\n",
        d.kind,
        vl_line(d),
        kinds.join("; "),
        d.constraint_report
    )
}

/// The I-function and argument that a classification request refers to.
fn classification_target(file: &ParamFile, z: Complex64, laplace: bool) -> Result<(IParams, Complex64, String), CliError> {
    match (&file.record, laplace) {
        (Record::I(p), false) => Ok((p.clone(), z, "I-function".into())),
        (Record::KS(k), false) => {
            let rep = ks_as_i(&k.params, k.lambda)?;
            let arg = k.lambda.powf(1.0 / k.params.nu()) * z;
            Ok((rep.t_form, arg, "representation of E(−λ t^ν) in t".into()))
        }
        (Record::KS(k), true) => {
            let rep = ks_as_i(&k.params, k.lambda)?;
            let image = laplace_image(&rep.power_form, k.params.nu())?;
            let nu = k.params.nu();
            if z.norm() == 0.0 {
                return Err(CliError::Eval(Error::Domain("the Laplace image is classified at z ≠ 0".into())));
            }
            // In the argument z^ν/(λτ^ν) the image has the inverted pairs.
            let arg = (nu * z.ln()).exp() / (k.lambda * k.params.tau().powf(nu));
            Ok((transform_invert(&image.params), arg, "Laplace image of E(−λ t^ν), in z^ν".into()))
        }
        (Record::I(_), true) => Err(CliError::Parse("--laplace needs a Kilbas–Saigo document".into())),
        (Record::H(_), _) => Err(CliError::Parse("classify takes an I-function or Kilbas–Saigo document".into())),
    }
}

fn classify(a: &ClassifyArgs) -> Result<String, CliError> {
    let file = ParamFile::load(&a.params)?;
    let z = parse_complex(&a.z)?;
    let (params, arg, what) = classification_target(&file, z, a.laplace)?;
    let d = classify_contour(&params, arg)?;
    Ok(decision_text(&d, &what, a.json))
}

/// Kilbas–Saigo record with file settings.
fn ks_input(k: &KsInput) -> Result<(KSRecord, Option<f64>, Option<String>), CliError> {
    if let Some(path) = &k.params {
        let file = ParamFile::load(path)?;
        let Record::KS(mut rec) = file.record else {
            return Err(CliError::Parse("expected a Kilbas–Saigo document".into()));
        };
        if let Some(l) = k.lambda {
            rec = KSRecord { lambda: l, ..rec };
        }
        return Ok((rec, file.tol, file.grid));
    }
    let lambda = k.lambda.unwrap_or(1.0);
    let rec = match (k.alpha, k.gamma, k.a, k.m, k.l, k.nu) {
        (Some(alpha), Some(gamma), None, None, None, None) => KSRecord::relaxation(alpha, gamma, lambda)?,
        (None, None, Some(a), Some(m), Some(l), Some(nu)) => KSRecord::raw(a, m, l, nu, lambda)?,
        _ => return Err(CliError::Parse("give --params, --alpha with --gamma, or --a --m --l --nu".into())),
    };
    Ok((rec, None, None))
}

fn ks_series_cmd(a: &KsSeriesArgs) -> Result<String, CliError> {
    let (rec, file_tol, file_grid) = ks_input(&a.input)?;
    let tol = a.tol.or(file_tol).unwrap_or(1e-15);
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::Parse(format!("tol must lie in (0, 1), got {tol}")));
    }
    let eval = |t: f64| -> Result<Complex64, CliError> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(CliError::Parse(format!("t must be finite and non-negative, got {t}")));
        }
        let x = Complex64::new(-rec.lambda * t.powf(rec.params.nu()), 0.0);
        Ok(ks_series(x, &rec.params, tol))
    };
    let grid = a.grid.clone().or(if a.t.is_none() { file_grid } else { None });
    match (a.t, grid) {
        (Some(t), _) => {
            let v = eval(t)?;
            Ok(point_text("E(-lambda t^nu)", Complex64::new(t, 0.0), v, tol * v.norm(), &a.format))
        }
        (None, Some(g)) => {
            let rows = evaluate_grid(&Grid::parse(&g)?.points(), |x| {
                let value = eval(x)?;
                Ok(CsvRow { x, value, abs_error: tol * value.norm() })
            })?;
            emit_csv(&rows, a.out.as_deref())
        }
        (None, None) => Err(CliError::Parse("give --t or --grid".into())),
    }
}

/// Evaluator of the Laplace transform for one record.
struct Laplace {
    rec: KSRecord,
    contour: KSLaplace,
    method: LaplaceMethod,
}

impl Laplace {
    fn new(rec: KSRecord, method: LaplaceMethod) -> Result<Self, CliError> {
        Ok(Self { contour: KSLaplace::new(&rec.params, rec.lambda)?, rec, method })
    }

    /// Value and error estimate; `z = 0` gives the extrapolated limit.
    fn at(&self, z: Complex64, tol: f64) -> Result<(Complex64, f64), Error> {
        if z.norm() == 0.0 {
            let (v, e) = self.contour.at_zero_estimate(tol)?;
            return Ok((Complex64::new(v, 0.0), e));
        }
        match self.method {
            LaplaceMethod::Contour => self.contour.evaluate(z, tol).map(|r| (r.value, r.abs_error_estimate)),
            LaplaceMethod::Image => {
                ks_laplace_via_image(z, &self.rec.params, self.rec.lambda, tol).map(|r| (r.value, r.abs_error_estimate))
            }
            LaplaceMethod::Series => {
                ks_laplace_series(z, &self.rec.params, self.rec.lambda, 100_000).map(|r| (r.value, r.last_term))
            }
        }
    }
}

fn ks_laplace_cmd(a: &KsLaplaceArgs) -> Result<String, CliError> {
    if a.fig1 {
        let dir = a.out_dir.as_deref().expect("clap requires --out-dir with --fig1");
        return plot_fig1(dir, tolerance(a.tol, None, CONTOUR_TOL)?);
    }
    let (rec, file_tol, file_grid) = ks_input(&a.input)?;
    let tol = tolerance(a.tol, file_tol, CONTOUR_TOL)?;
    let laplace = Laplace::new(rec, a.method)?;
    let grid = a.grid.clone().or(if a.z.is_none() { file_grid } else { None });
    match (&a.z, grid) {
        (Some(z), _) => {
            let z = parse_complex(z)?;
            let (v, e) = laplace.at(z, tol)?;
            Ok(point_text("L(z)", z, v, e, &a.format))
        }
        (None, Some(g)) => {
            let rows = evaluate_grid(&Grid::parse(&g)?.points(), |x| {
                let (value, abs_error) = laplace
                    .at(Complex64::new(x, 0.0), tol)
                    .map_err(|e| CliError::Eval(annotate(e, &format!("at z = {x}"))))?;
                Ok(CsvRow { x, value, abs_error })
            })?;
            emit_csv(&rows, a.out.as_deref())
        }
        (None, None) => Err(CliError::Parse("give --z, --grid or --fig1".into())),
    }
}

/// First abscissa of the relaxation curves. Two of the three curves diverge
/// at the origin, so every curve starts just right of it.
pub const FIG1_START: f64 = 5e-4;

/// The relaxation-curve abscissae: `FIG1_START`, then `0.05, 0.10, …, 5`.
pub fn fig1_points() -> Vec<f64> {
    let mut pts = Grid { lo: 0.0, hi: 5.0, step: 0.05 }.points();
    pts[0] = FIG1_START;
    pts
}

/// File name of the curve for `(α, γ)`.
pub fn fig1_file_name(alpha: f64, gamma: f64) -> String {
    format!("fig1_alpha{alpha}_gamma{gamma}.csv")
}

fn plot_fig1(dir: &Path, tol: f64) -> Result<String, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let pts = fig1_points();
    let mut report = String::new();
    for (alpha, gamma) in FIG1_PAIRS {
        let laplace = Laplace::new(KSRecord::relaxation(alpha, gamma, 1.0)?, LaplaceMethod::Contour)?;
        let rows = evaluate_grid(&pts, |x| {
            let (value, abs_error) = laplace
                .at(Complex64::new(x, 0.0), tol)
                .map_err(|e| CliError::Eval(annotate(e, &format!("α = {alpha}, γ = {gamma}, z = {x}"))))?;
            Ok(CsvRow { x, value, abs_error })
        })?;
        report += &emit_csv(&rows, Some(&dir.join(fig1_file_name(alpha, gamma))))?;
    }
    Ok(report)
}
