use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qlct_core::prob::{
    charfn, charfn_properties, covariance, invert_charfn, quotient, validate_qpdf, CharFn, CharFnMode, MomentReport,
    Qpdf, QpdfReport, Quotient, Strictness, INTEGRAL_TOL,
};
use qlct_core::{fixtures, transform, GridSpec, Quaternion, Rule, SampledField, Spectrum, TransformParams};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::io::{self, Document, Format};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "qlct", version, about = "Two-sided quaternion linear canonical transforms and quaternion densities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output layout; defaults to the extension of --out, else json.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Trapezoid,
    Simpson,
}

impl From<RuleArg> for Rule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Trapezoid => Rule::Trapezoid,
            RuleArg::Simpson => Rule::Simpson,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Fourier,
    Lct,
}

impl From<ModeArg> for CharFnMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Fourier => CharFnMode::FourierUnnormalized,
            ModeArg::Lct => CharFnMode::Lct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrictnessArg {
    Strict,
    Relaxed,
}

impl From<StrictnessArg> for Strictness {
    fn from(s: StrictnessArg) -> Self {
        match s {
            StrictnessArg::Strict => Strictness::Strict,
            StrictnessArg::Relaxed => Strictness::Relaxed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Quotient {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Left => Quotient::Left,
            SideArg::Right => Quotient::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureName {
    /// (2x1+x2) + i(x1²−x2²) + j x1x2 + k(3x1−x2)
    Example1Numerator,
    /// The numerator left-divided by 20+4j+8k
    Example1,
    /// x1 + j x2
    Example2,
    /// exp(−|x|²/2)
    Gaussian,
    /// Standard normal density
    GaussianPdf,
    /// Constant density over the grid's box
    Uniform,
    /// Off-centre bump with four nonzero components
    Bump,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward transform of a field file.
    Transform {
        input: PathBuf,
        /// Parameters file ({"A1": {a,b,c,d}, "A2": {..}}) or `fourier`.
        #[arg(long)]
        params: String,
        /// Frequency grid x1min,x1max,x2min,x2max,n1,n2; defaults to the input grid.
        #[arg(long, allow_hyphen_values = true)]
        freq_grid: Option<String>,
        #[arg(long, value_enum)]
        rule: Option<RuleArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Inverse transform of a spectrum, or inversion of a characteristic function.
    Invert {
        input: PathBuf,
        /// Overrides the parameters stored with the input.
        #[arg(long)]
        params: Option<String>,
        /// Spatial grid; defaults to the input grid.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long, value_enum)]
        rule: Option<RuleArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Characteristic function of a density.
    Charfn {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "fourier")]
        mode: ModeArg,
        #[arg(long)]
        params: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        freq_grid: Option<String>,
        #[arg(long, value_enum)]
        rule: Option<RuleArg>,
        /// Slack allowed on the |φ| bound in the property report.
        #[arg(long)]
        tol: Option<f64>,
        /// Writes the property report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Density validation, moments and covariances as JSON.
    Moments {
        input: PathBuf,
        /// Overrides the quadrature rule of the input grid.
        #[arg(long, value_enum)]
        rule: Option<RuleArg>,
        /// Tolerance on unit component integrals.
        #[arg(long)]
        tol: Option<f64>,
        /// Fail with exit code 3 unless the density passes this reading.
        #[arg(long, value_enum)]
        require_valid: Option<StrictnessArg>,
        /// Quaternion normalizer q0,q1,q2,q3 applied to the moments.
        #[arg(long, allow_hyphen_values = true)]
        denominator: Option<String>,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs every built-in check and prints the ledger.
    Verify {
        /// Also writes the ledger as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes a built-in field.
    Fixture {
        #[arg(value_enum)]
        name: FixtureName,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, value_enum)]
        rule: Option<RuleArg>,
        #[command(flatten)]
        output: Output,
    },
}

fn rule_or_default(rule: Option<RuleArg>) -> Rule {
    rule.map(Rule::from).unwrap_or_default()
}

fn grid_or(arg: Option<&str>, rule: Option<RuleArg>, fallback: &GridSpec) -> Result<GridSpec> {
    match arg {
        Some(s) => io::parse_grid(s, rule_or_default(rule)),
        None => Ok(match rule {
            Some(r) => fallback.with_rule(r.into()),
            None => *fallback,
        }),
    }
}

fn read_input(path: &Path, rule: Option<RuleArg>) -> Result<Document> {
    let mut doc = io::read(path)?;
    if let Some(r) = rule {
        let spec = doc.field.spec().with_rule(r.into());
        doc.field = doc.field.with_spec(spec)?;
    }
    Ok(doc)
}

fn emit(doc: &Document, output: &Output) -> Result<()> {
    match &output.out {
        Some(path) => io::write(doc, path, output.format.unwrap_or_else(|| Format::from_path(path))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let res = match output.format.unwrap_or_default() {
                Format::Json => lock.write_all(io::to_json(doc).as_bytes()),
                Format::Csv => io::write_csv_rows(doc, &mut lock),
            };
            res.map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn emit_text(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_quaternion(s: &str) -> Result<Quaternion> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Config(format!("quaternion {s:?}: expected q0,q1,q2,q3")))?;
    match parts.as_slice() {
        &[a, b, c, d] => Ok(Quaternion::new(a, b, c, d)),
        _ => Err(CliError::Config(format!("quaternion {s:?}: expected q0,q1,q2,q3"))),
    }
}

#[derive(Serialize)]
struct Normalized {
    denominator: Quaternion,
    side: Quotient,
    e_x1: Quaternion,
    e_x2: Quaternion,
    e_x1x2: Quaternion,
    total: Quaternion,
}

#[derive(Serialize)]
struct Validation<'a> {
    strict_ok: bool,
    relaxed_ok: bool,
    #[serde(flatten)]
    report: &'a QpdfReport,
}

#[derive(Serialize)]
struct MomentsOutput<'a> {
    grid: GridSpec,
    validation: Validation<'a>,
    moments: MomentReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized: Option<Normalized>,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Transform { input, params, freq_grid, rule, output } => {
            let doc = read_input(&input, None)?;
            let params = io::read_params(&params)?;
            let freq = grid_or(freq_grid.as_deref(), rule, doc.field.spec())?;
            let spectrum = transform::forward(&doc.field, params, freq)?;
            emit(&Document { field: spectrum.into_field(), params: Some(params), mode: None }, &output)
        }
        Command::Invert { input, params, grid, rule, output } => {
            let doc = read_input(&input, None)?;
            let params = params.as_deref().map(io::read_params).transpose()?.or(doc.params);
            let space = grid_or(grid.as_deref(), rule, doc.field.spec())?;
            let field = match (doc.mode, params) {
                (Some(mode), _) => invert_charfn(&CharFn::from_parts(doc.field, mode, params)?, space)?,
                (None, Some(p)) => transform::inverse(&Spectrum::new(doc.field, p)?, space)?,
                (None, None) => {
                    return Err(CliError::Config(format!(
                        "{}: no transform parameters; pass --params",
                        input.display()
                    )))
                }
            };
            emit(&Document::plain(field), &output)
        }
        Command::Charfn { input, mode, params, freq_grid, rule, tol, report, output } => {
            let doc = read_input(&input, None)?;
            let mode = CharFnMode::from(mode);
            let params: Option<TransformParams> = params.as_deref().map(io::read_params).transpose()?;
            let freq = grid_or(freq_grid.as_deref(), rule, doc.field.spec())?;
            let density = Qpdf::assess(doc.field);
            let cf = charfn(&density, mode, params, freq)?;
            if let Some(path) = report {
                let props = charfn_properties(&cf, &density)?;
                #[derive(Serialize)]
                struct Report<'a> {
                    tol: f64,
                    bounded: bool,
                    #[serde(flatten)]
                    properties: &'a qlct_core::prob::PropertyReport,
                }
                let tol = tol.unwrap_or(1e-9);
                let text = serde_json::to_string_pretty(&Report { tol, bounded: props.bounded(tol), properties: &props })
                    .expect("report serializes")
                    + "\n";
                emit_text(&text, Some(&path))?;
            }
            let (mode, params) = (cf.mode(), cf.params());
            emit(&Document { field: cf.field().clone(), params, mode: Some(mode) }, &output)
        }
        Command::Moments { input, rule, tol, require_valid, denominator, side, out } => {
            let doc = read_input(&input, rule)?;
            let tol = tol.unwrap_or(INTEGRAL_TOL);
            let density = Qpdf::assess_with_tol(doc.field, tol);
            if let Some(strictness) = require_valid {
                if let Err(report) = validate_qpdf(density.field().clone(), strictness.into()) {
                    let list = report
                        .relaxed_violations
                        .iter()
                        .chain(&report.strict_violations)
                        .map(|v| format!("{v:?}"))
                        .collect::<Vec<_>>()
                        .join("; ");
                    return Err(CliError::Config(format!("{}: not a density under {strictness:?} rules: {list}", input.display())));
                }
            }
            let moments = covariance(&density);
            let normalized = match denominator.as_deref().map(parse_quaternion).transpose()? {
                Some(d) => {
                    let side = Quotient::from(side);
                    Some(Normalized {
                        denominator: d,
                        side,
                        e_x1: quotient(moments.e_x1, d, side)?,
                        e_x2: quotient(moments.e_x2, d, side)?,
                        e_x1x2: quotient(moments.e_x1x2, d, side)?,
                        total: quotient(moments.total, d, side)?,
                    })
                }
                None => None,
            };
            let report = density.report();
            let doc = MomentsOutput {
                grid: *density.support(),
                validation: Validation { strict_ok: report.strict_ok(), relaxed_ok: report.relaxed_ok(), report },
                moments,
                normalized,
            };
            let text = serde_json::to_string_pretty(&doc).expect("moments serialize") + "\n";
            emit_text(&text, out.as_deref())
        }
        Command::Verify { out } => {
            let ledger = verify::run()?;
            print!("{}", ledger.to_text());
            if let Some(path) = out {
                emit_text(&ledger.to_json(), Some(&path))?;
            }
            let failures = ledger.failures();
            if failures.is_empty() {
                Ok(())
            } else {
                let ids = failures.iter().map(|c| c.id).collect::<Vec<_>>().join(", ");
                Err(CliError::Verification { failed: failures.len(), ids })
            }
        }
        Command::Fixture { name, grid, rule, output } => {
            let spec = io::parse_grid(&grid, rule_or_default(rule))?;
            let field: SampledField = match name {
                FixtureName::Example1Numerator => fixtures::example1_numerator(spec)?,
                FixtureName::Example1 => fixtures::example1_density(spec)?,
                FixtureName::Example2 => fixtures::example2_density(spec)?,
                FixtureName::Gaussian => fixtures::gaussian(spec)?,
                FixtureName::GaussianPdf => fixtures::gaussian_pdf(spec, 1.0, 1.0)?,
                FixtureName::Uniform => fixtures::uniform_pdf(spec)?,
                FixtureName::Bump => fixtures::quaternion_bump(spec)?,
            };
            emit(&Document::plain(field), &output)
        }
    }
}

/// Applies `QLCT_THREADS` to the global thread pool.
pub fn configure_threads(value: Option<&str>) -> Result<()> {
    let Some(value) = value else { return Ok(()) };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("QLCT_THREADS={value:?}: expected a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("QLCT_THREADS: {e}")))
}
