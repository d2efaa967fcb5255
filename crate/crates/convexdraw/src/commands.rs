//! Command line definitions and the commands behind them.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use convexdraw_core::canon::canonical_form;
use convexdraw_core::convexity::is_convex_fpp;
use convexdraw_core::fixtures::{fixture, fixture_labels, natural, resolve_vertex, tin_can, FixtureId};
use convexdraw_core::geometry::parse_points;
use convexdraw_core::{CanonError, Drawing, RerouteError};
use rayon::prelude::*;

use crate::analysis::{analyze, reduce, AnalysisError};
use crate::format::{emit_validated, Document, FormatError};
use crate::points::{load_pts, random_points, write_pts};
use crate::report::{CanonReport, Names, ReportBody};
use crate::svg::export_svg;

pub const PARALLEL_ENV: &str = "CONVEXDRAW_PARALLEL";

#[derive(Parser, Debug)]
#[command(name = "convexdraw", version, about = "Analyze, transform and generate good drawings of complete graphs")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// analyze: also write the report here. reduce: write the reduced
    /// drawing here. gen, svg: the output file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for random generators.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Vertices of the K5 to reduce, by label or index.
    #[arg(long, global = true, value_delimiter = ',')]
    pub subset: Option<Vec<String>>,
    /// Worker threads for scanning several inputs; CONVEXDRAW_PARALLEL wins.
    #[arg(long, global = true)]
    pub parallel: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report crossings, hierarchy level, witnesses and structure.
    Analyze {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Check that files parse, are good drawings and match their validation block.
    Validate {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Remove crossings around a non-convex K5.
    Reduce { input: PathBuf },
    /// Generate a drawing: a fixture name, `natural N`, `tincan K` or `points N`.
    Gen {
        generator: String,
        param: Option<String>,
        /// Point count for `points`.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Compare two drawings up to relabelling and homeomorphism.
    Canon { first: PathBuf, second: PathBuf },
    /// Draw the planarization as SVG, with a .cdrw sidecar.
    Svg { input: PathBuf },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Internal(e.to_string())
    }
}

/// A drawing read from disk.
pub struct Loaded {
    pub name: String,
    pub drawing: Drawing,
    pub labels: Option<Vec<String>>,
    pub rectilinear: bool,
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let name = display(path);
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{name}: {e}")))?;
    if path.extension().is_some_and(|x| x == "pts") {
        let drawing = load_pts(&text).map_err(|e| CliError::Invalid(format!("{name}: {e}")))?;
        return Ok(Loaded { name, drawing, labels: None, rectilinear: true });
    }
    let wrap = |e: FormatError| match e {
        FormatError::Hierarchy(_) => CliError::Internal(format!("{name}: {e}")),
        _ => CliError::Invalid(format!("{name}: {e}")),
    };
    let doc = Document::parse(&text).map_err(wrap)?;
    let drawing = doc.drawing().map_err(wrap)?;
    Ok(Loaded { name: name.clone(), drawing, labels: doc.labels, rectilinear: false })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Internal(format!("{}: {e}", display(path))))
}

fn threads(flag: Option<usize>) -> Result<usize, CliError> {
    match std::env::var(PARALLEL_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Invalid(format!("{PARALLEL_ENV}={v:?} is not a thread count"))),
        Err(_) => Ok(flag.unwrap_or(0)),
    }
}

fn par_map<T, F>(paths: &[PathBuf], threads: usize, f: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(&Path) -> Result<T, CliError> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| CliError::Internal(e.to_string()))?;
    pool.install(|| paths.par_iter().map(|p| f(p)).collect::<Vec<_>>()).into_iter().collect()
}

/// Runs a command; returns what goes to standard output.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Analyze { inputs } => {
            let docs = par_map(inputs, threads(cli.parallel)?, |p| {
                let l = load(p)?;
                let r = analyze(&l.drawing, &l.name, l.rectilinear)?;
                Ok(match cli.format {
                    OutputFormat::Text => r.to_text(&Names(l.labels.as_deref())),
                    OutputFormat::Machine => Document::from_drawing(&l.drawing, l.labels.clone()).with_report(ReportBody::Analysis(r)).to_text(),
                })
            })?;
            let sep = if cli.format == OutputFormat::Text { "\n" } else { "" };
            let out = docs.join(sep);
            if let Some(p) = &cli.out {
                write(p, &out)?;
            }
            Ok(out)
        }
        Command::Validate { inputs } => {
            let lines = par_map(inputs, threads(cli.parallel)?, |p| {
                let l = load(p)?;
                Ok(format!("{}: ok, n = {}, {} crossings\n", l.name, l.drawing.n(), l.drawing.crossing_count()))
            })?;
            Ok(lines.concat())
        }
        Command::Reduce { input } => cmd_reduce(cli, input),
        Command::Gen { generator, param, n } => cmd_gen(cli, generator, param.as_deref(), *n),
        Command::Canon { first, second } => {
            let (a, b) = (load(first)?, load(second)?);
            let form = |d: &Drawing| canonical_form(d).map_err(|e: CanonError| CliError::Precondition(e.to_string()));
            let (fa, fb) = (form(&a.drawing)?, form(&b.drawing)?);
            let rep = CanonReport {
                first: a.name,
                second: b.name,
                isomorphic: fa == fb,
                first_form: fa.to_string(),
                second_form: fb.to_string(),
            };
            Ok(match cli.format {
                OutputFormat::Text => rep.to_text(),
                OutputFormat::Machine => Document::report_only(ReportBody::Canon(rep)).to_text(),
            })
        }
        Command::Svg { input } => {
            let l = load(input)?;
            let out = cli.out.as_ref().ok_or_else(|| CliError::Invalid("svg needs --out".into()))?;
            let side = export_svg(&l.drawing, l.labels.as_deref(), out).map_err(|e| CliError::Internal(format!("{}: {e}", display(out))))?;
            Ok(format!("wrote {} and {}\n", display(out), display(&side)))
        }
    }
}

fn cmd_reduce(cli: &Cli, input: &Path) -> Result<String, CliError> {
    let l = load(input)?;
    let d = &l.drawing;
    let subset = match &cli.subset {
        None => None,
        Some(toks) => Some(
            toks.iter()
                .map(|t| {
                    resolve_vertex(l.labels.as_deref(), t.trim())
                        .filter(|&v| v < d.n())
                        .ok_or_else(|| CliError::Invalid(format!("unknown vertex {t:?}")))
                })
                .collect::<Result<Vec<usize>, _>>()?,
        ),
    };
    if d.n() < 5 || is_convex_fpp(d) {
        return Err(CliError::Precondition(format!("{}: no non-convex K5", l.name)));
    }
    let (out, summary) = match reduce(d, subset.as_deref()) {
        Ok(Some(x)) => x,
        Ok(None) => return Err(CliError::Precondition(format!("{}: no non-convex K5 passes the K7 hypothesis", l.name))),
        Err(e @ (RerouteError::NotForbiddenK5(_) | RerouteError::HypothesisFailed(_))) => return Err(CliError::Precondition(e.to_string())),
        Err(e @ RerouteError::BadRequest(_)) => return Err(CliError::Invalid(e.to_string())),
        Err(e) => return Err(CliError::Internal(e.to_string())),
    };
    if let Some(p) = &cli.out {
        write(p, &emit_validated(&out, l.labels.clone()).map_err(|e| CliError::Internal(e.to_string()))?)?;
    }
    Ok(match cli.format {
        OutputFormat::Text => summary.to_text(&Names(l.labels.as_deref())),
        OutputFormat::Machine => Document::from_drawing(&out, l.labels.clone()).with_report(ReportBody::Reduction(summary)).to_text(),
    })
}

fn number(what: &str, tok: Option<&str>, range: std::ops::RangeInclusive<usize>) -> Result<usize, CliError> {
    let tok = tok.ok_or_else(|| CliError::Invalid(format!("{what} needs a size")))?;
    let k: usize = tok.parse().map_err(|_| CliError::Invalid(format!("{what}: {tok:?} is not a number")))?;
    if !range.contains(&k) {
        return Err(CliError::Invalid(format!("{what}: size {k} outside {}..={}", range.start(), range.end())));
    }
    Ok(k)
}

fn cmd_gen(cli: &Cli, generator: &str, param: Option<&str>, n: Option<usize>) -> Result<String, CliError> {
    let (d, labels) = match generator.to_ascii_lowercase().as_str() {
        "natural" => (natural(number("natural", param, 3..=12)?), None),
        "tincan" | "tin-can" => (tin_can(number("tincan", param, 3..=8)?), None),
        "points" => {
            let count = match n {
                Some(k) => number("points", Some(&k.to_string()), 3..=40)?,
                None => number("points", param, 3..=40)?,
            };
            let pts = random_points(count, cli.seed.unwrap_or(0));
            if cli.out.as_ref().is_some_and(|p| p.extension().is_some_and(|x| x == "pts")) {
                return finish(cli, write_pts(&pts));
            }
            (parse_points(pts).map_err(|e| CliError::Internal(e.to_string()))?, None)
        }
        other => {
            let name = if other == "fixture" { param.ok_or_else(|| CliError::Invalid("fixture needs a name".into()))? } else { other };
            let id = FixtureId::parse(name).ok_or_else(|| CliError::Invalid(format!("unknown generator {name:?}")))?;
            if let FixtureId::NaturalK(k) = id {
                number("natural", Some(&k.to_string()), 3..=12)?;
            }
            (fixture(id), fixture_labels(id))
        }
    };
    finish(cli, emit_validated(&d, labels).map_err(|e| CliError::Internal(e.to_string()))?)
}

fn finish(cli: &Cli, text: String) -> Result<String, CliError> {
    match &cli.out {
        Some(p) => {
            write(p, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
