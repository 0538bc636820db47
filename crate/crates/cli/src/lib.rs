//! Command-line front end for `vdemask`.

pub mod config;
pub mod report;
pub mod svg;
pub mod table;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use vdemask_core::compliance::{compliance_margin, SatelliteEmission};
use vdemask_core::{Criterion, Evaluation, PfdMask, Scenario};

use crate::config::{parse_config, ConfigError, ScenarioConfig};
use crate::table::{Column, TableError};

#[derive(Debug, Parser)]
#[command(
    name = "vdemask",
    version,
    about = "PFD masks protecting VHF land mobile stations"
)]
pub struct Cli {
    /// Scenario file (TOML). Built-in defaults are used when absent.
    #[arg(long, global = true, env = "VDEMASK_CONFIG")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the link budget with every intermediate value.
    Budget,
    /// Compute masks and write them as CSV.
    Mask(MaskArgs),
    /// Check a satellite emission against a mask.
    Check(CheckArgs),
    /// Print the effective configuration as TOML.
    Config,
}

#[derive(Debug, Args)]
pub struct MaskArgs {
    /// Comma-separated criteria: in, ecc, ci.
    #[arg(long, value_delimiter = ',', default_value = "in,ecc,ci", value_parser = parse_criterion)]
    pub criteria: Vec<Criterion>,

    /// CSV output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also render the masks as an SVG chart.
    #[arg(long)]
    pub svg: Option<PathBuf>,

    /// Reference mask CSV overlaid as an extra column.
    #[arg(long)]
    pub reference: Option<PathBuf>,

    /// Write both antenna gain curves to this CSV.
    #[arg(long)]
    pub emit_gain: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["mask", "criterion"])))]
pub struct CheckArgs {
    /// Mask CSV with columns `theta_deg,<pfd>`.
    #[arg(long)]
    pub mask: Option<PathBuf>,

    /// Use the computed envelope of this criterion.
    #[arg(long, value_parser = parse_criterion)]
    pub criterion: Option<Criterion>,

    /// Satellite EIRP density, dBW per reference bandwidth.
    #[arg(long, allow_negative_numbers = true)]
    pub sat_eirp: f64,

    /// Orbit altitude, km.
    #[arg(long)]
    pub altitude_km: f64,

    /// Per-angle margins CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_criterion(s: &str) -> Result<Criterion, String> {
    Criterion::from_key(s.trim())
        .ok_or_else(|| format!("unknown criterion `{s}` (expected in, ecc or ci)"))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("{0}")]
    Model(#[from] vdemask_core::Error),

    #[error(transparent)]
    Table(#[from] TableError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for infeasible criteria, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Model(e) if e.is_infeasible() => 2,
            _ => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn load_config(path: Option<&Path>) -> Result<ScenarioConfig, CliError> {
    Ok(match path {
        Some(p) => parse_config(p)?,
        None => ScenarioConfig::default(),
    })
}

fn read_mask_file(path: &Path, ref_bandwidth: f64) -> Result<PfdMask, CliError> {
    let f = File::open(path).map_err(io_err(path))?;
    Ok(table::read_mask(
        f,
        &path.display().to_string(),
        ref_bandwidth,
    )?)
}

fn column_name(c: Criterion) -> &'static str {
    match c {
        Criterion::ItuIN => "pfd_itu_in",
        Criterion::EccField => "pfd_ecc",
        Criterion::ItuCI => "pfd_itu_ci",
    }
}

/// Runs one command, writing primary output to `stdout`.
pub fn run<W: Write>(cli: &Cli, stdout: &mut W) -> Result<(), CliError> {
    let config = load_config(cli.config.as_deref())?;
    let scenario = config.to_scenario();
    let write_stdout = |res: std::io::Result<()>| res.map_err(io_err(Path::new("<stdout>")));
    match &cli.command {
        Command::Config => write_stdout(stdout.write_all(config.to_toml().as_bytes())),
        Command::Budget => {
            let eval = scenario.evaluate()?;
            write_stdout(stdout.write_all(report::render_budget(&eval).as_bytes()))
        }
        Command::Mask(args) => run_mask(&scenario, args, stdout),
        Command::Check(args) => run_check(&scenario, args, stdout),
    }
}

fn run_mask<W: Write>(
    scenario: &Scenario,
    args: &MaskArgs,
    stdout: &mut W,
) -> Result<(), CliError> {
    let eval = scenario.evaluate()?;
    let bw = scenario.criteria.reference_bandwidth;
    let reference = args
        .reference
        .as_deref()
        .map(|p| read_mask_file(p, bw))
        .transpose()?;

    let mut criteria: Vec<Criterion> = Vec::new();
    for &c in &args.criteria {
        if !criteria.contains(&c) {
            criteria.push(c);
        }
    }
    let thetas: Vec<f64> = eval.in_envelope.thetas().collect();

    let mut buf = Vec::new();
    if criteria.len() == 1 && reference.is_none() {
        table::write_mask(&mut buf, eval.envelope(criteria[0]))?;
    } else {
        let mut columns: Vec<Column> = criteria
            .iter()
            .map(|&c| Column::from_mask(column_name(c), eval.envelope(c)))
            .collect();
        if let Some(r) = &reference {
            columns.push(Column::resampled("pfd_reference", r, &thetas));
        }
        table::write_columns(&mut buf, &thetas, &columns)?;
    }
    match &args.out {
        Some(p) => {
            let mut f = create(p)?;
            f.write_all(&buf)
                .and_then(|_| f.flush())
                .map_err(io_err(p))?;
        }
        None => stdout
            .write_all(&buf)
            .map_err(io_err(Path::new("<stdout>")))?,
    }

    if let Some(p) = &args.svg {
        let svg = render_chart(&eval, &criteria, reference.as_ref(), bw);
        std::fs::write(p, svg).map_err(io_err(p))?;
    }
    if let Some(p) = &args.emit_gain {
        let mut f = create(p)?;
        table::write_gains(&mut f, &thetas, &eval.base.pattern, &eval.mobile.pattern)?;
        f.flush().map_err(io_err(p))?;
    }
    Ok(())
}

fn render_chart(
    eval: &Evaluation,
    criteria: &[Criterion],
    reference: Option<&PfdMask>,
    bw: f64,
) -> String {
    let to_points = |m: &PfdMask| m.samples().iter().map(|s| (s.theta, s.pfd)).collect();
    let mut series: Vec<svg::Series> = criteria
        .iter()
        .map(|&c| svg::Series {
            label: c.label().to_string(),
            points: to_points(eval.envelope(c)),
        })
        .collect();
    if let Some(r) = reference {
        series.push(svg::Series {
            label: "reference".into(),
            points: to_points(r),
        });
    }
    let unit = vdemask_core::units::format_bandwidth(bw);
    svg::render(&series, &format!("PFD (dBW/m² per {unit})"))
}

fn run_check<W: Write>(
    scenario: &Scenario,
    args: &CheckArgs,
    stdout: &mut W,
) -> Result<(), CliError> {
    let bw = scenario.criteria.reference_bandwidth;
    let emission = SatelliteEmission::new(args.sat_eirp, args.altitude_km * 1e3)?;
    let (mask, name) = match (&args.mask, args.criterion) {
        (Some(p), _) => (read_mask_file(p, bw)?, p.display().to_string()),
        (None, Some(c)) => {
            let eval = scenario.evaluate()?;
            (eval.envelope(c).clone(), format!("{} mask", c.label()))
        }
        (None, None) => unreachable!("clap requires one mask source"),
    };
    let report = compliance_margin(&mask, &emission)?;

    if let Some(p) = &args.out {
        let mut f = create(p)?;
        table::write_margins(&mut f, &report, bw)?;
        f.flush().map_err(io_err(p))?;
    }
    let verdict = if report.complies() {
        "COMPLIANT"
    } else {
        "NOT COMPLIANT"
    };
    writeln!(
        stdout,
        "{verdict}: minimum margin {} dB at {}° elevation ({name}, EIRP {} dBW per {}, altitude {} km)",
        table::fmt2(report.min_margin),
        table::fmt2(report.worst_theta),
        table::fmt2(args.sat_eirp),
        vdemask_core::units::format_bandwidth(bw),
        args.altitude_km
    )
    .map_err(io_err(Path::new("<stdout>")))
}
