//! Command-line front end: load an instance, run one pipeline, emit a
//! deterministic report.
//!
//! Exit codes: `0` when every check passes, `1` when a check fails or
//! errors, `2` for usage and input errors.

pub mod commands;
pub mod report;

use std::fmt;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde::Deserialize;

use bfv_core::bfv::Instance;
use bfv_core::connection::{Connection, ConnectionEntry};
use bfv_core::linalg::PolyMatrix;
use bfv_core::serial::{digest, serialize};
use bfv_core::Roster;

use commands::Job;
use report::Report;

/// Directory searched for instance files given by a relative path that does
/// not exist relative to the working directory.
pub const FIXTURES_ENV: &str = "BFV_FIXTURES";

pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    CheckCoisotropic,
    BuildBracket,
    BuildCharge,
    VerifyAll,
    CompareConnections,
    ApplyAutomorphism,
    GaugeCharges,
    Cohomology,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckCoisotropic => "check-coisotropic",
            Command::BuildBracket => "build-bracket",
            Command::BuildCharge => "build-charge",
            Command::VerifyAll => "verify-all",
            Command::CompareConnections => "compare-connections",
            Command::ApplyAutomorphism => "apply-automorphism",
            Command::GaugeCharges => "gauge-charges",
            Command::Cohomology => "cohomology",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

/// An inclusive degree window written `A..B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window(pub RangeInclusive<i32>);

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got `{s}`"))?;
        let parse = |t: &str| t.trim().parse::<i32>().map_err(|_| format!("bad window bound `{t}`"));
        let (a, b) = (parse(a)?, parse(b)?);
        if a > b {
            return Err(format!("empty window {a}..{b}"));
        }
        Ok(Window(a..=b))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bfv",
    version,
    about = "Build and verify BFV algebras of coisotropic zero sections"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Instance file (JSON).
    pub instance: PathBuf,
    /// Connection table: the instance connection for most commands, the
    /// source connection for compare-connections (default: flat).
    #[arg(long)]
    pub connection: Option<PathBuf>,
    /// Target connection for compare-connections (default: the instance's).
    #[arg(long)]
    pub connection2: Option<PathBuf>,
    /// build-charge passes on an obstruction instead of a charge.
    #[arg(long)]
    pub expect_obstruction: bool,
    /// Coordinate-degree truncation for cohomology (default 2).
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Total-degree window for cohomology (default -1..1).
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<Window>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Fibre matrix for apply-automorphism: JSON rows of polynomial strings.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
}

/// A usage or input problem; reported on stderr with exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl Cli {
    /// Reject flags that the command does not use.
    pub fn check_flags(&self) -> Result<(), UsageError> {
        let c = self.command;
        let only = |set: bool, flag: &str, allowed: &[Command]| {
            if set && !allowed.contains(&c) {
                let names: Vec<&str> = allowed.iter().map(|a| a.name()).collect();
                Err(UsageError(format!(
                    "{flag} cannot be used with {}; it applies to {}",
                    c.name(),
                    names.join(", ")
                )))
            } else {
                Ok(())
            }
        };
        only(
            self.connection2.is_some(),
            "--connection2",
            &[Command::CompareConnections],
        )?;
        only(self.expect_obstruction, "--expect-obstruction", &[Command::BuildCharge])?;
        only(self.max_degree.is_some(), "--max-degree", &[Command::Cohomology])?;
        only(self.window.is_some(), "--window", &[Command::Cohomology])?;
        only(self.matrix.is_some(), "--matrix", &[Command::ApplyAutomorphism])?;
        if c == Command::ApplyAutomorphism && self.matrix.is_none() {
            return Err(UsageError("apply-automorphism requires --matrix FILE".into()));
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

/// Resolve an instance path, falling back to the fixture directory.
pub fn resolve_instance(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    if let Some(dir) = std::env::var_os(FIXTURES_ENV) {
        let dir = PathBuf::from(dir);
        for candidate in [dir.join(path), dir.join(path).with_extension("json")] {
            if candidate.exists() {
                return candidate;
            }
        }
    }
    path.to_path_buf()
}

pub fn load_instance(path: &Path) -> Result<Instance, UsageError> {
    let path = resolve_instance(path);
    Instance::from_json(&read(&path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

/// A connection file is a JSON list of `{a, mu, nu, coeff}` entries.
pub fn load_connection(path: &Path, roster: Roster) -> Result<Connection, UsageError> {
    let bad = |e: String| UsageError(format!("{}: {e}", path.display()));
    let entries: Vec<ConnectionEntry> = serde_json::from_str(&read(path)?).map_err(|e| bad(e.to_string()))?;
    Connection::from_entries(roster, &entries).map_err(|e| bad(e.to_string()))
}

/// A matrix file is a JSON list of rows of polynomial strings in `x`.
pub fn load_matrix(path: &Path, roster: Roster) -> Result<PolyMatrix, UsageError> {
    #[derive(Deserialize)]
    #[serde(transparent)]
    struct Rows(Vec<Vec<String>>);
    let bad = |e: String| UsageError(format!("{}: {e}", path.display()));
    let Rows(rows) = serde_json::from_str(&read(path)?).map_err(|e| bad(e.to_string()))?;
    PolyMatrix::parse(roster, &rows).map_err(|e| bad(e.to_string()))
}

/// Load inputs and run the command.
pub fn run(cli: &Cli) -> Result<Report, UsageError> {
    cli.check_flags()?;
    let instance = load_instance(&cli.instance)?;
    let r = instance.roster();
    let load = |p: &Option<PathBuf>| p.as_deref().map(|p| load_connection(p, r)).transpose();
    let job = Job {
        connection: load(&cli.connection)?,
        connection2: load(&cli.connection2)?,
        matrix: cli.matrix.as_deref().map(|p| load_matrix(p, r)).transpose()?,
        expect_obstruction: cli.expect_obstruction,
        max_degree: cli.max_degree.unwrap_or(2),
        window: cli.window.clone().map_or(-1..=1, |w| w.0),
        instance,
    };
    let mut report = Report::new(cli.command.name(), digest(&serialize(&job.instance)));
    let f = match cli.command {
        Command::CheckCoisotropic => commands::check_coisotropic_cmd,
        Command::BuildBracket => commands::build_bracket_cmd,
        Command::BuildCharge => commands::build_charge_cmd,
        Command::VerifyAll => commands::verify_all_cmd,
        Command::CompareConnections => commands::compare_connections_cmd,
        Command::ApplyAutomorphism => commands::apply_automorphism_cmd,
        Command::GaugeCharges => commands::gauge_charges_cmd,
        Command::Cohomology => commands::cohomology_cmd,
    };
    f(&job, &mut report);
    Ok(report)
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Structured => report.render_structured(),
    }
}

/// Run and emit; returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("bfv: {e}");
            return EXIT_USAGE;
        }
    };
    let text = render(&report, cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("bfv: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{text}"),
    }
    report.exit_code()
}
