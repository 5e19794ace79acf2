//! Command-line front end.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::matmodel::{ModelError, Positivity, Prepared, MODEL_IDS};
use crate::realform::{
    cross_checks, derive_invariants, exceptional_table, load_catalog, Catalog, CatalogError, TableRow,
};
use crate::report::{all_pass, checks_markdown, CheckResult};
use crate::sympver::{
    ks_correspondence_check, moment_cone_check, poisson_identities_check, verify_beta_symplectic, NumModel,
    CLOSED_FORM_TOL, FINITE_DIFFERENCE_TOL,
};

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Checks accepted by `verify`, in run order.
pub const CHECK_NAMES: [&str; 9] =
    ["striple", "cayley", "spectra", "centralizers", "lambda", "beta", "ks", "poisson", "moment"];

/// Reference `dim X` for the split exceptional rows.
pub const TABLE_DIM_X: [u32; 5] = [4, 14, 20, 32, 56];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Md,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// List catalog entries.
    Catalog,
    /// Derived invariants and cross-checks of one entry.
    Invariants,
    /// The split exceptional table.
    Table,
    /// Exact checks on a matrix model.
    ModelCheck,
    /// Selected exact and sampled checks on a matrix model.
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "minorbit", version, about = "Minimal orbits, restricted roots and symplectic induction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Catalog id of the real form.
    #[arg(long, global = true)]
    pub form: Option<String>,
    /// Comma-separated check names.
    #[arg(long, global = true, value_delimiter = ',')]
    pub checks: Vec<String>,
    /// Samples per sampled check
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Tolerance of the sampled checks. Defaults depend on the check.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed of the sampled checks
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Catalog file replacing the shipped one.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub form_id: Option<String>,
    pub check_names: Vec<String>,
    pub samples: u64,
    pub tol: Option<f64>,
    pub seed: u64,
    pub catalog_path: Option<String>,
    pub format: Format,
}

impl From<&Cli> for RunConfig {
    fn from(c: &Cli) -> Self {
        RunConfig {
            command: c.command,
            form_id: c.form.clone(),
            check_names: c.checks.clone(),
            samples: c.samples,
            tol: c.tol,
            seed: c.seed,
            catalog_path: c.catalog.as_ref().map(|p| p.display().to_string()),
            format: c.format,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub version: String,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("--form is required for {0}")]
    MissingForm(&'static str),
    #[error("unknown check {0:?}; expected one of {list}", list = CHECK_NAMES.join(", "))]
    UnknownCheck(String),
    #[error("--tol must be positive, got {0}")]
    BadTolerance(f64),
    #[error("cannot read {path}: {err}")]
    Read { path: String, err: std::io::Error },
    #[error("cannot write {path}: {err}")]
    Write { path: String, err: std::io::Error },
}

fn load(config: &RunConfig) -> Result<Catalog, CliError> {
    match &config.catalog_path {
        None => Ok(Catalog::shipped()),
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|err| CliError::Read { path: path.clone(), err })?;
            Ok(load_catalog(&text)?)
        }
    }
}

fn form<'a>(config: &'a RunConfig, what: &'static str) -> Result<&'a str, CliError> {
    config.form_id.as_deref().ok_or(CliError::MissingForm(what))
}

pub fn cmd_catalog(config: &RunConfig) -> Result<(Value, Vec<CheckResult>), CliError> {
    let catalog = load(config)?;
    let rows: Vec<Value> = catalog
        .entries
        .iter()
        .map(|d| {
            let inv = derive_invariants(d)?;
            Ok(json!({
                "id": d.id,
                "g_C": d.gc_label.to_string(),
                "restricted": d.restricted_label.to_string(),
                "d": inv.d,
                "omin_split": inv.omin_split,
                "hermitian": d.hermitian,
                "has_matrix_model": MODEL_IDS.contains(&d.id.as_str()),
            }))
        })
        .collect::<Result<_, CatalogError>>()?;
    let check = CheckResult::boolean("catalog validates", true, format!("{} entries", rows.len()));
    Ok((Value::Array(rows), vec![check]))
}

pub fn cmd_invariants(config: &RunConfig) -> Result<(Value, Vec<CheckResult>), CliError> {
    let catalog = load(config)?;
    let desc = catalog.get(form(config, "invariants")?)?;
    let inv = derive_invariants(desc)?;
    let mut data = serde_json::to_value(&inv).expect("invariants serialize");
    data["id"] = json!(desc.id);
    data["hermitian"] = json!(desc.hermitian);
    Ok((data, cross_checks(desc, &inv)))
}

pub fn table_checks(rows: &[TableRow]) -> Vec<CheckResult> {
    let dims: Vec<u32> = rows.iter().map(|r| r.dim_x).collect();
    let jordan_ok = rows.iter().all(|r| r.dim_j_from_name == Some(r.dim_j) && 2 * r.dim_j == r.dim_x);
    vec![
        CheckResult::boolean("dim X column", dims == TABLE_DIM_X, format!("{dims:?} vs {TABLE_DIM_X:?}")),
        CheckResult::boolean(
            "dim X = 2 dim J(X)",
            jordan_ok,
            format!("{:?}", rows.iter().map(|r| r.dim_j_from_name.unwrap_or(0)).collect::<Vec<_>>()),
        ),
    ]
}

pub fn cmd_table(config: &RunConfig) -> Result<(Value, Vec<CheckResult>), CliError> {
    let rows = exceptional_table(&load(config)?)?;
    let checks = table_checks(&rows);
    Ok((serde_json::to_value(&rows).expect("rows serialize"), checks))
}

fn prepare(config: &RunConfig, what: &'static str) -> Result<Prepared, CliError> {
    let catalog = load(config)?;
    Ok(Prepared::new(&catalog, form(config, what)?, Positivity::Lex)?)
}

pub fn cmd_model_check(config: &RunConfig) -> Result<(Value, Vec<CheckResult>), CliError> {
    let p = prepare(config, "model-check")?;
    let mut checks = vec![p.oracle_check()];
    checks.extend(p.striple_checks());
    checks.extend(p.cayley_checks());
    checks.extend(p.spectral_checks());
    checks.extend(p.centralizer_checks());
    checks.extend(p.lambda_checks());
    let data = serde_json::to_value(p.model_invariants()).expect("invariants serialize");
    Ok((data, checks))
}

pub fn cmd_verify(config: &RunConfig) -> Result<(Value, Vec<CheckResult>), CliError> {
    let names: Vec<&str> = if config.check_names.is_empty() {
        CHECK_NAMES.to_vec()
    } else {
        config.check_names.iter().map(String::as_str).collect()
    };
    if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(n)) {
        return Err(CliError::UnknownCheck(bad.to_string()));
    }
    let p = prepare(config, "verify")?;
    let sampled = names.iter().any(|n| matches!(*n, "beta" | "ks" | "poisson" | "moment"));
    let num = sampled.then(|| NumModel::new(&p));
    let samples = config.samples as usize;
    let seed = config.seed;
    let closed = config.tol.unwrap_or(CLOSED_FORM_TOL);
    let fd = config.tol.unwrap_or(FINITE_DIFFERENCE_TOL);
    let mut checks = Vec::new();
    for name in names {
        match (name, num.as_ref()) {
            ("striple", _) => checks.extend(p.striple_checks()),
            ("cayley", _) => checks.extend(p.cayley_checks()),
            ("spectra", _) => checks.extend(p.spectral_checks()),
            ("centralizers", _) => checks.extend(p.centralizer_checks()),
            ("lambda", _) => checks.extend(p.lambda_checks()),
            ("beta", Some(m)) => checks.push(verify_beta_symplectic(m, samples, closed, seed).to_check()),
            ("ks", Some(m)) => checks.push(ks_correspondence_check(m, samples, closed, seed).to_check()),
            ("poisson", Some(m)) => checks.push(poisson_identities_check(m, samples, fd, seed).to_check()),
            ("moment", Some(m)) => checks.push(moment_cone_check(m, samples, closed, seed).to_check()),
            _ => unreachable!("check names validated above"),
        }
    }
    Ok((Value::Null, checks))
}

/// Runs one command and assembles its report.
pub fn run(config: &RunConfig, timing: bool) -> Result<ReportDocument, CliError> {
    if let Some(t) = config.tol {
        if !(t > 0.0) {
            return Err(CliError::BadTolerance(t));
        }
    }
    let start = Instant::now();
    let (data, checks) = match config.command {
        Command::Catalog => cmd_catalog(config)?,
        Command::Invariants => cmd_invariants(config)?,
        Command::Table => cmd_table(config)?,
        Command::ModelCheck => cmd_model_check(config)?,
        Command::Verify => cmd_verify(config)?,
    };
    Ok(ReportDocument {
        schema: SCHEMA,
        version: VERSION.to_string(),
        config: config.clone(),
        data,
        pass: all_pass(&checks),
        checks,
        elapsed_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn markdown_data(data: &Value) -> String {
    match data {
        Value::Array(rows) if !rows.is_empty() => {
            let Some(first) = rows[0].as_object() else { return String::new() };
            let keys: Vec<&String> = first.keys().collect();
            let mut s = format!("| {} |\n|{}\n", keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(" | "), "---|".repeat(keys.len()));
            for row in rows {
                let cells: Vec<String> = keys.iter().map(|k| cell(&row[k.as_str()])).collect();
                s.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
            s
        }
        Value::Object(map) => {
            let mut s = String::from("| key | value |\n|---|---|\n");
            for (k, v) in map {
                s.push_str(&format!("| {k} | {} |\n", cell(v)));
            }
            s
        }
        _ => String::new(),
    }
}

pub fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Md => {
            let c = &doc.config;
            let mut s = format!("# minorbit {}\n\n", serde_json::to_value(c.command).expect("command").as_str().unwrap_or(""));
            s.push_str(&format!("version {}, schema {}", doc.version, doc.schema));
            if let Some(f) = &c.form_id {
                s.push_str(&format!(", form {f}"));
            }
            if c.command == Command::Verify {
                s.push_str(&format!(", samples {}, seed {}", c.samples, c.seed));
            }
            s.push_str("\n\n");
            let data = markdown_data(&doc.data);
            if !data.is_empty() {
                s.push_str(&data);
                s.push('\n');
            }
            s.push_str(&checks_markdown(&doc.checks));
            s.push_str(&format!("\noverall: {}\n", if doc.pass { "PASS" } else { "FAIL" }));
            if let Some(ms) = doc.elapsed_ms {
                s.push_str(&format!("elapsed: {ms:.1} ms\n"));
            }
            s
        }
    }
}

/// Parses arguments, runs, writes output and returns the exit code:
/// 0 when every check passes, 1 when some check fails, 2 on errors.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let config = RunConfig::from(&cli);
    let result = run(&config, cli.timing).and_then(|doc| {
        let text = render(&doc, config.format);
        match &cli.out {
            Some(path) => std::fs::write(path, &text)
                .map_err(|err| CliError::Write { path: path.display().to_string(), err })?,
            None => print!("{text}"),
        }
        Ok(doc.pass)
    });
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
