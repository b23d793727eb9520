//! Command-line surface: configuration, input loading, fact ingestion, text
//! tables and the subcommands.

mod commands;
mod demo;
mod facts;
mod table;


pub use commands::{cmd_facts_check, cmd_kh, cmd_lasagna, cmd_lee, cmd_s, lasagna_report, parse_class};
pub use demo::{cmd_exotic_demo, BUNDLED_FACTS, BUNDLED_X1, BUNDLED_X2};
pub use facts::{normalize_knot, FactKind, FactRecord, FactValue, FactsError, FactsStore};
pub use table::render_table;

use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::khovanov::{KhError, RingTag};
use crate::lasagna::{Budget, LasagnaError, DEFAULT_MAX_CROSSINGS};
use crate::lee::LeeError;
use crate::linkdiag::{catalog, LinkDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {msg}")]
    Input { path: String, msg: String },
    #[error(transparent)]
    Facts(#[from] FactsError),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("computation failed: {0}")]
    Compute(String),
}

impl CliError {
    /// 2 for unreadable input, 3 for an exceeded budget, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } | CliError::Facts(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Compute(_) => 1,
        }
    }
}

impl From<KhError> for CliError {
    fn from(e: KhError) -> Self {
        match e {
            KhError::Budget { .. } | KhError::CubeCap { .. } => CliError::Budget(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<LeeError> for CliError {
    fn from(e: LeeError) -> Self {
        match e {
            LeeError::Kh(k) => k.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<LasagnaError> for CliError {
    fn from(e: LasagnaError) -> Self {
        match e {
            LasagnaError::Lee(l) => l.into(),
            LasagnaError::Parse { .. } | LasagnaError::Arity { .. } => CliError::Usage(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub ring: RingTag,
    /// Largest diagram or cable, in crossings, handed to the engines.
    pub budget: usize,
    pub r_max: usize,
    pub workers: usize,
    pub output: Option<PathBuf>,
    /// Reserved; no computation is randomized.
    pub seed: u64,
    pub json: bool,
    pub bounds_only: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            ring: RingTag::Integers,
            budget: DEFAULT_MAX_CROSSINGS,
            r_max: 1,
            workers: 1,
            output: None,
            seed: 0,
            json: false,
            bounds_only: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.workers == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        Ok(())
    }

    pub fn lasagna_budget(&self) -> Budget {
        Budget { max_crossings: self.budget, generators: None }
    }

    pub fn check_crossings(&self, d: &LinkDiagram) -> Result<(), CliError> {
        if d.n_crossings() > self.budget {
            return Err(CliError::Budget(format!(
                "diagram has {} crossings, above the budget of {}",
                d.n_crossings(),
                self.budget
            )));
        }
        Ok(())
    }
}

/// Result of a subcommand in both renderings.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    pub json: serde_json::Value,
    pub text: String,
    /// Set when a scripted assertion failed; the output is still printed.
    pub failure: Option<String>,
}

impl Output {
    pub fn new(json: serde_json::Value, text: String) -> Self {
        Output { json, text, failure: None }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("output serializes");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub(crate) fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("report serializes")
}

/// Drops `#` comments and surrounding blank space.
fn strip_comments(text: &str) -> String {
    text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n").trim().to_string()
}

/// Parses diagram text: `PD[...]`, `BR[...]` or a catalog name.
pub fn parse_diagram_text(text: &str) -> Result<LinkDiagram, String> {
    let t = strip_comments(text);
    if t.is_empty() {
        return Err("no diagram given".into());
    }
    if t.starts_with("PD") || t.starts_with("BR") {
        return LinkDiagram::parse(&t).map_err(|e| e.to_string());
    }
    catalog::by_name(&t).map(|d| d.with_source(t.clone())).ok_or_else(|| format!("unknown diagram {t:?}"))
}

/// Reads a diagram file; a path that is not a file but names a catalog
/// diagram is accepted as that diagram.
pub fn load_diagram(path: &str) -> Result<(String, LinkDiagram), CliError> {
    if path.trim().is_empty() {
        return Err(CliError::Usage("empty file path".into()));
    }
    let p = Path::new(path);
    let input = |msg: String| CliError::Input { path: path.to_string(), msg };
    if !p.is_file() {
        return match catalog::by_name(path) {
            Some(d) => Ok((path.to_string(), d.with_source(path))),
            None => Err(input("no such file or catalog diagram".into())),
        };
    }
    let text = std::fs::read_to_string(p).map_err(|e| input(e.to_string()))?;
    let d = parse_diagram_text(&text).map_err(input)?;
    let t = strip_comments(&text);
    let name = if t.starts_with("PD") || t.starts_with("BR") {
        p.file_stem().map_or(path.to_string(), |s| s.to_string_lossy().into_owned())
    } else {
        t
    };
    Ok((name, d))
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    if path.trim().is_empty() {
        return Err(CliError::Usage("empty file path".into()));
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input { path: path.to_string(), msg: e.to_string() })
}

/// Value of the `diagram =` line of a handlebody file.
pub fn handlebody_subject(text: &str) -> Option<String> {
    text.lines().find_map(|l| {
        let l = l.split('#').next()?.trim();
        let (k, v) = l.split_once('=')?;
        (k.trim() == "diagram").then(|| normalize_knot(v.trim()))
    })
}
