//! External facts: Thurston–Bennequin bounds, s-values, concordances and
//! genus bounds that cannot be read off a diagram.
//!
//! One record per line, fields separated by `|`, `#` starts a comment line:
//!
//! ```text
//! # kind              | subject     | value | source                  | trust
//! s                   | -5_2        | 2     | knot table              |
//! tb-lower-bound      | mirror(3_1) | 1     | Legendrian front        | trusted
//! concordance         | K           | K'    | explicit concordance    |
//! slice               | P(3,-3,-8)  | -     | ribbon move             |
//! genus-upper-bound   | X2          | 1:0   | slice disk              |
//! ```
//!
//! Values: an integer for `s` and `tb-lower-bound`, a knot name for
//! `concordance`, `-` or empty for `slice`, and `class:genus` (class entries
//! separated by `,`) for `genus-upper-bound`, whose subject is a handlebody
//! name. The trust column is optional and defaults to `trusted`; untrusted
//! records are kept and listed but never used. Knot names are normalized:
//! `mirror(K)` becomes `-K`, subscript digits become `_d`, `−` becomes `-`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactsError {
    #[error("cannot read facts file {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("facts file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("conflicting facts about {subject}: line {first} says {a}, line {second} says {b}")]
    Conflict { subject: String, first: usize, a: String, second: usize, b: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactKind {
    S,
    TbLowerBound,
    Concordance,
    Slice,
    GenusUpperBound,
}

impl FactKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s.to_ascii_lowercase().as_str() {
            "s" => FactKind::S,
            "tb-lower-bound" | "tb" => FactKind::TbLowerBound,
            "concordance" => FactKind::Concordance,
            "slice" => FactKind::Slice,
            "genus-upper-bound" => FactKind::GenusUpperBound,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            FactKind::S => "s",
            FactKind::TbLowerBound => "tb-lower-bound",
            FactKind::Concordance => "concordance",
            FactKind::Slice => "slice",
            FactKind::GenusUpperBound => "genus-upper-bound",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "kebab-case")]
pub enum FactValue {
    Int(i64),
    Knot(String),
    None,
    ClassGenus { alpha: Vec<i64>, genus: i64 },
}

impl fmt::Display for FactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactValue::Int(v) => write!(f, "{v}"),
            FactValue::Knot(k) => write!(f, "{k}"),
            FactValue::None => write!(f, "-"),
            FactValue::ClassGenus { alpha, genus } => {
                let a: Vec<String> = alpha.iter().map(i64::to_string).collect();
                write!(f, "{}:{genus}", a.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactRecord {
    pub kind: FactKind,
    pub subject: String,
    pub value: FactValue,
    pub source: String,
    pub trusted: bool,
    pub line: usize,
    /// The record as written in the file.
    pub raw: String,
}

impl FactRecord {
    /// The record as echoed in derivation chains.
    pub fn echo(&self) -> String {
        format!("line {}: {}", self.line, self.raw)
    }
}

/// Canonical spelling of a knot name.
pub fn normalize_knot(name: &str) -> String {
    let mut out = String::new();
    let mut in_sub = false;
    for ch in name.chars().filter(|c| !c.is_whitespace()) {
        let sub = ('₀'..='₉').contains(&ch);
        if sub {
            if !in_sub {
                out.push('_');
            }
            out.push(char::from(b'0' + (ch as u32 - '₀' as u32) as u8));
        } else {
            out.push(if ch == '−' { '-' } else { ch });
        }
        in_sub = sub;
    }
    if let Some(inner) = out.strip_prefix("mirror(").and_then(|r| r.strip_suffix(')')) {
        out = format!("-{}", normalize_knot(inner));
    }
    while let Some(rest) = out.strip_prefix("--") {
        out = rest.to_string();
    }
    if out == "-unknot" {
        out = "unknot".into();
    }
    out
}

fn parse_value(kind: FactKind, text: &str) -> Result<FactValue, String> {
    let int = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("expected an integer, got {t:?}"));
    match kind {
        FactKind::S | FactKind::TbLowerBound => int(text).map(FactValue::Int),
        FactKind::Concordance => {
            if text.is_empty() {
                return Err("concordance needs a second knot".into());
            }
            Ok(FactValue::Knot(normalize_knot(text)))
        }
        FactKind::Slice => match text {
            "" | "-" => Ok(FactValue::None),
            other => Err(format!("slice takes no value, got {other:?}")),
        },
        FactKind::GenusUpperBound => {
            let (a, g) = text.split_once(':').ok_or_else(|| format!("expected class:genus, got {text:?}"))?;
            let alpha = a.split(',').map(int).collect::<Result<Vec<_>, _>>()?;
            let genus = int(g)?;
            if genus < 0 {
                return Err(format!("negative genus {genus}"));
            }
            Ok(FactValue::ClassGenus { alpha, genus })
        }
    }
}

/// Validated, read-only collection of facts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FactsStore {
    pub records: Vec<FactRecord>,
}

impl FactsStore {
    pub fn parse(text: &str) -> Result<Self, FactsError> {
        let mut records = Vec::new();
        for (i, text_line) in text.lines().enumerate() {
            let line = i + 1;
            let raw = text_line.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let err = |msg: String| FactsError::Parse { line, msg };
            let fields: Vec<&str> = raw.split('|').map(str::trim).collect();
            if !(4..=5).contains(&fields.len()) {
                return Err(err(format!("expected 4 or 5 fields separated by |, found {}", fields.len())));
            }
            let kind = FactKind::parse(fields[0]).ok_or_else(|| err(format!("unknown kind {:?}", fields[0])))?;
            if fields[1].is_empty() {
                return Err(err("empty subject".into()));
            }
            let subject = match kind {
                FactKind::GenusUpperBound => fields[1].to_string(),
                _ => normalize_knot(fields[1]),
            };
            let value = parse_value(kind, fields[2]).map_err(err)?;
            let trusted = match fields.get(4).copied().unwrap_or("") {
                "" | "trusted" => true,
                "untrusted" => false,
                other => return Err(err(format!("trust must be trusted or untrusted, got {other:?}"))),
            };
            let raw = raw.to_string();
            records.push(FactRecord { kind, subject, value, source: fields[3].to_string(), trusted, line, raw });
        }
        let store = FactsStore { records };
        store.check_conflicts()?;
        Ok(store)
    }

    pub fn load(path: &Path) -> Result<Self, FactsError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FactsError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        Self::parse(&text)
    }

    fn check_conflicts(&self) -> Result<(), FactsError> {
        let conflict = |a: &FactRecord, av: String, b: &FactRecord, bv: String| FactsError::Conflict {
            subject: a.subject.clone(),
            first: a.line,
            a: av,
            second: b.line,
            b: bv,
        };
        let mut seen: BTreeMap<(FactKind, String, Vec<i64>), &FactRecord> = BTreeMap::new();
        for r in self.trusted() {
            let class = match &r.value {
                FactValue::ClassGenus { alpha, .. } => alpha.clone(),
                _ => Vec::new(),
            };
            if r.kind == FactKind::Concordance || r.kind == FactKind::Slice {
                continue;
            }
            match seen.get(&(r.kind, r.subject.clone(), class.clone())) {
                Some(prev) if prev.value != r.value => {
                    return Err(conflict(
                        prev,
                        format!("{} = {}", prev.kind.name(), prev.value),
                        r,
                        format!("{} = {}", r.kind.name(), r.value),
                    ))
                }
                Some(_) => {}
                None => {
                    seen.insert((r.kind, r.subject.clone(), class), r);
                }
            }
        }
        // a slice knot, and a knot concordant to one with known s, share that s
        for r in self.trusted().filter(|r| matches!(r.kind, FactKind::Slice | FactKind::Concordance)) {
            let partner_s = match &r.value {
                FactValue::Knot(k) => self.trusted().find(|f| f.kind == FactKind::S && f.subject == *k),
                _ => None,
            };
            let implied = match (r.kind, partner_s) {
                (FactKind::Slice, _) => Some(0),
                (_, Some(p)) => match p.value {
                    FactValue::Int(v) => Some(v),
                    _ => None,
                },
                _ => None,
            };
            let own = self.trusted().find(|f| f.kind == FactKind::S && f.subject == r.subject);
            if let (Some(v), Some(own)) = (implied, own) {
                if own.value != FactValue::Int(v) {
                    return Err(conflict(own, format!("s = {}", own.value), r, format!("s = {v} by {}", r.kind.name())));
                }
            }
        }
        Ok(())
    }

    pub fn trusted(&self) -> impl Iterator<Item = &FactRecord> {
        self.records.iter().filter(|r| r.trusted)
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Ingested `s(K)`.
    pub fn s_of(&self, knot: &str) -> Option<(i64, &FactRecord)> {
        let k = normalize_knot(knot);
        self.trusted().find(|r| r.kind == FactKind::S && r.subject == k).and_then(|r| match r.value {
            FactValue::Int(v) => Some((v, r)),
            _ => None,
        })
    }

    /// Largest certified lower bound for `TB(K)`.
    pub fn tb_lower(&self, knot: &str) -> Option<(i64, &FactRecord)> {
        let k = normalize_knot(knot);
        self.trusted()
            .filter(|r| r.kind == FactKind::TbLowerBound && r.subject == k)
            .filter_map(|r| match r.value {
                FactValue::Int(v) => Some((v, r)),
                _ => None,
            })
            .max_by_key(|(v, _)| *v)
    }

    /// Knots asserted concordant to `knot` by a single record; a slice
    /// record pairs the knot with the unknot.
    pub fn concordant(&self, knot: &str) -> Vec<(String, &FactRecord)> {
        let k = normalize_knot(knot);
        let mut out = Vec::new();
        for r in self.trusted() {
            match (&r.kind, &r.value) {
                (FactKind::Slice, _) if r.subject == k => out.push(("unknot".to_string(), r)),
                (FactKind::Concordance, FactValue::Knot(o)) if r.subject == k => out.push((o.clone(), r)),
                (FactKind::Concordance, FactValue::Knot(o)) if *o == k => out.push((r.subject.clone(), r)),
                _ => {}
            }
        }
        out
    }

    /// Genus upper bounds `(α, g, record)` for one handlebody.
    pub fn genus_upper(&self, handlebody: &str) -> Vec<(Vec<i64>, i64, &FactRecord)> {
        self.trusted()
            .filter(|r| r.kind == FactKind::GenusUpperBound && r.subject == handlebody)
            .filter_map(|r| match &r.value {
                FactValue::ClassGenus { alpha, genus } => Some((alpha.clone(), *genus, r)),
                _ => None,
            })
            .collect()
    }
}
