//! Per-class values with derivation chains, and vanishing verdicts.

use std::fmt;

use serde::Serialize;

use super::LasagnaError;

/// Where a number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    IngestedFact,
    TheoremComposition,
}

/// A lasagna s-value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum SValue {
    Exact(i64),
    MinusInfinity,
    AtMost(i64),
    Unknown,
}

impl SValue {
    pub fn exact(&self) -> Option<i64> {
        match self {
            SValue::Exact(v) => Some(*v),
            _ => None,
        }
    }
}

impl fmt::Display for SValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SValue::Exact(v) => write!(f, "{v}"),
            SValue::MinusInfinity => write!(f, "-inf"),
            SValue::AtMost(v) => write!(f, "<= {v}"),
            SValue::Unknown => write!(f, "?"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    /// The value is exact if the criterion holds on an infinite coset that was
    /// only checked on representatives.
    Conditional,
    Bound,
    Inapplicable,
    Unknown,
}

/// One link of a derivation chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub rule: String,
    pub detail: String,
    pub provenance: Provenance,
}

impl Step {
    pub fn new(rule: &str, detail: impl Into<String>, provenance: Provenance) -> Self {
        Step { rule: rule.to_string(), detail: detail.into(), provenance }
    }
}

/// `s(X; α)` with its derivation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub alpha: Vec<i64>,
    /// `α² = αᵀQ_Xα`.
    pub square: i64,
    pub value: SValue,
    pub status: Status,
    pub provenance: Provenance,
    pub chain: Vec<Step>,
}

impl ClassEntry {
    pub fn unknown(alpha: &[i64], square: i64, chain: Vec<Step>) -> Self {
        ClassEntry {
            alpha: alpha.to_vec(),
            square,
            value: SValue::Unknown,
            status: Status::Unknown,
            provenance: Provenance::Computed,
            chain,
        }
    }

    /// Parity `s ≡ α²` and `s(X;0) ≤ 0` for finite values.
    pub fn check_invariants(&self) -> Result<(), LasagnaError> {
        let v = match self.value {
            SValue::Exact(v) => v,
            _ => return Ok(()),
        };
        if (v - self.square).rem_euclid(2) != 0 {
            return Err(LasagnaError::Refused(format!(
                "s = {v} at α = {:?} has the wrong parity for α² = {}",
                self.alpha, self.square
            )));
        }
        if self.alpha.iter().all(|&a| a == 0) && v > 0 {
            return Err(LasagnaError::Refused(format!("s(X;0) = {v} is positive")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum VerdictStatus {
    /// The Khovanov lasagna module is zero.
    Vanishing,
    /// A finite lasagna s-value witnesses a nonzero Lee, hence Khovanov, module.
    Nonvanishing { alpha: Vec<i64>, s: i64 },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    #[serde(flatten)]
    pub status: VerdictStatus,
    pub reasons: Vec<String>,
}

impl Verdict {
    /// Nonvanishing from the first finite exact entry, else unknown.
    pub fn from_entries(entries: &[ClassEntry]) -> Verdict {
        for e in entries {
            if let (SValue::Exact(s), Status::Exact) = (&e.value, e.status) {
                return Verdict {
                    status: VerdictStatus::Nonvanishing { alpha: e.alpha.clone(), s: *s },
                    reasons: vec![
                        format!("s(X;{:?}) = {s} is finite, so the Lee lasagna module is nonzero", e.alpha),
                        "a nonzero Lee lasagna module bounds the Khovanov lasagna rank from below".into(),
                    ],
                };
            }
        }
        Verdict { status: VerdictStatus::Unknown, reasons: vec!["no finite exact s-value".into()] }
    }
}

/// Lasagna s-invariants of one handlebody.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LasagnaSReport {
    pub manifold: String,
    pub classes: Vec<ClassEntry>,
    pub verdict: Verdict,
}

impl LasagnaSReport {
    pub fn new(manifold: impl Into<String>, classes: Vec<ClassEntry>) -> Self {
        let verdict = Verdict::from_entries(&classes);
        LasagnaSReport { manifold: manifold.into(), classes, verdict }
    }

    pub fn get(&self, alpha: &[i64]) -> Option<&ClassEntry> {
        self.classes.iter().find(|e| e.alpha == alpha)
    }

    pub fn value(&self, alpha: &[i64]) -> SValue {
        self.get(alpha).map(|e| e.value.clone()).unwrap_or(SValue::Unknown)
    }

    pub fn check_invariants(&self) -> Result<(), LasagnaError> {
        for e in &self.classes {
            e.check_invariants()?;
            let neg: Vec<i64> = e.alpha.iter().map(|a| -a).collect();
            if let Some(o) = self.get(&neg) {
                if let (Some(a), Some(b)) = (e.value.exact(), o.value.exact()) {
                    if a != b {
                        return Err(LasagnaError::Refused(format!("s(X;α) = {a} but s(X;-α) = {b}")));
                    }
                }
            }
        }
        Ok(())
    }
}
