//! 2-handlebodies and their lasagna s-invariants.
//!
//! A 2-handlebody `X` is presented by a framed link diagram; `H₂(X) ≅ Z^m`
//! with one generator per component. Lasagna s-invariants come from the
//! diagrammatic criterion, from cable sequences (upper bounds), from the
//! torus-trace closed form, and from composition rules.

mod compose;
mod criterion;
mod quadratic;
mod report;
mod sequence;
mod structure;

#[cfg(test)]
mod tests;

pub use compose::{
    concordance_transfer, connected_sum_compose, genus_and_shake_bounds, ng_vanishing, BoundRow,
    ConcordanceFact, TbCertificate,
};
pub use criterion::{
    cable_negativity_check, diagrammatic_s, negativity_by_cable, negativity_closed_form, CriterionCheck,
};
pub use quadratic::{definiteness, maximize_quadratic_coset, CosetMaximum, Definiteness};
pub use report::{ClassEntry, LasagnaSReport, Provenance, SValue, Status, Step, Verdict, VerdictStatus};
pub use sequence::{
    evaluate_class, lasagna_s_sequence, torus_cable_s, torus_trace_s, Budget, SSequence, SequenceTerm,
    DEFAULT_MAX_CROSSINGS,
};
pub use structure::{
    enumerate_double_classes, lee_structure_table, sym_power_table, DoubleClass, DoubleClassTable, StructureRow,
    StructureTable, Window,
};

use serde::Serialize;
use thiserror::Error;

use crate::lee::LeeError;
use crate::linkdiag::{catalog, DiagramError, LinkDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LasagnaError {
    #[error("handlebody file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Lee(#[from] LeeError),
    #[error("class has {found} entries, the handlebody has {expected} handles")]
    Arity { expected: usize, found: usize },
    #[error("negativity check disagrees for α' = {0:?}: closed form {1}, cable count {2}")]
    NegativityDisagreement(Vec<i64>, bool, bool),
    #[error("cable writhe {cable} differs from αᵀQα = {form}")]
    WritheMismatch { cable: i64, form: i64 },
    #[error("cable sequence increased: {0:?}")]
    NotMonotone(Vec<i64>),
    #[error("{0}")]
    Refused(String),
}

/// Attaching knot recognized as `-T(p,q)` (the unknot is `(1,1)`).
pub type TorusType = (usize, usize);

/// `B⁴` with 2-handles attached along a framed link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Handlebody {
    pub name: String,
    /// Attaching link; component framings are the handle framings.
    pub diagram: LinkDiagram,
    /// Components declared split from the rest, so each carries a knot-trace summand.
    pub split: Vec<usize>,
    /// Set when the attaching link is a knot known to be `-T(p,q)`.
    pub torus: Option<TorusType>,
}

/// `P`, `W`, `N`, `M = P - W + N` and the intersection form `Q_X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramingForm {
    pub p: Vec<i64>,
    pub w: Vec<i64>,
    pub n: Vec<Vec<i64>>,
    pub m: Vec<Vec<i64>>,
    pub q: Vec<Vec<i64>>,
}

impl FramingForm {
    /// `h(α') = α'ᵀMα'`.
    pub fn h(&self, alpha: &[i64]) -> i64 {
        quadratic::quad(&self.m, alpha)
    }

    /// `α² = αᵀQ_Xα`.
    pub fn square(&self, alpha: &[i64]) -> i64 {
        quadratic::quad(&self.q, alpha)
    }
}

impl Handlebody {
    pub fn new(name: impl Into<String>, diagram: LinkDiagram) -> Self {
        let m = diagram.n_components();
        Handlebody { name: name.into(), diagram, split: if m == 1 { vec![0] } else { vec![] }, torus: None }
    }

    /// The knot trace `X_n(K)`.
    pub fn knot_trace(name: impl Into<String>, knot: &LinkDiagram, n: i64) -> Result<Self, LasagnaError> {
        let mut d = knot.clone();
        d.set_framings(&[n])?;
        Ok(Handlebody::new(name, d))
    }

    /// `X_n(U)`, crossingless.
    pub fn unknot_trace(n: i64) -> Self {
        let mut x = Handlebody::new(format!("X_{n}(U)"), LinkDiagram::unknot(n));
        x.torus = Some((1, 1));
        x
    }

    /// `X_{-k}(-T(p,q))` on the mirrored braid-closure diagram.
    pub fn neg_torus_trace(p: usize, q: usize, k: i64) -> Self {
        let mut d = catalog::torus(p, q as i64).mirror();
        d.set_framings(&[-k]).expect("torus knot has one component");
        let mut x = Handlebody::new(format!("X_{}(-T({p},{q}))", -k), d);
        x.torus = Some((p, q));
        x
    }

    pub fn n_handles(&self) -> usize {
        self.diagram.n_components()
    }

    pub fn framings(&self) -> Vec<i64> {
        self.diagram.framings()
    }

    pub fn check_class(&self, alpha: &[i64]) -> Result<(), LasagnaError> {
        if alpha.len() != self.n_handles() {
            return Err(LasagnaError::Arity { expected: self.n_handles(), found: alpha.len() });
        }
        Ok(())
    }

    pub fn framing_form(&self) -> FramingForm {
        let st = self.diagram.stats();
        let p = self.framings();
        let k = p.len();
        let mut m = st.crossing_matrix.clone();
        let mut q = st.linking.clone();
        for i in 0..k {
            m[i][i] += p[i] - st.writhe[i];
            q[i][i] = p[i];
        }
        FramingForm { p, w: st.writhe, n: st.crossing_matrix, m, q }
    }

    /// Reads the handlebody text format:
    ///
    /// ```text
    /// # comments and blank lines are ignored
    /// name = X1
    /// diagram = -5_2            # catalog name, PD[...] or BR[...]
    /// framing = -1              # one integer per component
    /// split = 0                 # optional: components split from the rest
    /// ```
    pub fn parse(text: &str) -> Result<Self, LasagnaError> {
        let mut name = None;
        let mut diagram: Option<(usize, String)> = None;
        let mut framing: Option<(usize, Vec<i64>)> = None;
        let mut split: Option<Vec<usize>> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| LasagnaError::Parse { line: i + 1, msg };
            let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected key = value, got {line:?}")))?;
            let value = value.trim();
            let ints = |v: &str| -> Result<Vec<i64>, LasagnaError> {
                v.split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<i64>().map_err(|_| err(format!("not an integer: {t:?}"))))
                    .collect()
            };
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "diagram" => diagram = Some((i + 1, value.to_string())),
                "framing" => framing = Some((i + 1, ints(value)?)),
                "split" => {
                    split = Some(ints(value)?.into_iter().map(|v| v as usize).collect());
                }
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        let (dline, dtext) = diagram.ok_or(LasagnaError::Parse { line: 0, msg: "missing diagram".into() })?;
        let mut d = if dtext.starts_with("PD") || dtext.starts_with("BR") {
            LinkDiagram::parse(&dtext).map_err(|e| LasagnaError::Parse { line: dline, msg: e.to_string() })?
        } else {
            catalog::by_name(&dtext)
                .ok_or_else(|| LasagnaError::Parse { line: dline, msg: format!("unknown diagram {dtext:?}") })?
        };
        if let Some((fline, f)) = framing {
            d.set_framings(&f).map_err(|e| LasagnaError::Parse { line: fline, msg: e.to_string() })?;
        }
        let name = name.unwrap_or_else(|| dtext.clone());
        let mut x = Handlebody::new(name, d);
        x.torus = torus_type(&dtext);
        if let Some(s) = split {
            if let Some(&bad) = s.iter().find(|&&c| c >= x.n_handles()) {
                return Err(LasagnaError::Parse { line: 0, msg: format!("split component {bad} out of range") });
            }
            x.split = s;
        }
        Ok(x)
    }
}

/// Recognizes `unknot` and `-T(p,q)` with `p, q > 0` coprime.
fn torus_type(name: &str) -> Option<TorusType> {
    let n = name.trim();
    if n == "unknot" {
        return Some((1, 1));
    }
    let inner = n.strip_prefix("-T(")?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    let (p, q): (usize, usize) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (p > 0 && q > 0 && num_integer::gcd(p, q) == 1).then_some((p, q))
}
