//! Rules that combine computed values with external facts: vanishing from
//! Thurston–Bennequin bounds, concordance transfer, connected sums, and genus
//! bounds.

use serde::Serialize;

use super::report::{ClassEntry, LasagnaSReport, Provenance, SValue, Status, Step, Verdict, VerdictStatus};
use super::{Handlebody, LasagnaError};

/// A certified lower bound `tb ≤ TB(-K)` for the knot of one split component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TbCertificate {
    pub component: usize,
    /// Name of the mirror knot the bound is about.
    pub subject: String,
    pub tb: i64,
    pub source: String,
}

/// Vanishing when a split component has framing `n ≥ -tb`.
pub fn ng_vanishing(x: &Handlebody, certs: &[TbCertificate]) -> Verdict {
    let framings = x.framings();
    for c in certs {
        if c.component >= x.n_handles() || !x.split.contains(&c.component) {
            continue;
        }
        let n = framings[c.component];
        if n >= -c.tb {
            return Verdict {
                status: VerdictStatus::Vanishing,
                reasons: vec![
                    format!("TB({}) ≥ {} [{}]", c.subject, c.tb, c.source),
                    format!(
                        "component {} is split with framing {n} ≥ -TB = {}, so the knot trace summand kills the module",
                        c.component, -c.tb
                    ),
                ],
            };
        }
    }
    Verdict { status: VerdictStatus::Unknown, reasons: vec!["no certificate with n ≥ -TB(-K)".into()] }
}

/// An asserted component-wise framed concordance between attaching links.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcordanceFact {
    pub from: String,
    pub to: String,
    pub source: String,
}

/// Copies every value of `report` (for `src`) to `dst`.
pub fn concordance_transfer(
    report: &LasagnaSReport,
    src: &Handlebody,
    dst: &Handlebody,
    fact: &ConcordanceFact,
) -> Result<LasagnaSReport, LasagnaError> {
    if src.n_handles() != dst.n_handles() {
        return Err(LasagnaError::Arity { expected: src.n_handles(), found: dst.n_handles() });
    }
    let (qs, qd) = (src.framing_form().q, dst.framing_form().q);
    if qs != qd {
        return Err(LasagnaError::Refused(format!(
            "a framed concordance preserves the intersection form, but {qs:?} ≠ {qd:?}"
        )));
    }
    let classes = report
        .classes
        .iter()
        .map(|e| {
            let mut chain = e.chain.clone();
            chain.push(Step::new(
                "concordance",
                format!("{} is framed concordant to {} [{}]", fact.from, fact.to, fact.source),
                Provenance::IngestedFact,
            ));
            chain.push(Step::new(
                "concordance transfer",
                format!("s({};{:?}) = s({};{:?}) = {}", dst.name, e.alpha, src.name, e.alpha, e.value),
                Provenance::TheoremComposition,
            ));
            ClassEntry { provenance: Provenance::TheoremComposition, chain, ..e.clone() }
        })
        .collect();
    Ok(LasagnaSReport::new(dst.name.clone(), classes))
}

/// `s(X₁ # … # X_k; (α₁, …, α_k)) = Σ s(X_i; α_i)`, with `-∞` absorbing.
pub fn connected_sum_compose(parts: &[(&LasagnaSReport, Vec<i64>)]) -> LasagnaSReport {
    let mut alpha = Vec::new();
    let mut square = 0;
    let mut chain = Vec::new();
    let mut total = SValue::Exact(0);
    let mut status = Status::Exact;
    for (r, a) in parts {
        let e = r.get(a);
        let v = e.map(|e| e.value.clone()).unwrap_or(SValue::Unknown);
        if let Some(e) = e {
            square += e.square;
            if matches!(e.status, Status::Conditional) && matches!(status, Status::Exact) {
                status = Status::Conditional;
            }
        }
        chain.push(Step::new("summand", format!("s({};{a:?}) = {v}", r.manifold), Provenance::TheoremComposition));
        alpha.extend_from_slice(a);
        total = match (total, v) {
            (SValue::MinusInfinity, _) | (_, SValue::MinusInfinity) => SValue::MinusInfinity,
            (SValue::Unknown, _) | (_, SValue::Unknown) => SValue::Unknown,
            (SValue::Exact(x), SValue::Exact(y)) => SValue::Exact(x + y),
            (SValue::Exact(x) | SValue::AtMost(x), SValue::Exact(y) | SValue::AtMost(y)) => SValue::AtMost(x + y),
        };
    }
    let status = match total {
        SValue::Exact(_) => status,
        SValue::MinusInfinity => Status::Exact,
        SValue::AtMost(_) => Status::Bound,
        SValue::Unknown => Status::Unknown,
    };
    chain.push(Step::new("connected sum", format!("s is additive: {total}"), Provenance::TheoremComposition));
    let name = parts.iter().map(|(r, _)| r.manifold.clone()).collect::<Vec<_>>().join(" # ");
    let entry = ClassEntry { alpha, square, value: total, status, provenance: Provenance::TheoremComposition, chain };
    LasagnaSReport::new(name, vec![entry])
}

/// Lower bounds from one class, with an ingested upper bound when available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub alpha: Vec<i64>,
    pub s: i64,
    pub square: i64,
    /// `g(X;α) ≥ (s + α²)/2`.
    pub genus_lower: i64,
    /// For a knot trace `X_n(K)` at `α = ±1`: `g_sh^n(K) ≥ (s + n)/2`.
    pub shake_lower: Option<i64>,
    /// Ingested upper bound and its source.
    pub upper: Option<(i64, String)>,
    /// Lower and upper bounds meet.
    pub sharp: bool,
}

/// Bounds for every exact class; `uppers` lists `(α, genus upper bound, source)`.
pub fn genus_and_shake_bounds(x: &Handlebody, report: &LasagnaSReport, uppers: &[(Vec<i64>, i64, String)]) -> Vec<BoundRow> {
    let trace = x.n_handles() == 1;
    let mut rows = Vec::new();
    for e in &report.classes {
        let Some(s) = e.value.exact() else { continue };
        let genus_lower = ((s + e.square) / 2).max(0);
        let shake_lower = (trace && e.alpha[0].abs() == 1).then(|| ((s + x.framings()[0]) / 2).max(0));
        let upper = uppers.iter().find(|(a, _, _)| *a == e.alpha).map(|(_, g, src)| (*g, src.clone()));
        let lower = shake_lower.unwrap_or(genus_lower);
        let sharp = upper.as_ref().is_some_and(|(g, _)| *g == lower);
        rows.push(BoundRow { alpha: e.alpha.clone(), s, square: e.square, genus_lower, shake_lower, upper, sharp });
    }
    rows
}
