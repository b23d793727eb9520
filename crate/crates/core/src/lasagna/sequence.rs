//! Cable sequences, the torus-trace closed form, and the per-class evaluator
//! that combines every route.

use serde::Serialize;

use super::criterion::diagrammatic_s;
use super::report::{ClassEntry, Provenance, SValue, Status, Step};
use super::{Handlebody, LasagnaError};
use crate::lee;
use crate::linkdiag::CableSpec;

/// Largest cable (in crossings) the homology engines are asked to handle.
pub const DEFAULT_MAX_CROSSINGS: usize = 90;

/// Limits on cable computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub max_crossings: usize,
    /// Generator budget handed to the scanning builder.
    pub generators: Option<usize>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_crossings: DEFAULT_MAX_CROSSINGS, generators: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceTerm {
    pub r: usize,
    pub crossings: usize,
    pub s_gl2: i64,
    /// `s_gl2(K^p(α⁺+r, α⁻+r)) - 2|r| - |α| + 1`, an upper bound for `s(X;α)`.
    pub term: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SSequence {
    pub alpha: Vec<i64>,
    pub terms: Vec<SequenceTerm>,
    /// Why the sequence stopped before `r_max`.
    pub truncated: Option<String>,
}

impl SSequence {
    /// The last (smallest) term.
    pub fn bound(&self) -> Option<i64> {
        self.terms.last().map(|t| t.term)
    }
}

fn abs_sum(alpha: &[i64]) -> i64 {
    alpha.iter().map(|a| a.abs()).sum()
}

/// Terms for `r = 0..=r_max`, with `r` copies added in each direction on every
/// component; stops at the first cable over the crossing budget.
pub fn lasagna_s_sequence(x: &Handlebody, alpha: &[i64], r_max: usize, budget: &Budget) -> Result<SSequence, LasagnaError> {
    x.check_class(alpha)?;
    let m = x.n_handles() as i64;
    let mut terms: Vec<SequenceTerm> = Vec::new();
    let mut truncated = None;
    for r in 0..=r_max {
        let spec = CableSpec::signed(alpha, r, &x.framings());
        let crossings = x.diagram.cable_crossings(&spec);
        if crossings > budget.max_crossings {
            truncated = Some(format!(
                "r = {r}: cable has {crossings} crossings, above the budget of {}",
                budget.max_crossings
            ));
            break;
        }
        let cable = x.diagram.cable(&spec)?;
        let s_gl2 = lee::s_gl2(&cable, budget.generators)?;
        let term = s_gl2 - 2 * m * r as i64 - abs_sum(alpha) + 1;
        terms.push(SequenceTerm { r, crossings, s_gl2, term });
        if terms.windows(2).any(|w| w[1].term > w[0].term) {
            return Err(LasagnaError::NotMonotone(terms.iter().map(|t| t.term).collect()));
        }
    }
    Ok(SSequence { alpha: alpha.to_vec(), terms, truncated })
}

/// `s` of the `k`-framed `(r+s)`-cable of `T(p,q)` with `s` strands reversed,
/// valid for `k ≥ pq`.
pub fn torus_cable_s(p: usize, q: usize, k: i64, r: i64, s: i64) -> Option<i64> {
    if k < (p * q) as i64 || r < 0 || s < 0 {
        return None;
    }
    let d = (r - s).abs();
    Some(k * d * d - (k - (p * q) as i64 + p as i64 + q as i64) * d - 2 * r.min(s) + 1)
}

/// `s(X_{-k}(-T(p,q)); α)` for `k ≥ pq`: the cable limit evaluated with the
/// torus cable formula, which is constant in `r`.
pub fn torus_trace_s(p: usize, q: usize, k: i64, alpha: i64) -> Option<ClassEntry> {
    let (ap, am) = (alpha.max(0), (-alpha).max(0));
    let square = -k * alpha * alpha;
    let mut terms = Vec::new();
    for r in 0..=4i64 {
        // the mirror of K^{-k}(a⁺+r, a⁻+r) over -T(p,q) is T(p,q)^k(a⁺+r, a⁻+r),
        // whose framed writhe is k·α²
        let s = torus_cable_s(p, q, k, ap + r, am + r)?;
        terms.push(-(s + 2 * r) + k * alpha * alpha - alpha.abs() + 1);
    }
    if terms.windows(2).any(|w| w[0] != w[1]) {
        return None;
    }
    let value = terms[0];
    Some(ClassEntry {
        alpha: vec![alpha],
        square,
        value: SValue::Exact(value),
        status: Status::Exact,
        provenance: Provenance::TheoremComposition,
        chain: vec![
            Step::new(
                "torus cable formula",
                format!(
                    "s(T({p},{q})^{k}(r,s)) = k|r-s|² - (k-pq+p+q)|r-s| - 2min(r,s) + 1 for k = {k} ≥ pq = {}",
                    p * q
                ),
                Provenance::TheoremComposition,
            ),
            Step::new(
                "cable limit",
                format!("terms for r = 0..4 are constant: {terms:?}; s = (k-pq+p+q-1)|α| = {value}"),
                Provenance::TheoremComposition,
            ),
        ],
    })
}

/// Best available value of `s(X;α)`: the diagrammatic criterion, then the
/// torus-trace formula, then the cable sequence as an upper bound refined by
/// parity.
pub fn evaluate_class(x: &Handlebody, alpha: &[i64], r_max: usize, budget: &Budget) -> Result<ClassEntry, LasagnaError> {
    let diag = diagrammatic_s(x, alpha, budget)?;
    if matches!(diag.status, Status::Exact) {
        diag.check_invariants()?;
        return Ok(diag);
    }
    let mut chain = diag.chain.clone();
    if let (Some((p, q)), 1) = (x.torus, x.n_handles()) {
        let k = -x.framings()[0];
        if let Some(e) = torus_trace_s(p, q, k, alpha[0]) {
            let mut e = e;
            chain.extend(e.chain);
            e.chain = chain;
            e.check_invariants()?;
            return Ok(e);
        }
    }
    if matches!(diag.status, Status::Conditional) {
        return Ok(diag);
    }
    let square = diag.square;
    let seq = lasagna_s_sequence(x, alpha, r_max, budget)?;
    for t in &seq.terms {
        chain.push(Step::new(
            "cable sequence",
            format!("r = {}: {} crossings, s_gl2 = {}, term = {}", t.r, t.crossings, t.s_gl2, t.term),
            Provenance::Computed,
        ));
    }
    if let Some(why) = &seq.truncated {
        chain.push(Step::new("feasibility guard", why.clone(), Provenance::Computed));
    }
    let Some(mut b) = seq.bound() else {
        return Ok(ClassEntry::unknown(alpha, square, chain));
    };
    if alpha.iter().all(|&a| a == 0) && b > 0 {
        b = 0;
        chain.push(Step::new("zero class", "s(X;0) ≤ 0", Provenance::TheoremComposition));
    }
    if (b - square).rem_euclid(2) != 0 {
        b -= 1;
        chain.push(Step::new(
            "parity",
            format!("s ≡ α² = {square} (mod 2), so s ≤ {b}"),
            Provenance::TheoremComposition,
        ));
    }
    Ok(ClassEntry {
        alpha: alpha.to_vec(),
        square,
        value: SValue::AtMost(b),
        status: Status::Bound,
        provenance: Provenance::Computed,
        chain,
    })
}
