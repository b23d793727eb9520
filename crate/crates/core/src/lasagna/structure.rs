//! Double classes `(α₊, α₋)` and the graded Lee lasagna tables they index.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use super::quadratic::{definiteness, ellipsoid_points, quad, Definiteness};
use super::report::SValue;
use super::{Handlebody, LasagnaError};
use crate::khovanov::{khr2_table, RingTag};
use crate::linkdiag::LinkDiagram;

/// Which `β = α₊ - α₋ ≡ α (mod 2)` to list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Window {
    /// `|β_i| ≤ R` for every component.
    Radius(i64),
    /// `|h| ≤ H`; needs a definite intersection form.
    Degree(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleClass {
    pub alpha_plus: Vec<i64>,
    pub alpha_minus: Vec<i64>,
    pub beta: Vec<i64>,
    /// `-2 α₊·α₋ = (β² - α²)/2`.
    pub h: i64,
    /// Quantum degrees mod 4: `-α² - 2` and `-α²`.
    pub z4: [i64; 2],
    /// `s(X; α₊ - α₋)` when known.
    pub s: SValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleClassTable {
    pub alpha: Vec<i64>,
    pub entries: Vec<DoubleClass>,
}

fn betas(x: &Handlebody, alpha: &[i64], window: Window) -> Result<Vec<Vec<i64>>, LasagnaError> {
    let q = x.framing_form().q;
    let a2 = quad(&q, alpha);
    match window {
        Window::Radius(r) => {
            if alpha.is_empty() {
                return Ok(vec![vec![]]);
            }
            Ok(alpha
                .iter()
                .map(|&a| (-r..=r).filter(move |b| (b - a).rem_euclid(2) == 0))
                .multi_cartesian_product()
                .collect())
        }
        Window::Degree(hmax) => {
            let (a, sign) = match definiteness(&q) {
                Definiteness::PositiveDefinite => (q.clone(), 1),
                Definiteness::NegativeDefinite => (q.iter().map(|r| r.iter().map(|v| -v).collect()).collect(), -1),
                d => {
                    return Err(LasagnaError::Refused(format!(
                        "intersection form is {d:?}; a radius bound is required"
                    )))
                }
            };
            let pts = ellipsoid_points(&a, alpha, sign * a2 + 2 * hmax)
                .ok_or_else(|| LasagnaError::Refused("intersection form is not definite".into()))?;
            Ok(pts.into_iter().filter(|b| (quad(&q, b) - a2).abs() <= 2 * hmax).collect())
        }
    }
}

pub fn enumerate_double_classes(
    x: &Handlebody,
    alpha: &[i64],
    window: Window,
    s_of: &dyn Fn(&[i64]) -> SValue,
) -> Result<DoubleClassTable, LasagnaError> {
    x.check_class(alpha)?;
    let q = x.framing_form().q;
    let a2 = quad(&q, alpha);
    let mut entries = Vec::new();
    for beta in betas(x, alpha, window)? {
        let plus: Vec<i64> = alpha.iter().zip(&beta).map(|(a, b)| (a + b) / 2).collect();
        let minus: Vec<i64> = alpha.iter().zip(&beta).map(|(a, b)| (a - b) / 2).collect();
        let cross: i64 = (0..q.len())
            .flat_map(|i| (0..q.len()).map(move |j| (i, j)))
            .map(|(i, j)| plus[i] * q[i][j] * minus[j])
            .sum();
        let h = -2 * cross;
        debug_assert_eq!(2 * h, quad(&q, &beta) - a2);
        let z4 = [(-a2 - 2).rem_euclid(4), (-a2).rem_euclid(4)];
        entries.push(DoubleClass { alpha_plus: plus, alpha_minus: minus, s: s_of(&beta), beta, h, z4 });
    }
    entries.sort_by(|a, b| a.beta.cmp(&b.beta));
    Ok(DoubleClassTable { alpha: alpha.to_vec(), entries })
}

/// One generator of the associated graded module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureRow {
    pub h: i64,
    pub q: i64,
    pub dim: usize,
    /// The `β` it comes from, when the table is indexed by double classes.
    pub beta: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureTable {
    pub alpha: Vec<i64>,
    pub rows: Vec<StructureRow>,
    /// Classes `β` whose s-value was not available.
    pub gaps: Vec<Vec<i64>>,
    pub route: String,
}

impl StructureTable {
    /// Total dimension in each bidegree `(h, q)`.
    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        let mut m = BTreeMap::new();
        for r in &self.rows {
            *m.entry((r.h, r.q)).or_insert(0) += r.dim;
        }
        m
    }
}

/// `gr` of the Lee lasagna module at `α`: for each `β ≡ α (mod 2)` one
/// generator in homological degree `(β² - α²)/2` at filtration levels
/// `(α² - β²)/2 + s(X;β)` and two below it (a single level when `β = 0`).
///
/// A degenerate intersection form puts infinitely many `β` in one degree; the
/// crossingless 0-framed unknot is then handled by [`sym_power_table`].
pub fn lee_structure_table(
    x: &Handlebody,
    alpha: &[i64],
    window: Window,
    s_of: &dyn Fn(&[i64]) -> SValue,
) -> Result<StructureTable, LasagnaError> {
    x.check_class(alpha)?;
    let q = x.framing_form().q;
    match definiteness(&q) {
        Definiteness::PositiveDefinite | Definiteness::NegativeDefinite => {}
        d => {
            let crossingless_zero = x.diagram.n_crossings() == 0 && x.framings().iter().all(|&f| f == 0);
            if crossingless_zero && x.n_handles() == 1 {
                let kmax = match window {
                    Window::Radius(r) | Window::Degree(r) => r.max(0) as usize,
                };
                return sym_power_table(alpha, kmax);
            }
            return Err(LasagnaError::Refused(format!(
                "intersection form is {d:?}; the double-class table has infinitely many entries per degree"
            )));
        }
    }
    let a2 = quad(&q, alpha);
    let table = enumerate_double_classes(x, alpha, window, s_of)?;
    let mut rows = Vec::new();
    let mut gaps = Vec::new();
    for e in table.entries {
        let Some(s) = e.s.exact() else {
            gaps.push(e.beta);
            continue;
        };
        let top = (a2 - quad(&q, &e.beta)) / 2 + s;
        let zero = e.beta.iter().all(|&b| b == 0);
        rows.push(StructureRow { h: e.h, q: top, dim: 1, beta: Some(e.beta.clone()) });
        if !zero {
            rows.push(StructureRow { h: e.h, q: top - 2, dim: 1, beta: Some(e.beta) });
        }
    }
    rows.sort_by(|a, b| (a.h, a.q).cmp(&(b.h, b.q)));
    Ok(StructureTable { alpha: alpha.to_vec(), rows, gaps, route: "double classes with s-values".into() })
}

/// `gr` of the Lee lasagna module of `S² × D²` at `α`, as the symmetric
/// power of the gl₂ Lee homology of one 0-framed unknot strand, using `n ≥ kmax`
/// parallel strands with `n ≡ |α| (mod 2)`; the lasagna grading of `n`
/// strands is shifted by `-n`. Rows `q = 0, -2, …, -2·kmax` are listed.
pub fn sym_power_table(alpha: &[i64], kmax: usize) -> Result<StructureTable, LasagnaError> {
    let a: usize = alpha.iter().map(|v| v.unsigned_abs() as usize).sum();
    let mut n = kmax.max(a);
    if (n - a) % 2 == 1 {
        n += 1;
    }
    let strand = khr2_table(&LinkDiagram::unknot(0), RingTag::Rationals, None)
        .map_err(|e| LasagnaError::Refused(e.to_string()))?;
    let levels: Vec<i64> = strand
        .groups
        .iter()
        .filter(|(&(h, _), _)| h == 0)
        .flat_map(|(&(_, q), &(rank, _))| std::iter::repeat(q as i64).take(rank))
        .collect();
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for pick in levels.iter().combinations_with_replacement(n) {
        *dims.entry(pick.into_iter().sum::<i64>() - n as i64).or_insert(0) += 1;
    }
    let rows = dims
        .into_iter()
        .rev()
        .filter(|&(q, _)| q >= -2 * kmax as i64)
        .map(|(q, dim)| StructureRow { h: 0, q, dim, beta: None })
        .collect();
    Ok(StructureTable {
        alpha: alpha.to_vec(),
        rows,
        gaps: vec![],
        route: format!("symmetric power of one 0-framed unknot strand, {n} strands"),
    })
}
