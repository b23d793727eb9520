//! The gl₂ normalization: `KhR₂^{h,q}(L) = Kh^{h,-q-w}(-L)` with `w` the
//! framed writhe, and the support test against Thurston-Bennequin bounds.

use std::collections::BTreeMap;

use serde::Serialize;

use super::frobenius::RingTag;
use super::homology::BigradedHomology;
use super::{khovanov_homology, KhError};
use crate::linkdiag::LinkDiagram;

/// Reindexes the classical homology of the mirror.
pub fn reindex_gl2(mirror_kh: &BigradedHomology, framed_writhe: i64) -> BigradedHomology {
    let w = framed_writhe as i32;
    let groups: BTreeMap<(i32, i32), (usize, Vec<u64>)> =
        mirror_kh.groups.iter().map(|(&(h, q), g)| ((h, -q - w), g.clone())).collect();
    BigradedHomology { ring: mirror_kh.ring, shifts: mirror_kh.shifts, groups }
}

/// `KhR₂` of a framed oriented diagram.
pub fn khr2_table(d: &LinkDiagram, ring: RingTag, budget: Option<usize>) -> Result<BigradedHomology, KhError> {
    let kh = khovanov_homology(&d.mirror(), ring, budget)?;
    Ok(reindex_gl2(&kh, d.framed_writhe()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NgReport {
    /// Observed `min(q - h)` over the support; an upper bound for `TB(L)`.
    pub min_q_minus_h: i32,
    /// Observed `max(q - h)`; its negative bounds `TB(-L)` from above.
    pub max_q_minus_h: i32,
    pub tb_l: i64,
    pub tb_mirror: i64,
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub pass: bool,
}

/// Checks that classical `Kh(L)` lives in `TB(L) ≤ q - h ≤ -TB(-L)` for the
/// claimed lower bounds `tb_l ≤ TB(L)` and `tb_mirror ≤ TB(-L)`.
pub fn ng_support_check(hom: &BigradedHomology, tb_l: i64, tb_mirror: i64) -> NgReport {
    let vals: Vec<i32> = hom.groups.keys().map(|&(h, q)| q - h).collect();
    let min = vals.iter().copied().min().unwrap_or(0);
    let max = vals.iter().copied().max().unwrap_or(0);
    let lower_ok = min as i64 >= tb_l;
    let upper_ok = max as i64 <= -tb_mirror;
    NgReport {
        min_q_minus_h: min,
        max_q_minus_h: max,
        tb_l,
        tb_mirror,
        lower_ok,
        upper_ok,
        pass: lower_ok && upper_ok,
    }
}
