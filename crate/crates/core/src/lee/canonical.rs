//! The canonical cycle `x_o` written out in the cube of resolutions.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{canonical_h, check_arity, oriented_vertex, seifert_labels, LeeError};
use crate::khovanov::{Cube, FrobeniusSpec};
use crate::linkdiag::LinkDiagram;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalCycle {
    pub orientation: Vec<bool>,
    pub vertex: u64,
    pub h: i32,
    /// `true` = circle labelled `b = 1 - X`, others `a = 1 + X`.
    pub circle_labels: Vec<bool>,
    /// `(cube index, coefficient)` of the nonzero entries.
    pub support: Vec<(usize, i64)>,
    /// Whether the Lee differential kills the vector.
    pub is_cycle: bool,
}

/// Builds `x_o` at the oriented resolution of `D_o` and checks `d x_o = 0`.
pub fn canonical_cycle(d: &LinkDiagram, o: &[bool], cap: usize) -> Result<CanonicalCycle, LeeError> {
    check_arity(d, o)?;
    let cube = Cube::new(d, cap)?;
    let v = oriented_vertex(d, o);
    let res = &cube.res[v as usize];
    let edge_labels = seifert_labels(d, o);
    let mut circle_labels = vec![false; res.count];
    for (e, &c) in res.edge_circle.iter().enumerate() {
        circle_labels[c as usize] = edge_labels[e];
    }
    let b_mask: u64 = circle_labels.iter().enumerate().filter(|(_, &b)| b).fold(0, |m, (i, _)| m | 1 << i);
    // a = 1 + X and b = 1 - X, so each X on a b-circle contributes a sign
    let support: Vec<(usize, i64)> = (0..1u64 << res.count)
        .map(|lab| (cube.index(v, lab), if (lab & b_mask).count_ones() % 2 == 0 { 1 } else { -1 }))
        .collect();
    let spec = FrobeniusSpec::lee();
    let mut image: BTreeMap<usize, i64> = BTreeMap::new();
    for lab in 0..1u64 << res.count {
        let sign = if (lab & b_mask).count_ones() % 2 == 0 { 1 } else { -1 };
        for (i, c) in cube.d_of(&spec, v, lab) {
            *image.entry(i).or_default() += sign * c;
        }
    }
    let h = cube.gen(v, 0).h;
    debug_assert_eq!(h, canonical_h(d, o));
    Ok(CanonicalCycle {
        orientation: o.to_vec(),
        vertex: v,
        h,
        circle_labels,
        support,
        is_cycle: image.values().all(|&c| c == 0),
    })
}
