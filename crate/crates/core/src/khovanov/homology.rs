//! Bigraded homology tables.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::complex::ChainComplex;
use super::frobenius::RingTag;
use crate::algebra::field;
use crate::algebra::snf::{invariant_factors, IntMatrix};
use crate::algebra::{Int, Rat, Ring};

/// Shifts applied to the cube: homological `-n₋`, quantum `n₊ - 2n₋`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Shifts {
    pub n_plus: i64,
    pub n_minus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub h: i32,
    pub q: i32,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareTerm {
    pub t: i32,
    pub q: i32,
    pub coefficient: i64,
}

/// `(h, q) → (free rank, torsion orders)`; only nonzero groups are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedHomology {
    pub ring: RingTag,
    pub shifts: Shifts,
    pub groups: BTreeMap<(i32, i32), (usize, Vec<u64>)>,
}

#[derive(Serialize)]
struct HomologyJson<'a> {
    ring: &'a str,
    shifts: Shifts,
    groups: Vec<HomologyGroup>,
    poincare: Vec<PoincareTerm>,
}

impl BigradedHomology {
    pub fn rank(&self, h: i32, q: i32) -> usize {
        self.groups.get(&(h, q)).map_or(0, |g| g.0)
    }

    pub fn torsion(&self, h: i32, q: i32) -> &[u64] {
        self.groups.get(&(h, q)).map_or(&[], |g| &g.1)
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.0).sum()
    }

    /// Bidegrees with nonzero free part.
    pub fn support(&self) -> Vec<(i32, i32)> {
        self.groups.iter().filter(|(_, g)| g.0 > 0).map(|(k, _)| *k).collect()
    }

    /// Coefficients of `P(t, q) = Σ rank · t^h q^q`.
    pub fn poincare(&self) -> Vec<PoincareTerm> {
        self.groups
            .iter()
            .filter(|(_, g)| g.0 > 0)
            .map(|(&(h, q), g)| PoincareTerm { t: h, q, coefficient: g.0 as i64 })
            .collect()
    }

    /// Graded Euler characteristic `Σ (-1)^h rank q^q`.
    pub fn euler(&self) -> Vec<(i32, i64)> {
        let mut m = BTreeMap::new();
        for (&(h, q), g) in &self.groups {
            let s = if h.rem_euclid(2) == 0 { 1 } else { -1 };
            *m.entry(q).or_insert(0) += s * g.0 as i64;
        }
        m.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    pub fn list(&self) -> Vec<HomologyGroup> {
        self.groups
            .iter()
            .map(|(&(h, q), g)| HomologyGroup { h, q, rank: g.0, torsion: g.1.clone() })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(HomologyJson {
            ring: self.ring.name(),
            shifts: self.shifts,
            groups: self.list(),
            poincare: self.poincare(),
        })
        .expect("homology serializes")
    }

    /// Aligned text table: one row per `q`, one column per `h`.
    pub fn render(&self) -> String {
        if self.groups.is_empty() {
            return "0\n".into();
        }
        let hs: Vec<i32> = {
            let mut v: Vec<i32> = self.groups.keys().map(|k| k.0).collect();
            v.sort();
            v.dedup();
            v
        };
        let qs: Vec<i32> = {
            let mut v: Vec<i32> = self.groups.keys().map(|k| k.1).collect();
            v.sort();
            v.dedup();
            v.reverse();
            v
        };
        let cell = |h: i32, q: i32| -> String {
            match self.groups.get(&(h, q)) {
                None => String::new(),
                Some((r, tor)) => {
                    let mut parts = Vec::new();
                    if *r > 0 {
                        parts.push(if *r == 1 { self.ring.name().to_string() } else { format!("{}^{r}", self.ring.name()) });
                    }
                    for t in tor {
                        parts.push(format!("Z/{t}"));
                    }
                    parts.join("+")
                }
            }
        };
        let width = hs
            .iter()
            .flat_map(|&h| qs.iter().map(move |&q| (h, q)))
            .map(|(h, q)| cell(h, q).len())
            .max()
            .unwrap_or(1)
            .max(4);
        let mut out = String::new();
        let _ = write!(out, "{:>5} |", "q\\h");
        for h in &hs {
            let _ = write!(out, " {:>width$}", h);
        }
        out.push('\n');
        for &q in &qs {
            let _ = write!(out, "{:>5} |", q);
            for &h in &hs {
                let _ = write!(out, " {:>width$}", cell(h, q));
            }
            out.push('\n');
        }
        out
    }
}

type Blocks = BTreeMap<(i32, i32), Vec<usize>>;

fn blocks<R>(c: &ChainComplex<R>) -> (Blocks, Vec<usize>) {
    let mut b: Blocks = BTreeMap::new();
    let mut local = vec![0; c.gens.len()];
    for (i, g) in c.gens.iter().enumerate() {
        let v = b.entry((g.h, g.q)).or_default();
        local[i] = v.len();
        v.push(i);
    }
    (b, local)
}

/// Homology over the integers: Smith normal form per bidegree.
pub fn homology_int(c: &ChainComplex<Int>, shifts: Shifts) -> BigradedHomology {
    assert_eq!(c.t, 0, "graded homology needs a graded complex");
    let (b, local) = blocks(c);
    // rank and torsion of d leaving each block
    let mut rank_out: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    let mut tors_into: BTreeMap<(i32, i32), Vec<u64>> = BTreeMap::new();
    for (&(h, q), src) in &b {
        let Some(tgt) = b.get(&(h + 1, q)) else { continue };
        let mut entries = Vec::new();
        for (col, &i) in src.iter().enumerate() {
            for (j, v) in &c.d[i] {
                entries.push((local[*j], col, v.clone()));
            }
        }
        if entries.is_empty() {
            continue;
        }
        let f = invariant_factors(IntMatrix::from_entries(tgt.len(), src.len(), &entries));
        rank_out.insert((h, q), f.len());
        let mut t: Vec<u64> = f
            .iter()
            .filter(|x| !x.is_one())
            .map(|x| x.to_i64().expect("torsion order fits in 64 bits") as u64)
            .collect();
        t.sort();
        tors_into.insert((h + 1, q), t);
    }
    finish(&b, &rank_out, tors_into, RingTag::Integers, shifts)
}

/// Homology over the rationals.
pub fn homology_rat(c: &ChainComplex<Rat>, shifts: Shifts) -> BigradedHomology {
    assert_eq!(c.t, 0, "graded homology needs a graded complex");
    let (b, local) = blocks(c);
    let mut rank_out: BTreeMap<(i32, i32), usize> = BTreeMap::new();
    for (&(h, q), src) in &b {
        let Some(tgt) = b.get(&(h + 1, q)) else { continue };
        let mut rows = vec![vec![Rat::zero(); tgt.len()]; src.len()];
        let mut any = false;
        for (r, &i) in src.iter().enumerate() {
            for (j, v) in &c.d[i] {
                rows[r][local[*j]] = v.clone();
                any = true;
            }
        }
        if any {
            rank_out.insert((h, q), field::rank(rows));
        }
    }
    finish(&b, &rank_out, BTreeMap::new(), RingTag::Rationals, shifts)
}

fn finish(
    b: &Blocks,
    rank_out: &BTreeMap<(i32, i32), usize>,
    mut tors: BTreeMap<(i32, i32), Vec<u64>>,
    ring: RingTag,
    shifts: Shifts,
) -> BigradedHomology {
    let mut groups = BTreeMap::new();
    for (&(h, q), g) in b {
        let r = g.len() - rank_out.get(&(h, q)).copied().unwrap_or(0) - rank_out.get(&(h - 1, q)).copied().unwrap_or(0);
        let t = tors.remove(&(h, q)).unwrap_or_default();
        if r > 0 || !t.is_empty() {
            groups.insert((h, q), (r, t));
        }
    }
    BigradedHomology { ring, shifts, groups }
}
