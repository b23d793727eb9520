//! Lee homology over `Q` (`X² = 1`), the canonical classes `x_o` of the
//! orientations, their filtration levels and the Rasmussen-type invariants
//! `s` (classical) and `s_gl2`.
//!
//! Canonical classes are located without writing them down: each tracked map
//! `X_{p_i}` (multiplication by `X` at a basepoint of component `i`) acts on
//! `x_o` by `±1`, so `x_o` and `x_ō` are the eigenvectors of
//! `Σ 2^i ε_i X_{p_i}` with eigenvalues `±(2^m - 1)`. An explicit cube cycle
//! built from the oriented resolution serves as an independent certificate.

mod canonical;
mod filtered;

#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

pub use canonical::{canonical_cycle, CanonicalCycle};

use crate::algebra::field::rank;
use crate::algebra::{Rat, Ring};
use crate::khovanov::{scan, ChainComplex, KhError, ScanConfig};
use crate::linkdiag::{Crossing, LinkDiagram};
use filtered::{Endo, Slice};

/// Component flags: `true` reverses the component relative to the diagram.
pub type Orientation = Vec<bool>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeeError {
    #[error(transparent)]
    Kh(#[from] KhError),
    #[error("orientation has {found} entries for {expected} components")]
    OrientationArity { expected: usize, found: usize },
    #[error("canonical pair spans levels {0:?}, expected two levels 2 apart")]
    Gap(Vec<i32>),
    #[error("eigenspace of a canonical class has dimension {0}")]
    Eigenspace(usize),
    #[error("Lee homology has rank {found}, expected {expected}")]
    Rank { found: usize, expected: usize },
}

fn check_arity(d: &LinkDiagram, o: &[bool]) -> Result<(), LeeError> {
    if o.len() != d.n_components() {
        return Err(LeeError::OrientationArity { expected: d.n_components(), found: o.len() });
    }
    Ok(())
}

/// Crossing signs after reversing the flagged components.
pub fn oriented_signs(d: &LinkDiagram, o: &[bool]) -> Vec<i8> {
    (0..d.n_crossings())
        .map(|c| {
            let (a, b) = d.crossing_components(c);
            let s = d.crossings()[c].sign;
            if o[a] ^ o[b] {
                -s
            } else {
                s
            }
        })
        .collect()
}

/// Homological degree of `x_o`: `n₋(D_o) - n₋(D)`.
pub fn canonical_h(d: &LinkDiagram, o: &[bool]) -> i32 {
    oriented_signs(d, o).iter().filter(|&&s| s < 0).count() as i32 - d.n_negative() as i32
}

/// Framed writhe after reversing the flagged components.
pub fn oriented_framed_writhe(d: &LinkDiagram, o: &[bool]) -> i64 {
    let signs = oriented_signs(d, o);
    let mut w: i64 = d.framings().iter().sum();
    for (c, s) in signs.iter().enumerate() {
        let (a, b) = d.crossing_components(c);
        if a != b {
            w += *s as i64;
        }
    }
    w
}

/// Cube vertex of the oriented resolution of `D_o` (bit set = 1-smoothing);
/// needs at most 64 crossings.
pub fn oriented_vertex(d: &LinkDiagram, o: &[bool]) -> u64 {
    oriented_signs(d, o)
        .iter()
        .enumerate()
        .filter(|(_, &s)| s < 0)
        .fold(0u64, |v, (c, _)| v | 1 << c)
}

/// `a`/`b` labels (`true` = `b`) of the edges of `D` in the oriented
/// resolution of `D_o`, from a 2-coloring of its Seifert graph. Circles
/// joined at a crossing get opposite labels; the lowest circle of each
/// connected piece is labelled `a`.
pub fn seifert_labels(d: &LinkDiagram, o: &[bool]) -> Vec<bool> {
    let ne = d.n_edges();
    let signs = oriented_signs(d, o);
    let mut parent: Vec<usize> = (0..ne).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (j, x) in d.crossings().iter().enumerate() {
        for (a, b) in Crossing::smoothing(signs[j] < 0) {
            let ra = find(&mut parent, x.edges[a as usize]);
            let rb = find(&mut parent, x.edges[b as usize]);
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in d.crossings() {
        let a = find(&mut parent, x.edges[0]);
        let b = find(&mut parent, x.edges[2]);
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut color: BTreeMap<usize, bool> = BTreeMap::new();
    for e in 0..ne {
        let root = find(&mut parent, e);
        if color.contains_key(&root) {
            continue;
        }
        color.insert(root, false);
        let mut stack = vec![root];
        while let Some(c) = stack.pop() {
            let mine = color[&c];
            for &n in adj.get(&c).map(|v| v.as_slice()).unwrap_or(&[]) {
                if let Some(&k) = color.get(&n) {
                    debug_assert_ne!(k, mine, "Seifert graph is bipartite");
                } else {
                    color.insert(n, !mine);
                    stack.push(n);
                }
            }
        }
    }
    (0..ne).map(|e| color[&find(&mut parent, e)]).collect()
}

/// Eigenvalue sign of `X` at each component's basepoint on `x_o`: `+1` for
/// label `a`, `-1` for `b`. Crossingless loops carry `a`.
pub fn basepoint_signs(d: &LinkDiagram, o: &[bool]) -> Vec<i64> {
    let labels = seifert_labels(d, o);
    d.components()
        .iter()
        .map(|c| if !c.is_loop() && labels[c.edges[0]] { -1 } else { 1 })
        .collect()
}

/// Every orientation with component 0 kept, one per class `{o, ō}`.
pub fn orientation_classes(m: usize) -> Vec<Orientation> {
    if m == 0 {
        return vec![Vec::new()];
    }
    (0..1u64 << (m - 1)).map(|bits| (0..m).map(|i| i > 0 && bits >> (i - 1) & 1 == 1).collect()).collect()
}

/// Filtration data of one canonical pair `{x_o, x_ō}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalPair {
    pub orientation: Orientation,
    pub h: i32,
    /// Levels of `[x_o]` and `[x_ō]`.
    pub class_levels: [i32; 2],
    /// Levels of the associated graded of `span{[x_o], [x_ō]}`.
    pub span_levels: Vec<i32>,
    /// `(q mod 4, level)` of the two `Z/4`-homogeneous parts of `x_o`.
    pub z4: Vec<(i32, i32)>,
}

impl CanonicalPair {
    /// `q_min + 1`.
    pub fn s(&self) -> i64 {
        self.span_levels[0] as i64 + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeeHomology {
    /// Dimension in each homological degree.
    pub dims: BTreeMap<i32, usize>,
    pub total: usize,
    pub pairs: Vec<CanonicalPair>,
    /// Largest intermediate object count of the scan.
    pub peak: usize,
}

fn empty_pair() -> CanonicalPair {
    CanonicalPair { orientation: Vec::new(), h: 0, class_levels: [0, 0], span_levels: vec![0], z4: vec![(0, 0)] }
}

/// Locates the pair of `o` in a slice whose tracked maps combine with the
/// given weights to `Σ 2^i ε_i X_{p_i}`.
fn pair_in_slice(slice: &Slice, weights: &[Rat], m: usize, o: &[bool], h: i32) -> Result<CanonicalPair, LeeError> {
    let top = Rat::from_i64((1i64 << m) - 1);
    let mut plus = slice.eigenvectors(weights, &top);
    let mut minus = slice.eigenvectors(weights, &top.neg());
    if plus.len() != 1 {
        return Err(LeeError::Eigenspace(plus.len()));
    }
    if minus.len() != 1 {
        return Err(LeeError::Eigenspace(minus.len()));
    }
    let (xp, xm) = (plus.pop().unwrap(), minus.pop().unwrap());
    let lp = slice.level(&xp).expect("canonical class is nonzero");
    let lm = slice.level(&xm).expect("canonical class is nonzero");
    let span_levels = slice.span_levels(&[xp.clone(), xm]);
    if span_levels.len() != 2 || span_levels[1] - span_levels[0] != 2 {
        return Err(LeeError::Gap(span_levels));
    }
    let z4 = slice
        .split_mod4(&xp)
        .into_iter()
        .map(|(r, part)| (r, slice.level(&part).expect("homogeneous part is nonzero")))
        .collect();
    Ok(CanonicalPair { orientation: o.to_vec(), h, class_levels: [lp, lm], span_levels, z4 })
}

fn scan_lee(d: &LinkDiagram, endos: Vec<Vec<(usize, Rat)>>, budget: Option<usize>) -> Result<(ChainComplex<Rat>, Vec<Endo>, usize), LeeError> {
    let cfg = ScanConfig { t: 1, endos, budget };
    let red = scan::<Rat>(d, &cfg)?;
    Ok((red.complex, red.endos, red.peak))
}

fn dims(c: &ChainComplex<Rat>) -> BTreeMap<i32, usize> {
    let hs: BTreeSet<i32> = c.gens.iter().map(|g| g.h).collect();
    let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
    for &h in &hs {
        let src: Vec<usize> = (0..c.len()).filter(|&i| c.gens[i].h == h).collect();
        let tgt: Vec<usize> = (0..c.len()).filter(|&i| c.gens[i].h == h + 1).collect();
        let pos: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let rows: Vec<Vec<Rat>> = src
            .iter()
            .map(|&i| {
                let mut r = vec![Rat::zero(); tgt.len()];
                for (j, v) in &c.d[i] {
                    r[pos[j]] = r[pos[j]].add(v);
                }
                r
            })
            .collect();
        ranks.insert(h, if tgt.is_empty() { 0 } else { rank(rows) });
    }
    let mut out = BTreeMap::new();
    for &h in &hs {
        let n = c.gens.iter().filter(|g| g.h == h).count();
        let dim = n - ranks[&h] - ranks.get(&(h - 1)).copied().unwrap_or(0);
        if dim > 0 {
            out.insert(h, dim);
        }
    }
    out
}

/// Lee homology with every canonical pair.
pub fn lee_homology(d: &LinkDiagram, budget: Option<usize>) -> Result<LeeHomology, LeeError> {
    let m = d.n_components();
    if m == 0 {
        return Ok(LeeHomology { dims: BTreeMap::from([(0, 1)]), total: 1, pairs: vec![empty_pair()], peak: 1 });
    }
    let endos: Vec<Vec<(usize, Rat)>> = (0..m).map(|i| vec![(i, Rat::one())]).collect();
    let (c, maps, peak) = scan_lee(d, endos, budget)?;
    let dims = dims(&c);
    let total: usize = dims.values().sum();
    if total != 1 << m {
        return Err(LeeError::Rank { found: total, expected: 1 << m });
    }
    let mut slices: BTreeMap<i32, Slice> = BTreeMap::new();
    let mut pairs = Vec::new();
    for o in orientation_classes(m) {
        let h = canonical_h(d, &o);
        let slice = slices.entry(h).or_insert_with(|| Slice::new(&c, &maps, h));
        let eps = basepoint_signs(d, &o);
        let weights: Vec<Rat> = (0..m).map(|i| Rat::from_i64(eps[i] << i)).collect();
        pairs.push(pair_in_slice(slice, &weights, m, &o, h)?);
    }
    Ok(LeeHomology { dims, total, pairs, peak })
}

/// The canonical pair of one orientation, tracking a single combined map.
pub fn canonical_pair(d: &LinkDiagram, o: &[bool], budget: Option<usize>) -> Result<CanonicalPair, LeeError> {
    check_arity(d, o)?;
    let m = d.n_components();
    if m == 0 {
        return Ok(empty_pair());
    }
    let eps = basepoint_signs(d, o);
    let g: Vec<(usize, Rat)> = (0..m).map(|i| (i, Rat::from_i64(eps[i] << i))).collect();
    let (c, maps, _) = scan_lee(d, vec![g], budget)?;
    let h = canonical_h(d, o);
    let slice = Slice::new(&c, &maps, h);
    pair_in_slice(&slice, &[Rat::one()], m, o, h)
}

/// Classical `s` of the diagram's own orientation; `s(∅) = 1`.
pub fn s_invariant(d: &LinkDiagram, budget: Option<usize>) -> Result<i64, LeeError> {
    if d.n_components() == 0 {
        return Ok(1);
    }
    Ok(canonical_pair(d, &vec![false; d.n_components()], budget)?.s())
}

/// `s_gl2(L) = -s(-L) - w`, with `w` the framed writhe.
pub fn s_gl2(d: &LinkDiagram, budget: Option<usize>) -> Result<i64, LeeError> {
    Ok(-s_invariant(&d.mirror(), budget)? - d.framed_writhe())
}

/// Homological and `Z/4` quantum degrees of one canonical class in both
/// normalizations, with the identities they satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub orientation: Orientation,
    pub h_classical: i32,
    pub h_gl2: i32,
    /// Framed writhe of `L` with orientation `o`.
    pub w_o: i64,
    pub z4_classical: Vec<i32>,
    pub z4_gl2: Vec<i32>,
    pub levels_classical: Vec<i32>,
    pub levels_gl2: Vec<i32>,
    pub h_identity: bool,
    pub z4_identity: bool,
    pub levels_gap: bool,
}

fn mod4_set(v: impl IntoIterator<Item = i64>) -> Vec<i32> {
    let s: BTreeSet<i32> = v.into_iter().map(|x| x.rem_euclid(4) as i32).collect();
    s.into_iter().collect()
}

/// Degrees of every canonical class; the gl₂ side is read from the classical
/// classes of the mirror.
pub fn canonical_degree_report(d: &LinkDiagram, budget: Option<usize>) -> Result<Vec<DegreeRow>, LeeError> {
    let m = d.n_components() as i64;
    let w = d.framed_writhe();
    let cl = lee_homology(d, budget)?;
    let mi = lee_homology(&d.mirror(), budget)?;
    let mut rows = Vec::new();
    for (a, b) in cl.pairs.iter().zip(&mi.pairs) {
        let z4_classical = mod4_set(a.z4.iter().map(|&(r, _)| r as i64));
        let z4_gl2 = mod4_set(b.z4.iter().map(|&(r, _)| -(r as i64) - w));
        let mut levels_gl2: Vec<i32> = b.span_levels.iter().map(|&q| -q - w as i32).collect();
        levels_gl2.sort();
        let w_o = oriented_framed_writhe(d, &a.orientation);
        let h_identity = b.h == -a.h && 2 * b.h as i64 == w_o - w;
        let z4_identity = if m == 0 {
            z4_classical == vec![0]
        } else {
            z4_classical == mod4_set([m, m + 2]) && z4_gl2 == mod4_set([-w - m, -w - m - 2])
        };
        let gap = |v: &[i32]| m == 0 || (v.len() == 2 && v[1] - v[0] == 2);
        rows.push(DegreeRow {
            orientation: a.orientation.clone(),
            h_classical: a.h,
            h_gl2: b.h,
            w_o,
            z4_classical,
            z4_gl2,
            levels_classical: a.span_levels.clone(),
            levels_gap: gap(&a.span_levels) && gap(&levels_gl2),
            levels_gl2,
            h_identity,
            z4_identity,
        });
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    IngestedFact,
}

/// Serialized result of an `s` computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SRecord {
    pub link: String,
    pub orientation: Orientation,
    pub s: i64,
    pub s_gl2: i64,
    pub w: i64,
    pub provenance: Provenance,
}

/// Computes both invariants of the diagram's own orientation.
pub fn s_record(name: &str, d: &LinkDiagram, budget: Option<usize>) -> Result<SRecord, LeeError> {
    Ok(SRecord {
        link: name.to_string(),
        orientation: vec![false; d.n_components()],
        s: s_invariant(d, budget)?,
        s_gl2: s_gl2(d, budget)?,
        w: d.framed_writhe(),
        provenance: Provenance::Computed,
    })
}
