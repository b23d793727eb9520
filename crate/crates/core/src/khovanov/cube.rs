//! The full cube of resolutions, used as an independent reference.

use rayon::prelude::*;

use super::complex::{ChainComplex, Gen};
use super::frobenius::FrobeniusSpec;
use super::KhError;
use crate::algebra::Ring;
use crate::linkdiag::{Crossing, LinkDiagram};

/// Circles of one resolution: `edge_circle[e]` for every edge, crossingless
/// loops numbered after the others.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub edge_circle: Vec<u16>,
    pub count: usize,
}

pub struct Cube {
    pub n: usize,
    pub n_plus: i32,
    pub n_minus: i32,
    pub res: Vec<Resolution>,
    pub offset: Vec<usize>,
    crossings: Vec<Crossing>,
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn resolve(d: &LinkDiagram, v: u64) -> Resolution {
    let ne = d.n_edges();
    let mut parent: Vec<usize> = (0..ne).collect();
    for (j, x) in d.crossings().iter().enumerate() {
        for (a, b) in Crossing::smoothing(v >> j & 1 == 1) {
            let ra = find(&mut parent, x.edges[a as usize]);
            let rb = find(&mut parent, x.edges[b as usize]);
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut id = vec![u16::MAX; ne];
    let mut edge_circle = vec![0u16; ne];
    let mut count = 0;
    for e in 0..ne {
        let r = find(&mut parent, e);
        if id[r] == u16::MAX {
            id[r] = count as u16;
            count += 1;
        }
        edge_circle[e] = id[r];
    }
    Resolution { edge_circle, count: count + d.n_loops() }
}

impl Cube {
    pub fn new(d: &LinkDiagram, cap: usize) -> Result<Cube, KhError> {
        let n = d.n_crossings();
        if n > cap {
            return Err(KhError::CubeCap { crossings: n, cap });
        }
        let res: Vec<Resolution> = (0..1u64 << n).into_par_iter().map(|v| resolve(d, v)).collect();
        let mut offset = Vec::with_capacity(res.len() + 1);
        let mut acc = 0usize;
        for r in &res {
            offset.push(acc);
            acc += 1 << r.count;
        }
        offset.push(acc);
        Ok(Cube {
            n,
            n_plus: d.n_positive() as i32,
            n_minus: d.n_negative() as i32,
            res,
            offset,
            crossings: d.crossings().to_vec(),
        })
    }

    /// Bidegree of the generator at vertex `v` whose circles carry `labels`
    /// (bit set = `X`).
    pub fn gen(&self, v: u64, labels: u64) -> Gen {
        let r = &self.res[v as usize];
        let x = labels.count_ones() as i32;
        let ones = v.count_ones() as i32;
        Gen {
            h: ones - self.n_minus,
            q: (r.count as i32 - 2 * x) + ones + self.n_plus - 2 * self.n_minus,
        }
    }

    pub fn index(&self, v: u64, labels: u64) -> usize {
        self.offset[v as usize] + labels as usize
    }

    pub fn len(&self) -> usize {
        *self.offset.last().unwrap()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Image of one generator under the edge map `v → v + e_j`, before sign.
    fn edge_map(&self, spec: &FrobeniusSpec, v: u64, j: usize, labels: u64) -> Vec<(u64, i64)> {
        let w = v | 1 << j;
        let (rv, rw) = (&self.res[v as usize], &self.res[w as usize]);
        let x = &self.crossings[j];
        // circles of v mapped to circles of w through a shared edge
        let mut to_w = vec![u16::MAX; rv.count];
        for (e, &c) in rv.edge_circle.iter().enumerate() {
            to_w[c as usize] = rw.edge_circle[e];
        }
        let loops = rv.count - rv.edge_circle.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let base_v = rv.count - loops;
        let base_w = rw.count - loops;
        for k in 0..loops {
            to_w[base_v + k] = (base_w + k) as u16;
        }
        let a = rv.edge_circle[x.edges[0]] as usize;
        let b = rv.edge_circle[x.edges[2]] as usize;
        let mut rest = 0u64;
        for c in 0..rv.count {
            if c != a && c != b && labels >> c & 1 == 1 {
                rest |= 1 << to_w[c];
            }
        }
        let mut out = Vec::new();
        if a != b {
            let target = to_w[a];
            let m = spec.mul_basis((labels >> a & 1) as usize, (labels >> b & 1) as usize);
            for (lab, &coeff) in m.iter().enumerate() {
                if coeff != 0 {
                    out.push((rest | (lab as u64) << target, coeff));
                }
            }
        } else {
            let c1 = rw.edge_circle[x.edges[0]];
            let c2 = rw.edge_circle[x.edges[2]];
            debug_assert_ne!(c1, c2);
            let dt = spec.comul_basis((labels >> a & 1) as usize);
            for (i, row) in dt.iter().enumerate() {
                for (k, &coeff) in row.iter().enumerate() {
                    if coeff != 0 {
                        out.push((rest | (i as u64) << c1 | (k as u64) << c2, coeff));
                    }
                }
            }
        }
        out
    }

    /// Differential of one generator as `(index, coefficient)` pairs.
    pub fn d_of(&self, spec: &FrobeniusSpec, v: u64, labels: u64) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        for j in 0..self.n {
            if v >> j & 1 == 1 {
                continue;
            }
            let sign = if (v & ((1 << j) - 1)).count_ones() % 2 == 0 { 1 } else { -1 };
            for (l2, c) in self.edge_map(spec, v, j, labels) {
                out.push((self.index(v | 1 << j, l2), sign * c));
            }
        }
        out
    }

    /// The cube complex with the given algebra.
    pub fn complex<R: Ring>(&self, spec: &FrobeniusSpec) -> ChainComplex<R> {
        let nv = 1u64 << self.n;
        let mut gens = Vec::with_capacity(self.len());
        for v in 0..nv {
            for lab in 0..1u64 << self.res[v as usize].count {
                gens.push(self.gen(v, lab));
            }
        }
        let rows: Vec<Vec<Vec<(usize, R)>>> = (0..nv)
            .into_par_iter()
            .map(|v| {
                let mut rows = Vec::new();
                for lab in 0..1u64 << self.res[v as usize].count {
                    rows.push(self.d_of(spec, v, lab).into_iter().map(|(i, c)| (i, R::from_i64(c))).collect());
                }
                rows
            })
            .collect();
        ChainComplex { gens, d: rows.into_iter().flatten().collect(), t: spec.t }
    }
}

/// The cube complex of a diagram, refusing diagrams above `cap` crossings.
pub fn build_cube_complex<R: Ring>(
    d: &LinkDiagram,
    spec: &FrobeniusSpec,
    cap: usize,
) -> Result<ChainComplex<R>, KhError> {
    Ok(Cube::new(d, cap)?.complex(spec))
}
