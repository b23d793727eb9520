//! One homological degree of a filtered complex over `Q`: cycles, boundaries
//! in echelon form along the filtration, homology representatives and the
//! action of tracked chain endomorphisms.
//!
//! The filtration is `F^p = span{g : q(g) ≥ p}`. Boundaries are put in
//! reduced echelon form with pivots taken in increasing `q`; a cycle reduced
//! against them then has its lowest surviving `q` equal to the level of its
//! class.

use std::collections::HashMap;

use crate::algebra::field::{nullspace, rref_by, solve_rows};
use crate::algebra::{Rat, Ring};
use crate::khovanov::ChainComplex;

pub(crate) type Endo = Vec<Vec<(usize, Rat)>>;

/// Rows kept in reduced echelon form for a fixed column order.
struct Echelon {
    rows: Vec<Vec<Rat>>,
    piv: Vec<usize>,
}

impl Echelon {
    fn reduce(&self, v: &mut [Rat]) {
        for (row, &p) in self.rows.iter().zip(&self.piv) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
    }

    /// Adds an already reduced nonzero vector.
    fn insert(&mut self, mut v: Vec<Rat>, order: &[usize]) {
        let p = *order.iter().find(|&&i| !v[i].is_zero()).expect("nonzero vector");
        let inv = v[p].inv().unwrap();
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        self.rows.push(v);
        self.piv.push(p);
    }
}

fn is_zero(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub(crate) struct Slice {
    q: Vec<i32>,
    order: Vec<usize>,
    loc: HashMap<usize, usize>,
    boundaries: Echelon,
    /// Boundary-reduced cycles forming a basis of homology.
    pub reps: Vec<Vec<Rat>>,
    /// Per tracked endomorphism, row `j` holds the coordinates of the image
    /// of `reps[j]`.
    pub mats: Vec<Vec<Vec<Rat>>>,
}

impl Slice {
    pub fn new(c: &ChainComplex<Rat>, endos: &[Endo], h: i32) -> Slice {
        let idx: Vec<usize> = (0..c.len()).filter(|&i| c.gens[i].h == h).collect();
        let n = idx.len();
        let loc: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let q: Vec<i32> = idx.iter().map(|&i| c.gens[i].q).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| (q[k], k));

        let mut b: Vec<Vec<Rat>> = Vec::new();
        for (i, g) in c.gens.iter().enumerate() {
            if g.h != h - 1 || c.d[i].is_empty() {
                continue;
            }
            let mut row = vec![Rat::zero(); n];
            for (j, v) in &c.d[i] {
                let k = loc[j];
                row[k] = row[k].add(v);
            }
            b.push(row);
        }
        let piv = rref_by(&mut b, &order);
        let boundaries = Echelon { rows: b, piv };

        // cycles: kernel of the differential out of degree h
        let next: Vec<usize> = (0..c.len()).filter(|&i| c.gens[i].h == h + 1).collect();
        let nloc: HashMap<usize, usize> = next.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut cols = vec![vec![Rat::zero(); n]; next.len()];
        for (k, &i) in idx.iter().enumerate() {
            for (j, v) in &c.d[i] {
                let t = nloc[j];
                cols[t][k] = cols[t][k].add(v);
            }
        }
        let cycles = nullspace(cols, n);

        let mut span = Echelon { rows: boundaries.rows.clone(), piv: boundaries.piv.clone() };
        let mut reps = Vec::new();
        for z in cycles {
            let mut w = z.clone();
            span.reduce(&mut w);
            if is_zero(&w) {
                continue;
            }
            span.insert(w, &order);
            let mut r = z;
            boundaries.reduce(&mut r);
            reps.push(r);
        }

        let mut slice = Slice { q, order, loc, boundaries, reps, mats: Vec::new() };
        for e in endos {
            let mut mat = Vec::with_capacity(slice.reps.len());
            for rep in &slice.reps {
                let mut y = vec![Rat::zero(); n];
                for (k, x) in rep.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, v) in &e[idx[k]] {
                        let t = slice.loc[j];
                        y[t] = y[t].add(&x.mul(v));
                    }
                }
                slice.boundaries.reduce(&mut y);
                mat.push(solve_rows(&slice.reps, &y).expect("endomorphism preserves cycles"));
            }
            slice.mats.push(mat);
        }
        slice
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Chain vector with the given coordinates in `reps`.
    pub fn chain(&self, coords: &[Rat]) -> Vec<Rat> {
        let n = self.q.len();
        let mut v = vec![Rat::zero(); n];
        for (c, rep) in coords.iter().zip(&self.reps) {
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(rep) {
                if !r.is_zero() {
                    *x = x.add(&c.mul(r));
                }
            }
        }
        v
    }

    /// Chain vector indexed by global generator ids.
    #[cfg(test)]
    pub fn local(&self, entries: &[(usize, Rat)]) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.q.len()];
        for (i, c) in entries {
            let k = self.loc[i];
            v[k] = v[k].add(c);
        }
        v
    }

    /// Filtration level of the class of a cycle; `None` for a boundary.
    pub fn level(&self, v: &[Rat]) -> Option<i32> {
        let mut w = v.to_vec();
        self.boundaries.reduce(&mut w);
        (0..w.len()).filter(|&k| !w[k].is_zero()).map(|k| self.q[k]).min()
    }

    /// Levels of the associated graded pieces of the span of some cycles,
    /// in increasing order.
    pub fn span_levels(&self, vs: &[Vec<Rat>]) -> Vec<i32> {
        let mut rows: Vec<Vec<Rat>> = vs
            .iter()
            .map(|v| {
                let mut w = v.clone();
                self.boundaries.reduce(&mut w);
                w
            })
            .collect();
        let piv = rref_by(&mut rows, &self.order);
        let mut out: Vec<i32> = piv.iter().map(|&k| self.q[k]).collect();
        out.sort();
        out
    }

    /// Splits a vector into its parts with fixed `q mod 4`.
    pub fn split_mod4(&self, v: &[Rat]) -> Vec<(i32, Vec<Rat>)> {
        let mut out = Vec::new();
        for r in 0..4 {
            let part: Vec<Rat> = v
                .iter()
                .zip(&self.q)
                .map(|(x, &q)| if q.rem_euclid(4) == r { x.clone() } else { Rat::zero() })
                .collect();
            if !is_zero(&part) {
                out.push((r, part));
            }
        }
        out
    }

    /// Left eigenvectors of `Σ w_k mats[k]` for eigenvalue `lambda`, as
    /// chain vectors.
    pub fn eigenvectors(&self, weights: &[Rat], lambda: &Rat) -> Vec<Vec<Rat>> {
        let m = self.dim();
        let mut g = vec![vec![Rat::zero(); m]; m];
        for (w, mat) in weights.iter().zip(&self.mats) {
            for (j, row) in mat.iter().enumerate() {
                for (l, x) in row.iter().enumerate() {
                    g[j][l] = g[j][l].add(&w.mul(x));
                }
            }
        }
        // v (G - λ) = 0 means the columns of G - λ annihilate v
        let cols: Vec<Vec<Rat>> = (0..m)
            .map(|l| {
                (0..m)
                    .map(|j| if j == l { g[j][l].sub(lambda) } else { g[j][l].clone() })
                    .collect()
            })
            .collect();
        nullspace(cols, m).iter().map(|v| self.chain(v)).collect()
    }
}
