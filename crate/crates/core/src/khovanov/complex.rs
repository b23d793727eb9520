//! Bigraded chain complexes with a distinguished basis.

use crate::algebra::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub h: i32,
    pub q: i32,
}

/// A free complex with basis `gens` and sparse differential: `d[i]` lists
/// `(j, c)` with `d(g_i) = Σ c g_j`. Differentials preserve `q` when `t = 0`
/// and never lower it when `t ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<R> {
    pub gens: Vec<Gen>,
    pub d: Vec<Vec<(usize, R)>>,
    pub t: i64,
}

impl<R: Ring> ChainComplex<R> {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Checks `d ∘ d = 0`, `h`-degree one, and the `q` behaviour of `d`.
    pub fn check(&self) -> Result<(), String> {
        for (i, row) in self.d.iter().enumerate() {
            let g = self.gens[i];
            for (j, c) in row {
                let k = self.gens[*j];
                if c.is_zero() {
                    return Err(format!("stored zero entry {i} -> {j}"));
                }
                if k.h != g.h + 1 {
                    return Err(format!("entry {i} -> {j} changes h by {}", k.h - g.h));
                }
                let dq = k.q - g.q;
                let ok = if self.t == 0 { dq == 0 } else { dq >= 0 && dq % 4 == 0 };
                if !ok {
                    return Err(format!("entry {i} -> {j} shifts q by {dq}"));
                }
            }
            let mut acc: Vec<(usize, R)> = Vec::new();
            for (j, c) in row {
                for (k, e) in &self.d[*j] {
                    let v = c.mul(e);
                    match acc.iter_mut().find(|(x, _)| x == k) {
                        Some(slot) => slot.1 = slot.1.add(&v),
                        None => acc.push((*k, v)),
                    }
                }
            }
            if let Some((k, _)) = acc.iter().find(|(_, v)| !v.is_zero()) {
                return Err(format!("d² nonzero from {i} to {k}"));
            }
        }
        Ok(())
    }

    /// Euler characteristic `Σ (-1)^h q^j` as `(q, coefficient)` pairs.
    pub fn graded_euler(&self) -> Vec<(i32, i64)> {
        let mut m = std::collections::BTreeMap::new();
        for g in &self.gens {
            *m.entry(g.q).or_insert(0i64) += if g.h.rem_euclid(2) == 0 { 1 } else { -1 };
        }
        m.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    pub fn map_ring<S: Ring>(&self, f: impl Fn(&R) -> S) -> ChainComplex<S> {
        ChainComplex {
            gens: self.gens.clone(),
            d: self.d.iter().map(|r| r.iter().map(|(j, c)| (*j, f(c))).collect()).collect(),
            t: self.t,
        }
    }
}
