//! Smith normal form invariant factors over the integers.

use super::scalar::{Int, Ring};

/// Dense integer matrix stored row-major.
#[derive(Clone, Debug)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize, Int)]) -> Self {
        let mut m = IntMatrix::zeros(rows, cols);
        for (i, j, v) in entries {
            let cur = m.get(*i, *j).add(v);
            m.set(*i, *j, cur);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_b -= k * row_a
    fn row_axpy(&mut self, a: usize, b: usize, k: &Int, from: usize) {
        for j in from..self.cols {
            let va = self.get(a, j).clone();
            if va.is_zero() {
                continue;
            }
            let nv = self.get(b, j).sub(&k.mul(&va));
            self.set(b, j, nv);
        }
    }

    /// col_b -= k * col_a
    fn col_axpy(&mut self, a: usize, b: usize, k: &Int, from: usize) {
        for i in from..self.rows {
            let va = self.get(i, a).clone();
            if va.is_zero() {
                continue;
            }
            let nv = self.get(i, b).sub(&k.mul(&va));
            self.set(i, b, nv);
        }
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r`, all positive.
pub fn invariant_factors(mut m: IntMatrix) -> Vec<Int> {
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.rows && t < m.cols {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                let v = m.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if v.cmp_abs(m.get(bi, bj)).is_lt() {
                            best = Some((i, j));
                        }
                    }
                }
                if let Some((bi, bj)) = best {
                    if m.get(bi, bj).is_unit() {
                        break;
                    }
                }
            }
            if let Some((bi, bj)) = best {
                if m.get(bi, bj).is_unit() {
                    break;
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);
        loop {
            let p = m.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m.rows {
                if m.get(i, t).is_zero() {
                    continue;
                }
                let (q, _) = m.get(i, t).div_rem_euclid(&p);
                m.row_axpy(t, i, &q, t);
                if !m.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..m.cols {
                if m.get(t, j).is_zero() {
                    continue;
                }
                let (q, _) = m.get(t, j).div_rem_euclid(&p);
                m.col_axpy(t, j, &q, t);
                if !m.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move the smallest entry of row/column t to the pivot
            let mut bi = t;
            let mut bj = t;
            for i in t + 1..m.rows {
                let v = m.get(i, t);
                if !v.is_zero() && v.cmp_abs(m.get(bi, bj)).is_lt() {
                    bi = i;
                    bj = t;
                }
            }
            for j in t + 1..m.cols {
                let v = m.get(t, j);
                if !v.is_zero() && v.cmp_abs(m.get(bi, bj)).is_lt() {
                    bi = t;
                    bj = j;
                }
            }
            m.swap_rows(t, bi);
            m.swap_cols(t, bj);
        }
        diag.push(m.get(t, t).abs());
        t += 1;
    }
    normalize_diagonal(diag)
}

/// Turn an arbitrary nonzero diagonal into the divisibility chain.
fn normalize_diagonal(mut d: Vec<Int>) -> Vec<Int> {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = gcd(&d[i], &d[j]);
            if g == d[i] {
                continue;
            }
            let l = d[i].mul(&d[j]).div_rem_euclid(&g).0;
            d[i] = g;
            d[j] = l;
        }
    }
    d.sort();
    d
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = a.div_rem_euclid(&b).1;
        a = b;
        b = r;
    }
    a
}

/// Rank over the rationals of an integer matrix (equals the number of invariant factors).
pub fn rank(m: IntMatrix) -> usize {
    invariant_factors(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: usize, cols: usize, v: &[i64]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, Int::Small(v[i * cols + j]));
            }
        }
        m
    }

    #[test]
    fn known_forms() {
        let m = mat(2, 2, &[2, 0, 0, 3]);
        assert_eq!(invariant_factors(m), vec![Int::Small(1), Int::Small(6)]);
        let m = mat(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
        assert_eq!(
            invariant_factors(m),
            vec![Int::Small(2), Int::Small(6), Int::Small(12)]
        );
        let m = mat(1, 2, &[0, 0]);
        assert!(invariant_factors(m).is_empty());
    }

    fn det2(a: i64, b: i64, c: i64, d: i64) -> i64 {
        a * d - b * c
    }

    proptest! {
        // For 2x2 matrices: d1 = gcd of entries, d1*d2 = |det|.
        #[test]
        fn two_by_two_oracle(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30) {
            let f = invariant_factors(mat(2, 2, &[a, b, c, d]));
            let g = [a, b, c, d].iter().fold(0i64, |g, x| num_integer::Integer::gcd(&g, x));
            let det = det2(a, b, c, d).abs();
            if g == 0 {
                prop_assert!(f.is_empty());
            } else if det == 0 {
                prop_assert_eq!(f, vec![Int::Small(g)]);
            } else {
                prop_assert_eq!(f, vec![Int::Small(g), Int::Small(det / g)]);
            }
        }
    }
}
