//! Dense linear algebra over a field.

use super::Ring;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row. Columns are scanned in the given order.
pub fn rref_by<R: Ring>(rows: &mut Vec<Vec<R>>, order: &[usize]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &col in order {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("field element is invertible");
        for v in rows[r].iter_mut() {
            *v = v.mul(&inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v = v.sub(&f.mul(p));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rref<R: Ring>(rows: &mut Vec<Vec<R>>) -> Vec<usize> {
    let n = rows.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..n).collect();
    rref_by(rows, &order)
}

pub fn rank<R: Ring>(mut rows: Vec<Vec<R>>) -> usize {
    rref(&mut rows).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `n` columns.
pub fn nullspace<R: Ring>(mut rows: Vec<Vec<R>>, n: usize) -> Vec<Vec<R>> {
    let pivots = rref(&mut rows);
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![R::zero(); n];
        v[free] = R::one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = row[free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Solves `x · B = y` for a row vector `x`, where the rows of `B` are
/// linearly independent; returns `None` when `y` is outside the row space.
pub fn solve_rows<R: Ring>(b: &[Vec<R>], y: &[R]) -> Option<Vec<R>> {
    let k = b.len();
    let n = y.len();
    // columns of the system are the rows of B; augment with y
    let mut m: Vec<Vec<R>> = (0..n)
        .map(|j| {
            let mut r: Vec<R> = (0..k).map(|i| b[i][j].clone()).collect();
            r.push(y[j].clone());
            r
        })
        .collect();
    let order: Vec<usize> = (0..=k).collect();
    let piv = rref_by(&mut m, &order);
    if piv.contains(&k) {
        return None;
    }
    let mut x = vec![R::zero(); k];
    for (row, &pc) in m.iter().zip(&piv) {
        x[pc] = row[k].clone();
    }
    Some(x)
}
