//! Maximizing an integral quadratic form on a parity coset `α + 2Z^m`.
//!
//! The form is handled through an exact symmetric decomposition of `-M`,
//! which classifies it (not semidefinite, definite, semidefinite with a
//! kernel) and drives a Fincke–Pohst enumeration of lattice points.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

type Q = Ratio<i128>;

/// `A = Uᵀ D U` with `U` unit upper triangular.
#[derive(Clone, Debug)]
pub(crate) struct Ldl {
    d: Vec<Q>,
    u: Vec<Vec<Q>>,
}

/// Decomposes a positive semidefinite integer matrix; `None` otherwise.
pub(crate) fn ldl_psd(a: &[Vec<i64>]) -> Option<Ldl> {
    let m = a.len();
    let mut s: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| Q::from(x as i128)).collect()).collect();
    let mut d = vec![Q::zero(); m];
    let mut u = vec![vec![Q::zero(); m]; m];
    for k in 0..m {
        u[k][k] = Q::one();
        let p = s[k][k];
        if p.is_negative() {
            return None;
        }
        if p.is_zero() {
            // a zero pivot of a semidefinite matrix has a zero row
            if (k + 1..m).any(|j| !s[k][j].is_zero()) {
                return None;
            }
            continue;
        }
        d[k] = p;
        for j in k + 1..m {
            u[k][j] = s[k][j] / p;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                s[i][j] = s[i][j] - s[k][i] * s[k][j] / p;
            }
        }
    }
    Some(Ldl { d, u })
}

impl Ldl {
    fn dim(&self) -> usize {
        self.d.len()
    }

    fn kernel_slots(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&k| self.d[k].is_zero()).collect()
    }

    fn center(&self, k: usize, x: &[i64]) -> Q {
        -(k + 1..self.dim()).fold(Q::zero(), |acc, j| acc + self.u[k][j] * Q::from(x[j] as i128))
    }

    /// Calls `visit` on every `x` with `x ≡ parity (mod 2)`, `x_t = fixed_t` on
    /// kernel slots, and `xᵀAx ≤ bound`.
    fn enumerate(&self, parity: &[i64], fixed: &[i64], bound: Q, visit: &mut dyn FnMut(&[i64], Q)) {
        let mut x = vec![0i64; self.dim()];
        for &t in &self.kernel_slots() {
            x[t] = fixed[t];
        }
        self.descend(self.dim(), parity, &mut x, bound, Q::zero(), visit);
    }

    /// Fixes coordinates `k-1, k-2, …, 0` in turn.
    fn descend(&self, k: usize, parity: &[i64], x: &mut [i64], rem: Q, acc: Q, visit: &mut dyn FnMut(&[i64], Q)) {
        if k == 0 {
            visit(x, acc);
            return;
        }
        let k = k - 1;
        if self.d[k].is_zero() {
            self.descend(k, parity, x, rem, acc, visit);
            return;
        }
        let c = self.center(k, x);
        let radius = (rem / self.d[k]).to_f64().unwrap_or(0.0).max(0.0).sqrt();
        let cf = c.to_f64().unwrap_or(0.0);
        let mut v = (cf - radius).floor() as i64 - 2;
        let hi = (cf + radius).ceil() as i64 + 2;
        if (v - parity[k]).rem_euclid(2) != 0 {
            v += 1;
        }
        while v <= hi {
            let t = Q::from(v as i128) - c;
            let cost = self.d[k] * t * t;
            if cost <= rem {
                x[k] = v;
                self.descend(k, parity, x, rem - cost, acc + cost, visit);
            }
            v += 2;
        }
    }

    /// Greedy rounding inside the coset, used as a starting bound.
    fn babai(&self, parity: &[i64], fixed: &[i64]) -> Vec<i64> {
        let m = self.dim();
        let mut x = vec![0i64; m];
        for k in (0..m).rev() {
            if self.d[k].is_zero() {
                x[k] = fixed[k];
                continue;
            }
            let c = self.center(k, &x).to_f64().unwrap_or(0.0);
            let mut v = c.round() as i64;
            if (v - parity[k]).rem_euclid(2) != 0 {
                v += if (v as f64) < c { 1 } else { -1 };
            }
            x[k] = v;
        }
        x
    }

    /// Rational kernel vector with `x_t = 1` and zero on the other kernel slots.
    fn kernel_vector(&self, t: usize) -> Vec<Q> {
        let m = self.dim();
        let mut x = vec![Q::zero(); m];
        x[t] = Q::one();
        for k in (0..m).rev() {
            if !self.d[k].is_zero() {
                x[k] = -(k + 1..m).fold(Q::zero(), |acc, j| acc + self.u[k][j] * x[j]);
            }
        }
        x
    }
}

pub(crate) fn quad(a: &[Vec<i64>], x: &[i64]) -> i64 {
    let mut s = 0i64;
    for (i, row) in a.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            s += x[i] * v * x[j];
        }
    }
    s
}

fn negate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    m.iter().map(|r| r.iter().map(|&v| -v).collect()).collect()
}

/// Sign type of a symmetric integer matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    PositiveSemidefinite,
    NegativeSemidefinite,
    Zero,
    Indefinite,
}

pub fn definiteness(m: &[Vec<i64>]) -> Definiteness {
    let k = m.len();
    if m.iter().all(|r| r.iter().all(|&v| v == 0)) {
        return Definiteness::Zero;
    }
    if let Some(l) = ldl_psd(m) {
        return if l.kernel_slots().is_empty() || k == 0 {
            Definiteness::PositiveDefinite
        } else {
            Definiteness::PositiveSemidefinite
        };
    }
    if let Some(l) = ldl_psd(&negate(m)) {
        return if l.kernel_slots().is_empty() {
            Definiteness::NegativeDefinite
        } else {
            Definiteness::NegativeSemidefinite
        };
    }
    Definiteness::Indefinite
}

/// Maximum of `h(x) = xᵀMx` over `x ∈ α + 2Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CosetMaximum {
    /// `M` is not negative semidefinite.
    Unbounded,
    /// `M` is negative definite: every maximizer.
    Finite { h: i64, maximizers: Vec<Vec<i64>> },
    /// `M` has a kernel: maximizers are `representatives + 2·kernel`, with
    /// `kernel` a basis of `ker M ∩ Q^m` scaled to primitive integer vectors.
    InfiniteCoset { h: i64, representatives: Vec<Vec<i64>>, kernel: Vec<Vec<i64>> },
}

impl CosetMaximum {
    pub fn h(&self) -> Option<i64> {
        match self {
            CosetMaximum::Unbounded => None,
            CosetMaximum::Finite { h, .. } | CosetMaximum::InfiniteCoset { h, .. } => Some(*h),
        }
    }

    /// The explicit maximizers or coset representatives.
    pub fn points(&self) -> &[Vec<i64>] {
        match self {
            CosetMaximum::Unbounded => &[],
            CosetMaximum::Finite { maximizers, .. } => maximizers,
            CosetMaximum::InfiniteCoset { representatives, .. } => representatives,
        }
    }
}

fn primitive(v: &[Q]) -> Vec<i64> {
    let den = v.iter().fold(1i128, |l, q| l.lcm(q.denom()));
    let ints: Vec<i128> = v.iter().map(|q| (q * Q::from(den)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |g, &x| g.gcd(&x)).max(1);
    ints.iter().map(|&x| (x / g) as i64).collect()
}

pub fn maximize_quadratic_coset(m: &[Vec<i64>], alpha: &[i64]) -> CosetMaximum {
    let a = negate(m);
    let Some(ldl) = ldl_psd(&a) else {
        return CosetMaximum::Unbounded;
    };
    let dim = alpha.len();
    let parity: Vec<i64> = alpha.iter().map(|v| v.rem_euclid(2)).collect();
    let kernel_slots = ldl.kernel_slots();
    if kernel_slots.is_empty() {
        let bound = Q::from(quad(&a, alpha) as i128);
        let mut best: Option<Q> = None;
        let mut points = Vec::new();
        ldl.enumerate(&parity, alpha, bound, &mut |x, v| {
            match best {
                Some(b) if v > b => return,
                Some(b) if v < b => points.clear(),
                _ => {}
            }
            best = Some(v);
            points.push(x.to_vec());
        });
        points.sort();
        let h = -quad(&a, &points[0]);
        return CosetMaximum::Finite { h, maximizers: points };
    }

    let kernel_q: Vec<Vec<Q>> = kernel_slots.iter().map(|&t| ldl.kernel_vector(t)).collect();
    let periods: Vec<i64> = kernel_q
        .iter()
        .map(|v| v.iter().fold(1i128, |l, q| l.lcm(q.denom())) as i64)
        .collect();
    let kernel: Vec<Vec<i64>> = kernel_q.iter().map(|v| primitive(v)).collect();

    // one kernel slot pattern per class modulo the kernel lattice
    let mut boxes: Vec<Vec<i64>> = vec![vec![]];
    for (i, &t) in kernel_slots.iter().enumerate() {
        boxes = boxes
            .into_iter()
            .flat_map(|b| (0..periods[i]).map(move |k| [b.clone(), vec![alpha[t] + 2 * k]].concat()))
            .collect();
    }
    let mut best: Option<Q> = None;
    let mut points: Vec<Vec<i64>> = Vec::new();
    for pattern in boxes {
        let mut fixed = vec![0i64; dim];
        for (i, &t) in kernel_slots.iter().enumerate() {
            fixed[t] = pattern[i];
        }
        let start = ldl.babai(&parity, &fixed);
        let bound = Q::from(quad(&a, &start) as i128);
        ldl.enumerate(&parity, &fixed, bound, &mut |x, v| {
            match best {
                Some(b) if v > b => return,
                Some(b) if v < b => points.clear(),
                _ => {}
            }
            best = Some(v);
            points.push(x.to_vec());
        });
    }
    points.sort();
    let mut reps: Vec<Vec<i64>> = Vec::new();
    for p in points {
        let same = |r: &Vec<i64>| {
            let diff: Vec<i64> = p.iter().zip(r).map(|(x, y)| x - y).collect();
            diff.iter().all(|d| d % 2 == 0) && a.iter().all(|row| row.iter().zip(&diff).map(|(u, v)| u * v).sum::<i64>() == 0)
        };
        if !reps.iter().any(same) {
            reps.push(p);
        }
    }
    let h = -quad(&a, &reps[0]);
    CosetMaximum::InfiniteCoset { h, representatives: reps, kernel }
}

/// Lattice points `x ≡ parity (mod 2)` with `xᵀAx ≤ bound`, `A` positive definite.
pub(crate) fn ellipsoid_points(a: &[Vec<i64>], parity: &[i64], bound: i64) -> Option<Vec<Vec<i64>>> {
    let ldl = ldl_psd(a)?;
    if !ldl.kernel_slots().is_empty() {
        return None;
    }
    let mut out = Vec::new();
    let p: Vec<i64> = parity.iter().map(|v| v.rem_euclid(2)).collect();
    ldl.enumerate(&p, &p, Q::from(bound as i128), &mut |x, _| out.push(x.to_vec()));
    out.sort();
    Some(out)
}
