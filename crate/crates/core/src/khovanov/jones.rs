//! Unnormalized Jones polynomial through the Kauffman bracket state sum.
//!
//! Serves as an oracle for the graded Euler characteristic of Khovanov
//! homology: `Ĵ(unknot) = q + q⁻¹` and `Ĵ = (-A³)^(-w) ⟨D⟩` under
//! `A^k ↦ (-q)^(-k/2)`.

use std::collections::BTreeMap;

use crate::linkdiag::LinkDiagram;

type Laurent = BTreeMap<i64, i64>;

fn add_term(p: &mut Laurent, e: i64, c: i64) {
    let v = p.entry(e).or_insert(0);
    *v += c;
    if *v == 0 {
        p.remove(&e);
    }
}

fn mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut r = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_term(&mut r, ea + eb, ca * cb);
        }
    }
    r
}

/// Slot pairs of the A-smoothing, read off from the strand directions: the
/// oriented smoothing at a positive crossing and the other one at a negative
/// crossing.
fn a_smoothing(d: &LinkDiagram, c: usize) -> [(usize, usize); 2] {
    let x = &d.crossings()[c];
    let incoming: Vec<usize> = (0..4).filter(|&s| d.edge_head(x.edges[s]) == (c, s as u8)).collect();
    let is_in = |s: usize| incoming.contains(&s);
    // pair slot 0 (incoming) with its neighbour of the opposite direction
    let oriented = if !is_in(1) { [(0, 1), (2, 3)] } else { [(0, 3), (1, 2)] };
    if x.sign > 0 {
        oriented
    } else {
        other(oriented)
    }
}

/// The other crossingless pairing of the four slots.
fn other(p: [(usize, usize); 2]) -> [(usize, usize); 2] {
    if p[0] == (0, 1) {
        [(0, 3), (1, 2)]
    } else {
        [(0, 1), (2, 3)]
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// `Ĵ(q)` as `(exponent, coefficient)` pairs.
pub fn jones_unnormalized(d: &LinkDiagram) -> Vec<(i32, i64)> {
    let n = d.n_crossings();
    assert!(n <= 20, "state sum oracle is limited to 20 crossings");
    let a_pairs: Vec<[(usize, usize); 2]> = (0..n).map(|c| a_smoothing(d, c)).collect();
    let ne = d.n_edges();
    let loop_poly: Laurent = [(2, -1), (-2, -1)].into_iter().collect();
    let mut bracket = Laurent::new();
    for state in 0u64..1 << n {
        let mut parent: Vec<usize> = (0..ne).collect();
        let mut circles = ne;
        let mut a_count = 0i64;
        for c in 0..n {
            let x = &d.crossings()[c];
            let pairs = if state >> c & 1 == 0 {
                a_count += 1;
                a_pairs[c]
            } else {
                other(a_pairs[c])
            };
            for (s, t) in pairs {
                let ra = find(&mut parent, x.edges[s]);
                let rb = find(&mut parent, x.edges[t]);
                if ra != rb {
                    parent[ra] = rb;
                    circles -= 1;
                }
            }
        }
        circles += d.n_loops();
        let mut term: Laurent = [(a_count - (n as i64 - a_count), 1)].into_iter().collect();
        for _ in 0..circles {
            term = mul(&term, &loop_poly);
        }
        for (e, c) in term {
            add_term(&mut bracket, e, c);
        }
    }
    let w = d.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut out = BTreeMap::new();
    for (e, c) in bracket {
        let k = e - 3 * w;
        assert!(k % 2 == 0, "odd power of A in the normalized bracket");
        // A^k = (A²)^(k/2) ↦ (-q)^(-k/2)
        let qe = -k / 2;
        let s = if qe.rem_euclid(2) == 0 { 1 } else { -1 };
        *out.entry(qe as i32).or_insert(0) += sign * s * c;
    }
    out.into_iter().filter(|(_, c)| *c != 0).collect()
}
