//! Blackboard cables with framing twists.
//!
//! Copy `a` of a strand sits `a` steps to the right of the direction of
//! travel, so at each crossing the copies form a grid. The framing of
//! component `i` is realized by `f_i - w_i` full twists placed on its last
//! edge, where `w_i` is its self-writhe; every strand of the cable records
//! framing `f_i`.

use super::braid::thread_word;
use super::{Builder, DiagramError, End, LinkDiagram};

/// Per-component copy counts `(forward, reversed)` and cabling framings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CableSpec {
    pub copies: Vec<(usize, usize)>,
    pub framings: Vec<i64>,
}

impl CableSpec {
    pub fn new(copies: Vec<(usize, usize)>, framings: Vec<i64>) -> Self {
        CableSpec { copies, framings }
    }

    /// The cable `K(a⁺ + r, a⁻ + r)` for a signed class `alpha`.
    pub fn signed(alpha: &[i64], r: usize, framings: &[i64]) -> Self {
        let copies = alpha
            .iter()
            .map(|&a| (a.max(0) as usize + r, (-a).max(0) as usize + r))
            .collect();
        CableSpec { copies, framings: framings.to_vec() }
    }

    pub fn strands(&self, i: usize) -> usize {
        self.copies[i].0 + self.copies[i].1
    }
}

/// `(σ1 … σ(n-1))^n` repeated `|t|` times, inverted when `t < 0`.
pub fn full_twists(n: usize, t: i64) -> Vec<i64> {
    let mut w = Vec::new();
    if n < 2 {
        return w;
    }
    let s = t.signum();
    for _ in 0..t.unsigned_abs() {
        for _ in 0..n {
            for j in 1..n as i64 {
                w.push(s * j);
            }
        }
    }
    w
}

impl LinkDiagram {
    /// Crossing count of the cable without building it.
    pub fn cable_crossings(&self, spec: &CableSpec) -> usize {
        let w = self.self_writhes();
        let mut total = 0;
        for k in 0..self.n_crossings() {
            let (a, b) = self.crossing_components(k);
            total += spec.strands(a) * spec.strands(b);
        }
        for i in 0..self.n_components() {
            let n = spec.strands(i);
            total += n * n.saturating_sub(1) * (spec.framings[i] - w[i]).unsigned_abs() as usize;
        }
        total
    }

    pub fn cable(&self, spec: &CableSpec) -> Result<LinkDiagram, DiagramError> {
        let m = self.n_components();
        if spec.copies.len() != m {
            return Err(DiagramError::CableArity { expected: m, found: spec.copies.len() });
        }
        if spec.framings.len() != m {
            return Err(DiagramError::FramingCount { expected: m, found: spec.framings.len() });
        }
        let w = self.self_writhes();
        let mut b = Builder::new();

        // strand tags
        let mut first_tag = vec![0usize; m];
        let mut next = 0;
        for i in 0..m {
            first_tag[i] = next;
            next += spec.strands(i);
        }
        let tag = |i: usize, a: usize| first_tag[i] + a;

        // tail-side wire of each copy of each edge, and the end the copy
        // arrives from at the head crossing
        let ne = self.n_edges();
        let mut out_wire: Vec<Vec<End>> = vec![vec![]; ne];
        let mut arrive: Vec<Vec<End>> = vec![vec![]; ne];
        for (i, comp) in self.components.iter().enumerate() {
            let n = spec.strands(i);
            let twist = full_twists(n, spec.framings[i] - w[i]);
            if comp.is_loop() {
                if n == 0 {
                    continue;
                }
                let starts: Vec<End> = (0..n).map(|_| b.wire()).collect();
                let mut cur = starts.clone();
                let mut tags: Vec<usize> = (0..n).map(|a| tag(i, a)).collect();
                thread_word(&mut b, &twist, &mut cur, &mut tags);
                for a in 0..n {
                    b.arc(cur[a], starts[a], tags[a]);
                }
                continue;
            }
            let last = *comp.edges.last().unwrap();
            for &e in &comp.edges {
                out_wire[e] = (0..n).map(|_| b.wire()).collect();
                let mut cur = out_wire[e].clone();
                if e == last {
                    let mut tags: Vec<usize> = (0..n).map(|a| tag(i, a)).collect();
                    thread_word(&mut b, &twist, &mut cur, &mut tags);
                }
                arrive[e] = cur;
            }
        }

        for x in &self.crossings {
            let (ua, ub) = (self.edge_comp[x.edges[0]], self.edge_comp[x.edges[1]]);
            let (na, nb) = (spec.strands(ua), spec.strands(ub));
            let (u_in, u_out) = x.under_pair();
            let (o_in, o_out) = x.over_pair();
            if na == 0 || nb == 0 {
                for a in 0..na {
                    b.arc(arrive[u_in][a], out_wire[u_out][a], tag(ua, a));
                }
                for c in 0..nb {
                    b.arc(arrive[o_in][c], out_wire[o_out][c], tag(ub, c));
                }
                continue;
            }
            let grid: Vec<Vec<usize>> =
                (0..na).map(|_| (0..nb).map(|_| b.crossing()).collect()).collect();
            let positive = x.sign > 0;
            // under copies run north through the over copies in order of height
            let heights: Vec<usize> = if positive { (0..nb).rev().collect() } else { (0..nb).collect() };
            for a in 0..na {
                let mut from = arrive[u_in][a];
                for &c in &heights {
                    let s = grid[a][c];
                    b.arc(from, End::Slot(s, 0), tag(ua, a));
                    from = End::Slot(s, 2);
                }
                b.arc(from, out_wire[u_out][a], tag(ua, a));
            }
            // over copies run east (positive) or west (negative)
            let columns: Vec<usize> = if positive { (0..na).collect() } else { (0..na).rev().collect() };
            let (enter, leave) = if positive { (3u8, 1u8) } else { (1u8, 3u8) };
            for c in 0..nb {
                let mut from = arrive[o_in][c];
                for &a in &columns {
                    let s = grid[a][c];
                    b.arc(from, End::Slot(s, enter), tag(ub, c));
                    from = End::Slot(s, leave);
                }
                b.arc(from, out_wire[o_out][c], tag(ub, c));
            }
        }

        for i in 0..m {
            let (fwd, rev) = spec.copies[i];
            for a in 0..fwd + rev {
                let t = tag(i, a);
                b.set_framing(t, spec.framings[i]);
                let flip = a >= fwd;
                b.set_reversed(t, self.components[i].reversed ^ flip);
                if flip {
                    b.reverse_tag(t);
                }
            }
        }
        let desc: Vec<String> = spec
            .copies
            .iter()
            .zip(&spec.framings)
            .map(|((p, q), f)| format!("({p},{q})@{f}"))
            .collect();
        b.build(format!("cable[{}]({})", desc.join(","), self.source))
    }
}
