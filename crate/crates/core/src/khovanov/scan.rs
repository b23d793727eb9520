//! Crossing-by-crossing construction of the Khovanov and Lee complexes in
//! the category of dotted cobordisms, with Gaussian elimination after every
//! crossing.
//!
//! Objects are crossingless matchings on the current boundary (the edges cut
//! by the processed part of the diagram) with `(h, q)` shifts. Closed loops
//! are removed on the spot: a loop is isomorphic to two copies of the empty
//! matching at `q ± 1`, labelled `1` and `X`. An optional endomorphism
//! `Σ w_i X_{p_i}` (dots at chosen basepoints) is carried through every step.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rustc_hash::FxHashMap;

use super::cob::{compose, morph_add, MatchingTable, Morph, Surface};
use super::complex::{ChainComplex, Gen};
use super::KhError;
use crate::algebra::Ring;
use crate::linkdiag::{Crossing, LinkDiagram};

/// Options for a scan.
#[derive(Clone, Debug)]
pub struct ScanConfig<R> {
    /// `X² = t`.
    pub t: i64,
    /// Tracked endomorphisms, each a weighted sum `Σ w X_p` of basepoint
    /// actions given as `(component, weight)`; the basepoint of a component
    /// is its first edge.
    pub endos: Vec<Vec<(usize, R)>>,
    /// Largest number of objects allowed at any stage.
    pub budget: Option<usize>,
}

impl<R: Ring> ScanConfig<R> {
    pub fn new(t: i64) -> Self {
        ScanConfig { t, endos: Vec::new(), budget: None }
    }
}

/// A reduced complex over the empty boundary with the tracked endomorphisms.
#[derive(Clone, Debug)]
pub struct Reduced<R> {
    pub complex: ChainComplex<R>,
    pub endos: Vec<Vec<Vec<(usize, R)>>>,
    /// Largest intermediate object count.
    pub peak: usize,
}

#[derive(Clone, Copy, Debug)]
struct Obj {
    m: u32,
    h: i32,
    q: i32,
}

type Arrows<R> = Vec<BTreeMap<u32, Morph<R>>>;

struct Maps<R> {
    out: Arrows<R>,
    inc: Vec<BTreeSet<u32>>,
}

impl<R: Ring> Maps<R> {
    fn new(n: usize) -> Self {
        Maps { out: vec![BTreeMap::new(); n], inc: vec![BTreeSet::new(); n] }
    }

    fn add(&mut self, from: u32, to: u32, mask: u64, c: &R) {
        let entry = self.out[from as usize].entry(to).or_default();
        morph_add(entry, mask, c);
        if entry.is_empty() {
            self.out[from as usize].remove(&to);
            self.inc[to as usize].remove(&from);
        } else {
            self.inc[to as usize].insert(from);
        }
    }

    fn add_morph(&mut self, from: u32, to: u32, m: &Morph<R>) {
        for (mask, c) in m {
            self.add(from, to, *mask, c);
        }
    }

    fn detach(&mut self, v: u32) {
        let outs: Vec<u32> = self.out[v as usize].keys().copied().collect();
        for y in outs {
            self.inc[y as usize].remove(&v);
        }
        let ins: Vec<u32> = self.inc[v as usize].iter().copied().collect();
        for x in ins {
            self.out[x as usize].remove(&v);
        }
        self.out[v as usize].clear();
        self.inc[v as usize].clear();
    }
}

struct Tangle<R> {
    ports: Vec<usize>,
    table: MatchingTable,
    objs: Vec<Obj>,
    alive: Vec<bool>,
    d: Maps<R>,
    e: Vec<Maps<R>>,
    t: i64,
}

/// How the ports around a new crossing connect. Nodes `0..nl` are old
/// ports, `nl..nl+4` are the crossing slots.
struct Ctx {
    nl: usize,
    joint: Vec<Option<usize>>,
    new_port_of_node: Vec<Option<usize>>,
    node_of_new_port: Vec<usize>,
}

struct Glued {
    m: u32,
    loops: Vec<usize>,
}

#[derive(Clone, Copy)]
enum Right {
    Id(bool),
    Saddle,
    Dot(bool, usize),
}

impl Ctx {
    fn glue(&self, a: &[u8], one: bool, table: &mut MatchingTable) -> Glued {
        let pairs = Crossing::smoothing(one);
        let nl = self.nl;
        let mate = |u: usize| -> usize {
            if u < nl {
                a[u] as usize
            } else {
                let k = (u - nl) as u8;
                let (p, q) = if pairs[0].0 == k || pairs[0].1 == k { pairs[0] } else { pairs[1] };
                nl + if p == k { q as usize } else { p as usize }
            }
        };
        let n = nl + 4;
        let nn = self.node_of_new_port.len();
        let mut seen = vec![false; n];
        let mut m = vec![0u8; nn];
        for i in 0..nn {
            let u0 = self.node_of_new_port[i];
            if seen[u0] {
                continue;
            }
            let mut cur = u0;
            loop {
                seen[cur] = true;
                let v = mate(cur);
                seen[v] = true;
                if let Some(j) = self.new_port_of_node[v] {
                    m[i] = j as u8;
                    m[j] = i as u8;
                    break;
                }
                cur = self.joint[v].expect("interior node has a joint");
            }
        }
        let mut loops = Vec::new();
        for u in 0..n {
            if seen[u] {
                continue;
            }
            let mut cur = u;
            loop {
                seen[cur] = true;
                let v = mate(cur);
                seen[v] = true;
                let w = self.joint[v].expect("loop node has a joint");
                if w == u {
                    break;
                }
                cur = w;
            }
            loops.push(u);
        }
        Glued { m: table.intern(m), loops }
    }
}

/// Greedy crossing order from a given start: maximize the edges shared with
/// the current boundary, then minimize the new boundary size, then the
/// index. Returns the order and its boundary sizes.
fn greedy_order(d: &LinkDiagram, start: usize) -> (Vec<usize>, Vec<usize>) {
    let xs = d.crossings();
    let n = xs.len();
    let mut used = vec![false; n];
    let mut boundary: BTreeSet<usize> = BTreeSet::new();
    let mut order = Vec::with_capacity(n);
    let mut sizes = Vec::with_capacity(n);
    for step in 0..n {
        let c = if step == 0 {
            start
        } else {
            let mut best: Option<(i64, i64, usize)> = None;
            for (c, x) in xs.iter().enumerate() {
                if used[c] {
                    continue;
                }
                let mut shared = 0i64;
                let mut fresh = BTreeSet::new();
                for &e in &x.edges {
                    if boundary.contains(&e) {
                        shared += 1;
                    } else if !fresh.insert(e) {
                        fresh.remove(&e);
                    }
                }
                let size = boundary.len() as i64 - shared + fresh.len() as i64;
                let key = (-shared, size, c);
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
            best.unwrap().2
        };
        used[c] = true;
        order.push(c);
        let mut fresh = BTreeSet::new();
        for &e in &xs[c].edges {
            if !boundary.remove(&e) && !fresh.insert(e) {
                fresh.remove(&e);
            }
        }
        boundary.extend(fresh);
        sizes.push(boundary.len());
    }
    (order, sizes)
}

/// Crossing order: the greedy order over all start crossings with the
/// smallest peak boundary, ties broken by `Σ 2^size` and then the start.
pub fn scan_order(d: &LinkDiagram) -> Vec<usize> {
    let n = d.n_crossings();
    if n == 0 {
        return Vec::new();
    }
    let cost = |sizes: &[usize]| {
        let peak = sizes.iter().copied().max().unwrap_or(0);
        let total: f64 = sizes.iter().map(|&s| (2f64).powi(s as i32)).sum();
        (peak, total)
    };
    let mut best: Option<((usize, f64), Vec<usize>)> = None;
    for start in 0..n {
        let (order, sizes) = greedy_order(d, start);
        let c = cost(&sizes);
        if best.as_ref().map_or(true, |(b, _)| c.0 < b.0 || (c.0 == b.0 && c.1 < b.1)) {
            best = Some((c, order));
        }
    }
    best.unwrap().1
}

impl<R: Ring> Tangle<R> {
    fn new(t: i64, tracked: usize) -> Self {
        let mut table = MatchingTable::new();
        let m = table.intern(Vec::new());
        Tangle {
            ports: Vec::new(),
            table,
            objs: vec![Obj { m, h: 0, q: 0 }],
            alive: vec![true],
            d: Maps::new(1),
            e: (0..tracked).map(|_| Maps::new(1)).collect(),
            t,
        }
    }

    /// Horizontal composite of one basis cobordism `a → b` with the piece
    /// at the new crossing, as `(source loop labels, target loop labels,
    /// mask, coefficient)`.
    #[allow(clippy::too_many_arguments)]
    fn horizontal(
        &mut self,
        ctx: &Ctx,
        a: u32,
        b: u32,
        mask: u64,
        right: Right,
        ga: &Glued,
        gb: &Glued,
        new_table: &mut MatchingTable,
    ) -> Vec<(u64, u64, u64, i64)> {
        let mut out = Vec::new();
        let cyc = self.table.cycles(a, b);
        let nc = cyc.n;
        let nl = ctx.nl;
        let (rs, n_right, dot_sheet): ([usize; 4], usize, Option<usize>) = match right {
            Right::Saddle => ([0; 4], 1, None),
            Right::Id(one) | Right::Dot(one, _) => {
                let mut rs = [0usize; 4];
                for (i, (p, q)) in Crossing::smoothing(one).iter().enumerate() {
                    rs[*p as usize] = i;
                    rs[*q as usize] = i;
                }
                let dot = if let Right::Dot(_, k) = right { Some(rs[k]) } else { None };
                (rs, 2, dot)
            }
        };
        let sheet_of = |u: usize| -> usize {
            if u < nl {
                cyc.of_port[u] as usize
            } else {
                nc + rs[u - nl]
            }
        };
        let mut glues = Vec::new();
        for k in 0..4 {
            match ctx.joint[nl + k] {
                Some(p) if p < nl => glues.push((cyc.of_port[p] as usize, nc + rs[k])),
                Some(j) if j > nl + k => glues.push((nc + rs[k], nc + rs[j - nl])),
                _ => {}
            }
        }
        let surf = Surface::new(nc + n_right, &glues);
        let fc = new_table.cycles(ga.m, gb.m);
        let nn = fc.n;
        let mut cycle_sheet = vec![0usize; nn];
        let mut seen = vec![false; nn];
        for (i, &k) in fc.of_port.iter().enumerate() {
            if !seen[k as usize] {
                seen[k as usize] = true;
                cycle_sheet[k as usize] = sheet_of(ctx.node_of_new_port[i]);
            }
        }
        let ls = ga.loops.len();
        let lt = gb.loops.len();
        cycle_sheet.extend(ga.loops.iter().map(|&u| sheet_of(u)));
        cycle_sheet.extend(gb.loops.iter().map(|&u| sheet_of(u)));
        let mut dots = vec![0u32; nc + n_right];
        if let Some(s) = dot_sheet {
            dots[nc + s] = 1;
        }
        let low = (1u64 << nn) - 1;
        let src_mask = (1u64 << ls) - 1;
        let tgt_mask = (1u64 << lt) - 1;
        for (i, dt) in dots.iter_mut().enumerate().take(nc) {
            *dt = (mask >> i & 1) as u32;
        }
        surf.expand(&dots, &cycle_sheet, self.t, |m, k| {
            // loop functionals: a source loop labelled 1 reads the dotted
            // disk, labelled X the undotted one; target loops the reverse
            let lam1 = !(m >> nn) & src_mask;
            let lam2 = (m >> (nn + ls)) & tgt_mask;
            out.push((lam1, lam2, m & low, k));
        });
        out
    }

    fn add_crossing(mut self, x: &Crossing, marks: &[Vec<(usize, R)>], budget: Option<usize>) -> Result<Self, KhError> {
        let nl = self.ports.len();
        let mut joint = vec![None; nl + 4];
        let mut fresh_slots = Vec::new();
        for k in 0..4 {
            let e = x.edges[k];
            if let Ok(p) = self.ports.binary_search(&e) {
                joint[p] = Some(nl + k);
                joint[nl + k] = Some(p);
            } else if let Some(j) = (0..4).find(|&j| j != k && x.edges[j] == e) {
                joint[nl + k] = Some(nl + j);
            } else {
                fresh_slots.push(k);
            }
        }
        let mut new_ports: Vec<(usize, usize)> = Vec::new(); // (edge, node)
        for (p, &e) in self.ports.iter().enumerate() {
            if joint[p].is_none() {
                new_ports.push((e, p));
            }
        }
        for &k in &fresh_slots {
            new_ports.push((x.edges[k], nl + k));
        }
        new_ports.sort();
        let mut new_port_of_node = vec![None; nl + 4];
        for (i, &(_, u)) in new_ports.iter().enumerate() {
            new_port_of_node[u] = Some(i);
        }
        let ctx = Ctx {
            nl,
            joint,
            new_port_of_node,
            node_of_new_port: new_ports.iter().map(|&(_, u)| u).collect(),
        };

        let (hs, qs) = if x.sign > 0 { ([0, 1], [1, 2]) } else { ([-1, 0], [-2, -1]) };
        let mut table = MatchingTable::new();
        let mut glued: HashMap<(u32, bool), Glued> = HashMap::new();
        let mut objs = Vec::new();
        // base[old][s] = first new object index
        let mut base = vec![[u32::MAX; 2]; self.objs.len()];
        for o in 0..self.objs.len() {
            if !self.alive[o] {
                continue;
            }
            let ob = self.objs[o];
            for s in 0..2 {
                let key = (ob.m, s == 1);
                if !glued.contains_key(&key) {
                    let g = ctx.glue(self.table.get(ob.m), s == 1, &mut table);
                    glued.insert(key, g);
                }
                let g = &glued[&key];
                base[o][s] = objs.len() as u32;
                let l = g.loops.len();
                for lab in 0u64..1 << l {
                    let x_count = lab.count_ones() as i32;
                    objs.push(Obj {
                        m: g.m,
                        h: ob.h + hs[s],
                        q: ob.q + qs[s] + (l as i32 - 2 * x_count),
                    });
                }
            }
        }
        if let Some(b) = budget {
            if objs.len() > b {
                return Err(KhError::Budget { needed: objs.len(), budget: b });
            }
        }
        let n = objs.len();
        let mut d = Maps::new(n);
        let mut e: Vec<Maps<R>> = self.e.iter().map(|_| Maps::new(n)).collect();

        let one = R::one();
        let mut memo: FxHashMap<(u32, u32, u64, bool), Vec<(u64, u64, u64, i64)>> = FxHashMap::default();
        for which in 0..=self.e.len() {
            let list = self.entries(which);
            for (o1, o2, f) in list.iter() {
                let (a, b) = (self.objs[*o1 as usize].m, self.objs[*o2 as usize].m);
                for s in 0..2 {
                    let ga = &glued[&(a, s == 1)];
                    let gb = &glued[&(b, s == 1)];
                    let (b1, b2) = (base[*o1 as usize][s], base[*o2 as usize][s]);
                    let target = if which == 0 { &mut d } else { &mut e[which - 1] };
                    for (mask, c) in f {
                        let key = (a, b, *mask, s == 1);
                        if !memo.contains_key(&key) {
                            let v = self.horizontal(&ctx, a, b, *mask, Right::Id(s == 1), ga, gb, &mut table);
                            memo.insert(key, v);
                        }
                        for &(l1, l2, m, k) in &memo[&key] {
                            target.add(b1 + l1 as u32, b2 + l2 as u32, m, &c.mul(&R::from_i64(k)));
                        }
                    }
                }
            }
        }
        for o in 0..self.objs.len() {
            if !self.alive[o] {
                continue;
            }
            let ob = self.objs[o];
            let ga = &glued[&(ob.m, false)];
            let gb = &glued[&(ob.m, true)];
            let sign = if ob.h.rem_euclid(2) == 0 { one.clone() } else { one.neg() };
            let (b0, b1) = (base[o][0], base[o][1]);
            for (l1, l2, m, k) in self.horizontal(&ctx, ob.m, ob.m, 0, Right::Saddle, ga, gb, &mut table) {
                d.add(b0 + l1 as u32, b1 + l2 as u32, m, &sign.mul(&R::from_i64(k)));
            }
            for (em, ms) in e.iter_mut().zip(marks) {
                for (edge, w) in ms {
                    let k = (0..4).find(|&k| x.edges[k] == *edge).unwrap();
                    for s in 0..2 {
                        let g = &glued[&(ob.m, s == 1)];
                        let bs = base[o][s];
                        for (l1, l2, m, c) in self.horizontal(&ctx, ob.m, ob.m, 0, Right::Dot(s == 1, k), g, g, &mut table) {
                            em.add(bs + l1 as u32, bs + l2 as u32, m, &w.mul(&R::from_i64(c)));
                        }
                    }
                }
            }
        }
        Ok(Tangle {
            ports: new_ports.iter().map(|&(e, _)| e).collect(),
            table,
            alive: vec![true; n],
            objs,
            d,
            e,
            t: self.t,
        })
    }

    /// Entries of the differential (`which = 0`) or of a tracked map.
    fn entries(&self, which: usize) -> Vec<(u32, u32, Morph<R>)> {
        let maps = if which == 0 { &self.d } else { &self.e[which - 1] };
        let mut v = Vec::new();
        for (i, row) in maps.out.iter().enumerate() {
            for (j, m) in row {
                v.push((i as u32, *j, m.clone()));
            }
        }
        v
    }

    fn is_pivot(&self, b: u32, c: u32, m: &Morph<R>) -> bool {
        let (ob, oc) = (self.objs[b as usize], self.objs[c as usize]);
        ob.m == oc.m && ob.q == oc.q && m.len() == 1 && m[0].0 == 0 && m[0].1.is_unit()
    }

    fn eliminate(&mut self) {
        loop {
            let mut cand = Vec::new();
            for b in 0..self.objs.len() {
                if !self.alive[b] {
                    continue;
                }
                for (&c, m) in &self.d.out[b] {
                    if self.is_pivot(b as u32, c, m) {
                        let cost = (self.d.out[b].len() - 1) * (self.d.inc[c as usize].len() - 1);
                        cand.push((cost, b as u32, c));
                    }
                }
            }
            if cand.is_empty() {
                return;
            }
            cand.sort_unstable();
            for (_, b, c) in cand {
                if !self.alive[b as usize] || !self.alive[c as usize] {
                    continue;
                }
                let ok = self.d.out[b as usize].get(&c).is_some_and(|m| self.is_pivot(b, c, m));
                if ok {
                    self.cancel(b, c);
                }
            }
        }
    }

    fn cancel(&mut self, b: u32, c: u32) {
        let phi = &self.d.out[b as usize][&c][0].1;
        let scale = phi.inv().expect("pivot is a unit").neg();
        let mb = self.objs[b as usize].m;
        let xs: Vec<(u32, Morph<R>)> = self.d.inc[c as usize]
            .iter()
            .filter(|&&x| x != b)
            .map(|&x| (x, self.d.out[x as usize][&c].clone()))
            .collect();
        let ys: Vec<(u32, Morph<R>)> = self.d.out[b as usize]
            .iter()
            .filter(|(&y, _)| y != c)
            .map(|(&y, m)| (y, m.clone()))
            .collect();
        let t = self.t;
        for (x, delta) in &xs {
            let mx = self.objs[*x as usize].m;
            for (y, gamma) in &ys {
                let my = self.objs[*y as usize].m;
                let mut comp = Vec::new();
                compose(&mut self.table, mx, mb, my, delta, gamma, t, &mut comp, &scale);
                self.d.add_morph(*x, *y, &comp);
            }
        }
        let mut es = std::mem::take(&mut self.e);
        for e in es.iter_mut() {
            let ebs: Vec<(u32, Morph<R>)> = e.out[b as usize]
                .iter()
                .filter(|(&v, _)| v != b && v != c)
                .map(|(&v, m)| (v, m.clone()))
                .collect();
            for (x, delta) in &xs {
                let mx = self.objs[*x as usize].m;
                for (v, eb) in &ebs {
                    let mv = self.objs[*v as usize].m;
                    let mut comp = Vec::new();
                    compose(&mut self.table, mx, mb, mv, delta, eb, t, &mut comp, &scale);
                    e.add_morph(*x, *v, &comp);
                }
            }
            let eys: Vec<(u32, Morph<R>)> = e.inc[c as usize]
                .iter()
                .filter(|&&y| y != b && y != c)
                .map(|&y| (y, e.out[y as usize][&c].clone()))
                .collect();
            for (y, f) in &eys {
                let my = self.objs[*y as usize].m;
                for (v, gamma) in &ys {
                    let mv = self.objs[*v as usize].m;
                    let mut comp = Vec::new();
                    compose(&mut self.table, my, mb, mv, f, gamma, t, &mut comp, &scale);
                    e.add_morph(*y, *v, &comp);
                }
            }
            e.detach(b);
            e.detach(c);
        }
        self.e = es;
        self.d.detach(b);
        self.d.detach(c);
        self.alive[b as usize] = false;
        self.alive[c as usize] = false;
    }

    /// Converts to a scalar complex, tensoring with one copy of `V` per
    /// crossingless loop; `loop_marks[k][l]` weights the basepoint of loop
    /// `l` in tracked map `k`.
    fn close(self, loop_marks: &[Vec<R>], n_loops: usize) -> (ChainComplex<R>, Vec<Vec<Vec<(usize, R)>>>) {
        debug_assert!(self.ports.is_empty());
        let mut idx = vec![usize::MAX; self.objs.len()];
        let mut gens = Vec::new();
        for o in 0..self.objs.len() {
            if self.alive[o] {
                idx[o] = gens.len();
                gens.push(Gen { h: self.objs[o].h, q: self.objs[o].q });
            }
        }
        let k = 1usize << n_loops;
        let n = gens.len();
        let scalar = |maps: &Maps<R>| -> Vec<Vec<(usize, R)>> {
            let mut rows = vec![Vec::new(); n * k];
            for (o, row) in maps.out.iter().enumerate() {
                for (&p, m) in row {
                    debug_assert!(m.len() == 1 && m[0].0 == 0);
                    for lab in 0..k {
                        rows[idx[o] * k + lab].push((idx[p as usize] * k + lab, m[0].1.clone()));
                    }
                }
            }
            rows
        };
        let mut g2 = Vec::with_capacity(n * k);
        for g in &gens {
            for lab in 0..k {
                let x = lab.count_ones() as i32;
                g2.push(Gen { h: g.h, q: g.q + n_loops as i32 - 2 * x });
            }
        }
        let d2 = scalar(&self.d);
        let mut endos = Vec::new();
        for (em, lm) in self.e.iter().zip(loop_marks) {
            let mut rows = scalar(em);
            for i in 0..n {
                for lab in 0..k {
                    for (l, w) in lm.iter().enumerate() {
                        if w.is_zero() {
                            continue;
                        }
                        // X·1 = X and X·X = t
                        let c = if lab >> l & 1 == 0 { w.clone() } else { w.mul(&R::from_i64(self.t)) };
                        if !c.is_zero() {
                            rows[i * k + lab].push((i * k + (lab ^ (1 << l)), c));
                        }
                    }
                }
            }
            endos.push(rows);
        }
        (ChainComplex { gens: g2, d: d2, t: self.t }, endos)
    }
}

/// Reduces the complex of `d` by scanning its crossings.
pub fn scan<R: Ring>(d: &LinkDiagram, cfg: &ScanConfig<R>) -> Result<Reduced<R>, KhError> {
    let ne = cfg.endos.len();
    let mut tangle: Tangle<R> = Tangle::new(cfg.t, ne);
    let comps = d.components();
    let loop_ids: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].is_loop()).collect();
    // per tracked map: basepoint edge marks, and loop weights
    let mut edge_marks: Vec<Vec<(usize, R)>> = vec![Vec::new(); ne];
    let mut loop_marks: Vec<Vec<R>> = vec![vec![R::zero(); loop_ids.len()]; ne];
    for (k, marks) in cfg.endos.iter().enumerate() {
        for (ci, w) in marks {
            let comp = comps.get(*ci).ok_or(KhError::UnknownComponent(*ci))?;
            if comp.is_loop() {
                let l = loop_ids.iter().position(|&x| x == *ci).unwrap();
                loop_marks[k][l] = loop_marks[k][l].add(w);
            } else {
                edge_marks[k].push((comp.edges[0], w.clone()));
            }
        }
    }
    let mut peak = 1;
    let mut seen_edges: BTreeSet<usize> = BTreeSet::new();
    for c in scan_order(d) {
        let x = &d.crossings()[c];
        let here: Vec<Vec<(usize, R)>> = edge_marks
            .iter()
            .map(|ms| ms.iter().filter(|(e, _)| x.edges.contains(e) && !seen_edges.contains(e)).cloned().collect())
            .collect();
        seen_edges.extend(x.edges.iter().copied());
        tangle = tangle.add_crossing(x, &here, cfg.budget)?;
        peak = peak.max(tangle.objs.len());
        tangle.eliminate();
    }
    let (complex, endos) = tangle.close(&loop_marks, loop_ids.len());
    Ok(Reduced { complex, endos, peak })
}

/// Gaussian elimination of unit entries between generators of equal `q` in a
/// complex with scalar differential.
pub fn reduce_complex<R: Ring>(c: &ChainComplex<R>) -> ChainComplex<R> {
    let mut tangle: Tangle<R> = Tangle::new(c.t, 0);
    let m = tangle.objs[0].m;
    tangle.objs = c.gens.iter().map(|g| Obj { m, h: g.h, q: g.q }).collect();
    tangle.alive = vec![true; c.gens.len()];
    tangle.d = Maps::new(c.gens.len());
    for (i, row) in c.d.iter().enumerate() {
        for (j, v) in row {
            tangle.d.add(i as u32, *j as u32, 0, v);
        }
    }
    tangle.eliminate();
    tangle.close(&[], 0).0
}
