//! Assembles diagrams from directed arcs between crossing slots.

use std::collections::BTreeMap;

use super::{Component, Crossing, DiagramError, LinkDiagram};

/// An arc endpoint: a crossing slot or a pass-through joint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Slot(usize, u8),
    Wire(usize),
}

#[derive(Clone, Debug)]
struct Arc {
    from: End,
    to: End,
    tag: usize,
}

/// Collects crossings (slots 0/2 under, counterclockwise) and directed arcs.
///
/// Components are ordered by the tag of their arcs, then by creation order of
/// their first arc.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    n_cross: usize,
    n_wires: usize,
    arcs: Vec<Arc>,
    framing: BTreeMap<usize, i64>,
    reversed: BTreeMap<usize, bool>,
    loops: Vec<(usize, usize)>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn crossing(&mut self) -> usize {
        self.n_cross += 1;
        self.n_cross - 1
    }

    pub fn wire(&mut self) -> End {
        self.n_wires += 1;
        End::Wire(self.n_wires - 1)
    }

    /// Directed arc: the strand leaves `from` and enters `to`.
    pub fn arc(&mut self, from: End, to: End, tag: usize) {
        self.arcs.push(Arc { from, to, tag });
    }

    /// A crossingless loop.
    pub fn free_loop(&mut self, tag: usize) {
        let order = self.arcs.len() + self.loops.len();
        self.loops.push((tag, order));
    }

    pub fn set_framing(&mut self, tag: usize, f: i64) {
        self.framing.insert(tag, f);
    }

    pub fn set_reversed(&mut self, tag: usize, r: bool) {
        self.reversed.insert(tag, r);
    }

    /// Flip the direction of every arc carrying `tag`.
    pub fn reverse_tag(&mut self, tag: usize) {
        for a in self.arcs.iter_mut().filter(|a| a.tag == tag) {
            std::mem::swap(&mut a.from, &mut a.to);
        }
    }

    pub fn build(self, source: impl Into<String>) -> Result<LinkDiagram, DiagramError> {
        // arcs leaving / entering each endpoint
        let mut out_of: BTreeMap<End, usize> = BTreeMap::new();
        let mut into: BTreeMap<End, usize> = BTreeMap::new();
        for (i, a) in self.arcs.iter().enumerate() {
            if out_of.insert(a.from, i).is_some() {
                return Err(DiagramError::Orientation(format!("two strands leave {:?}", a.from)));
            }
            if into.insert(a.to, i).is_some() {
                return Err(DiagramError::Orientation(format!("two strands enter {:?}", a.to)));
            }
        }
        for c in 0..self.n_cross {
            for s in 0..4u8 {
                let e = End::Slot(c, s);
                let touches = out_of.contains_key(&e) as u8 + into.contains_key(&e) as u8;
                if touches != 1 {
                    return Err(DiagramError::Malformed(format!("crossing {c} slot {s} has {touches} strands")));
                }
            }
            for (a, b) in [(0u8, 2u8), (1, 3)] {
                let ina = into.contains_key(&End::Slot(c, a));
                let inb = into.contains_key(&End::Slot(c, b));
                if ina == inb {
                    return Err(DiagramError::Orientation(format!(
                        "strand through slots {a},{b} of crossing {c} is not coherently oriented"
                    )));
                }
            }
        }

        // contract wires into slot-to-slot edges
        struct RawEdge {
            from: (usize, u8),
            to: (usize, u8),
            tag: usize,
            order: usize,
        }
        let mut raw: Vec<RawEdge> = Vec::new();
        let mut used = vec![false; self.arcs.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            let End::Slot(fc, fs) = a.from else { continue };
            used[i] = true;
            let mut cur = a.to;
            let mut guard = 0;
            while let End::Wire(_) = cur {
                let Some(&j) = out_of.get(&cur) else {
                    return Err(DiagramError::Malformed("dangling wire".into()));
                };
                used[j] = true;
                cur = self.arcs[j].to;
                guard += 1;
                if guard > self.arcs.len() {
                    return Err(DiagramError::Malformed("wire cycle through a slot".into()));
                }
            }
            let End::Slot(tc, ts) = cur else { unreachable!() };
            raw.push(RawEdge { from: (fc, fs), to: (tc, ts), tag: a.tag, order: i });
        }
        // pure wire cycles become loops
        let mut loops = self.loops.clone();
        for i in 0..self.arcs.len() {
            if used[i] {
                continue;
            }
            let mut j = i;
            loop {
                used[j] = true;
                match out_of.get(&self.arcs[j].to) {
                    Some(&k) if !used[k] => j = k,
                    _ => break,
                }
            }
            loops.push((self.arcs[i].tag, i));
        }

        // orbits: entering (c,s) continues leaving (c, s^2)
        let mut leaving: BTreeMap<(usize, u8), usize> = BTreeMap::new();
        for (i, r) in raw.iter().enumerate() {
            leaving.insert(r.from, i);
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&i| (raw[i].tag, raw[i].order));
        let mut seen = vec![false; raw.len()];
        // (tag, order, raw edge cycle) or loops with empty cycle
        let mut comps: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for &start in &order {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![];
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                cyc.push(e);
                let (c, s) = raw[e].to;
                e = leaving[&(c, s ^ 2)];
            }
            comps.push((raw[start].tag, raw[start].order, cyc));
        }
        for (tag, ord) in loops {
            comps.push((tag, ord, vec![]));
        }
        comps.sort_by_key(|c| (c.0, c.1));

        let mut edge_of_raw = vec![0usize; raw.len()];
        let mut components = Vec::new();
        let mut edge_comp = Vec::new();
        let mut next = 0;
        for (ci, (tag, _, cyc)) in comps.iter().enumerate() {
            let mut edges = vec![];
            for &r in cyc {
                edge_of_raw[r] = next;
                edges.push(next);
                edge_comp.push(ci);
                next += 1;
            }
            components.push(Component {
                edges,
                framing: *self.framing.get(tag).unwrap_or(&0),
                reversed: *self.reversed.get(tag).unwrap_or(&false),
            });
        }

        let mut slots = vec![[usize::MAX; 4]; self.n_cross];
        let mut incoming = vec![[false; 4]; self.n_cross];
        for (i, r) in raw.iter().enumerate() {
            slots[r.from.0][r.from.1 as usize] = edge_of_raw[i];
            slots[r.to.0][r.to.1 as usize] = edge_of_raw[i];
            incoming[r.to.0][r.to.1 as usize] = true;
        }
        let mut crossings = Vec::with_capacity(self.n_cross);
        for c in 0..self.n_cross {
            let (mut e, mut inc) = (slots[c], incoming[c]);
            if !inc[0] {
                e = [e[2], e[3], e[0], e[1]];
                inc = [inc[2], inc[3], inc[0], inc[1]];
            }
            let sign = if inc[3] { 1 } else { -1 };
            crossings.push(Crossing { edges: e, sign });
        }
        let mut d = LinkDiagram {
            crossings,
            components,
            edge_comp,
            edge_head: vec![],
            edge_tail: vec![],
            source: source.into(),
        };
        d.recompute_ends();
        Ok(d)
    }
}

impl Builder {
    /// Builder from unoriented connections between crossing slots.
    ///
    /// Each crossing has slots 0/2 under and 1/3 over, counterclockwise, in
    /// either direction. Every slot must occur in exactly one connection.
    /// Components are oriented so that the first connection of each (in input
    /// order) runs from its first end to its second, and are tagged in order
    /// of discovery.
    pub fn from_undirected(
        n_cross: usize,
        links: &[((usize, u8), (usize, u8))],
    ) -> Result<Builder, DiagramError> {
        let mut partner: BTreeMap<(usize, u8), (usize, u8)> = BTreeMap::new();
        for &(u, v) in links {
            for (x, y) in [(u, v), (v, u)] {
                if x.0 >= n_cross || x.1 > 3 {
                    return Err(DiagramError::Malformed(format!("slot {x:?} out of range")));
                }
                if partner.insert(x, y).is_some() {
                    return Err(DiagramError::Malformed(format!("slot {x:?} used twice")));
                }
            }
        }
        if partner.len() != 4 * n_cross {
            return Err(DiagramError::Malformed("some crossing slots are unconnected".into()));
        }
        let mut b = Builder::new();
        for _ in 0..n_cross {
            b.crossing();
        }
        let mut done: BTreeMap<(usize, u8), bool> = BTreeMap::new();
        let mut tag = 0;
        for &(u, _) in links {
            if done.contains_key(&u) {
                continue;
            }
            let mut from = u;
            loop {
                let to = partner[&from];
                done.insert(from, true);
                done.insert(to, true);
                b.arc(End::Slot(from.0, from.1), End::Slot(to.0, to.1), tag);
                from = (to.0, to.1 ^ 2);
                if from == u {
                    break;
                }
            }
            tag += 1;
        }
        Ok(b)
    }
}

impl LinkDiagram {
    /// Builder reproducing this diagram; component `i` gets tag `i`.
    pub fn to_builder(&self) -> Builder {
        let mut b = Builder::new();
        for _ in &self.crossings {
            b.crossing();
        }
        for (ci, comp) in self.components.iter().enumerate() {
            b.set_framing(ci, comp.framing);
            b.set_reversed(ci, comp.reversed);
            if comp.is_loop() {
                b.free_loop(ci);
                continue;
            }
            for &e in &comp.edges {
                let (tc, ts) = self.edge_tail[e];
                let (hc, hs) = self.edge_head[e];
                b.arc(End::Slot(tc, ts), End::Slot(hc, hs), ci);
            }
        }
        b
    }
}
