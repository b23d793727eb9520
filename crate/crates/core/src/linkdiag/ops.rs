//! Diagram transformations.

use std::collections::BTreeSet;

use super::{Builder, Crossing, DiagramError, End, LinkDiagram};

impl LinkDiagram {
    /// Mirror image: every crossing switched, framings negated.
    pub fn mirror(&self) -> LinkDiagram {
        let mut d = self.clone();
        for x in d.crossings.iter_mut() {
            let e = x.edges;
            *x = if x.sign > 0 {
                Crossing { edges: [e[3], e[0], e[1], e[2]], sign: -1 }
            } else {
                Crossing { edges: [e[1], e[2], e[3], e[0]], sign: 1 }
            };
        }
        for c in d.components.iter_mut() {
            c.framing = -c.framing;
        }
        d.recompute_ends();
        d.source = format!("mirror({})", self.source);
        d
    }

    /// Reverse the orientation of the listed components.
    pub fn reverse_components(&self, subset: &[usize]) -> Result<LinkDiagram, DiagramError> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&i| i >= self.components.len()) {
            return Err(DiagramError::UnknownComponent(bad));
        }
        if set.is_empty() {
            return Ok(self.clone());
        }
        let mut b = Builder::new();
        for _ in &self.crossings {
            b.crossing();
        }
        for (ci, comp) in self.components.iter().enumerate() {
            let flip = set.contains(&ci);
            b.set_framing(ci, comp.framing);
            b.set_reversed(ci, comp.reversed ^ flip);
            if comp.is_loop() {
                b.free_loop(ci);
                continue;
            }
            for &e in &comp.edges {
                let (tc, ts) = self.edge_tail[e];
                let (hc, hs) = self.edge_head[e];
                if flip {
                    b.arc(End::Slot(hc, hs), End::Slot(tc, ts), ci);
                } else {
                    b.arc(End::Slot(tc, ts), End::Slot(hc, hs), ci);
                }
            }
        }
        let list: Vec<String> = set.iter().map(|i| i.to_string()).collect();
        b.build(format!("reverse[{}]({})", list.join(","), self.source))
    }

    /// Split union; components of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let mut b = self.to_builder();
        let off_c = self.crossings.len();
        let off_t = self.components.len();
        for _ in &other.crossings {
            b.crossing();
        }
        for (ci, comp) in other.components.iter().enumerate() {
            let tag = off_t + ci;
            b.set_framing(tag, comp.framing);
            b.set_reversed(tag, comp.reversed);
            if comp.is_loop() {
                b.free_loop(tag);
                continue;
            }
            for &e in &comp.edges {
                let (tc, ts) = other.edge_tail[e];
                let (hc, hs) = other.edge_head[e];
                b.arc(End::Slot(tc + off_c, ts), End::Slot(hc + off_c, hs), tag);
            }
        }
        b.build(format!("{} + {}", self.source, other.source))
            .expect("union of valid diagrams is valid")
    }

    /// Signed self-crossing count of each component.
    pub fn self_writhes(&self) -> Vec<i64> {
        let mut w = vec![0i64; self.components.len()];
        for (i, x) in self.crossings.iter().enumerate() {
            let (a, b) = self.crossing_components(i);
            if a == b {
                w[a] += x.sign as i64;
            }
        }
        w
    }

    /// Insert kinks at the end of each component so that its self-writhe
    /// equals its declared framing.
    pub fn normalize_framing(&self) -> LinkDiagram {
        let w = self.self_writhes();
        if self.components.iter().zip(&w).all(|(c, w)| c.framing == *w) {
            return self.clone();
        }
        let mut b = Builder::new();
        for _ in &self.crossings {
            b.crossing();
        }
        for (ci, comp) in self.components.iter().enumerate() {
            b.set_framing(ci, comp.framing);
            b.set_reversed(ci, comp.reversed);
            let need = comp.framing - w[ci];
            let n = need.unsigned_abs() as usize;
            if comp.is_loop() {
                if n == 0 {
                    b.free_loop(ci);
                    continue;
                }
                let start = b.wire();
                let end = add_kinks(&mut b, start, n, need > 0, ci);
                b.arc(end, start, ci);
                continue;
            }
            let last = *comp.edges.last().unwrap();
            for &e in &comp.edges {
                let (tc, ts) = self.edge_tail[e];
                let (hc, hs) = self.edge_head[e];
                if e == last && n > 0 {
                    let end = add_kinks(&mut b, End::Slot(tc, ts), n, need > 0, ci);
                    b.arc(end, End::Slot(hc, hs), ci);
                } else {
                    b.arc(End::Slot(tc, ts), End::Slot(hc, hs), ci);
                }
            }
        }
        b.build(format!("kinked({})", self.source))
            .expect("kinked diagram is valid")
    }
}

/// Append `n` Reidemeister-I kinks of the given sign after `from`; returns the
/// end the strand leaves from.
pub(crate) fn add_kinks(b: &mut Builder, mut from: End, n: usize, positive: bool, tag: usize) -> End {
    for _ in 0..n {
        let c = b.crossing();
        b.arc(from, End::Slot(c, 0), tag);
        if positive {
            b.arc(End::Slot(c, 2), End::Slot(c, 3), tag);
            from = End::Slot(c, 1);
        } else {
            b.arc(End::Slot(c, 2), End::Slot(c, 1), tag);
            from = End::Slot(c, 3);
        }
    }
    from
}
