//! Framed oriented link diagrams.
//!
//! Edges are numbered consecutively along each component in the direction of
//! its orientation. Every crossing lists its four edges counterclockwise,
//! starting with the incoming under-strand, so slots 0 and 2 carry the
//! under-strand and slots 1 and 3 the over-strand.

mod braid;
mod builder;
mod cable;
pub mod catalog;
mod ops;
mod pd;
mod stats;

pub use builder::{Builder, End};
pub use cable::CableSpec;
pub use stats::DiagramStats;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("crossing {index} has {found} entries, expected 4")]
    Arity { index: usize, found: usize },
    #[error("arc label {label} appears {count} times, expected 2")]
    LabelCount { label: i64, count: usize },
    #[error("no coherent orientation: {0}")]
    Orientation(String),
    #[error("braid letter {letter} out of range for {strands} strands")]
    BraidLetter { letter: i64, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("unknown component index {0}")]
    UnknownComponent(usize),
    #[error("expected {expected} framings, got {found}")]
    FramingCount { expected: usize, found: usize },
    #[error("cable spec has {found} entries for {expected} components")]
    CableArity { expected: usize, found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Counterclockwise from the incoming under-strand.
    pub edges: [usize; 4],
    /// +1 or -1.
    pub sign: i8,
}

impl Crossing {
    /// (incoming, outgoing) edges of the under-strand.
    pub fn under_pair(&self) -> (usize, usize) {
        (self.edges[0], self.edges[2])
    }

    /// (incoming, outgoing) edges of the over-strand.
    pub fn over_pair(&self) -> (usize, usize) {
        if self.sign > 0 {
            (self.edges[3], self.edges[1])
        } else {
            (self.edges[1], self.edges[3])
        }
    }

    /// Slot through which the over-strand enters.
    pub fn over_in_slot(&self) -> u8 {
        if self.sign > 0 {
            3
        } else {
            1
        }
    }

    /// Slot pairs joined by the 0-smoothing (1-smoothing when `one`).
    pub fn smoothing(one: bool) -> [(u8, u8); 2] {
        if one {
            [(0, 3), (1, 2)]
        } else {
            [(0, 1), (2, 3)]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Edges in traversal order; empty for a crossingless loop.
    pub edges: Vec<usize>,
    pub framing: i64,
    /// Orientation flag relative to the source description.
    pub reversed: bool,
}

impl Component {
    pub fn is_loop(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    components: Vec<Component>,
    edge_comp: Vec<usize>,
    /// (crossing, slot) where each edge ends.
    edge_head: Vec<(usize, u8)>,
    /// (crossing, slot) where each edge starts.
    edge_tail: Vec<(usize, u8)>,
    source: String,
}

impl LinkDiagram {
    pub fn empty() -> Self {
        LinkDiagram {
            crossings: vec![],
            components: vec![],
            edge_comp: vec![],
            edge_head: vec![],
            edge_tail: vec![],
            source: String::new(),
        }
    }

    /// A single crossingless loop with the given framing.
    pub fn unknot(framing: i64) -> Self {
        Self::unlink(&[framing])
    }

    /// Crossingless unlink, one loop per framing entry.
    pub fn unlink(framings: &[i64]) -> Self {
        let mut d = Self::empty();
        for &f in framings {
            d.components.push(Component { edges: vec![], framing: f, reversed: false });
        }
        d.source = d.to_pd_string();
        d
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edge_comp.len()
    }

    pub fn n_loops(&self) -> usize {
        self.components.iter().filter(|c| c.is_loop()).count()
    }

    pub fn edge_component(&self, e: usize) -> usize {
        self.edge_comp[e]
    }

    pub fn edge_head(&self, e: usize) -> (usize, u8) {
        self.edge_head[e]
    }

    pub fn edge_tail(&self, e: usize) -> (usize, u8) {
        self.edge_tail[e]
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn with_source(mut self, s: impl Into<String>) -> Self {
        self.source = s.into();
        self
    }

    pub fn framings(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.framing).collect()
    }

    pub fn set_framings(&mut self, f: &[i64]) -> Result<(), DiagramError> {
        if f.len() != self.components.len() {
            return Err(DiagramError::FramingCount { expected: self.components.len(), found: f.len() });
        }
        for (c, v) in self.components.iter_mut().zip(f) {
            c.framing = *v;
        }
        Ok(())
    }

    /// Components meeting at crossing `c`: (under component, over component).
    pub fn crossing_components(&self, c: usize) -> (usize, usize) {
        let x = &self.crossings[c];
        (self.edge_comp[x.edges[0]], self.edge_comp[x.edges[1]])
    }

    pub fn n_positive(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign > 0).count()
    }

    pub fn n_negative(&self) -> usize {
        self.crossings.iter().filter(|c| c.sign < 0).count()
    }

    /// Blackboard writhe: signed crossing count.
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Framed writhe: sum of framings plus twice the total pairwise linking.
    pub fn framed_writhe(&self) -> i64 {
        let mut w: i64 = self.components.iter().map(|c| c.framing).sum();
        for (i, x) in self.crossings.iter().enumerate() {
            let (a, b) = self.crossing_components(i);
            if a != b {
                w += x.sign as i64;
            }
        }
        w
    }

    /// True when every crossing is positive.
    pub fn is_positive(&self) -> bool {
        self.crossings.iter().all(|c| c.sign > 0)
    }

    fn recompute_ends(&mut self) {
        let n = self.edge_comp.len();
        let mut head = vec![(usize::MAX, 0u8); n];
        let mut tail = vec![(usize::MAX, 0u8); n];
        for (ci, x) in self.crossings.iter().enumerate() {
            head[x.edges[0]] = (ci, 0);
            tail[x.edges[2]] = (ci, 2);
            let (i_slot, o_slot) = if x.sign > 0 { (3u8, 1u8) } else { (1u8, 3u8) };
            head[x.edges[i_slot as usize]] = (ci, i_slot);
            tail[x.edges[o_slot as usize]] = (ci, o_slot);
        }
        self.edge_head = head;
        self.edge_tail = tail;
    }
}

#[cfg(test)]
mod tests;
