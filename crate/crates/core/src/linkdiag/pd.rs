//! PD text format.
//!
//! ```text
//! PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3); framings=(0); loops=0]
//! ```
//!
//! Each `X(a,b,c,d)` lists arc labels counterclockwise starting from the
//! incoming under-strand. `X[...]` brackets are accepted too. Components are
//! ordered by their smallest arc label and traversed starting from it. The
//! optional `framings` list covers these components followed by the `loops`
//! crossingless components.

use std::collections::BTreeMap;

use super::{Builder, DiagramError, End, LinkDiagram};

fn parse_int_list(s: &str) -> Result<Vec<i64>, DiagramError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| DiagramError::Malformed(format!("not an integer: {:?}", t.trim())))
        })
        .collect()
}

fn strip_brackets(s: &str) -> Option<&str> {
    let s = s.trim();
    let open = s.chars().next()?;
    let close = match open {
        '(' => ')',
        '[' => ']',
        _ => return None,
    };
    if s.ends_with(close) {
        Some(&s[1..s.len() - 1])
    } else {
        None
    }
}

impl LinkDiagram {
    /// Parse the PD text format.
    pub fn parse_pd(text: &str) -> Result<LinkDiagram, DiagramError> {
        let t = text.trim();
        let body = t
            .strip_prefix("PD")
            .and_then(strip_brackets)
            .ok_or_else(|| DiagramError::Malformed("expected PD[...]".into()))?;
        let mut parts = body.split(';');
        let xs = parts.next().unwrap_or("");
        let mut framings: Option<Vec<i64>> = None;
        let mut loops = 0usize;
        for opt in parts {
            let opt = opt.trim();
            if opt.is_empty() {
                continue;
            }
            let (k, v) = opt
                .split_once('=')
                .ok_or_else(|| DiagramError::Malformed(format!("bad option {opt:?}")))?;
            match k.trim() {
                "framings" => {
                    let inner = strip_brackets(v)
                        .ok_or_else(|| DiagramError::Malformed("framings need parentheses".into()))?;
                    framings = Some(parse_int_list(inner)?);
                }
                "loops" => {
                    loops = v
                        .trim()
                        .parse()
                        .map_err(|_| DiagramError::Malformed(format!("bad loop count {v:?}")))?;
                }
                other => return Err(DiagramError::Malformed(format!("unknown option {other:?}"))),
            }
        }

        // crossings
        let mut crossings: Vec<[i64; 4]> = vec![];
        let mut rest = xs.trim();
        while !rest.is_empty() {
            let r = rest.strip_prefix('X').ok_or_else(|| {
                DiagramError::Malformed(format!("expected X(...) near {:?}", &rest[..rest.len().min(12)]))
            })?;
            let r = r.trim_start();
            let close = match r.chars().next() {
                Some('(') => ')',
                Some('[') => ']',
                _ => return Err(DiagramError::Malformed("expected bracket after X".into())),
            };
            let end = r
                .find(close)
                .ok_or_else(|| DiagramError::Malformed("unclosed crossing".into()))?;
            let nums = parse_int_list(&r[1..end])?;
            if nums.len() != 4 {
                return Err(DiagramError::Arity { index: crossings.len(), found: nums.len() });
            }
            crossings.push([nums[0], nums[1], nums[2], nums[3]]);
            rest = r[end + 1..].trim_start();
            if let Some(r2) = rest.strip_prefix(',') {
                rest = r2.trim_start();
            } else if !rest.is_empty() {
                return Err(DiagramError::Malformed(format!("unexpected text {rest:?}")));
            }
        }
        Self::from_pd_labels(&crossings, framings.as_deref(), loops, t)
    }

    /// Build from PD crossings given as label 4-tuples.
    pub fn from_pd_labels(
        crossings: &[[i64; 4]],
        framings: Option<&[i64]>,
        loops: usize,
        source: &str,
    ) -> Result<LinkDiagram, DiagramError> {
        // label -> endpoints in order of appearance
        let mut ends: BTreeMap<i64, Vec<(usize, u8)>> = BTreeMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (s, &l) in x.iter().enumerate() {
                ends.entry(l).or_default().push((c, s as u8));
            }
        }
        for (l, v) in &ends {
            if v.len() != 2 {
                return Err(DiagramError::LabelCount { label: *l, count: v.len() });
            }
        }
        let label_at = |c: usize, s: u8| crossings[c][s as usize];
        let other_end = |l: i64, e: (usize, u8)| -> (usize, u8) {
            let v = &ends[&l];
            if v[0] == e {
                v[1]
            } else {
                v[0]
            }
        };

        let mut visited: BTreeMap<i64, bool> = BTreeMap::new();
        let mut b = Builder::new();
        for _ in crossings {
            b.crossing();
        }
        let mut n_comp = 0usize;
        let labels: Vec<i64> = ends.keys().copied().collect();
        for &start in &labels {
            if visited.contains_key(&start) {
                continue;
            }
            // walk: (label, from endpoint, to endpoint)
            let mut walk: Vec<(i64, (usize, u8), (usize, u8))> = vec![];
            let v0 = ends[&start][0];
            let mut from = v0;
            let mut label = start;
            loop {
                visited.insert(label, true);
                let to = other_end(label, from);
                walk.push((label, from, to));
                let next_from = (to.0, to.1 ^ 2);
                let next_label = label_at(next_from.0, next_from.1);
                if next_label == start && next_from == v0 {
                    break;
                }
                if visited.contains_key(&next_label) {
                    return Err(DiagramError::Malformed(format!("arc {next_label} reached twice")));
                }
                from = next_from;
                label = next_label;
            }
            // direction from the under-strand passages
            let mut votes = (0usize, 0usize);
            for &(_, _, to) in &walk {
                match to.1 {
                    0 => votes.0 += 1,
                    2 => votes.1 += 1,
                    _ => {}
                }
            }
            let forward = if votes.0 > 0 && votes.1 > 0 {
                return Err(DiagramError::Orientation(format!(
                    "component through arc {start} enters under-crossings from both sides"
                )));
            } else if votes.0 > 0 {
                true
            } else if votes.1 > 0 {
                false
            } else {
                // over-only component: consecutive labels increase along the strand
                let (_, _, to) = walk[0];
                let (c, s) = to;
                let j = label_at(c, 1);
                let l = label_at(c, 3);
                let j_to_l = l - j == 1 || j - l > 1;
                (s == 1) == j_to_l
            };
            for &(_, f, t) in &walk {
                let (f, t) = if forward { (f, t) } else { (t, f) };
                b.arc(End::Slot(f.0, f.1), End::Slot(t.0, t.1), n_comp);
            }
            n_comp += 1;
        }
        for i in 0..loops {
            b.free_loop(n_comp + i);
        }
        let total = n_comp + loops;
        if let Some(f) = framings {
            if f.len() != total {
                return Err(DiagramError::FramingCount { expected: total, found: f.len() });
            }
            for (i, v) in f.iter().enumerate() {
                b.set_framing(i, *v);
            }
        }
        b.build(source)
    }

    /// Render in the PD text format with labels `edge + 1`.
    ///
    /// Crossingless components are listed after all others, so parsing the
    /// result reorders components when loops come first.
    pub fn to_pd_string(&self) -> String {
        let xs: Vec<String> = self
            .crossings
            .iter()
            .map(|x| {
                format!("X({},{},{},{})", x.edges[0] + 1, x.edges[1] + 1, x.edges[2] + 1, x.edges[3] + 1)
            })
            .collect();
        // crossing components come first in the text format
        let mut fr: Vec<String> = vec![];
        for c in self.components.iter().filter(|c| !c.is_loop()) {
            fr.push(c.framing.to_string());
        }
        for c in self.components.iter().filter(|c| c.is_loop()) {
            fr.push(c.framing.to_string());
        }
        let mut s = format!("PD[{}", xs.join(", "));
        if !self.components.is_empty() {
            s.push_str(&format!("; framings=({})", fr.join(",")));
        }
        if self.n_loops() > 0 {
            s.push_str(&format!("; loops={}", self.n_loops()));
        }
        s.push(']');
        s
    }
}
