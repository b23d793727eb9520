//! Braid closures, text format `BR[strands; w1, w2, ...]`.
//!
//! Letter `j > 0` is the generator crossing strands `j` and `j+1` with a
//! positive crossing; `j < 0` is its inverse. Strands run bottom to top and
//! are closed on the right.

use super::{Builder, DiagramError, End, LinkDiagram};

/// Slots of a braid crossing in braid-local terms: (bottom-left, bottom-right,
/// top-left, top-right).
pub(crate) fn braid_slots(positive: bool) -> [u8; 4] {
    if positive {
        [3, 0, 2, 1]
    } else {
        [0, 1, 3, 2]
    }
}

/// Appends the crossings of `word` to `b`, threading the positions `cur`.
/// `tags[k]` is the component tag of the strand currently at position `k`.
pub(crate) fn thread_word(b: &mut Builder, word: &[i64], cur: &mut [End], tags: &mut [usize]) {
    for &l in word {
        let i = (l.unsigned_abs() - 1) as usize;
        let c = b.crossing();
        let [bl, br, tl, tr] = braid_slots(l > 0);
        b.arc(cur[i], End::Slot(c, bl), tags[i]);
        b.arc(cur[i + 1], End::Slot(c, br), tags[i + 1]);
        // strands swap positions
        tags.swap(i, i + 1);
        cur[i] = End::Slot(c, tl);
        cur[i + 1] = End::Slot(c, tr);
    }
}

fn validate(word: &[i64], strands: usize) -> Result<(), DiagramError> {
    if strands < 1 {
        return Err(DiagramError::NoStrands);
    }
    for &l in word {
        if l == 0 || l.unsigned_abs() as usize >= strands {
            return Err(DiagramError::BraidLetter { letter: l, strands });
        }
    }
    Ok(())
}

/// Component of each bottom position, numbered by smallest position.
pub(crate) fn position_components(word: &[i64], strands: usize) -> Vec<usize> {
    // perm[k] = top position of the strand starting at bottom position k
    let mut at: Vec<usize> = (0..strands).collect(); // at[pos] = starting position
    for &l in word {
        let i = (l.unsigned_abs() - 1) as usize;
        at.swap(i, i + 1);
    }
    let mut perm = vec![0; strands];
    for (pos, &start) in at.iter().enumerate() {
        perm[start] = pos;
    }
    let mut comp = vec![usize::MAX; strands];
    let mut n = 0;
    for k in 0..strands {
        if comp[k] != usize::MAX {
            continue;
        }
        let mut j = k;
        while comp[j] == usize::MAX {
            comp[j] = n;
            j = perm[j];
        }
        n += 1;
    }
    comp
}

impl LinkDiagram {
    /// Closure of a braid word on `strands` strands, all framings zero.
    pub fn from_braid(word: &[i64], strands: usize) -> Result<LinkDiagram, DiagramError> {
        validate(word, strands)?;
        let comp = position_components(word, strands);
        let mut b = Builder::new();
        let starts: Vec<End> = (0..strands).map(|_| b.wire()).collect();
        let mut cur = starts.clone();
        let mut tags = comp.clone();
        thread_word(&mut b, word, &mut cur, &mut tags);
        for k in 0..strands {
            b.arc(cur[k], starts[k], tags[k]);
        }
        let src = format!(
            "BR[{}; {}]",
            strands,
            word.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
        );
        b.build(src)
    }

    /// Parse `BR[strands; w1, w2, ...]` (commas or spaces between letters).
    pub fn parse_braid(text: &str) -> Result<LinkDiagram, DiagramError> {
        let t = text.trim();
        let body = t
            .strip_prefix("BR")
            .map(str::trim)
            .and_then(|s| s.strip_prefix('['))
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| DiagramError::Malformed("expected BR[strands; word]".into()))?;
        let (n, w) = body.split_once(';').unwrap_or((body, ""));
        let strands: usize = n
            .trim()
            .parse()
            .map_err(|_| DiagramError::Malformed(format!("bad strand count {:?}", n.trim())))?;
        let word = w
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<i64>()
                    .map_err(|_| DiagramError::Malformed(format!("bad braid letter {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_braid(&word, strands)
    }

    /// Parse either text format.
    pub fn parse(text: &str) -> Result<LinkDiagram, DiagramError> {
        let t = text.trim_start();
        if t.starts_with("BR") {
            Self::parse_braid(t)
        } else {
            Self::parse_pd(t)
        }
    }
}
