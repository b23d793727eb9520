//! Standard diagram families and the bundled corpus.
//!
//! Chirality conventions: `σ_i` is a positive crossing, `T(p,q)` with
//! `p, q > 0` is a positive braid closure, and the pretzel `P(-1,-1,-1)` is the
//! positive (right-handed) trefoil. The knot named `-5_2` is the chirality of
//! `5_2` admitting a positive five-crossing diagram, `P(-3,-1,-1)`.

use super::braid::braid_slots;
use super::{Builder, DiagramError, LinkDiagram};

/// Pretzel link with vertical twist regions of the given signed lengths.
pub fn pretzel(params: &[i64]) -> Result<LinkDiagram, DiagramError> {
    if params.is_empty() || params.contains(&0) {
        return Err(DiagramError::Malformed("pretzel parameters must be nonzero".into()));
    }
    let mut links = vec![];
    let mut n = 0usize;
    // (bottom-left, bottom-right, top-left, top-right) ends of each region
    let mut ends = vec![];
    for &p in params {
        // strands in a region run antiparallel in the knots of interest, so
        // braid-positive half twists give negative crossings there
        let [bl, br, tl, tr] = braid_slots(p > 0);
        let first = n;
        let len = p.unsigned_abs() as usize;
        for j in 1..len {
            links.push(((first + j - 1, tl), (first + j, bl)));
            links.push(((first + j - 1, tr), (first + j, br)));
        }
        n += len;
        let last = n - 1;
        ends.push([(first, bl), (first, br), (last, tl), (last, tr)]);
    }
    let k = ends.len();
    for i in 0..k - 1 {
        links.push((ends[i][3], ends[i + 1][2]));
        links.push((ends[i][1], ends[i + 1][0]));
    }
    links.push((ends[0][2], ends[k - 1][3]));
    links.push((ends[0][0], ends[k - 1][1]));
    // start the orientation at the outer top arc
    let top = links.len() - 2;
    links.swap(0, top);
    let b = Builder::from_undirected(n, &links)?;
    let src = format!(
        "P({})",
        params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
    );
    b.build(src)
}

/// Torus link `T(p,q)` as the closure of `(σ1 … σ(p-1))^|q|`, mirrored for `q < 0`.
pub fn torus(p: usize, q: i64) -> LinkDiagram {
    let mut word = vec![];
    for _ in 0..q.unsigned_abs() {
        for j in 1..p as i64 {
            word.push(j * q.signum());
        }
    }
    LinkDiagram::from_braid(&word, p.max(1))
        .expect("torus braid is valid")
        .with_source(format!("T({p},{q})"))
}

/// Closure of `(σ1 … σ(n-1))^m σ1 … σi` on `n` strands.
pub fn d_family(n: usize, m: usize, i: usize) -> Result<LinkDiagram, DiagramError> {
    let mut word = vec![];
    for _ in 0..m {
        word.extend(1..n as i64);
    }
    word.extend(1..=i as i64);
    Ok(LinkDiagram::from_braid(&word, n)?.with_source(format!("D^{i}_{{{n},{m}}}")))
}

/// The right-handed trefoil, `-3_1` in the table chirality where `3_1` and
/// `5_2` are the negative knots.
pub fn trefoil() -> LinkDiagram {
    LinkDiagram::from_braid(&[1, 1, 1], 2).unwrap().with_source("-3_1 (right-handed)")
}

pub fn figure_eight() -> LinkDiagram {
    LinkDiagram::from_braid(&[1, -2, 1, -2], 3).unwrap().with_source("4_1")
}

/// Positive Hopf link for `sign > 0`, negative otherwise.
pub fn hopf(sign: i64) -> LinkDiagram {
    let s = sign.signum();
    LinkDiagram::from_braid(&[s, s], 2)
        .unwrap()
        .with_source(if s > 0 { "Hopf+" } else { "Hopf-" })
}

/// The positive chirality of `5_2`.
pub fn neg_five_two() -> LinkDiagram {
    pretzel(&[-3, -1, -1]).unwrap().with_source("-5_2")
}

/// The slice pretzel knot `P(3,-3,-8)`.
pub fn pretzel_3_m3_m8() -> LinkDiagram {
    pretzel(&[3, -3, -8]).unwrap()
}

/// Named diagram lookup.
///
/// Recognized: `unknot`, `unlinkK`, `hopf+`, `hopf-`, `3_1`, `-3_1`, `4_1`,
/// `5_2`, `-5_2`, `P(a,b,...)`, `T(p,q)`, `-T(p,q)`, `D(n,m,i)`. Table names
/// follow the chirality in which `3_1` and `5_2` are negative knots.
pub fn by_name(name: &str) -> Option<LinkDiagram> {
    let n = name.trim();
    let args = |s: &str| -> Option<Vec<i64>> {
        let inner = s.strip_prefix('(')?.strip_suffix(')')?;
        inner.split(',').map(|t| t.trim().parse().ok()).collect()
    };
    match n {
        "unknot" => return Some(LinkDiagram::unknot(0)),
        "hopf+" => return Some(hopf(1)),
        "hopf-" => return Some(hopf(-1)),
        "3_1" => return Some(trefoil().mirror().with_source("3_1 (left-handed)")),
        "-3_1" => return Some(trefoil()),
        "4_1" => return Some(figure_eight()),
        "-5_2" => return Some(neg_five_two()),
        "5_2" => return Some(neg_five_two().mirror().with_source("5_2")),
        _ => {}
    }
    if let Some(k) = n.strip_prefix("unlink") {
        let k: usize = k.parse().ok()?;
        return Some(LinkDiagram::unlink(&vec![0; k]));
    }
    if let Some(rest) = n.strip_prefix('P') {
        return pretzel(&args(rest)?).ok();
    }
    if let Some(rest) = n.strip_prefix("-T") {
        let a = args(rest)?;
        if a.len() != 2 || a[0] < 1 {
            return None;
        }
        return Some(torus(a[0] as usize, a[1]).mirror().with_source(n.to_string()));
    }
    if let Some(rest) = n.strip_prefix('T') {
        let a = args(rest)?;
        if a.len() != 2 || a[0] < 1 {
            return None;
        }
        return Some(torus(a[0] as usize, a[1]));
    }
    if let Some(rest) = n.strip_prefix('D') {
        let a = args(rest)?;
        if a.len() != 3 || a.iter().any(|&x| x < 0) {
            return None;
        }
        return d_family(a[0] as usize, a[1] as usize, a[2] as usize).ok();
    }
    None
}

/// The bundled corpus.
pub fn corpus() -> Vec<LinkDiagram> {
    let mut v = vec![
        LinkDiagram::unknot(0).with_source("unknot"),
        LinkDiagram::unlink(&[0, 0]).with_source("unlink2"),
        LinkDiagram::unlink(&[0, 0, 0]).with_source("unlink3"),
        LinkDiagram::from_braid(&[1], 2).unwrap().with_source("unknot (kinked)"),
        hopf(1),
        hopf(-1),
        trefoil(),
        trefoil().mirror().with_source("3_1 (left-handed)"),
        figure_eight(),
        neg_five_two(),
        neg_five_two().mirror().with_source("5_2"),
        torus(2, 4),
        torus(2, 5),
        torus(2, 6),
        torus(2, 7),
        torus(3, 4),
        trefoil().disjoint_union(&LinkDiagram::unknot(0)),
        pretzel_3_m3_m8(),
    ];
    for n in 2..=4 {
        for m in 1..=2 {
            for i in 0..n {
                let d = d_family(n, m, i).unwrap();
                if d.n_crossings() <= 10 {
                    v.push(d);
                }
            }
        }
    }
    v
}
