//! Dotted cobordisms between crossingless matchings.
//!
//! A matching on `n` boundary points is stored as a partner array. For
//! matchings `T` and `S` on the same points, `T ∪ S` is a union of cycles; a
//! morphism `T → S` is a linear combination of basis cobordisms, one disk per
//! cycle, each disk carrying at most one dot. A basis cobordism is a bit mask
//! over the cycles (bit set = dotted), with cycles numbered in order of their
//! smallest boundary point.

use rustc_hash::FxHashMap;

use crate::algebra::Ring;

pub type Matching = Vec<u8>;

/// Cycle decomposition of `T ∪ S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleIndex {
    pub of_port: Vec<u8>,
    pub n: usize,
}

pub fn cycles(t: &[u8], s: &[u8]) -> CycleIndex {
    let n = t.len();
    let mut of_port = vec![u8::MAX; n];
    let mut k = 0u8;
    for p in 0..n {
        if of_port[p] != u8::MAX {
            continue;
        }
        let mut cur = p;
        loop {
            of_port[cur] = k;
            let x = t[cur] as usize;
            of_port[x] = k;
            cur = s[x] as usize;
            if cur == p {
                break;
            }
        }
        k += 1;
    }
    CycleIndex { of_port, n: k as usize }
}

/// Interned matchings on a fixed boundary, with cached cycle indices.
#[derive(Default)]
pub struct MatchingTable {
    pub list: Vec<Matching>,
    index: FxHashMap<Matching, u32>,
    cyc: FxHashMap<(u32, u32), std::sync::Arc<CycleIndex>>,
    products: FxHashMap<ProductKey, std::sync::Arc<Vec<(u64, i64)>>>,
}

/// `(a, m, b, first mask, second mask, t)` of a composite of basis cobordisms.
type ProductKey = (u32, u32, u32, u64, u64, i64);

impl MatchingTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, m: Matching) -> u32 {
        if let Some(&i) = self.index.get(&m) {
            return i;
        }
        let i = self.list.len() as u32;
        self.list.push(m.clone());
        self.index.insert(m, i);
        i
    }

    pub fn get(&self, i: u32) -> &Matching {
        &self.list[i as usize]
    }

    pub fn cycles(&mut self, a: u32, b: u32) -> std::sync::Arc<CycleIndex> {
        if let Some(c) = self.cyc.get(&(a, b)) {
            return c.clone();
        }
        let c = std::sync::Arc::new(cycles(&self.list[a as usize], &self.list[b as usize]));
        self.cyc.insert((a, b), c.clone());
        c
    }

    pub fn n_ports(&self) -> usize {
        self.list.first().map_or(0, |m| m.len())
    }
}

/// Sparse linear combination of basis cobordisms.
pub type Morph<R> = Vec<(u64, R)>;

pub fn morph_add<R: Ring>(m: &mut Morph<R>, mask: u64, c: &R) {
    if c.is_zero() {
        return;
    }
    if let Some(pos) = m.iter().position(|(k, _)| *k == mask) {
        let v = m[pos].1.add(c);
        if v.is_zero() {
            m.swap_remove(pos);
        } else {
            m[pos].1 = v;
        }
    } else {
        m.push((mask, c.clone()));
    }
}

/// Surfaces assembled from disks glued along boundary intervals.
///
/// `sheets` disks, `glues` pairs of sheets joined along one interval each,
/// and boundary cycles each lying on a given sheet. Every connected component
/// with `b` boundary cycles, Euler characteristic `χ`, genus
/// `g = (2 - χ - b)/2` and `d` dots expands in the disk basis: the pattern
/// dotting `k` of its cycles has coefficient `2^g ε(X^(d+g+b-k))`, where
/// `ε(X^n)` is `t^((n-1)/2)` for odd `n` and zero otherwise.
pub struct Surface {
    parent: Vec<usize>,
    glue_count: Vec<usize>,
    sheet_count: Vec<usize>,
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

impl Surface {
    pub fn new(n_sheets: usize, glues: &[(usize, usize)]) -> Self {
        let mut parent: Vec<usize> = (0..n_sheets).collect();
        for &(a, b) in glues {
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                parent[ra] = rb;
            }
        }
        for x in 0..n_sheets {
            parent[x] = find(&mut parent, x);
        }
        let mut glue_count = vec![0; n_sheets];
        let mut sheet_count = vec![0; n_sheets];
        for &(a, _) in glues {
            glue_count[parent[a]] += 1;
        }
        for x in 0..n_sheets {
            sheet_count[parent[x]] += 1;
        }
        Surface { parent, glue_count, sheet_count }
    }

    pub fn root(&self, sheet: usize) -> usize {
        self.parent[sheet]
    }

    /// Expand with the given dots per sheet; `cycle_sheet[i]` is a sheet on
    /// boundary cycle `i`. Calls `emit(mask, coeff)` for each nonzero term.
    pub fn expand(&self, dots: &[u32], cycle_sheet: &[usize], t: i64, mut emit: impl FnMut(u64, i64)) {
        let n = self.parent.len();
        let mut dsum = vec![0u32; n];
        for s in 0..n {
            dsum[self.parent[s]] += dots[s];
        }
        let mut comp_cycles: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &s) in cycle_sheet.iter().enumerate() {
            comp_cycles[self.parent[s]].push(i);
        }
        let mut scalar: i64 = 1;
        // per open component: list of (mask, coeff) alternatives
        let mut factors: Vec<Vec<(u64, i64)>> = Vec::new();
        for r in 0..n {
            if self.parent[r] != r {
                continue;
            }
            let chi = self.sheet_count[r] as i64 - self.glue_count[r] as i64;
            let cyc = &comp_cycles[r];
            let b = cyc.len() as i64;
            let g2 = 2 - chi - b;
            debug_assert!(g2 >= 0 && g2 % 2 == 0, "non-orientable or disconnected sheet data");
            let g = g2 / 2;
            let base = dsum[r] as i64 + g + b;
            let pow2 = 1i64 << g;
            if b == 0 {
                scalar *= pow2 * eps(base, t);
                if scalar == 0 {
                    return;
                }
                continue;
            }
            let mut alts = Vec::new();
            let bu = b as usize;
            for sub in 0u64..(1u64 << bu) {
                let k = sub.count_ones() as i64;
                let e = eps(base - k, t);
                if e == 0 {
                    continue;
                }
                let mut mask = 0u64;
                for (j, &ci) in cyc.iter().enumerate() {
                    if sub >> j & 1 == 1 {
                        mask |= 1 << ci;
                    }
                }
                alts.push((mask, pow2 * e));
            }
            if alts.is_empty() {
                return;
            }
            factors.push(alts);
        }
        // cartesian product
        let mut idx = vec![0usize; factors.len()];
        loop {
            let mut mask = 0u64;
            let mut c = scalar;
            for (f, &i) in factors.iter().zip(&idx) {
                mask |= f[i].0;
                c *= f[i].1;
            }
            emit(mask, c);
            let mut j = 0;
            loop {
                if j == factors.len() {
                    return;
                }
                idx[j] += 1;
                if idx[j] < factors[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    }
}

/// `ε(X^n)` in `Z[X]/(X² - t)`.
pub fn eps(n: i64, t: i64) -> i64 {
    if n < 0 || n % 2 == 0 {
        0
    } else {
        t.pow(((n - 1) / 2) as u32)
    }
}

/// Degree of a basis cobordism between matchings on `ports` points with
/// `ncyc` cycles, ignoring object shifts.
pub fn cob_degree(ncyc: usize, ports: usize, mask: u64) -> i64 {
    ncyc as i64 - (ports / 2) as i64 - 2 * mask.count_ones() as i64
}

/// Composite of two basis cobordisms `A → M → B`, expanded in the basis
/// of `A → B`; memoized in the table.
fn basis_product(table: &mut MatchingTable, key: ProductKey) -> std::sync::Arc<Vec<(u64, i64)>> {
    if let Some(p) = table.products.get(&key) {
        return p.clone();
    }
    let (a, m, b, m1, m2, t) = key;
    let c1 = table.cycles(a, m);
    let c2 = table.cycles(m, b);
    let cf = table.cycles(a, b);
    let mid = table.get(m);
    let n1 = c1.n;
    let mut glues = Vec::with_capacity(mid.len() / 2);
    for p in 0..mid.len() {
        let q = mid[p] as usize;
        if p < q {
            glues.push((c1.of_port[p] as usize, n1 + c2.of_port[p] as usize));
        }
    }
    let surf = Surface::new(n1 + c2.n, &glues);
    // each final cycle through its smallest port, which lies on an A arc
    let mut cycle_sheet = vec![0usize; cf.n];
    let mut seen = vec![false; cf.n];
    for p in 0..cf.of_port.len() {
        let k = cf.of_port[p] as usize;
        if !seen[k] {
            seen[k] = true;
            cycle_sheet[k] = c1.of_port[p] as usize;
        }
    }
    let mut dots = vec![0u32; n1 + c2.n];
    for (i, d) in dots.iter_mut().enumerate().take(n1) {
        *d = (m1 >> i & 1) as u32;
    }
    for j in 0..c2.n {
        dots[n1 + j] = (m2 >> j & 1) as u32;
    }
    let mut out = Vec::new();
    surf.expand(&dots, &cycle_sheet, t, |mask, c| out.push((mask, c)));
    let p = std::sync::Arc::new(out);
    table.products.insert(key, p.clone());
    p
}

/// Vertical composition `second ∘ first` where `first: A → M` and
/// `second: M → B`, scaled and added into `out`.
#[allow(clippy::too_many_arguments)]
pub fn compose<R: Ring>(
    table: &mut MatchingTable,
    a: u32,
    m: u32,
    b: u32,
    first: &Morph<R>,
    second: &Morph<R>,
    t: i64,
    out: &mut Morph<R>,
    scale: &R,
) {
    for (m1, r1) in first {
        let c1 = r1.mul(scale);
        for (m2, r2) in second {
            let coeff = c1.mul(r2);
            for &(mask, c) in table_product(table, (a, m, b, *m1, *m2, t)).iter() {
                morph_add(out, mask, &coeff.mul(&R::from_i64(c)));
            }
        }
    }
}

fn table_product(table: &mut MatchingTable, key: ProductKey) -> std::sync::Arc<Vec<(u64, i64)>> {
    basis_product(table, key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Int;

    #[test]
    fn chained_sheets_share_one_root() {
        // unions built as the chain 0 → 1 → 2 → 3
        let surf = Surface::new(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!((0..4).all(|x| surf.root(x) == surf.root(3)));
        let mut terms = vec![];
        surf.expand(&[0; 4], &[0], 0, |m, c| terms.push((m, c)));
        assert_eq!(terms, vec![(0, 1)]);
    }

    #[test]
    fn cycle_counts() {
        // two arcs on four points
        let a = vec![1, 0, 3, 2];
        let b = vec![3, 2, 1, 0];
        assert_eq!(cycles(&a, &a).n, 2);
        assert_eq!(cycles(&a, &b).n, 1);
    }

    fn terms(s: &Surface, dots: &[u32], cyc: &[usize], t: i64) -> Vec<(u64, i64)> {
        let mut got = vec![];
        s.expand(dots, cyc, t, |m, c| got.push((m, c)));
        got.sort();
        got
    }

    #[test]
    fn neck_cutting() {
        // an annulus from two disks glued along two intervals
        let ann = Surface::new(2, &[(0, 1), (0, 1)]);
        assert_eq!(terms(&ann, &[0, 0], &[0, 1], 0), vec![(1, 1), (2, 1)]);
        assert_eq!(terms(&ann, &[1, 0], &[0, 1], 0), vec![(3, 1)]);
        assert_eq!(terms(&ann, &[1, 0], &[0, 1], 1), vec![(0, 1), (3, 1)]);
        // a once-punctured disk pair glued along one interval is a disk
        let disk = Surface::new(2, &[(0, 1)]);
        assert_eq!(terms(&disk, &[1, 1], &[0], 0), vec![]);
        assert_eq!(terms(&disk, &[1, 1], &[0], 1), vec![(0, 1)]);
    }

    #[test]
    fn handles_contribute_two() {
        // torus with two boundary circles
        let tor = Surface::new(2, &[(0, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(terms(&tor, &[0, 0], &[0, 1], 0), vec![(3, 2)]);
        assert_eq!(terms(&tor, &[0, 0], &[0, 1], 1), vec![(0, 2), (3, 2)]);
        assert_eq!(eps(1, 0), 1);
        assert_eq!(eps(3, 0), 0);
        assert_eq!(eps(3, 1), 1);
        assert_eq!(eps(2, 1), 0);
    }

    #[test]
    fn identity_composes_to_identity() {
        let mut t = MatchingTable::new();
        let a = t.intern(vec![1, 0, 3, 2]);
        let b = t.intern(vec![3, 2, 1, 0]);
        let id: Morph<Int> = vec![(0, Int::one())];
        // saddle a -> b has one cycle, no dot
        let saddle: Morph<Int> = vec![(0, Int::one())];
        let mut out = vec![];
        compose(&mut t, a, a, b, &id, &saddle, 0, &mut out, &Int::one());
        assert_eq!(out, vec![(0, Int::one())]);
        // saddle then reverse saddle: a -> b -> a is a tube, neck-cut into two terms
        let mut out = vec![];
        compose(&mut t, a, b, a, &saddle, &saddle, 0, &mut out, &Int::one());
        out.sort_by_key(|x| x.0);
        assert_eq!(out, vec![(1, Int::one()), (2, Int::one())]);
    }
}
