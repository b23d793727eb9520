//! Combinatorial statistics of a diagram.

use serde::Serialize;

use super::{Crossing, LinkDiagram};

/// Writhes, crossing and linking matrices, Seifert circle count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramStats {
    /// Signed self-crossing count per component.
    pub writhe: Vec<i64>,
    /// `N[i][i]` = self-crossings of i, `N[i][j]` = half the crossings between i and j.
    pub crossing_matrix: Vec<Vec<i64>>,
    /// Pairwise linking numbers (zero diagonal).
    pub linking: Vec<Vec<i64>>,
    pub seifert_circles: usize,
    /// `positive[i][j]` counts positive crossings between i and j (symmetric).
    pub positive: Vec<Vec<usize>>,
    pub negative: Vec<Vec<usize>>,
}

impl DiagramStats {
    /// Diagonal writhe matrix.
    pub fn writhe_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.writhe.len();
        let mut w = vec![vec![0; m]; m];
        for i in 0..m {
            w[i][i] = self.writhe[i];
        }
        w
    }

    pub fn total_signed(&self) -> i64 {
        let m = self.writhe.len();
        let mut t: i64 = self.writhe.iter().sum();
        for i in 0..m {
            for j in i + 1..m {
                t += 2 * self.linking[i][j];
            }
        }
        t
    }
}

impl LinkDiagram {
    /// Number of circles in the oriented resolution.
    pub fn seifert_circles(&self) -> usize {
        self.resolution_circles(|x| x.sign < 0)
    }

    /// Circles of the resolution taking the 1-smoothing where `one` holds.
    pub fn resolution_circles(&self, one: impl Fn(&Crossing) -> bool) -> usize {
        let n = self.n_edges();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut circles = n;
        for x in &self.crossings {
            for (a, b) in Crossing::smoothing(one(x)) {
                let ra = find(&mut parent, x.edges[a as usize]);
                let rb = find(&mut parent, x.edges[b as usize]);
                if ra != rb {
                    parent[ra] = rb;
                    circles -= 1;
                }
            }
        }
        circles + self.n_loops()
    }

    pub fn stats(&self) -> DiagramStats {
        let m = self.n_components();
        let mut writhe = vec![0i64; m];
        let mut nmat = vec![vec![0i64; m]; m];
        let mut lk2 = vec![vec![0i64; m]; m];
        let mut pos = vec![vec![0usize; m]; m];
        let mut neg = vec![vec![0usize; m]; m];
        for (k, x) in self.crossings.iter().enumerate() {
            let (i, j) = self.crossing_components(k);
            let s = x.sign as i64;
            if x.sign > 0 {
                pos[i][j] += 1;
                if i != j {
                    pos[j][i] += 1;
                }
            } else {
                neg[i][j] += 1;
                if i != j {
                    neg[j][i] += 1;
                }
            }
            if i == j {
                writhe[i] += s;
                nmat[i][i] += 1;
            } else {
                nmat[i][j] += 1;
                nmat[j][i] += 1;
                lk2[i][j] += s;
                lk2[j][i] += s;
            }
        }
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    nmat[i][j] /= 2;
                    lk2[i][j] /= 2;
                }
            }
        }
        DiagramStats {
            writhe,
            crossing_matrix: nmat,
            linking: lk2,
            seifert_circles: self.seifert_circles(),
            positive: pos,
            negative: neg,
        }
    }

    /// `w - r + 1` when every crossing is positive.
    pub fn positive_diagram_s(&self) -> Option<i64> {
        if !self.is_positive() {
            return None;
        }
        Some(self.writhe() - self.seifert_circles() as i64 + 1)
    }
}
