//! The rank-two Frobenius algebras `Z[X]/(X² - t)` with `t ∈ {0, 1}`.
//!
//! Basis index 0 is `1`, index 1 is `X`.

use serde::{Deserialize, Serialize};

/// Coefficient ring of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingTag {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Q")]
    Rationals,
}

impl RingTag {
    pub fn name(self) -> &'static str {
        match self {
            RingTag::Integers => "Z",
            RingTag::Rationals => "Q",
        }
    }
}

impl std::str::FromStr for RingTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Z" | "z" => Ok(RingTag::Integers),
            "Q" | "q" => Ok(RingTag::Rationals),
            _ => Err(format!("unknown ring {s:?}; expected Z or Q")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grading {
    Graded,
    Filtered,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusSpec {
    pub ring: RingTag,
    /// `X² = t`.
    pub t: i64,
    pub grading: Grading,
}

type Vec2 = [i64; 2];
type Ten2 = [[i64; 2]; 2];

impl FrobeniusSpec {
    pub fn khovanov(ring: RingTag) -> Self {
        FrobeniusSpec { ring, t: 0, grading: Grading::Graded }
    }

    pub fn lee() -> Self {
        FrobeniusSpec { ring: RingTag::Rationals, t: 1, grading: Grading::Filtered }
    }

    pub fn unit(&self) -> Vec2 {
        [1, 0]
    }

    pub fn counit(&self, v: Vec2) -> i64 {
        v[1]
    }

    /// Product of basis elements.
    pub fn mul_basis(&self, a: usize, b: usize) -> Vec2 {
        match (a, b) {
            (0, 0) => [1, 0],
            (0, 1) | (1, 0) => [0, 1],
            _ => [self.t, 0],
        }
    }

    /// Coproduct of a basis element as a 2×2 coefficient table.
    pub fn comul_basis(&self, a: usize) -> Ten2 {
        if a == 0 {
            [[0, 1], [1, 0]]
        } else {
            [[self.t, 0], [0, 1]]
        }
    }

    pub fn mul(&self, u: Vec2, v: Vec2) -> Vec2 {
        let mut r = [0; 2];
        for a in 0..2 {
            for b in 0..2 {
                let m = self.mul_basis(a, b);
                for c in 0..2 {
                    r[c] += u[a] * v[b] * m[c];
                }
            }
        }
        r
    }

    pub fn comul(&self, u: Vec2) -> Ten2 {
        let mut r = [[0; 2]; 2];
        for a in 0..2 {
            let d = self.comul_basis(a);
            for i in 0..2 {
                for j in 0..2 {
                    r[i][j] += u[a] * d[i][j];
                }
            }
        }
        r
    }

    /// Quantum degree of a basis element: `+1` for `1`, `-1` for `X`.
    pub fn degree(&self, a: usize) -> i32 {
        if a == 0 {
            1
        } else {
            -1
        }
    }

    /// Verifies the algebra, coalgebra and Frobenius axioms on all basis
    /// elements.
    pub fn verify(&self) -> Result<(), String> {
        let e = |a: usize| -> Vec2 {
            let mut v = [0; 2];
            v[a] = 1;
            v
        };
        for a in 0..2 {
            if self.mul(self.unit(), e(a)) != e(a) {
                return Err("unit law fails".into());
            }
            // counit: (ε ⊗ id)Δ = id = (id ⊗ ε)Δ
            let d = self.comul(e(a));
            let left = [d[1][0], d[1][1]];
            let right = [d[0][1], d[1][1]];
            if left != e(a) || right != e(a) {
                return Err("counit law fails".into());
            }
            for b in 0..2 {
                if self.mul(e(a), e(b)) != self.mul(e(b), e(a)) {
                    return Err("multiplication is not commutative".into());
                }
                for c in 0..2 {
                    if self.mul(self.mul(e(a), e(b)), e(c)) != self.mul(e(a), self.mul(e(b), e(c))) {
                        return Err("multiplication is not associative".into());
                    }
                }
                // Frobenius: Δ(ab) = (a ⊗ 1)Δ(b) = Δ(a)(1 ⊗ b)
                let lhs = self.comul(self.mul(e(a), e(b)));
                let db = self.comul(e(b));
                let mut mid = [[0; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        let ai = self.mul(e(a), e(i));
                        for k in 0..2 {
                            mid[k][j] += db[i][j] * ai[k];
                        }
                    }
                }
                if lhs != mid {
                    return Err("Frobenius compatibility fails".into());
                }
                let da = self.comul(e(a));
                let mut rhs = [[0; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        let jb = self.mul(e(j), e(b));
                        for k in 0..2 {
                            rhs[i][k] += da[i][j] * jb[k];
                        }
                    }
                }
                if lhs != rhs {
                    return Err("Frobenius compatibility fails".into());
                }
            }
            // coassociativity
            let d = self.comul(e(a));
            let mut l = [[[0; 2]; 2]; 2];
            let mut r = [[[0; 2]; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    let di = self.comul_basis(i);
                    let dj = self.comul_basis(j);
                    for x in 0..2 {
                        for y in 0..2 {
                            l[x][y][j] += d[i][j] * di[x][y];
                            r[i][x][y] += d[i][j] * dj[x][y];
                        }
                    }
                }
            }
            if l != r {
                return Err("comultiplication is not coassociative".into());
            }
        }
        // ε(1) = 0, ε(X) = 1, and the handle operator is multiplication by 2X
        if self.counit(self.unit()) != 0 || self.counit(e(1)) != 1 {
            return Err("counit values".into());
        }
        let d1 = self.comul(self.unit());
        let mut handle = [0; 2];
        for i in 0..2 {
            for j in 0..2 {
                let m = self.mul(e(i), e(j));
                handle[0] += d1[i][j] * m[0];
                handle[1] += d1[i][j] * m[1];
            }
        }
        if handle != [0, 2] {
            return Err("handle operator is not 2X".into());
        }
        Ok(())
    }
}
