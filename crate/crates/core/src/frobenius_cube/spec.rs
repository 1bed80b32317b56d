use crate::chain::Ring;

/// Basis index 0 is x₊ = 1, index 1 is x₋ = X.
pub type Vec2 = [i64; 2];
pub type Tensor2 = [[i64; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    Kh,
    Lee,
    Bn,
}

impl Theory {
    pub fn parse(s: &str) -> Option<Theory> {
        match s.to_ascii_lowercase().as_str() {
            "kh" => Some(Theory::Kh),
            "lee" => Some(Theory::Lee),
            "bn" => Some(Theory::Bn),
            _ => None,
        }
    }
}

/// A rank-2 Frobenius algebra given by integer structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSpec {
    pub theory: Theory,
    pub ring: Ring,
    pub unit: Vec2,
    pub counit: Vec2,
    /// m[a][b] = a·b
    pub merge: [[Vec2; 2]; 2],
    /// split[a][x][y] = coefficient of x ⊗ y in Δ(a)
    pub split: [Tensor2; 2],
    pub graded: bool,
    pub filtered_jump: i64,
}

pub fn builtin_spec(theory: Theory) -> FrobeniusSpec {
    let e = |a: i64, b: i64| [a, b];
    match theory {
        Theory::Kh => FrobeniusSpec {
            theory,
            ring: Ring::Z,
            unit: e(1, 0),
            counit: e(0, 1),
            merge: [[e(1, 0), e(0, 1)], [e(0, 1), e(0, 0)]],
            split: [[[0, 1], [1, 0]], [[0, 0], [0, 1]]],
            graded: true,
            filtered_jump: 0,
        },
        Theory::Lee => FrobeniusSpec {
            theory,
            ring: Ring::Q,
            unit: e(1, 0),
            counit: e(0, 1),
            merge: [[e(1, 0), e(0, 1)], [e(0, 1), e(1, 0)]],
            split: [[[0, 1], [1, 0]], [[1, 0], [0, 1]]],
            graded: false,
            filtered_jump: 4,
        },
        Theory::Bn => FrobeniusSpec {
            theory,
            ring: Ring::F2,
            unit: e(1, 0),
            counit: e(0, 1),
            merge: [[e(1, 0), e(0, 1)], [e(0, 1), e(0, 1)]],
            split: [[[-1, 1], [1, 0]], [[0, 0], [0, 1]]],
            graded: false,
            filtered_jump: 2,
        },
    }
}

impl FrobeniusSpec {
    pub fn with_ring(mut self, ring: Ring) -> FrobeniusSpec {
        self.ring = ring;
        self
    }

    fn red(&self, v: i64) -> i64 {
        match self.ring {
            Ring::Fp(p) => v.rem_euclid(p as i64),
            _ => v,
        }
    }

    /// Whether X·X has a component along 1, which forbids the reduced quotient.
    pub fn x_squared_has_unit(&self) -> bool {
        self.red(self.merge[1][1][0]) != 0
    }

    /// Checks unit, counit, associativity, coassociativity and the Frobenius relation.
    pub fn check(&self) -> Result<(), String> {
        let r = |v: i64| self.red(v);
        let m = &self.merge;
        let s = &self.split;
        for a in 0..2 {
            let ua: Vec<i64> = (0..2).map(|c| r((0..2).map(|u| self.unit[u] * m[u][a][c]).sum())).collect();
            if ua != [(a == 0) as i64, (a == 1) as i64] {
                return Err(format!("unit fails on basis {a}"));
            }
            // (ε ⊗ id)Δ = id
            let ca: Vec<i64> = (0..2).map(|y| r((0..2).map(|x| self.counit[x] * s[a][x][y]).sum())).collect();
            if ca != [(a == 0) as i64, (a == 1) as i64] {
                return Err(format!("counit fails on basis {a}"));
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                if m[a][b] != m[b][a] {
                    return Err("merge is not commutative".into());
                }
                for c in 0..2 {
                    // (ab)c = a(bc)
                    let lhs: Vec<i64> = (0..2).map(|z| r((0..2).map(|t| m[a][b][t] * m[t][c][z]).sum())).collect();
                    let rhs: Vec<i64> = (0..2).map(|z| r((0..2).map(|t| m[b][c][t] * m[a][t][z]).sum())).collect();
                    if lhs != rhs {
                        return Err("merge is not associative".into());
                    }
                }
            }
        }
        // Δ∘m = (m ⊗ id)(id ⊗ Δ) = (id ⊗ m)(Δ ⊗ id), as tensors in A⊗A indexed by input a⊗b
        for a in 0..2 {
            for b in 0..2 {
                let mut dm = [[0i64; 2]; 2];
                let mut left = [[0i64; 2]; 2];
                let mut right = [[0i64; 2]; 2];
                for x in 0..2 {
                    for y in 0..2 {
                        dm[x][y] = r((0..2).map(|t| m[a][b][t] * s[t][x][y]).sum());
                        // a ⊗ Δ(b) = Σ a ⊗ u ⊗ v, then m on the first two
                        left[x][y] = r((0..2).flat_map(|u| (0..2).map(move |v| (u, v))).filter(|&(_, v)| v == y).map(|(u, v)| s[b][u][v] * m[a][u][x]).sum());
                        // Δ(a) ⊗ b = Σ u ⊗ v ⊗ b, then m on the last two
                        right[x][y] = r((0..2).flat_map(|u| (0..2).map(move |v| (u, v))).filter(|&(u, _)| u == x).map(|(u, v)| s[a][u][v] * m[v][b][y]).sum());
                    }
                }
                if dm != left || dm != right {
                    return Err(format!("Frobenius relation fails on {a}⊗{b}"));
                }
            }
        }
        Ok(())
    }
}
