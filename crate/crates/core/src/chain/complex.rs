use std::collections::BTreeMap;

use crate::laurent::LaurentPoly;

use super::scalar::Ring;
use super::ChainError;

/// A distinguished basis element with its homological and quantum gradings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub h: i64,
    pub q: i64,
}

/// A finitely generated free complex with sparse integer differential.
///
/// `d[g]` lists `(target, coefficient)` for the image of generator `g`. When `filtered` is
/// set the differential may raise `q`; otherwise it must preserve it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedComplex {
    pub ring: Ring,
    pub gens: Vec<Generator>,
    pub d: Vec<Vec<(usize, i64)>>,
    pub filtered: bool,
}

impl BigradedComplex {
    pub fn new(ring: Ring, gens: Vec<Generator>, d: Vec<Vec<(usize, i64)>>, filtered: bool) -> BigradedComplex {
        assert_eq!(gens.len(), d.len(), "one differential column per generator");
        BigradedComplex { ring, gens, d, filtered }
    }

    pub fn empty(ring: Ring) -> BigradedComplex {
        BigradedComplex::new(ring, Vec::new(), Vec::new(), false)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Coefficients reduced into the ring (only 𝔽_p changes anything).
    fn reduce(&self, v: i64) -> i64 {
        match self.ring {
            Ring::Fp(p) => v.rem_euclid(p as i64),
            _ => v,
        }
    }

    /// Checks gradings of every arrow and d∘d = 0.
    pub fn verify_d_squared(&self) -> Result<(), ChainError> {
        for (s, col) in self.d.iter().enumerate() {
            for &(t, c) in col {
                if self.reduce(c) == 0 {
                    continue;
                }
                let (gs, gt) = (self.gens[s], self.gens[t]);
                let q_ok = if self.filtered { gt.q >= gs.q } else { gt.q == gs.q };
                if gt.h != gs.h + 1 || !q_ok {
                    return Err(ChainError::BadDegree { from: s, to: t });
                }
            }
        }
        for (s, col) in self.d.iter().enumerate() {
            let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
            for &(m, c1) in col {
                for &(t, c2) in &self.d[m] {
                    *acc.entry(t).or_insert(0) += c1 as i128 * c2 as i128;
                }
            }
            for (t, v) in acc {
                let v = match self.ring {
                    Ring::Fp(p) => v.rem_euclid(p as i128),
                    _ => v,
                };
                if v != 0 {
                    return Err(ChainError::NotAComplex { from: s, to: t });
                }
            }
        }
        Ok(())
    }

    pub fn shift(&self, n: i64, m: i64) -> BigradedComplex {
        let gens = self.gens.iter().map(|g| Generator { h: g.h + n, q: g.q + m }).collect();
        BigradedComplex { gens, ..self.clone() }
    }

    /// Σ (−1)^h q^q over generators.
    pub fn graded_euler_char(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for g in &self.gens {
            p.add_term(g.q, if g.h.rem_euclid(2) == 0 { 1 } else { -1 });
        }
        p
    }

    /// The complex with every coefficient read in another ring.
    pub fn with_ring(&self, ring: Ring) -> BigradedComplex {
        let mut c = BigradedComplex { ring, ..self.clone() };
        if let Ring::Fp(p) = ring {
            for col in c.d.iter_mut() {
                for e in col.iter_mut() {
                    e.1 = e.1.rem_euclid(p as i64);
                }
                col.retain(|e| e.1 != 0);
            }
        }
        c
    }

    /// Keep only the arrows for which `keep(source, target)` holds.
    pub fn filter_arrows(&self, keep: impl Fn(usize, usize) -> bool) -> BigradedComplex {
        let d = self.d.iter().enumerate().map(|(s, col)| col.iter().copied().filter(|&(t, _)| keep(s, t)).collect()).collect();
        BigradedComplex { d, ..self.clone() }
    }

    /// Apply d to a chain given as (generator, coefficient) pairs.
    pub fn apply(&self, chain: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(g, c) in chain {
            for &(t, e) in &self.d[g] {
                *acc.entry(t).or_insert(0) += c * e;
            }
        }
        acc.into_iter().map(|(t, v)| (t, self.reduce(v))).filter(|e| e.1 != 0).collect()
    }
}
