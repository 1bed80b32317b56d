use std::collections::BTreeMap;

use super::complex::{BigradedComplex, Generator};
use super::ChainError;

/// A degree (0,0) map between complexes; `map[a]` is the image of generator `a` of the source.
#[derive(Clone, Debug)]
pub struct ChainMap<'a> {
    pub source: &'a BigradedComplex,
    pub target: &'a BigradedComplex,
    pub map: Vec<Vec<(usize, i64)>>,
}

/// Position of each generator inside the cone.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: BigradedComplex,
    /// cone index of source generator a
    pub from_source: Vec<usize>,
    /// cone index of target generator b
    pub from_target: Vec<usize>,
}

fn compose(first: &[Vec<(usize, i64)>], second: &[Vec<(usize, i64)>], a: usize) -> BTreeMap<usize, i64> {
    let mut acc = BTreeMap::new();
    for &(m, c1) in &first[a] {
        for &(t, c2) in &second[m] {
            *acc.entry(t).or_insert(0) += c1 * c2;
        }
    }
    acc.retain(|_, v| *v != 0);
    acc
}

impl ChainMap<'_> {
    pub fn verify(&self) -> Result<(), ChainError> {
        let bad = |msg: String| Err(ChainError::NotChainMap(msg));
        if self.map.len() != self.source.len() {
            return bad("one image per source generator".into());
        }
        for (a, img) in self.map.iter().enumerate() {
            for &(b, _) in img {
                if self.source.gens[a] != self.target.gens[b] {
                    return bad(format!("generator {a} maps to {b} of a different bidegree"));
                }
            }
            if compose(&self.source.d, &self.map, a) != compose(&self.map, &self.target.d, a) {
                return bad(format!("f d ≠ d f on generator {a}"));
            }
        }
        Ok(())
    }
}

/// C(f) in degree i is A^{i+1} ⊕ B^i with d(a, b) = (−d_A a, f(a) + d_B b).
pub fn mapping_cone(f: &ChainMap) -> Result<Cone, ChainError> {
    f.verify()?;
    let (a, b) = (f.source, f.target);
    if a.ring != b.ring {
        return Err(ChainError::NotChainMap("rings differ".into()));
    }
    let na = a.len();
    let mut gens: Vec<Generator> = a.gens.iter().map(|g| Generator { h: g.h - 1, q: g.q }).collect();
    gens.extend(b.gens.iter().copied());
    let mut d: Vec<Vec<(usize, i64)>> = Vec::with_capacity(gens.len());
    for (i, col) in a.d.iter().enumerate() {
        let mut c: Vec<(usize, i64)> = col.iter().map(|&(t, v)| (t, -v)).collect();
        c.extend(f.map[i].iter().map(|&(t, v)| (t + na, v)));
        d.push(c);
    }
    for col in &b.d {
        d.push(col.iter().map(|&(t, v)| (t + na, v)).collect());
    }
    let complex = BigradedComplex::new(a.ring, gens, d, a.filtered || b.filtered);
    Ok(Cone { complex, from_source: (0..na).collect(), from_target: (na..na + b.len()).collect() })
}
