use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::complex::BigradedComplex;
use super::scalar::{bigint_to_u64, Fp, Ring};
use super::sparse::{field_rank, smith_normal_form, SparseMatrix};
use super::ChainError;

/// One homology group: free rank plus invariant-factor torsion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GroupEntry {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl GroupEntry {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Homology indexed by (i, j) = (homological, quantum); missing keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedGroup {
    pub ring: Ring,
    pub groups: BTreeMap<(i64, i64), GroupEntry>,
}

impl BigradedGroup {
    pub fn get(&self, i: i64, j: i64) -> GroupEntry {
        self.groups.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn rank(&self, i: i64, j: i64) -> usize {
        self.get(i, j).rank
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.rank).sum()
    }

    /// Nonzero bigradings, ascending in (i, j).
    pub fn support(&self) -> Vec<(i64, i64)> {
        self.groups.keys().copied().collect()
    }

    pub fn shift(&self, n: i64, m: i64) -> BigradedGroup {
        BigradedGroup { ring: self.ring, groups: self.groups.iter().map(|(&(i, j), g)| ((i + n, j + m), g.clone())).collect() }
    }

    pub fn rank_by_h(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(i, _), g) in &self.groups {
            *out.entry(i).or_insert(0) += g.rank;
        }
        out.retain(|_, v| *v > 0);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("homology tables serialize")
    }
}

impl Serialize for BigradedGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Row<'a> {
            i: i64,
            j: i64,
            rank: usize,
            torsion: &'a [u64],
        }
        let mut rows: Vec<Row> = self.groups.iter().map(|(&(i, j), g)| Row { i, j, rank: g.rank, torsion: &g.torsion }).collect();
        rows.sort_by_key(|r| (r.j, r.i));
        let mut st = s.serialize_struct("BigradedGroup", 2)?;
        st.serialize_field("ring", &self.ring.to_string())?;
        st.serialize_field("groups", &rows)?;
        st.end()
    }
}

impl fmt::Display for BigradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rows: Vec<_> = self.groups.iter().collect();
        rows.sort_by_key(|(&(i, j), _)| (j, i));
        for (&(i, j), g) in rows {
            write!(f, "({i},{j}):")?;
            let r = match self.ring {
                Ring::Z => "Z".to_string(),
                Ring::Q => "Q".to_string(),
                Ring::Fp(p) => format!("F{p}"),
            };
            let mut parts = Vec::new();
            if g.rank > 0 {
                parts.push(if g.rank == 1 { r.clone() } else { format!("{r}^{}", g.rank) });
            }
            for t in &g.torsion {
                parts.push(format!("Z/{t}"));
            }
            writeln!(f, " {}", parts.join(" + "))?;
        }
        Ok(())
    }
}

/// Ranks and torsion of each differential block D_i: C^i → C^{i+1}.
struct BlockData {
    rank: usize,
    torsion: Vec<u64>,
}

fn block(ring: Ring, c: &BigradedComplex, src: &[usize], tgt_index: &BTreeMap<usize, usize>, ntgt: usize) -> BlockData {
    let triples: Vec<(usize, usize, i64)> =
        src.iter().enumerate().flat_map(|(col, &g)| c.d[g].iter().filter_map(move |&(t, v)| tgt_index.get(&t).map(|&row| (row, col, v)))).collect();
    match ring {
        Ring::Fp(p) => {
            let m = SparseMatrix::from_triples(ntgt, src.len(), triples.into_iter().map(|(r, c, v)| (r, c, Fp::new(v, p))));
            BlockData { rank: field_rank(&m), torsion: vec![] }
        }
        Ring::Z | Ring::Q => {
            let m = SparseMatrix::from_triples(ntgt, src.len(), triples);
            let snf = smith_normal_form(&m);
            let torsion = if ring == Ring::Z { snf.factors.iter().filter(|f| **f > BigInt::from(1)).map(bigint_to_u64).collect() } else { vec![] };
            BlockData { rank: snf.rank, torsion }
        }
    }
}

/// Homology of the subcomplex spanned by `gens` (closed under d, in the sense that arrows
/// leaving the set are ignored), keyed by homological degree.
pub(crate) fn slice_homology(c: &BigradedComplex, ring: Ring, gens: &[usize]) -> BTreeMap<i64, GroupEntry> {
    let mut by_h: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for &g in gens {
        by_h.entry(c.gens[g].h).or_default().push(g);
    }
    let mut blocks: BTreeMap<i64, BlockData> = BTreeMap::new();
    for (&h, src) in &by_h {
        if let Some(tgt) = by_h.get(&(h + 1)) {
            let idx: BTreeMap<usize, usize> = tgt.iter().enumerate().map(|(k, &g)| (g, k)).collect();
            blocks.insert(h, block(ring, c, src, &idx, tgt.len()));
        }
    }
    let mut out = BTreeMap::new();
    for (&h, src) in &by_h {
        let out_rank = blocks.get(&h).map_or(0, |b| b.rank);
        let (in_rank, torsion) = blocks.get(&(h - 1)).map_or((0, vec![]), |b| (b.rank, b.torsion.clone()));
        let e = GroupEntry { rank: src.len() - out_rank - in_rank, torsion };
        if !e.is_zero() {
            out.insert(h, e);
        }
    }
    out
}

/// Homology split by an arbitrary grading that the differential preserves.
pub(crate) fn homology_by<K: Ord + Clone + Send + Sync>(c: &BigradedComplex, key: impl Fn(usize) -> K) -> BTreeMap<(K, i64), GroupEntry> {
    let mut slices: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for g in 0..c.len() {
        slices.entry(key(g)).or_default().push(g);
    }
    let slices: Vec<(K, Vec<usize>)> = slices.into_iter().collect();
    let parts: Vec<(K, BTreeMap<i64, GroupEntry>)> = slices.par_iter().map(|(k, gens)| (k.clone(), slice_homology(c, c.ring, gens))).collect();
    parts.into_iter().flat_map(|(k, m)| m.into_iter().map(move |(h, e)| ((k.clone(), h), e))).collect()
}

/// Bigraded homology, computed one quantum grading at a time.
pub fn homology(c: &BigradedComplex) -> Result<BigradedGroup, ChainError> {
    c.verify_d_squared()?;
    if c.filtered {
        return Err(ChainError::NotGraded);
    }
    let by = homology_by(c, |g| c.gens[g].q);
    Ok(BigradedGroup { ring: c.ring, groups: by.into_iter().map(|((j, i), e)| ((i, j), e)).collect() })
}

/// Homology by homological degree only; the quantum grading is ignored (for filtered complexes).
pub fn ungraded_homology(c: &BigradedComplex) -> Result<BTreeMap<i64, GroupEntry>, ChainError> {
    c.verify_d_squared()?;
    let all: Vec<usize> = (0..c.len()).collect();
    Ok(slice_homology(c, c.ring, &all))
}
