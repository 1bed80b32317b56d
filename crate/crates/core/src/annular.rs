//! Annular Khovanov homology, the Plamenevskaya class and the κ invariant of a braid.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::chain::linalg::{sparse_from, ReducedBasis};
use crate::chain::{field_rank, homology_by, in_integer_span, BigradedComplex, ChainError, Field, Fp, GroupEntry, Rat, Ring, SparseMatrix};
use crate::frobenius_cube::{build_cube_complex, builtin_spec, CubeComplex, CubeError, Theory};
use crate::lee_s::{oriented_vertex, FilteredChain};
use crate::links::{braid_closure, BraidWord, Diagram};
use crate::spectral::{akh_filtered_complex, pages_tracking, SpectralError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnularError {
    #[error("the diagram has no annular marking")]
    NoMarking,
    #[error("Plamenevskaya chain is not a cycle")]
    NotACycle,
    #[error("the page-count method for κ needs field coefficients")]
    NotAField,
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrigradedGenerator {
    pub h: i64,
    pub q: i64,
    pub k: i64,
}

/// The Khovanov complex of a marked diagram together with the annular grading and the
/// gr_k-preserving part of its differential.
#[derive(Clone, Debug)]
pub struct AnnularComplex {
    pub cube: CubeComplex,
    pub gr_k: Vec<i64>,
    pub akh: BigradedComplex,
}

impl AnnularComplex {
    pub fn generator(&self, g: usize) -> TrigradedGenerator {
        let x = self.cube.complex.gens[g];
        TrigradedGenerator { h: x.h, q: x.q, k: self.gr_k[g] }
    }
}

pub fn akh_complex(d: &Diagram, ring: Ring) -> Result<AnnularComplex, AnnularError> {
    if d.marking().is_none() {
        return Err(AnnularError::NoMarking);
    }
    let cube = build_cube_complex(d, &builtin_spec(Theory::Kh).with_ring(ring), None)?;
    let gr_k = cube.gr_k.clone().expect("marked diagram");
    let akh = cube.complex.filter_arrows(|s, t| gr_k[s] == gr_k[t]);
    Ok(AnnularComplex { cube, gr_k, akh })
}

/// Homology indexed by (gr_h, gr_q, gr_k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigradedGroup {
    pub ring: Ring,
    pub groups: BTreeMap<(i64, i64, i64), GroupEntry>,
}

impl TrigradedGroup {
    pub fn rank(&self, i: i64, j: i64, k: i64) -> usize {
        self.groups.get(&(i, j, k)).map_or(0, |g| g.rank)
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|g| g.rank).sum()
    }

    pub fn rank_by_h(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(i, _, _), g) in &self.groups {
            *out.entry(i).or_insert(0) += g.rank;
        }
        out.retain(|_, n| *n > 0);
        out
    }

    /// Entries sorted by (j, i, k).
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry<'a> {
            i: i64,
            j: i64,
            k: i64,
            rank: usize,
            torsion: &'a [u64],
        }
        #[derive(Serialize)]
        struct Out<'a> {
            ring: String,
            groups: Vec<Entry<'a>>,
        }
        let mut groups: Vec<Entry> = self.groups.iter().map(|(&(i, j, k), g)| Entry { i, j, k, rank: g.rank, torsion: &g.torsion }).collect();
        groups.sort_by_key(|e| (e.j, e.i, e.k));
        serde_json::to_string(&Out { ring: self.ring.to_string(), groups }).expect("serializable")
    }
}

impl fmt::Display for TrigradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.groups.keys().copied().collect();
        keys.sort_by_key(|&(i, j, k)| (j, i, k));
        for (i, j, k) in keys {
            let g = &self.groups[&(i, j, k)];
            let r = self.ring.to_string();
            let mut parts = Vec::new();
            if g.rank > 0 {
                parts.push(if g.rank == 1 { r } else { format!("{r}^{}", g.rank) });
            }
            parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
            writeln!(f, "({i},{j},{k}): {}", parts.join(" + "))?;
        }
        Ok(())
    }
}

pub fn akh_homology(d: &Diagram, ring: Ring) -> Result<TrigradedGroup, AnnularError> {
    let a = akh_complex(d, ring)?;
    a.akh.verify_d_squared()?;
    let by = homology_by(&a.akh, |g| (a.akh.gens[g].q, a.gr_k[g]));
    Ok(TrigradedGroup { ring, groups: by.into_iter().map(|(((j, k), i), e)| ((i, j, k), e)).collect() })
}

/// sl = −b + writhe.
pub fn self_linking(b: &BraidWord) -> i64 {
    b.writhe() - b.strands as i64
}

/// ψ inside the Khovanov complex of the braid closure.
#[derive(Clone, Debug)]
pub struct PlamenevskayaCycle {
    pub complex: AnnularComplex,
    pub chain: FilteredChain,
    pub generator: usize,
    pub strands: usize,
}

impl PlamenevskayaCycle {
    pub fn gr_q(&self) -> i64 {
        self.complex.cube.complex.gens[self.generator].q
    }

    pub fn gr_k(&self) -> i64 {
        self.complex.gr_k[self.generator]
    }
}

/// The all-X labelling of the oriented resolution of the closure of `b`.
pub fn plamenevskaya_cycle(b: &BraidWord, ring: Ring) -> Result<PlamenevskayaCycle, AnnularError> {
    let d = braid_closure(b);
    let complex = akh_complex(&d, ring)?;
    let u = oriented_vertex(&d, &vec![false; d.num_components()]);
    let k = complex.cube.resolution(u).num_circles;
    let generator = complex.cube.index_of(u, (1u64 << k) - 1).expect("oriented resolution");
    if !complex.cube.complex.d[generator].is_empty() {
        return Err(AnnularError::NotACycle);
    }
    let chain = FilteredChain { terms: [(generator, 1)].into_iter().collect() };
    Ok(PlamenevskayaCycle { complex, chain, generator, strands: b.strands })
}

/// Columns of d from `sources` restricted to rows `targets`, re-indexed.
fn block(c: &BigradedComplex, sources: &[usize], targets: &[usize]) -> (BTreeMap<usize, usize>, Vec<Vec<(usize, i64)>>) {
    let row: BTreeMap<usize, usize> = targets.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    let cols = sources.iter().map(|&s| c.d[s].iter().filter_map(|&(t, v)| row.get(&t).map(|&r| (r, v))).collect()).collect();
    (row, cols)
}

fn in_span(ring: Ring, nrows: usize, cols: &[Vec<(usize, i64)>], v: &[(usize, i64)]) -> bool {
    fn field<F: Field>(ctx: F::Ctx, cols: &[Vec<(usize, i64)>], v: &[(usize, i64)]) -> bool {
        let mut b = ReducedBasis::<F>::new();
        for c in cols {
            b.insert(sparse_from(ctx, c));
        }
        b.contains(sparse_from(ctx, v))
    }
    match ring {
        Ring::Z => in_integer_span(nrows, cols, v),
        Ring::Q => field::<Rat>((), cols, v),
        Ring::Fp(p) => field::<Fp>(p, cols, v),
    }
}

/// Generators of degree h in the q-slice of ψ, optionally capped at gr_k ≤ level.
fn slice_gens(p: &PlamenevskayaCycle, h: i64, level: Option<i64>) -> Vec<usize> {
    let c = &p.complex.cube.complex;
    let q = p.gr_q();
    (0..c.len()).filter(|&g| c.gens[g].h == h && c.gens[g].q == q && level.is_none_or(|l| p.complex.gr_k[g] <= l)).collect()
}

/// Is the class of ψ nonzero in Kh of the closure?
pub fn psi_nonzero(b: &BraidWord, ring: Ring) -> Result<bool, AnnularError> {
    let p = plamenevskaya_cycle(b, ring)?;
    let src = slice_gens(&p, -1, None);
    let tgt = slice_gens(&p, 0, None);
    let (row, cols) = block(&p.complex.cube.complex, &src, &tgt);
    Ok(!in_span(ring, tgt.len(), &cols, &[(row[&p.generator], 1)]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kappa {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kappa::Finite(v) => write!(f, "{v}"),
            Kappa::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaMethod {
    /// homology of each filtered piece F_i, level by level
    Direct,
    /// the page of the gr_k spectral sequence on which ψ is hit
    PageCount,
}

/// κ(β) = b + min{ i : [ψ] = 0 in H(F_i) }, F_i spanned by generators with gr_k ≤ i.
pub fn kappa(b: &BraidWord, ring: Ring, method: KappaMethod) -> Result<Kappa, AnnularError> {
    match method {
        KappaMethod::Direct => kappa_direct(b, ring),
        KappaMethod::PageCount => kappa_pages(b, ring),
    }
}

fn kappa_direct(b: &BraidWord, ring: Ring) -> Result<Kappa, AnnularError> {
    let p = plamenevskaya_cycle(b, ring)?;
    let c = &p.complex.cube.complex;
    let bottom = p.gr_k();
    let top = slice_gens(&p, -1, None).iter().map(|&g| p.complex.gr_k[g]).max();
    let Some(top) = top else { return Ok(Kappa::Infinite) };
    let mut level = bottom;
    while level <= top {
        let src = slice_gens(&p, -1, Some(level));
        let tgt = slice_gens(&p, 0, Some(level));
        let (row, cols) = block(c, &src, &tgt);
        let psi = [(row[&p.generator], 1)];
        let hit = match ring {
            Ring::Fp(pr) => {
                let rank = |extra: bool| {
                    let mut t: Vec<(usize, usize, Fp)> = cols.iter().enumerate().flat_map(|(j, col)| col.iter().map(move |&(r, v)| (r, j, Fp::new(v, pr)))).collect();
                    if extra {
                        t.push((psi[0].0, cols.len(), Fp::new(1, pr)));
                    }
                    field_rank(&SparseMatrix::from_triples(tgt.len(), cols.len() + extra as usize, t))
                };
                rank(false) == rank(true)
            }
            _ => in_span(ring, tgt.len(), &cols, &psi),
        };
        if hit {
            return Ok(Kappa::Finite(p.strands as i64 + level));
        }
        level += 2;
    }
    Ok(Kappa::Infinite)
}

fn kappa_pages(b: &BraidWord, ring: Ring) -> Result<Kappa, AnnularError> {
    if !ring.is_field() {
        return Err(AnnularError::NotAField);
    }
    let p = plamenevskaya_cycle(b, ring)?;
    let d = braid_closure(b);
    let fc = akh_filtered_complex(&d, ring).map_err(|e| match e {
        SpectralError::Annular(a) => a,
        SpectralError::Chain(c) => AnnularError::Chain(c),
        other => unreachable!("{other}"),
    })?;
    let (_, deaths) = pages_tracking(&fc, &[p.chain.as_pairs()]);
    // ψ sits at the bottom level −b, so death on page r means it is hit from level −b + 2r
    Ok(match deaths[0] {
        Some(r) => Kappa::Finite(2 * r as i64),
        None => Kappa::Infinite,
    })
}
