//! Spectral sequences of filtered complexes with a distinguished filtered basis, computed by
//! cancelling arrows in order of filtration jump.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::annular::{akh_complex, AnnularError};
use crate::chain::{ChainError, Field, Fp, Rat, Ring};
use crate::frobenius_cube::{build_cube_complex, builtin_spec, CubeError, Theory};
use crate::links::Diagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("spectral sequences need field coefficients, got {0}")]
    NotAField(Ring),
    #[error("arrow {from} -> {to} does not respect the filtration")]
    BadFiltration { from: usize, to: usize },
    #[error("arrow {from} -> {to} does not raise the homological degree by one")]
    BadDegree { from: usize, to: usize },
    #[error("d² ≠ 0 at generator {0}")]
    NotAComplex(usize),
    #[error("theory {0:?} has no localized spectral sequence")]
    Unsupported(Theory),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Annular(#[from] AnnularError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FilteredGen {
    pub h: i64,
    pub f: i64,
}

/// A complex over a field whose differential never lowers the filtration level (or never
/// raises it when `descending`), in units of `step`.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub field: Ring,
    pub gens: Vec<FilteredGen>,
    pub d: Vec<Vec<(usize, i64)>>,
    pub step: i64,
    pub descending: bool,
    /// An extra grading preserved by d; slices are processed independently.
    pub slice: Option<Vec<i64>>,
}

impl FilteredComplex {
    pub fn new(field: Ring, gens: Vec<FilteredGen>, d: Vec<Vec<(usize, i64)>>, step: i64, descending: bool) -> Result<FilteredComplex, SpectralError> {
        if !field.is_field() {
            return Err(SpectralError::NotAField(field));
        }
        assert!(step > 0);
        assert_eq!(gens.len(), d.len());
        let fc = FilteredComplex { field, gens, d, step, descending, slice: None };
        fc.validate()?;
        Ok(fc)
    }

    pub fn with_slices(mut self, key: Vec<i64>) -> FilteredComplex {
        assert_eq!(key.len(), self.gens.len());
        self.slice = Some(key);
        self
    }

    /// Filtration jump of s → t in units of `step`.
    pub fn jump(&self, s: usize, t: usize) -> i64 {
        let dir = if self.descending { -1 } else { 1 };
        (self.gens[t].f - self.gens[s].f) * dir / self.step
    }

    fn validate(&self) -> Result<(), SpectralError> {
        let dir = if self.descending { -1 } else { 1 };
        for (s, col) in self.d.iter().enumerate() {
            for &(t, _) in col {
                if self.gens[t].h != self.gens[s].h + 1 {
                    return Err(SpectralError::BadDegree { from: s, to: t });
                }
                let gap = (self.gens[t].f - self.gens[s].f) * dir;
                if gap < 0 || gap % self.step != 0 {
                    return Err(SpectralError::BadFiltration { from: s, to: t });
                }
            }
            let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
            for &(m, a) in col {
                for &(t, b) in &self.d[m] {
                    *acc.entry(t).or_insert(0) += a as i128 * b as i128;
                }
            }
            let p = match self.field {
                Ring::Fp(p) => p as i128,
                _ => 0,
            };
            if acc.values().any(|&v| if p > 0 { v.rem_euclid(p) != 0 } else { v != 0 }) {
                return Err(SpectralError::NotAComplex(s));
            }
        }
        Ok(())
    }
}

/// One nonzero entry of a page differential, between surviving generators of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageArrow {
    pub from: usize,
    pub to: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    pub r: usize,
    /// dims of E^r by (gr_h, f)
    pub dims: BTreeMap<(i64, i64), usize>,
    /// d_r in the surviving basis (empty when d_r vanishes)
    pub differential: Vec<PageArrow>,
    pub rank: usize,
    /// no differential of this or any later page is nonzero
    pub collapsed: bool,
}

impl Page {
    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn dims_by_h(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(h, _), &n) in &self.dims {
            *out.entry(h).or_insert(0) += n;
        }
        out.retain(|_, n| *n > 0);
        out
    }
}

/// Result of running a slice: pages and, for each tracked chain, the page whose differential
/// kills it (`None` if it survives to E_∞).
struct SliceRun {
    pages: Vec<Page>,
    deaths: Vec<Option<usize>>,
}

struct Eliminator<'a, F: Field> {
    fc: &'a FilteredComplex,
    alive: BTreeSet<usize>,
    out: BTreeMap<usize, BTreeMap<usize, F>>,
    inc: BTreeMap<usize, BTreeSet<usize>>,
    tracked: Vec<BTreeMap<usize, F>>,
}

impl<'a, F: Field> Eliminator<'a, F> {
    fn new(fc: &'a FilteredComplex, ctx: F::Ctx, gens: &[usize], tracked: &[Vec<(usize, i64)>]) -> Self {
        let alive: BTreeSet<usize> = gens.iter().copied().collect();
        let mut out = BTreeMap::new();
        let mut inc: BTreeMap<usize, BTreeSet<usize>> = gens.iter().map(|&g| (g, BTreeSet::new())).collect();
        for &s in gens {
            let mut col: BTreeMap<usize, F> = BTreeMap::new();
            for &(t, v) in &fc.d[s] {
                if !alive.contains(&t) {
                    continue;
                }
                let e = col.entry(t).or_insert_with(F::zero);
                *e = e.checked_add(&F::from_i64(ctx, v)).expect("field");
            }
            col.retain(|_, v| !v.is_zero());
            for &t in col.keys() {
                inc.get_mut(&t).expect("target in slice").insert(s);
            }
            out.insert(s, col);
        }
        let tracked = tracked
            .iter()
            .map(|v| {
                let mut m: BTreeMap<usize, F> = BTreeMap::new();
                for &(g, c) in v.iter().filter(|(g, _)| alive.contains(g)) {
                    let e = m.entry(g).or_insert_with(F::zero);
                    *e = e.checked_add(&F::from_i64(ctx, c)).expect("field");
                }
                m.retain(|_, v| !v.is_zero());
                m
            })
            .collect();
        Eliminator { fc, alive, out, inc, tracked }
    }

    fn arrows_of_jump(&self, r: i64) -> Vec<(usize, usize)> {
        self.out.iter().flat_map(|(&s, col)| col.keys().filter(move |&&t| self.fc.jump(s, t) == r).map(move |&t| (s, t))).collect()
    }

    fn set(&mut self, s: usize, t: usize, v: F) {
        if v.is_zero() {
            self.out.get_mut(&s).expect("alive").remove(&t);
            self.inc.get_mut(&t).expect("alive").remove(&s);
        } else {
            self.out.get_mut(&s).expect("alive").insert(t, v);
            self.inc.get_mut(&t).expect("alive").insert(s);
        }
    }

    /// Cancel x → y, adding the zigzag w → y ← x → z to every w → z.
    fn cancel(&mut self, x: usize, y: usize) {
        let c = self.out[&x][&y].clone();
        let cinv = c.unit_inverse();
        let x_out: Vec<(usize, F)> = self.out[&x].iter().filter(|(&t, _)| t != y).map(|(&t, v)| (t, v.clone())).collect();
        let into_y: Vec<usize> = self.inc[&y].iter().copied().filter(|&w| w != x).collect();
        for w in into_y {
            let m = self.out[&w][&y].checked_mul(&cinv).expect("field");
            for (z, v) in &x_out {
                let old = self.out[&w].get(z).cloned().unwrap_or_else(F::zero);
                let new = old.checked_sub(&m.checked_mul(v).expect("field")).expect("field");
                self.set(w, *z, new);
            }
        }
        for k in 0..self.tracked.len() {
            if let Some(vy) = self.tracked[k].get(&y).cloned() {
                let m = vy.checked_mul(&cinv).expect("field");
                let t = &mut self.tracked[k];
                for (z, v) in x_out.iter().map(|(z, v)| (*z, v.clone())).chain(std::iter::once((y, c.clone()))) {
                    let e = t.entry(z).or_insert_with(F::zero);
                    *e = e.checked_sub(&m.checked_mul(&v).expect("field")).expect("field");
                    if e.is_zero() {
                        t.remove(&z);
                    }
                }
            }
            self.tracked[k].remove(&x);
        }
        for g in [x, y] {
            let targets: Vec<usize> = self.out.remove(&g).map(|m| m.into_keys().collect()).unwrap_or_default();
            for t in targets {
                if let Some(s) = self.inc.get_mut(&t) {
                    s.remove(&g);
                }
            }
            let sources: Vec<usize> = self.inc.remove(&g).map(|s| s.into_iter().collect()).unwrap_or_default();
            for s in sources {
                if let Some(m) = self.out.get_mut(&s) {
                    m.remove(&g);
                }
            }
            self.alive.remove(&g);
        }
    }

    fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        let mut dims = BTreeMap::new();
        for &g in &self.alive {
            let fg = self.fc.gens[g];
            *dims.entry((fg.h, fg.f)).or_insert(0) += 1;
        }
        dims
    }

    fn run(mut self) -> SliceRun {
        let mut pages = Vec::new();
        let mut deaths: Vec<Option<usize>> = vec![None; self.tracked.len()];
        for (k, t) in self.tracked.iter().enumerate() {
            if t.is_empty() {
                deaths[k] = Some(0);
            }
        }
        let mut r = 0i64;
        loop {
            let dims = self.dims();
            let remaining = self.out.values().any(|c| !c.is_empty());
            let differential: Vec<PageArrow> = self
                .arrows_of_jump(r)
                .into_iter()
                .map(|(s, t)| PageArrow { from: s, to: t, coeff: self.out[&s][&t].to_string() })
                .collect();
            let mut rank = 0;
            // row-reduce d_r; new jump-r arrows may appear along the way
            loop {
                let Some((x, y)) = self.arrows_of_jump(r).into_iter().next() else { break };
                self.cancel(x, y);
                rank += 1;
            }
            for (k, t) in self.tracked.iter().enumerate() {
                if deaths[k].is_none() && t.is_empty() {
                    deaths[k] = Some(r as usize);
                }
            }
            pages.push(Page { r: r as usize, dims, differential, rank, collapsed: !remaining });
            if !remaining {
                break;
            }
            r += 1;
        }
        SliceRun { pages, deaths }
    }
}

fn run_generic<F: Field>(fc: &FilteredComplex, ctx: F::Ctx, tracked: &[Vec<(usize, i64)>]) -> (Vec<Page>, Vec<Option<usize>>) {
    let mut slices: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for g in 0..fc.gens.len() {
        slices.entry(fc.slice.as_ref().map_or(0, |k| k[g])).or_default().push(g);
    }
    let runs: Vec<SliceRun> = slices.into_par_iter().map(|(_, gens)| Eliminator::<F>::new(fc, ctx, &gens, tracked).run()).collect();
    let last = runs.iter().map(|s| s.pages.len()).max().unwrap_or(1);
    let mut pages = Vec::with_capacity(last);
    for r in 0..last {
        let mut dims: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        let mut differential = Vec::new();
        let mut rank = 0;
        let mut collapsed = true;
        for s in &runs {
            let p = &s.pages[r.min(s.pages.len() - 1)];
            for (&k, &n) in &p.dims {
                *dims.entry(k).or_insert(0) += n;
            }
            if p.r == r {
                differential.extend(p.differential.iter().cloned());
                rank += p.rank;
                collapsed &= p.collapsed;
            }
        }
        differential.sort_by_key(|a| (a.from, a.to));
        dims.retain(|_, n| *n > 0);
        pages.push(Page { r, dims, differential, rank, collapsed });
    }
    if pages.is_empty() {
        pages.push(Page { r: 0, dims: BTreeMap::new(), differential: vec![], rank: 0, collapsed: true });
    }
    // a chain dies in the slice holding it; deaths across slices combine by max
    let deaths = (0..tracked.len())
        .map(|k| {
            let ds: Vec<Option<usize>> = runs.iter().map(|s| s.deaths[k]).collect();
            if ds.iter().any(|d| d.is_none()) {
                None
            } else {
                ds.into_iter().flatten().max()
            }
        })
        .collect();
    (pages, deaths)
}

/// E⁰, E¹, … up to and including the first page with no differentials left.
pub fn pages(fc: &FilteredComplex) -> Vec<Page> {
    pages_tracking(fc, &[]).0
}

/// As [`pages`], also reporting for each given cycle the page index r at which it becomes a
/// boundary (it is hit by d_r), or `None` if its class survives.
pub fn pages_tracking(fc: &FilteredComplex, tracked: &[Vec<(usize, i64)>]) -> (Vec<Page>, Vec<Option<usize>>) {
    match fc.field {
        Ring::Q => run_generic::<Rat>(fc, (), tracked),
        Ring::Fp(p) => run_generic::<Fp>(fc, p, tracked),
        Ring::Z => unreachable!("constructor rejects ℤ"),
    }
}

/// Kh ⇒ Lee (over ℚ) or Kh ⇒ Bar-Natan (over 𝔽₂), filtered by gr_q.
pub fn kh_to_localized_ss(d: &Diagram, theory: Theory) -> Result<Vec<Page>, SpectralError> {
    if theory == Theory::Kh {
        return Err(SpectralError::Unsupported(theory));
    }
    let spec = builtin_spec(theory);
    let c = build_cube_complex(d, &spec, None)?;
    let gens = c.complex.gens.iter().map(|g| FilteredGen { h: g.h, f: g.q }).collect();
    let fc = FilteredComplex::new(spec.ring, gens, c.complex.d.clone(), spec.filtered_jump, false)?;
    Ok(pages(&fc))
}

/// Filtered Khovanov complex of an annular link (filtration gr_k, descending, sliced by gr_q).
pub fn akh_filtered_complex(d: &Diagram, field: Ring) -> Result<FilteredComplex, SpectralError> {
    let a = akh_complex(d, field)?;
    let kh = &a.cube.complex;
    let gens = kh.gens.iter().zip(&a.gr_k).map(|(g, &k)| FilteredGen { h: g.h, f: k }).collect();
    let q = kh.gens.iter().map(|g| g.q).collect();
    Ok(FilteredComplex::new(field, gens, kh.d.clone(), 2, true)?.with_slices(q))
}

/// AKh ⇒ Kh for a marked diagram.
pub fn akh_to_kh_ss(d: &Diagram, field: Ring) -> Result<Vec<Page>, SpectralError> {
    Ok(pages(&akh_filtered_complex(d, field)?))
}
