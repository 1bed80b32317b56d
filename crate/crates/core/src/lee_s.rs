//! Lee homology, canonical generators and the Rasmussen s-invariant.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::chain::linalg::{sparse_from, ReducedBasis};
use crate::chain::{ungraded_homology, ChainError, Rat};
use crate::frobenius_cube::{build_cube_complex, builtin_spec, CubeComplex, CubeError, Theory};
use crate::links::{resolve, Bitstring, Diagram, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeeError {
    #[error("the diagram has {0} components; a knot is required")]
    NotAKnot(usize),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("orientation vector has length {got}, expected {expected}")]
    BadOrientation { got: usize, expected: usize },
    #[error("filtration levels violate s_max = s_min + 2 (s_min = {s_min}, s_max = {s_max})")]
    LevelMismatch { s_min: i64, s_max: i64 },
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// An integer combination of distinguished generators of a cube complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FilteredChain {
    pub terms: BTreeMap<usize, i64>,
}

impl FilteredChain {
    /// min gr_q over the support; `None` for the zero chain.
    pub fn grading(&self, c: &CubeComplex) -> Option<i64> {
        self.terms.keys().map(|&g| c.complex.gens[g].q).min()
    }

    pub fn add(&self, o: &FilteredChain, k: i64) -> FilteredChain {
        let mut terms = self.terms.clone();
        for (&g, &c) in &o.terms {
            *terms.entry(g).or_insert(0) += k * c;
        }
        terms.retain(|_, c| *c != 0);
        FilteredChain { terms }
    }

    pub fn as_pairs(&self) -> Vec<(usize, i64)> {
        self.terms.iter().map(|(&g, &c)| (g, c)).collect()
    }
}

/// The Lee complex over ℚ (filtered by gr_q).
pub fn lee_complex(d: &Diagram) -> Result<CubeComplex, LeeError> {
    Ok(build_cube_complex(d, &builtin_spec(Theory::Lee), None)?)
}

/// Oriented-resolution vertex for the orientation that reverses the selected components.
pub fn oriented_vertex(d: &Diagram, reverse: &[bool]) -> Bitstring {
    let comp = d.arc_component();
    let rev = |a: u32| reverse.get(comp[a as usize - 1]).copied().unwrap_or(false);
    let bits: Vec<bool> = d
        .crossings()
        .iter()
        .map(|x| {
            let flip = rev(x.arcs[0]) != rev(x.arcs[1]);
            let sign = if flip { x.sign.flip() } else { x.sign };
            sign == Sign::Neg
        })
        .collect();
    Bitstring::from_bools(&bits)
}

/// 𝔰_o: at the oriented resolution of `o` (given by which components to reverse), label a
/// circle a = 1 + X when the region to its left is shaded and b = 1 − X otherwise, then
/// expand into distinguished generators of `c`.
pub fn canonical_generator(d: &Diagram, c: &CubeComplex, reverse: &[bool]) -> Result<FilteredChain, LeeError> {
    let ncomp = d.num_components();
    if reverse.len() != ncomp {
        return Err(LeeError::BadOrientation { got: reverse.len(), expected: ncomp });
    }
    let u = oriented_vertex(d, reverse);
    let r = resolve(d, &u);
    let comp = d.arc_component();
    let mut is_a = Vec::with_capacity(r.num_circles);
    if d.n() > 0 {
        let faces = d.faces();
        let shade = d.checkerboard();
        for circ in 0..r.num_circles {
            match r.min_arc[circ] {
                Some(a) => {
                    let i = a as usize - 1;
                    let left = if reverse[comp[i]] { faces.right[i] } else { faces.left[i] };
                    is_a.push(shade[left]);
                }
                None => is_a.push(!reverse[ncomp - d.free_circles() + (circ - (r.num_circles - d.free_circles()))]),
            }
        }
    } else {
        is_a.extend((0..r.num_circles).map(|k| !reverse[k]));
    }
    let k = r.num_circles;
    let mut terms = BTreeMap::new();
    for labels in 0..(1u64 << k) {
        let sign: i64 = (0..k).filter(|&i| (labels >> i) & 1 == 1 && !is_a[i]).count() as i64 % 2;
        let g = c.index_of(u, labels).expect("generator at the oriented resolution");
        terms.insert(g, if sign == 0 { 1 } else { -1 });
    }
    Ok(FilteredChain { terms })
}

pub fn lee_homology(d: &Diagram) -> Result<BTreeMap<i64, usize>, LeeError> {
    let c = lee_complex(d)?;
    Ok(ungraded_homology(&c.complex)?.into_iter().map(|(h, g)| (h, g.rank)).filter(|e| e.1 > 0).collect())
}

/// Images of degree h−1 reduced over ℚ, with degree-h generators ordered by ascending gr_q.
struct LevelSolver {
    order: Vec<usize>,
    position: BTreeMap<usize, usize>,
    basis: ReducedBasis<Rat>,
}

impl LevelSolver {
    fn new(c: &CubeComplex, h: i64) -> LevelSolver {
        let gens = &c.complex.gens;
        let mut order: Vec<usize> = (0..gens.len()).filter(|&g| gens[g].h == h).collect();
        order.sort_by_key(|&g| (gens[g].q, g));
        let position: BTreeMap<usize, usize> = order.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let mut basis = ReducedBasis::new();
        for g in (0..gens.len()).filter(|&g| gens[g].h == h - 1) {
            let img: Vec<(usize, i64)> = c.complex.d[g].iter().map(|&(t, v)| (position[&t], v)).collect();
            basis.insert(sparse_from::<Rat>((), &img));
        }
        LevelSolver { order, position, basis }
    }

    /// max over the coset z + im d of the minimal gr_q; `None` (= +∞) if z is a boundary.
    fn level(&self, c: &CubeComplex, z: &FilteredChain) -> Option<i64> {
        let v: Vec<(usize, i64)> = z.terms.iter().map(|(&g, &k)| (self.position[&g], k)).collect();
        let r = self.basis.reduce(sparse_from::<Rat>((), &v));
        r.keys().next().map(|&k| c.complex.gens[self.order[k]].q)
    }
}

/// gr_q of the homology class of a cycle z of the Lee complex; `None` stands for +∞.
pub fn class_filtration_level(c: &CubeComplex, z: &FilteredChain) -> Result<Option<i64>, LeeError> {
    if !c.complex.apply(&z.as_pairs()).is_empty() {
        return Err(LeeError::NotACycle);
    }
    let Some(&g) = z.terms.keys().next() else { return Ok(None) };
    let h = c.complex.gens[g].h;
    if z.terms.keys().any(|&x| c.complex.gens[x].h != h) {
        return Err(LeeError::NotACycle);
    }
    Ok(LevelSolver::new(c, h).level(c, z))
}

/// Filtration levels computed for the s-invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SLevels {
    pub s_min: i64,
    pub s_max: i64,
    pub s: i64,
}

pub fn s_levels(d: &Diagram) -> Result<SLevels, LeeError> {
    let ncomp = d.num_components();
    if ncomp != 1 {
        return Err(LeeError::NotAKnot(ncomp));
    }
    let c = lee_complex(d)?;
    let so = canonical_generator(d, &c, &[false])?;
    let sob = canonical_generator(d, &c, &[true])?;
    for z in [&so, &sob] {
        if !c.complex.apply(&z.as_pairs()).is_empty() {
            return Err(LeeError::NotACycle);
        }
    }
    let solver = LevelSolver::new(&c, 0);
    let (l0, (lp, lm)) = rayon::join(|| solver.level(&c, &so), || rayon::join(|| solver.level(&c, &so.add(&sob, 1)), || solver.level(&c, &so.add(&sob, -1))));
    let s_min = l0.expect("canonical generators are not boundaries");
    let s_max = lp.into_iter().chain(lm).max().expect("canonical generators are not boundaries");
    if s_max != s_min + 2 {
        return Err(LeeError::LevelMismatch { s_min, s_max });
    }
    Ok(SLevels { s_min, s_max, s: s_min + 1 })
}

pub fn s_invariant(d: &Diagram) -> Result<i64, LeeError> {
    Ok(s_levels(d)?.s)
}

/// ⌈|s|/2⌉ ≤ g₄.
pub fn slice_genus_lower_bound(d: &Diagram) -> Result<i64, LeeError> {
    Ok((s_invariant(d)?.abs() + 1) / 2)
}
