use std::collections::HashMap;

use rayon::prelude::*;

use crate::chain::{BigradedComplex, Generator, Ring};
use crate::links::{resolve, ArcId, Bitstring, Diagram, EdgeKind, Resolution};

use super::spec::FrobeniusSpec;
use super::CubeError;

/// Where a distinguished generator lives: its vertex and its circle labels
/// (bit c set means circle c carries x₋ = X).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenInfo {
    pub vertex: Bitstring,
    pub labels: u64,
}

/// A cube-of-resolutions complex together with its generator metadata.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    pub complex: BigradedComplex,
    pub spec: FrobeniusSpec,
    pub info: Vec<GenInfo>,
    /// Annular grading, present when the diagram is marked.
    pub gr_k: Option<Vec<i64>>,
    pub resolutions: Vec<Resolution>,
    /// Based circle is forced to x₊ and q shifted by −1.
    pub reduced: Option<ArcId>,
    index: HashMap<(u64, u64), usize>,
}

impl CubeComplex {
    pub fn index_of(&self, vertex: Bitstring, labels: u64) -> Option<usize> {
        self.index.get(&(vertex.bits, labels)).copied()
    }

    pub fn resolution(&self, vertex: Bitstring) -> &Resolution {
        &self.resolutions[vertex.bits as usize]
    }
}

/// Target circle of each source circle under the edge; active circles map to `usize::MAX`.
fn passive_map(src: &Resolution, tgt: &Resolution, traced_src: usize, traced_tgt: usize, active: &[usize]) -> Vec<usize> {
    (0..src.num_circles)
        .map(|c| {
            if active.contains(&c) {
                usize::MAX
            } else if c < traced_src {
                tgt.circle_of(src.min_arc[c].expect("traced circle has an arc"))
            } else {
                traced_tgt + (c - traced_src)
            }
        })
        .collect()
}

fn traced(r: &Resolution) -> usize {
    r.min_arc.iter().filter(|m| m.is_some()).count()
}

/// Image of one generator along the edge u -> u+e_i, as (target labels, coefficient).
fn edge_image(spec: &FrobeniusSpec, kind: EdgeKind, map: &[usize], labels: u64) -> Vec<(u64, i64)> {
    let bit = |c: usize| ((labels >> c) & 1) as usize;
    let mut base = 0u64;
    for (c, &t) in map.iter().enumerate() {
        if t != usize::MAX && bit(c) == 1 {
            base |= 1 << t;
        }
    }
    let mut out = Vec::new();
    match kind {
        EdgeKind::Merge { a, b, into } => {
            let v = spec.merge[bit(a)][bit(b)];
            for (x, &c) in v.iter().enumerate() {
                if c != 0 {
                    out.push((base | ((x as u64) << into), c));
                }
            }
        }
        EdgeKind::Split { from, a, b } => {
            let t = spec.split[bit(from)];
            for (x, row) in t.iter().enumerate() {
                for (y, &c) in row.iter().enumerate() {
                    if c != 0 {
                        out.push((base | ((x as u64) << a) | ((y as u64) << b), c));
                    }
                }
            }
        }
    }
    out
}

/// Builds the cube complex with global shifts gr_h = |u| − n₋, gr_q = p + |u| + n₊ − 2n₋.
pub fn build_cube_complex(d: &Diagram, spec: &FrobeniusSpec, reduced: Option<ArcId>) -> Result<CubeComplex, CubeError> {
    let n = d.n();
    if n > 24 {
        return Err(CubeError::TooLarge(n));
    }
    if let Some(a) = reduced {
        let valid = if n == 0 { d.free_circles() > 0 && a == 0 } else { a >= 1 && a as usize <= d.num_arcs() };
        if !valid {
            return Err(CubeError::MissingBasepoint);
        }
        if spec.x_squared_has_unit() {
            return Err(CubeError::ReducedUnsupported);
        }
    }
    let nv = 1usize << n;
    let np = d.n_plus() as i64;
    let nm = d.n_minus() as i64;
    let resolutions: Vec<Resolution> = (0..nv as u64).into_par_iter().map(|b| resolve(d, &Bitstring::new(b, n))).collect();
    let based_circle = |r: &Resolution| reduced.map(|a| if n == 0 { 0 } else { r.circle_of(a) });

    let mut info = Vec::new();
    let mut gens = Vec::new();
    let mut gr_k = d.marking().map(|_| Vec::new());
    let mut index = HashMap::new();
    for (b, r) in resolutions.iter().enumerate() {
        let u = Bitstring::new(b as u64, n);
        let w = u.weight() as i64;
        let k = r.num_circles;
        let based = based_circle(r);
        for labels in 0..(1u64 << k) {
            if let Some(bc) = based {
                if (labels >> bc) & 1 == 1 {
                    continue;
                }
            }
            let xs = labels.count_ones() as i64;
            let p = k as i64 - 2 * xs;
            let shift = if reduced.is_some() { -1 } else { 0 };
            index.insert((u.bits, labels), gens.len());
            gens.push(Generator { h: w - nm, q: p + w + np - 2 * nm + shift });
            info.push(GenInfo { vertex: u, labels });
            if let Some(gk) = gr_k.as_mut() {
                let kk: i64 = (0..k).filter(|&c| r.is_essential(c)).map(|c| if (labels >> c) & 1 == 1 { -1 } else { 1 }).sum();
                gk.push(kk);
            }
        }
    }

    let diff: Vec<Vec<(usize, i64)>> = info
        .par_iter()
        .map(|g| {
            let u = g.vertex;
            let src = &resolutions[u.bits as usize];
            let mut col: HashMap<usize, i64> = HashMap::new();
            for i in (0..n).filter(|&i| !u.get(i)) {
                let v = u.with(i);
                let tgt = &resolutions[v.bits as usize];
                let e = crate::links::edge_between(d, src, tgt, &u, i);
                let active: Vec<usize> = match e.kind {
                    EdgeKind::Merge { a, b, .. } => vec![a, b],
                    EdgeKind::Split { from, .. } => vec![from],
                };
                let map = passive_map(src, tgt, traced(src), traced(tgt), &active);
                for (lab, c) in edge_image(spec, e.kind, &map, g.labels) {
                    if let Some(&t) = index.get(&(v.bits, lab)) {
                        *col.entry(t).or_insert(0) += e.sign * c;
                    }
                }
            }
            let mut col: Vec<(usize, i64)> = col.into_iter().map(|(t, c)| (t, reduce(spec.ring, c))).filter(|e| e.1 != 0).collect();
            col.sort_unstable();
            col
        })
        .collect();

    let complex = BigradedComplex::new(spec.ring, gens, diff, !spec.graded);
    Ok(CubeComplex { complex, spec: spec.clone(), info, gr_k, resolutions, reduced, index })
}

fn reduce(ring: Ring, v: i64) -> i64 {
    match ring {
        Ring::Fp(p) => v.rem_euclid(p as i64),
        _ => v,
    }
}
