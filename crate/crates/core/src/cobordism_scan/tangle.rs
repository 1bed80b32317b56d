use std::collections::BTreeMap;

use super::cobordism::{expand, reduce_component, DottedCobordism, Mask};

/// Crossingless matching of the boundary points of a complex, plus closed loops.
/// `matching[i]` is the partner of boundary point i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatTangle {
    pub matching: Vec<u16>,
    pub loops: u32,
}

impl FlatTangle {
    pub fn empty() -> FlatTangle {
        FlatTangle { matching: Vec::new(), loops: 0 }
    }

    pub fn boundary_len(&self) -> usize {
        self.matching.len()
    }
}

/// Cycle index of every point of S ∪ T, numbered by smallest point; returns (ids, count).
pub(crate) fn cycles(s: &[u16], t: &[u16]) -> (Vec<usize>, usize) {
    let n = s.len();
    let mut id = vec![usize::MAX; n];
    let mut k = 0;
    for start in 0..n {
        if id[start] != usize::MAX {
            continue;
        }
        let mut p = start;
        loop {
            id[p] = k;
            let q = s[p] as usize;
            id[q] = k;
            p = t[q] as usize;
            if p == start {
                break;
            }
        }
        k += 1;
    }
    (id, k)
}

/// Number of disks in any reduced term between two tangles.
pub(crate) fn num_cycles(s: &FlatTangle, t: &FlatTangle) -> usize {
    cycles(&s.matching, &t.matching).1 + s.loops as usize + t.loops as usize
}

struct Uf(Vec<usize>);

impl Uf {
    fn new(n: usize) -> Uf {
        Uf((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Shape of a surface obtained by gluing two reduced cobordisms: which disks of each input
/// end up in each connected piece, and which output cycles bound it.
#[derive(Clone, Debug)]
pub(crate) struct Gluing {
    comps: Vec<PieceShape>,
}

#[derive(Clone, Debug)]
struct PieceShape {
    first: Mask,
    second: Mask,
    out: Mask,
    genus: u32,
}

impl Gluing {
    /// `n1`, `n2` disks on the two sides; `joins` lists glued pairs with their Euler
    /// characteristic (1 for an interval, 0 for a circle); `out_rep[c]` is a disk on the
    /// combined list (second side offset by `n1`) lying on output cycle c.
    fn new(n1: usize, n2: usize, joins: &[(usize, usize, i64)], out_rep: &[usize]) -> Gluing {
        let mut uf = Uf::new(n1 + n2);
        for &(a, b, _) in joins {
            uf.union(a, b);
        }
        let mut comps: BTreeMap<usize, (Mask, Mask, Mask, i64, i64)> = BTreeMap::new();
        for p in 0..n1 + n2 {
            let r = uf.find(p);
            let e = comps.entry(r).or_insert((0, 0, 0, 0, 0));
            if p < n1 {
                e.0 |= 1 << p;
            } else {
                e.1 |= 1 << (p - n1);
            }
            e.3 += 1;
        }
        for &(a, _, chi) in joins {
            comps.get_mut(&uf.find(a)).unwrap().4 += chi;
        }
        assert!(out_rep.len() <= 64, "at most 64 boundary cycles");
        let mut b_count: BTreeMap<usize, i64> = BTreeMap::new();
        for (c, &p) in out_rep.iter().enumerate() {
            let r = uf.find(p);
            comps.get_mut(&r).unwrap().2 |= 1 << c;
            *b_count.entry(r).or_insert(0) += 1;
        }
        let comps = comps
            .into_iter()
            .map(|(r, (first, second, out, pieces, glued))| {
                let chi = pieces - glued;
                let b = b_count.get(&r).copied().unwrap_or(0);
                let g2 = 2 - chi - b;
                assert!(g2 >= 0 && g2 % 2 == 0, "glued surface has non-integral genus");
                PieceShape { first, second, out, genus: (g2 / 2) as u32 }
            })
            .collect();
        Gluing { comps }
    }

    pub(crate) fn apply(&self, f: &DottedCobordism, g: &DottedCobordism, sign: i64) -> DottedCobordism {
        let mut out = BTreeMap::new();
        let mut parts = Vec::with_capacity(self.comps.len());
        for &(m1, c1) in &f.terms {
            for &(m2, c2) in &g.terms {
                parts.clear();
                for p in &self.comps {
                    let dots = (m1 & p.first).count_ones() + (m2 & p.second).count_ones();
                    parts.push(reduce_component(p.out, p.genus, dots));
                }
                expand(sign * c1 * c2, &parts, &mut out);
            }
        }
        DottedCobordism::from_map(out)
    }
}

/// Vertical composition G∘F for F: S → T and G: T → U.
pub(crate) fn compose_gluing(s: &FlatTangle, t: &FlatTangle, u: &FlatTangle) -> Gluing {
    let (cst, nst) = cycles(&s.matching, &t.matching);
    let (ctu, ntu) = cycles(&t.matching, &u.matching);
    let (csu, nsu) = cycles(&s.matching, &u.matching);
    let (ls, lt, lu) = (s.loops as usize, t.loops as usize, u.loops as usize);
    let n1 = nst + ls + lt;
    let n2 = ntu + lt + lu;
    let mut joins = Vec::new();
    for p in 0..t.matching.len() {
        if (t.matching[p] as usize) > p {
            joins.push((cst[p], n1 + ctu[p], 1));
        }
    }
    for i in 0..lt {
        joins.push((nst + ls + i, n1 + ntu + i, 0));
    }
    let mut rep = vec![usize::MAX; nsu];
    for p in 0..s.matching.len() {
        if rep[csu[p]] == usize::MAX {
            rep[csu[p]] = cst[p];
        }
    }
    rep.extend((0..ls).map(|i| nst + i));
    rep.extend((0..lu).map(|i| n1 + ntu + lt + i));
    Gluing::new(n1, n2, &joins, &rep)
}

pub fn compose(f: &DottedCobordism, g: &DottedCobordism, s: &FlatTangle, t: &FlatTangle, u: &FlatTangle) -> DottedCobordism {
    compose_gluing(s, t, u).apply(f, g, 1)
}

/// Result of gluing two loop-free planar pieces side by side along identified endpoints.
#[derive(Clone, Debug)]
pub(crate) struct SideGlue {
    pub tangle: FlatTangle,
    /// Representative combined point on each loop, in loop order.
    pub loop_reps: Vec<usize>,
}

/// Glue a matching on combined points with identifications `ident` (an involution on the
/// identified points; unidentified points map to themselves).
pub(crate) fn glue_matching(m: &[usize], ident: &[usize], kept: &[usize]) -> SideGlue {
    let n = m.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &p) in kept.iter().enumerate() {
        pos[p] = i;
    }
    let mut seen = vec![false; n];
    let mut matching = vec![0u16; kept.len()];
    for &start in kept {
        if seen[start] {
            continue;
        }
        let mut p = start;
        loop {
            seen[p] = true;
            let q = m[p];
            seen[q] = true;
            if ident[q] == q {
                matching[pos[start]] = pos[q] as u16;
                matching[pos[q]] = pos[start] as u16;
                break;
            }
            p = ident[q];
        }
    }
    let mut loop_reps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        loop_reps.push(start);
        let mut p = start;
        loop {
            seen[p] = true;
            let q = m[p];
            seen[q] = true;
            p = ident[q];
            if p == start {
                break;
            }
        }
    }
    SideGlue { tangle: FlatTangle { matching, loops: loop_reps.len() as u32 }, loop_reps }
}

/// Horizontal gluing of F: S₁ → T₁ (points 0..k₁) with G: S₂ → T₂ (points k₁..k₁+k₂),
/// identifying points per `ident`. Returns the glued source, target and the gluing shape.
pub(crate) fn side_gluing(s1: &[u16], t1: &[u16], s2: &[u16], t2: &[u16], ident: &[usize]) -> (SideGlue, SideGlue, Gluing) {
    let k1 = s1.len();
    let combine = |a: &[u16], b: &[u16]| -> Vec<usize> { a.iter().map(|&x| x as usize).chain(b.iter().map(|&x| x as usize + k1)).collect() };
    let s = combine(s1, s2);
    let t = combine(t1, t2);
    let kept: Vec<usize> = (0..ident.len()).filter(|&p| ident[p] == p).collect();
    let src = glue_matching(&s, ident, &kept);
    let tgt = glue_matching(&t, ident, &kept);
    let (c1, n1) = cycles(s1, t1);
    let (c2, n2) = cycles(s2, t2);
    let piece = |p: usize| if p < k1 { c1[p] } else { n1 + c2[p - k1] };
    let mut joins = Vec::new();
    for p in 0..ident.len() {
        if ident[p] > p {
            joins.push((piece(p), piece(ident[p]), 1));
        }
    }
    let (cout, nout) = cycles(&src.tangle.matching, &tgt.tangle.matching);
    let mut rep = vec![usize::MAX; nout];
    for (i, &p) in kept.iter().enumerate() {
        if rep[cout[i]] == usize::MAX {
            rep[cout[i]] = piece(p);
        }
    }
    rep.extend(src.loop_reps.iter().map(|&p| piece(p)));
    rep.extend(tgt.loop_reps.iter().map(|&p| piece(p)));
    let g = Gluing::new(n1, n2, &joins, &rep);
    (src, tgt, g)
}
