//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use khovanov::links::{braid_closure, BraidWord, Diagram, Sign};
use proptest::prelude::*;

/// Random braid words on 1..=max_strands strands with at most max_len letters.
pub fn braid_words(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (1..=max_strands).prop_flat_map(move |b| {
        let letter = if b == 1 { Just(0i32).boxed() } else { (1..b as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]).boxed() };
        let len = if b == 1 { 0..=0 } else { 0..=max_len };
        prop::collection::vec(letter, len).prop_map(move |w| BraidWord::from_ints(b, &w).expect("in range"))
    })
}

pub fn closure(ints: &[i32], strands: usize) -> Diagram {
    braid_closure(&BraidWord::from_ints(strands, ints).expect("valid braid"))
}

struct Uf(Vec<usize>);

impl Uf {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Circle label of every arc (index = arc id, slot 0 unused) and the circle count, free
/// circles included.
pub fn smoothing(d: &Diagram, bits: u64) -> (Vec<usize>, usize) {
    let na = d.num_arcs();
    let mut uf = Uf((0..=na).collect());
    for (c, x) in d.crossings().iter().enumerate() {
        let a = x.arcs.map(|v| v as usize);
        if (bits >> c) & 1 == 0 {
            uf.union(a[0], a[1]);
            uf.union(a[2], a[3]);
        } else {
            uf.union(a[0], a[3]);
            uf.union(a[1], a[2]);
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut label = vec![usize::MAX; na + 1];
    for a in 1..=na {
        let r = uf.find(a);
        let k = ids.len();
        label[a] = *ids.entry(r).or_insert(k);
    }
    let k = ids.len();
    (label, k + d.free_circles())
}

/// Σ_u (−q)^|u| (q + q⁻¹)^|D_u| as exponent → coefficient.
pub fn bracket_oracle(d: &Diagram) -> BTreeMap<i64, i64> {
    let n = d.n();
    let mut out: BTreeMap<i64, i64> = BTreeMap::new();
    for bits in 0..(1u64 << n) {
        let (_, k) = smoothing(d, bits);
        let w = bits.count_ones() as i64;
        let sign = if w % 2 == 0 { 1 } else { -1 };
        // (q + q⁻¹)^k = Σ_j C(k, j) q^{k − 2j}
        let mut binom = 1i64;
        for j in 0..=k as i64 {
            *out.entry(w + k as i64 - 2 * j).or_insert(0) += sign * binom;
            binom = binom * (k as i64 - j) / (j + 1);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Rank over 𝔽₂ of rows given as bit vectors.
pub fn f2_rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len() * 64);
    for col in 0..width {
        let (w, b) = (col / 64, col % 64);
        let Some(p) = (rank..rows.len()).find(|&r| (rows[r][w] >> b) & 1 == 1) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && (row[w] >> b) & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Khovanov homology over 𝔽₂ by a dense cube computation: (i, j) → dimension.
pub fn kh_f2_oracle(d: &Diagram) -> BTreeMap<(i64, i64), usize> {
    let n = d.n();
    let (np, nm) = (d.n_plus() as i64, d.n_minus() as i64);
    let smooth: Vec<(Vec<usize>, usize)> = (0..(1u64 << n)).map(|b| smoothing(d, b)).collect();
    let mut gens: Vec<(u64, u64)> = Vec::new();
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut grade: Vec<(i64, i64)> = Vec::new();
    for u in 0..(1u64 << n) {
        let k = smooth[u as usize].1;
        let w = u.count_ones() as i64;
        for lab in 0..(1u64 << k) {
            index.insert((u, lab), gens.len());
            gens.push((u, lab));
            let p = k as i64 - 2 * lab.count_ones() as i64;
            grade.push((w - nm, p + w + np - 2 * nm));
        }
    }
    let free = d.free_circles();
    let mut image: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
    for (g, &(u, lab)) in gens.iter().enumerate() {
        let (su, ku) = &smooth[u as usize];
        let arc_circles = ku - free;
        for i in (0..n).filter(|&i| (u >> i) & 1 == 0) {
            let v = u | (1 << i);
            let (sv, kv) = &smooth[v as usize];
            let arcs_v = kv - free;
            let a = d.crossings()[i].arcs.map(|x| x as usize);
            // passive circles carry their label along any of their arcs
            let mut base = 0u64;
            let active_src = [su[a[0]], su[a[2]]];
            for c in 0..arc_circles {
                if active_src.contains(&c) {
                    continue;
                }
                let arc = (1..su.len()).find(|&x| su[x] == c).expect("circle has an arc");
                if (lab >> c) & 1 == 1 {
                    base |= 1 << sv[arc];
                }
            }
            for f in 0..free {
                if (lab >> (arc_circles + f)) & 1 == 1 {
                    base |= 1 << (arcs_v + f);
                }
            }
            let mut outs: Vec<u64> = Vec::new();
            if su[a[0]] != su[a[2]] {
                let (x, y) = ((lab >> su[a[0]]) & 1, (lab >> su[a[2]]) & 1);
                let t = sv[a[0]];
                match x + y {
                    0 => outs.push(base),
                    1 => outs.push(base | (1 << t)),
                    _ => {}
                }
            } else {
                let (t1, t2) = (sv[a[0]], sv[a[1]]);
                if (lab >> su[a[0]]) & 1 == 0 {
                    outs.push(base | (1 << t1));
                    outs.push(base | (1 << t2));
                } else {
                    outs.push(base | (1 << t1) | (1 << t2));
                }
            }
            for o in outs {
                image[g].push(index[&(v, o)]);
            }
        }
    }
    let mut by_grade: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (g, &gr) in grade.iter().enumerate() {
        by_grade.entry(gr).or_default().push(g);
    }
    let rank_out = |(h, q): (i64, i64)| -> usize {
        let (Some(src), Some(tgt)) = (by_grade.get(&(h, q)), by_grade.get(&(h + 1, q))) else { return 0 };
        let pos: HashMap<usize, usize> = tgt.iter().enumerate().map(|(k, &g)| (g, k)).collect();
        let words = tgt.len().div_ceil(64);
        let rows = src
            .iter()
            .map(|&s| {
                let mut r = vec![0u64; words];
                for t in &image[s] {
                    let p = pos[t];
                    r[p / 64] ^= 1 << (p % 64);
                }
                r
            })
            .collect();
        f2_rank(rows)
    };
    let mut out = BTreeMap::new();
    for (&(h, q), gs) in &by_grade {
        let dim = gs.len() - rank_out((h, q)) - rank_out((h - 1, q));
        if dim > 0 {
            out.insert((h, q), dim);
        }
    }
    out
}

/// Sign of every crossing in a list, +1/−1.
pub fn signs(d: &Diagram) -> Vec<i64> {
    d.crossings().iter().map(|x| if x.sign == Sign::Pos { 1 } else { -1 }).collect()
}

/// Invariant factors of a small integer matrix from gcds of k×k minors.
pub fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<i64> {
    fn det(m: &[Vec<i64>]) -> i64 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|c| {
                let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect()).collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det(&minor)
            })
            .sum()
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
            s.push(last);
            s
        })).collect()
    }
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    let (r, c) = (m.len(), m.first().map_or(0, |x| x.len()));
    let mut divisors = vec![1i64];
    for k in 1..=r.min(c) {
        let mut g = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

/// Braid words whose closures are nontrivially crossed knots.
pub fn knot_braids(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    braid_words(max_strands.max(2), max_len.max(1)).prop_filter("closure is a knot with crossings", |b| {
        let d = braid_closure(b);
        d.num_components() == 1 && d.n() > 0
    })
}

/// Case count without on-disk failure persistence (tests live outside src/).
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}
