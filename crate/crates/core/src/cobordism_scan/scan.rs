use std::collections::HashMap;

use crate::chain::{BigradedComplex, Generator};
use crate::frobenius_cube::{FrobeniusSpec, Theory};
use crate::links::{Diagram, Slot};

use super::cobordism::DottedCobordism;
use super::complex::{TangleComplex, TangleObject};
use super::tangle::side_gluing;
use super::ScanError;

const SMOOTHING: [[u16; 4]; 2] = [[1, 0, 3, 2], [3, 2, 1, 0]];

fn slot_id(s: Slot) -> u32 {
    (4 * s.crossing + s.pos) as u32
}

fn other_end(d: &Diagram, s: Slot) -> Slot {
    let a = d.arc_at(s);
    if d.tail(a) == s {
        d.head(a)
    } else {
        d.tail(a)
    }
}

/// Greedy order keeping the open boundary of the partial tangle small.
pub fn scan_order(d: &Diagram) -> Vec<usize> {
    let n = d.n();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let growth = |x: usize| -> i64 {
            (0..4)
                .map(|pos| {
                    let y = other_end(d, Slot { crossing: x, pos });
                    if y.crossing == x {
                        0
                    } else if done[y.crossing] {
                        -1
                    } else {
                        1
                    }
                })
                .sum()
        };
        let x = (0..n).filter(|&x| !done[x]).min_by_key(|&x| (growth(x), x)).expect("an unprocessed crossing");
        done[x] = true;
        order.push(x);
    }
    order
}

/// Tensor the complex with the two-term complex of crossing `x`, deloop, and return the
/// result (before elimination).
pub fn tensor_crossing(tc: &TangleComplex, d: &Diagram, x: usize) -> TangleComplex {
    let k1 = tc.boundary.len();
    let index: HashMap<u32, usize> = tc.boundary.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut ident: Vec<usize> = (0..k1 + 4).collect();
    for pos in 0..4 {
        let y = other_end(d, Slot { crossing: x, pos });
        if y.crossing == x {
            ident[k1 + pos] = k1 + y.pos;
        } else if let Some(&i) = index.get(&slot_id(y)) {
            ident[k1 + pos] = i;
            ident[i] = k1 + pos;
        }
    }
    let label = |p: usize| if p < k1 { tc.boundary[p] } else { 4 * x as u32 + (p - k1) as u32 };
    let boundary: Vec<u32> = (0..k1 + 4).filter(|&p| ident[p] == p).map(label).collect();
    let mut out = TangleComplex::new(boundary);
    let id = DottedCobordism::scalar(1);
    let mut new_index: HashMap<(usize, usize), usize> = HashMap::new();
    let objs: Vec<(usize, TangleObject)> = tc.objects().map(|(i, o)| (i, o.clone())).collect();
    for (i, o) in &objs {
        for s in 0..2 {
            let sm = &SMOOTHING[s];
            let (src, _, _) = side_gluing(&o.tangle.matching, &o.tangle.matching, sm, sm, &ident);
            let k = out.add_object(TangleObject { tangle: src.tangle, h: o.h + s as i64, q: o.q + s as i64 });
            new_index.insert((*i, s), k);
        }
    }
    for (i, o) in &objs {
        for &j in tc.targets(*i) {
            let f = tc.arrow(*i, j).expect("listed arrow");
            let t = &tc.object(j).tangle;
            for s in 0..2 {
                let sm = &SMOOTHING[s];
                let (_, _, g) = side_gluing(&o.tangle.matching, &t.matching, sm, sm, &ident);
                out.add_arrow(new_index[&(*i, s)], new_index[&(j, s)], &g.apply(f, &id, 1));
            }
        }
        let (_, _, g) = side_gluing(&o.tangle.matching, &o.tangle.matching, &SMOOTHING[0], &SMOOTHING[1], &ident);
        let sign = if o.h % 2 == 0 { 1 } else { -1 };
        out.add_arrow(new_index[&(*i, 0)], new_index[&(*i, 1)], &g.apply(&id, &id, sign));
    }
    loop {
        let looped: Vec<usize> = out.objects().filter(|(_, o)| o.tangle.loops > 0).map(|(i, _)| i).collect();
        if looped.is_empty() {
            break;
        }
        for i in looped {
            out.deloop(i).expect("object has a loop");
        }
    }
    out
}

/// Scan the diagram crossing by crossing, simplifying after each step. The result has
/// empty boundary; free circles and global shifts are not yet applied.
pub fn scan_tangle_complex(d: &Diagram) -> TangleComplex {
    let mut tc = TangleComplex::unit();
    for x in scan_order(d) {
        tc = tensor_crossing(&tc, d, x);
        tc.eliminate_all();
    }
    tc
}

/// Khovanov complex of `d` computed by the scanning engine; homology agrees with the cube.
pub fn scan_compute(d: &Diagram, spec: &FrobeniusSpec) -> Result<BigradedComplex, ScanError> {
    if spec.theory != Theory::Kh {
        return Err(ScanError::UnsupportedTheory);
    }
    let tc = scan_tangle_complex(d);
    let f = d.free_circles();
    let np = d.n_plus() as i64;
    let nm = d.n_minus() as i64;
    let objs: Vec<(usize, TangleObject)> = tc.objects().map(|(i, o)| (i, o.clone())).collect();
    let pos: HashMap<usize, usize> = objs.iter().enumerate().map(|(k, (i, _))| (*i, k)).collect();
    let width = 1usize << f;
    let mut gens = Vec::with_capacity(objs.len() * width);
    let mut diff = Vec::with_capacity(objs.len() * width);
    for (i, o) in &objs {
        for labels in 0..width {
            let p = f as i64 - 2 * labels.count_ones() as i64;
            gens.push(Generator { h: o.h - nm, q: o.q + p + np - 2 * nm });
            let col: Vec<(usize, i64)> = tc
                .targets(*i)
                .iter()
                .map(|&j| {
                    let c = tc.arrow(*i, j).expect("listed arrow");
                    debug_assert!(c.terms.len() == 1 && c.terms[0].0 == 0);
                    (pos[&j] * width + labels, c.terms[0].1)
                })
                .collect();
            diff.push(col);
        }
    }
    Ok(BigradedComplex::new(crate::chain::Ring::Z, gens, diff, false).with_ring(spec.ring))
}
