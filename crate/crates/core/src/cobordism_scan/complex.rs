use std::collections::{BTreeMap, BTreeSet};

use super::cobordism::DottedCobordism;
use super::tangle::{compose_gluing, cycles, num_cycles, FlatTangle};
use super::ScanError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleObject {
    pub tangle: FlatTangle,
    pub h: i64,
    pub q: i64,
}

/// A complex over the dotted cobordism category. Objects live in a slab so that indices
/// stay valid while others are removed.
#[derive(Clone, Debug, Default)]
pub struct TangleComplex {
    /// Boundary point labels (slot ids of the partial diagram), in matching order.
    pub boundary: Vec<u32>,
    objects: Vec<Option<TangleObject>>,
    arrows: BTreeMap<(usize, usize), DottedCobordism>,
    out: Vec<BTreeSet<usize>>,
    inc: Vec<BTreeSet<usize>>,
}

impl TangleComplex {
    pub fn new(boundary: Vec<u32>) -> TangleComplex {
        TangleComplex { boundary, ..Default::default() }
    }

    /// The one-object complex on the empty tangle.
    pub fn unit() -> TangleComplex {
        let mut c = TangleComplex::new(Vec::new());
        c.add_object(TangleObject { tangle: FlatTangle::empty(), h: 0, q: 0 });
        c
    }

    pub fn add_object(&mut self, o: TangleObject) -> usize {
        assert_eq!(o.tangle.boundary_len(), self.boundary.len(), "object boundary must match the complex");
        self.objects.push(Some(o));
        self.out.push(BTreeSet::new());
        self.inc.push(BTreeSet::new());
        self.objects.len() - 1
    }

    pub fn object(&self, i: usize) -> &TangleObject {
        self.objects[i].as_ref().expect("live object")
    }

    pub fn objects(&self) -> impl Iterator<Item = (usize, &TangleObject)> {
        self.objects.iter().enumerate().filter_map(|(i, o)| o.as_ref().map(|o| (i, o)))
    }

    pub fn num_objects(&self) -> usize {
        self.objects.iter().filter(|o| o.is_some()).count()
    }

    pub fn total_loops(&self) -> usize {
        self.objects().map(|(_, o)| o.tangle.loops as usize).sum()
    }

    pub fn arrow(&self, s: usize, t: usize) -> Option<&DottedCobordism> {
        self.arrows.get(&(s, t))
    }

    pub fn arrows(&self) -> impl Iterator<Item = (&(usize, usize), &DottedCobordism)> {
        self.arrows.iter()
    }

    pub fn targets(&self, s: usize) -> &BTreeSet<usize> {
        &self.out[s]
    }

    pub fn sources(&self, t: usize) -> &BTreeSet<usize> {
        &self.inc[t]
    }

    /// Adds `f` to the arrow s → t.
    pub fn add_arrow(&mut self, s: usize, t: usize, f: &DottedCobordism) {
        if f.is_zero() {
            return;
        }
        let new = match self.arrows.get(&(s, t)) {
            Some(old) => old.add(f, 1),
            None => f.clone(),
        };
        if new.is_zero() {
            self.arrows.remove(&(s, t));
            self.out[s].remove(&t);
            self.inc[t].remove(&s);
        } else {
            self.arrows.insert((s, t), new);
            self.out[s].insert(t);
            self.inc[t].insert(s);
        }
    }

    fn remove_object(&mut self, i: usize) {
        for t in std::mem::take(&mut self.out[i]) {
            self.arrows.remove(&(i, t));
            self.inc[t].remove(&i);
        }
        for s in std::mem::take(&mut self.inc[i]) {
            self.arrows.remove(&(s, i));
            self.out[s].remove(&i);
        }
        self.objects[i] = None;
    }

    /// ±1 if the arrow s → t is ± the identity cobordism.
    pub fn unit_entry(&self, s: usize, t: usize) -> Option<i64> {
        let f = self.arrows.get(&(s, t))?;
        let (a, b) = (self.object(s), self.object(t));
        if a.tangle != b.tangle || a.q != b.q || a.tangle.loops != 0 {
            return None;
        }
        match f.terms.as_slice() {
            [(0, c)] if c.abs() == 1 => Some(*c),
            _ => None,
        }
    }

    /// Replace a closed loop of object `o` by two shifted copies of the loop-free remainder.
    pub fn deloop(&mut self, o: usize) -> Result<(usize, usize), ScanError> {
        let obj = self.object(o).clone();
        if obj.tangle.loops == 0 {
            return Err(ScanError::NoCircle(o));
        }
        let mut t = obj.tangle.clone();
        t.loops -= 1;
        let plus = self.add_object(TangleObject { tangle: t.clone(), h: obj.h, q: obj.q + 1 });
        let minus = self.add_object(TangleObject { tangle: t, h: obj.h, q: obj.q - 1 });
        let last = obj.tangle.loops - 1;
        for y in self.out[o].clone() {
            let f = self.arrows[&(o, y)].clone();
            let ty = &self.object(y).tangle;
            let pos = (cycles(&obj.tangle.matching, &ty.matching).1 as u32) + last;
            // undotted cup from O₊ meets the cap: survives only if the cap is dotted
            self.add_arrow(plus, y, &f.restrict_bit(pos, true));
            self.add_arrow(minus, y, &f.restrict_bit(pos, false));
        }
        for x in self.inc[o].clone() {
            let f = self.arrows[&(x, o)].clone();
            let tx = &self.object(x).tangle;
            let pos = (cycles(&tx.matching, &obj.tangle.matching).1 as u32) + tx.loops + last;
            self.add_arrow(x, plus, &f.restrict_bit(pos, false));
            self.add_arrow(x, minus, &f.restrict_bit(pos, true));
        }
        self.remove_object(o);
        Ok((plus, minus))
    }

    /// Cancel the invertible arrow b₁ → b₂, correcting the remaining arrows by the zigzag
    /// term: x → y gains −γ e⁻¹ δ.
    pub fn gauss_eliminate(&mut self, b1: usize, b2: usize) -> Result<(), ScanError> {
        let c = self.unit_entry(b1, b2).ok_or(ScanError::NotInvertible(b1, b2))?;
        let xs: Vec<usize> = self.inc[b2].iter().copied().filter(|&x| x != b1).collect();
        let ys: Vec<usize> = self.out[b1].iter().copied().filter(|&y| y != b2).collect();
        let mid = self.object(b1).tangle.clone();
        for &x in &xs {
            let delta = self.arrows[&(x, b2)].clone();
            let tx = self.object(x).tangle.clone();
            for &y in &ys {
                let gamma = &self.arrows[&(b1, y)];
                let ty = &self.object(y).tangle;
                let corr = compose_gluing(&tx, &mid, ty).apply(&delta, gamma, -c);
                self.add_arrow(x, y, &corr);
            }
        }
        self.remove_object(b1);
        self.remove_object(b2);
        Ok(())
    }

    /// Eliminate invertible arrows until none remain; returns how many were cancelled.
    pub fn eliminate_all(&mut self) -> usize {
        let mut count = 0;
        loop {
            let candidates: Vec<(usize, usize)> = self.arrows.keys().copied().collect();
            let before = count;
            for (s, t) in candidates {
                if self.objects[s].is_some() && self.objects[t].is_some() && self.unit_entry(s, t).is_some() {
                    self.gauss_eliminate(s, t).expect("entry was checked invertible");
                    count += 1;
                }
            }
            if count == before {
                return count;
            }
        }
    }

    /// Every arrow has quantum degree 0: q_t − q_s + (#disks) − 2·(#dots) − |B|/2 = 0.
    pub fn check_degrees(&self) -> Result<(), ScanError> {
        let half = (self.boundary.len() / 2) as i64;
        for (&(s, t), f) in &self.arrows {
            let (a, b) = (self.object(s), self.object(t));
            let disks = num_cycles(&a.tangle, &b.tangle) as i64;
            for &(m, _) in &f.terms {
                let deg = b.q - a.q + disks - 2 * m.count_ones() as i64 - half;
                if deg != 0 || b.h != a.h + 1 {
                    return Err(ScanError::BadDegree(s, t));
                }
            }
        }
        Ok(())
    }

    /// d∘d = 0 in the cobordism category.
    pub fn check_d_squared(&self) -> Result<(), ScanError> {
        for (x, ox) in self.objects() {
            let mut acc: BTreeMap<usize, DottedCobordism> = BTreeMap::new();
            for &y in &self.out[x] {
                let oy = self.object(y);
                for &z in &self.out[y] {
                    let oz = self.object(z);
                    let g = compose_gluing(&ox.tangle, &oy.tangle, &oz.tangle).apply(&self.arrows[&(x, y)], &self.arrows[&(y, z)], 1);
                    let e = acc.entry(z).or_default();
                    *e = e.add(&g, 1);
                }
            }
            if let Some((&z, _)) = acc.iter().find(|(_, f)| !f.is_zero()) {
                return Err(ScanError::NotAComplex(x, z));
            }
        }
        Ok(())
    }
}
