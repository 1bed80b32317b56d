use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

/// Bit i set: the disk bounded by boundary cycle i carries a dot.
pub type Mask = u64;

/// Reduced dotted cobordism: an integer combination of collections of disks, one disk per
/// boundary cycle, each disk dotted or not. Terms are sorted by mask.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DottedCobordism {
    pub terms: Vec<(Mask, i64)>,
}

impl DottedCobordism {
    pub fn zero() -> Self {
        DottedCobordism::default()
    }

    pub fn scalar(c: i64) -> Self {
        DottedCobordism::from_map([(0, c)].into_iter().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn from_map(m: BTreeMap<Mask, i64>) -> Self {
        DottedCobordism { terms: m.into_iter().filter(|e| e.1 != 0).collect() }
    }

    pub fn to_map(&self) -> BTreeMap<Mask, i64> {
        self.terms.iter().copied().collect()
    }

    pub fn add(&self, o: &DottedCobordism, k: i64) -> DottedCobordism {
        let mut m = self.to_map();
        for &(x, c) in &o.terms {
            let e = m.entry(x).or_insert(0);
            *e = e.checked_add(c.checked_mul(k).expect("cobordism coefficient overflow")).expect("cobordism coefficient overflow");
        }
        DottedCobordism::from_map(m)
    }

    pub fn scale(&self, k: i64) -> DottedCobordism {
        DottedCobordism::zero().add(self, k)
    }

    /// Keep the terms whose bit `pos` equals `dotted`, then delete that bit.
    pub fn restrict_bit(&self, pos: u32, dotted: bool) -> DottedCobordism {
        let low = (1u64 << pos) - 1;
        let terms = self.terms.iter().filter(|(m, _)| ((m >> pos) & 1 == 1) == dotted).map(|&(m, c)| ((m & low) | ((m >> (pos + 1)) << pos), c));
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert(0) += c;
        }
        DottedCobordism::from_map(map)
    }
}

/// A connected surface piece before reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawComponent {
    /// Boundary cycles (indices into the ambient cycle list); empty for a closed surface.
    pub boundary: Vec<usize>,
    pub genus: u32,
    pub dots: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSurface {
    pub num_cycles: usize,
    pub components: Vec<RawComponent>,
}

/// Contribution of one connected piece: a list of (mask, coefficient) alternatives.
pub(crate) fn reduce_component(boundary: Mask, genus: u32, dots: u32) -> Vec<(Mask, i64)> {
    let e = genus + dots;
    if boundary == 0 {
        // closed: only the dotted sphere (1) and the torus (2) survive
        return if e == 1 { vec![(0, 1 << genus)] } else { vec![] };
    }
    match e {
        0 => (0..64).filter(|i| (boundary >> i) & 1 == 1).map(|i| (boundary & !(1u64 << i), 1)).collect(),
        1 => vec![(boundary, 1 << genus)],
        _ => vec![],
    }
}

/// Multiply out per-component alternatives into a reduced cobordism.
pub(crate) fn expand(scale: i64, parts: &[Vec<(Mask, i64)>], out: &mut BTreeMap<Mask, i64>) {
    let mut acc: Vec<(Mask, i64)> = vec![(0, scale)];
    for p in parts {
        if p.is_empty() {
            return;
        }
        let mut next = Vec::with_capacity(acc.len() * p.len());
        for &(m, c) in &acc {
            for &(pm, pc) in p {
                next.push((m | pm, c.checked_mul(pc).expect("cobordism coefficient overflow")));
            }
        }
        acc = next;
    }
    for (m, c) in acc {
        *out.entry(m).or_insert(0) += c;
    }
}

fn mask_of(cycles: &[usize]) -> Mask {
    cycles.iter().fold(0, |m, &c| {
        assert!(c < 64, "at most 64 boundary cycles");
        m | (1 << c)
    })
}

/// Canonical form: neck-cut every handle and every tube, drop anything with two dots on a
/// piece, and evaluate closed pieces.
pub fn reduce_cobordism(s: &RawSurface) -> DottedCobordism {
    let parts: Vec<Vec<(Mask, i64)>> = s.components.iter().map(|c| reduce_component(mask_of(&c.boundary), c.genus, c.dots)).collect();
    let mut out = BTreeMap::new();
    expand(1, &parts, &mut out);
    DottedCobordism::from_map(out)
}

/// The same reduction performed one local relation at a time, in an order chosen by `rng`.
/// Used to check that the relations are confluent.
pub fn reduce_cobordism_randomly<R: Rng>(s: &RawSurface, rng: &mut R) -> DottedCobordism {
    let mut work: Vec<(i64, Vec<RawComponent>)> = vec![(1, s.components.clone())];
    let mut done: BTreeMap<Mask, i64> = BTreeMap::new();
    while let Some((coef, mut comps)) = work.pop() {
        if coef == 0 {
            continue;
        }
        // indices of pieces that still need a relation
        let pending: Vec<usize> = (0..comps.len()).filter(|&i| !is_reduced(&comps[i])).collect();
        let Some(&i) = pending.choose(rng) else {
            let m = comps.iter().filter(|c| c.dots == 1).fold(0, |m, c| m | mask_of(&c.boundary));
            *done.entry(m).or_insert(0) += coef;
            continue;
        };
        let c = comps.swap_remove(i);
        let mut options: Vec<u8> = Vec::new();
        if c.dots >= 2 {
            options.push(0);
        }
        if c.genus > 0 {
            options.push(1);
        }
        if c.boundary.len() >= 2 {
            options.push(2);
        }
        if c.boundary.is_empty() && c.genus == 0 && c.dots <= 1 {
            options.push(3);
        }
        match *options.choose(rng).expect("unreduced piece admits a relation") {
            // two dots on one piece
            0 => {}
            // cut a handle: two copies with one more dot each
            1 => {
                comps.push(RawComponent { boundary: c.boundary, genus: c.genus - 1, dots: c.dots + 1 });
                work.push((2 * coef, comps));
            }
            // cut a tube separating a random nonempty proper subset of the boundary
            2 => {
                let mut b = c.boundary.clone();
                b.shuffle(rng);
                let k = rng.gen_range(1..b.len());
                let (left, right) = (b[..k].to_vec(), b[k..].to_vec());
                let gl = rng.gen_range(0..=c.genus);
                let dl = rng.gen_range(0..=c.dots);
                for extra_left in [0, 1] {
                    let mut next = comps.clone();
                    next.push(RawComponent { boundary: left.clone(), genus: gl, dots: dl + extra_left });
                    next.push(RawComponent { boundary: right.clone(), genus: c.genus - gl, dots: c.dots - dl + 1 - extra_left });
                    work.push((coef, next));
                }
            }
            // closed sphere: 0 undotted, 1 dotted
            _ => {
                if c.dots == 1 {
                    work.push((coef, comps));
                }
            }
        }
    }
    DottedCobordism::from_map(done)
}

fn is_reduced(c: &RawComponent) -> bool {
    c.dots <= 1 && c.genus == 0 && c.boundary.len() == 1
}
