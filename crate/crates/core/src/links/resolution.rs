use super::diagram::{ArcId, Diagram, Sign, Slot};
use super::LinkError;

/// A vertex of the cube {0,1}ⁿ; bit i is the smoothing of crossing i.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitstring {
    pub bits: u64,
    pub len: usize,
}

impl Bitstring {
    pub fn new(bits: u64, len: usize) -> Bitstring {
        assert!(len <= 63, "at most 63 crossings");
        Bitstring { bits, len }
    }

    pub fn zeros(len: usize) -> Bitstring {
        Bitstring::new(0, len)
    }

    pub fn from_bools(b: &[bool]) -> Bitstring {
        let bits = b.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | ((x as u64) << i));
        Bitstring::new(bits, b.len())
    }

    pub fn get(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn with(&self, i: usize) -> Bitstring {
        Bitstring { bits: self.bits | (1 << i), len: self.len }
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Number of 1s strictly before position i.
    pub fn ones_before(&self, i: usize) -> usize {
        (self.bits & ((1u64 << i) - 1)).count_ones() as usize
    }
}

impl std::fmt::Display for Bitstring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    /// Circles through crossings come first, ordered by minimal arc; free circles follow.
    pub num_circles: usize,
    pub arc_to_circle: Vec<usize>,
    pub min_arc: Vec<Option<ArcId>>,
    /// Winding about the marking, per circle; all zero without a marking.
    pub winding: Vec<i64>,
}

impl Resolution {
    pub fn circle_of(&self, a: ArcId) -> usize {
        self.arc_to_circle[a as usize - 1]
    }

    pub fn is_essential(&self, c: usize) -> bool {
        self.winding[c] != 0
    }
}

/// Partner slot under smoothing `bit`: 0 joins (0,1),(2,3); 1 joins (0,3),(1,2).
pub(crate) fn smoothing_partner(pos: usize, bit: bool) -> usize {
    match (bit, pos) {
        (false, 0) => 1,
        (false, 1) => 0,
        (false, 2) => 3,
        (false, _) => 2,
        (true, 0) => 3,
        (true, 3) => 0,
        (true, 1) => 2,
        (true, _) => 1,
    }
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

pub fn resolve(d: &Diagram, u: &Bitstring) -> Resolution {
    assert_eq!(u.len, d.n(), "bitstring length must equal the crossing count");
    let na = d.num_arcs();
    let mut parent: Vec<usize> = (0..na).collect();
    for (c, x) in d.crossings().iter().enumerate() {
        let pairs = if u.get(c) { [(0, 3), (1, 2)] } else { [(0, 1), (2, 3)] };
        for (p, q) in pairs {
            let a = find(&mut parent, x.arcs[p] as usize - 1);
            let b = find(&mut parent, x.arcs[q] as usize - 1);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    // roots are minimal arcs because unions keep the smaller index
    let mut circle_of_root = vec![usize::MAX; na];
    let mut arc_to_circle = vec![0; na];
    let mut min_arc = Vec::new();
    for i in 0..na {
        let r = find(&mut parent, i);
        if circle_of_root[r] == usize::MAX {
            circle_of_root[r] = min_arc.len();
            min_arc.push(Some(r as ArcId + 1));
        }
        arc_to_circle[i] = circle_of_root[r];
    }
    let traced = min_arc.len();
    let free = d.free_circles();
    let num_circles = traced + free;
    min_arc.extend(std::iter::repeat(None).take(free));
    let mut winding = vec![0i64; num_circles];
    if let Some(m) = d.marking() {
        if !m.ray.is_empty() {
            let dir = traversal(d, u, &min_arc[..traced]);
            for &(a, s) in &m.ray {
                let c = arc_to_circle[a as usize - 1];
                winding[c] += s * dir[a as usize - 1];
            }
        }
        for w in winding[traced..traced + m.essential_free.min(free)].iter_mut() {
            *w = 1;
        }
    }
    Resolution { num_circles, arc_to_circle, min_arc, winding }
}

/// +1 if the circle through the arc traverses it along its orientation, starting each
/// circle forward along its minimal arc.
fn traversal(d: &Diagram, u: &Bitstring, starts: &[Option<ArcId>]) -> Vec<i64> {
    let mut dir = vec![0i64; d.num_arcs()];
    for a0 in starts.iter().flatten() {
        let (mut a, mut fwd) = (*a0, true);
        loop {
            dir[a as usize - 1] = if fwd { 1 } else { -1 };
            let arrive = if fwd { d.head(a) } else { d.tail(a) };
            let leave = Slot { crossing: arrive.crossing, pos: smoothing_partner(arrive.pos, u.get(arrive.crossing)) };
            a = d.arc_at(leave);
            fwd = d.tail(a) == leave;
            if a == *a0 && fwd {
                break;
            }
        }
    }
    dir
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// Source circles (a, b) merge into target circle `into`.
    Merge { a: usize, b: usize, into: usize },
    /// Source circle `from` splits into target circles (a, b).
    Split { from: usize, a: usize, b: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeInfo {
    pub kind: EdgeKind,
    pub sign: i64,
    pub active_crossing: usize,
}

/// Edge map data for u -> u with bit i set, given both resolutions.
pub(crate) fn edge_between(d: &Diagram, src: &Resolution, tgt: &Resolution, u: &Bitstring, i: usize) -> EdgeInfo {
    let x = d.crossings()[i];
    let sign = if u.ones_before(i) % 2 == 0 { 1 } else { -1 };
    let (s0, s2) = (src.circle_of(x.arcs[0]), src.circle_of(x.arcs[2]));
    let (t0, t1) = (tgt.circle_of(x.arcs[0]), tgt.circle_of(x.arcs[1]));
    let kind = if s0 != s2 {
        EdgeKind::Merge { a: s0.min(s2), b: s0.max(s2), into: t0 }
    } else {
        EdgeKind::Split { from: s0, a: t0.min(t1), b: t0.max(t1) }
    };
    EdgeInfo { kind, sign, active_crossing: i }
}

pub fn edge_info(d: &Diagram, u: &Bitstring, i: usize) -> Result<EdgeInfo, LinkError> {
    if u.get(i) {
        return Err(LinkError::BitAlreadyOne(i));
    }
    let v = u.with(i);
    Ok(edge_between(d, &resolve(d, u), &resolve(d, &v), u, i))
}

/// Positive crossings get 0, negative crossings get 1.
pub fn oriented_resolution(d: &Diagram) -> (Bitstring, Resolution) {
    let b: Vec<bool> = d.crossings().iter().map(|x| x.sign == Sign::Neg).collect();
    let u = Bitstring::from_bools(&b);
    let r = resolve(d, &u);
    (u, r)
}
