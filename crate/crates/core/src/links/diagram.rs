use std::collections::BTreeSet;

use super::LinkError;

pub type ArcId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// `arcs` in PD order: counterclockwise, starting from the incoming under-strand.
/// The under strand runs 0 -> 2. Positive crossings carry the over strand 3 -> 1,
/// negative ones 1 -> 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [ArcId; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(arcs: [ArcId; 4], sign: Sign) -> Crossing {
        Crossing { arcs, sign }
    }

    /// Slot at which an arc leaves this crossing.
    pub fn is_outgoing(&self, slot: usize) -> bool {
        match slot {
            0 => false,
            2 => true,
            1 => self.sign == Sign::Pos,
            _ => self.sign == Sign::Neg,
        }
    }
}

/// A slot is one of the four arc ends at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub pos: usize,
}

/// Position of the annular axis. `ray` lists the arcs met by a generic ray from the
/// axis to infinity, each with the sign picked up by a traversal along the arc's
/// orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Marking {
    pub face: Option<usize>,
    pub outer: Option<usize>,
    pub ray: Vec<(ArcId, i64)>,
    pub essential_free: usize,
}

#[derive(Clone, Debug)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_circles: usize,
    marking: Option<Marking>,
    basepoint: Option<ArcId>,
    tail: Vec<Slot>,
    head: Vec<Slot>,
}

#[derive(Clone, Debug)]
pub struct Faces {
    pub count: usize,
    /// Face to the left of each arc (index `arc - 1`), relative to its orientation.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Boundary edges of each face, in traversal order, as (arc, forward).
    pub boundary: Vec<Vec<(ArcId, bool)>>,
    /// Corners of each face as departure slots.
    pub corners: Vec<Vec<Slot>>,
    /// Connected component of the projection containing each face.
    pub component: Vec<usize>,
}

impl Diagram {
    pub fn new(crossings: Vec<Crossing>, free_circles: usize) -> Result<Diagram, LinkError> {
        let n = crossings.len();
        let na = 2 * n;
        let mut tail = vec![None; na];
        let mut head = vec![None; na];
        for (c, x) in crossings.iter().enumerate() {
            for pos in 0..4 {
                let a = x.arcs[pos] as usize;
                if a == 0 || a > na {
                    return Err(LinkError::malformed(format!("arc label {a} outside 1..={na}")));
                }
                let s = Slot { crossing: c, pos };
                let end = if x.is_outgoing(pos) { &mut tail[a - 1] } else { &mut head[a - 1] };
                if end.is_some() {
                    return Err(LinkError::InconsistentOrientation(format!(
                        "arc {a} has two {} ends",
                        if x.is_outgoing(pos) { "outgoing" } else { "incoming" }
                    )));
                }
                *end = Some(s);
            }
        }
        let tail: Vec<Slot> = tail
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| LinkError::malformed(format!("arc {} never leaves a crossing", i + 1))))
            .collect::<Result<_, _>>()?;
        let head: Vec<Slot> = head
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| LinkError::malformed(format!("arc {} never enters a crossing", i + 1))))
            .collect::<Result<_, _>>()?;
        let d = Diagram { crossings, free_circles, marking: None, basepoint: None, tail, head };
        d.check_planar()?;
        Ok(d)
    }

    pub fn unlink(k: usize) -> Diagram {
        Diagram::new(Vec::new(), k).expect("empty diagram is valid")
    }

    pub fn with_marking(mut self, marking: Marking) -> Diagram {
        self.marking = Some(marking);
        self
    }

    pub fn without_marking(mut self) -> Diagram {
        self.marking = None;
        self
    }

    pub fn with_basepoint(mut self, arc: Option<ArcId>) -> Result<Diagram, LinkError> {
        if let Some(a) = arc {
            if self.crossings.is_empty() {
                if a != 0 || self.free_circles == 0 {
                    return Err(LinkError::malformed(format!("basepoint arc {a} not in diagram")));
                }
            } else if a == 0 || a as usize > self.num_arcs() {
                return Err(LinkError::malformed(format!("basepoint arc {a} not in diagram")));
            }
        }
        self.basepoint = arc;
        Ok(self)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_arcs(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn free_circles(&self) -> usize {
        self.free_circles
    }

    pub fn marking(&self) -> Option<&Marking> {
        self.marking.as_ref()
    }

    pub fn basepoint(&self) -> Option<ArcId> {
        self.basepoint
    }

    pub fn n_plus(&self) -> usize {
        self.crossings.iter().filter(|x| x.sign == Sign::Pos).count()
    }

    pub fn n_minus(&self) -> usize {
        self.n() - self.n_plus()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    pub fn tail(&self, a: ArcId) -> Slot {
        self.tail[a as usize - 1]
    }

    pub fn head(&self, a: ArcId) -> Slot {
        self.head[a as usize - 1]
    }

    pub fn arc_at(&self, s: Slot) -> ArcId {
        self.crossings[s.crossing].arcs[s.pos]
    }

    /// The arc that continues the strand through the crossing after `a`.
    pub fn next_arc(&self, a: ArcId) -> ArcId {
        let h = self.head(a);
        self.arc_at(Slot { crossing: h.crossing, pos: (h.pos + 2) % 4 })
    }

    /// Link components as cyclic arc sequences, each starting at its lowest arc.
    pub fn components(&self) -> Vec<Vec<ArcId>> {
        let mut seen = vec![false; self.num_arcs()];
        let mut out = Vec::new();
        for a in 1..=self.num_arcs() as ArcId {
            if seen[a as usize - 1] {
                continue;
            }
            let mut comp = Vec::new();
            let mut b = a;
            while !seen[b as usize - 1] {
                seen[b as usize - 1] = true;
                comp.push(b);
                b = self.next_arc(b);
            }
            out.push(comp);
        }
        out
    }

    pub fn num_components(&self) -> usize {
        self.components().len() + self.free_circles
    }

    /// Component index for each arc (index `arc - 1`).
    pub fn arc_component(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_arcs()];
        for (i, comp) in self.components().iter().enumerate() {
            for &a in comp {
                out[a as usize - 1] = i;
            }
        }
        out
    }

    /// Trace faces of the planar embedding given by the PD rotation order.
    pub fn faces(&self) -> Faces {
        let n = self.n();
        let na = self.num_arcs();
        let mut face_of = vec![usize::MAX; 4 * n];
        let mut left = vec![usize::MAX; na];
        let mut right = vec![usize::MAX; na];
        let mut boundary = Vec::new();
        let mut corners = Vec::new();
        // Faces are numbered in order of first appearance when scanning arcs by label,
        // left side before right side.
        let mut starts = Vec::with_capacity(2 * na);
        for a in 1..=na as ArcId {
            starts.push(self.tail(a));
            starts.push(self.head(a));
        }
        for start in starts {
            let idx = 4 * start.crossing + start.pos;
            if face_of[idx] != usize::MAX {
                continue;
            }
            let f = boundary.len();
            let mut edges = Vec::new();
            let mut cs = Vec::new();
            let mut s = start;
            loop {
                face_of[4 * s.crossing + s.pos] = f;
                cs.push(s);
                let a = self.arc_at(s);
                let forward = self.tail(a) == s;
                if forward {
                    left[a as usize - 1] = f;
                } else {
                    right[a as usize - 1] = f;
                }
                edges.push((a, forward));
                let arrive = if forward { self.head(a) } else { self.tail(a) };
                s = Slot { crossing: arrive.crossing, pos: (arrive.pos + 3) % 4 };
                if s == start {
                    break;
                }
            }
            boundary.push(edges);
            corners.push(cs);
        }
        let count = boundary.len();
        let cc = self.crossing_components();
        let component = corners.iter().map(|cs| cc[cs[0].crossing]).collect();
        Faces { count, left, right, boundary, corners, component }
    }

    /// Connected components of the projection graph, as a label per crossing.
    pub fn crossing_components(&self) -> Vec<usize> {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for c0 in 0..n {
            if label[c0] != usize::MAX {
                continue;
            }
            let mut stack = vec![c0];
            label[c0] = next;
            while let Some(c) = stack.pop() {
                for &a in &self.crossings[c].arcs {
                    for s in [self.tail(a), self.head(a)] {
                        if label[s.crossing] == usize::MAX {
                            label[s.crossing] = next;
                            stack.push(s.crossing);
                        }
                    }
                }
            }
            next += 1;
        }
        label
    }

    fn check_planar(&self) -> Result<(), LinkError> {
        if self.n() == 0 {
            return Ok(());
        }
        let f = self.faces();
        let cc = self.crossing_components();
        let k = cc.iter().copied().max().map_or(0, |m| m + 1);
        let mut v = vec![0i64; k];
        let mut faces = vec![0i64; k];
        for &c in &cc {
            v[c] += 1;
        }
        for &c in &f.component {
            faces[c] += 1;
        }
        for i in 0..k {
            // V - E + F = 2 with E = 2V
            if faces[i] - v[i] != 2 {
                return Err(LinkError::malformed("PD code does not describe a planar diagram"));
            }
        }
        Ok(())
    }

    /// Face used as the unbounded region: the marking's outer face when one exists in
    /// the given projection component, else the face with the most boundary arcs.
    pub fn outer_face_of_component(&self, faces: &Faces, comp: usize) -> usize {
        if let Some(o) = self.marking.as_ref().and_then(|m| m.outer) {
            if o < faces.count && faces.component[o] == comp {
                return o;
            }
        }
        let mut best = usize::MAX;
        for f in 0..faces.count {
            if faces.component[f] != comp {
                continue;
            }
            if best == usize::MAX || faces.boundary[f].len() > faces.boundary[best].len() {
                best = f;
            }
        }
        best
    }

    /// Proper 2-colouring of the faces, with each projection component's outer face unshaded.
    pub fn checkerboard(&self) -> Vec<bool> {
        let faces = self.faces();
        let mut shade: Vec<Option<bool>> = vec![None; faces.count];
        let ncomp = faces.component.iter().copied().max().map_or(0, |m| m + 1);
        for comp in 0..ncomp {
            let root = self.outer_face_of_component(&faces, comp);
            shade[root] = Some(false);
            let mut stack = vec![root];
            while let Some(f) = stack.pop() {
                let s = shade[f].unwrap();
                for &(a, _) in &faces.boundary[f] {
                    let i = a as usize - 1;
                    for g in [faces.left[i], faces.right[i]] {
                        if g != f && shade[g].is_none() {
                            shade[g] = Some(!s);
                            stack.push(g);
                        }
                    }
                }
            }
        }
        shade.into_iter().map(|s| s.unwrap_or(false)).collect()
    }

    /// Mirror image: every crossing has its over and under strands exchanged.
    pub fn mirror(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.arcs;
                match x.sign {
                    Sign::Pos => Crossing::new([d, a, b, c], Sign::Neg),
                    Sign::Neg => Crossing::new([b, c, d, a], Sign::Pos),
                }
            })
            .collect();
        let mut m = Diagram::new(crossings, self.free_circles).expect("mirror of a valid diagram");
        m.basepoint = self.basepoint;
        m.marking = self.marking.clone();
        m
    }

    /// Reverse the orientation of the components selected by `reverse` (indexed as in
    /// `components()`); free circles are unaffected. Arc labels are kept.
    pub fn reverse_components(&self, reverse: &[bool]) -> Diagram {
        let comp = self.arc_component();
        let rev = |a: ArcId| reverse.get(comp[a as usize - 1]).copied().unwrap_or(false);
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.arcs;
                let under = rev(a);
                let over = rev(b);
                let arcs = if under { [c, d, a, b] } else { x.arcs };
                let sign = if under != over { x.sign.flip() } else { x.sign };
                Crossing::new(arcs, sign)
            })
            .collect();
        let mut out = Diagram::new(crossings, self.free_circles).expect("reversal of a valid diagram");
        out.basepoint = self.basepoint;
        out
    }

    /// Arc labels used, for sanity checks.
    pub fn arc_set(&self) -> BTreeSet<ArcId> {
        self.crossings.iter().flat_map(|x| x.arcs).collect()
    }

    /// Disjoint union; the second diagram's arcs are relabelled after the first's.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let off = self.num_arcs() as ArcId;
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| Crossing::new(x.arcs.map(|a| a + off), x.sign)));
        Diagram::new(crossings, self.free_circles + other.free_circles).expect("union of valid diagrams")
    }

    /// Connected sum, spliced at the highest-labelled arc of each summand.
    pub fn connected_sum(&self, other: &Diagram) -> Diagram {
        if self.n() == 0 || other.n() == 0 {
            let (big, small) = if self.n() == 0 { (other, self) } else { (self, other) };
            let mut out = big.clone();
            out.free_circles += small.free_circles.saturating_sub(1);
            out.marking = None;
            return out;
        }
        let off = self.num_arcs() as ArcId;
        let a1 = off;
        let a2 = other.num_arcs() as ArcId + off;
        let h1 = self.head(a1);
        let h2o = other.head(other.num_arcs() as ArcId);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|x| Crossing::new(x.arcs.map(|a| a + off), x.sign)));
        let h2 = Slot { crossing: h2o.crossing + self.n(), pos: h2o.pos };
        crossings[h1.crossing].arcs[h1.pos] = a2;
        crossings[h2.crossing].arcs[h2.pos] = a1;
        Diagram::new(crossings, self.free_circles + other.free_circles).expect("connected sum is planar")
    }
}
