use std::collections::{BTreeMap, HashMap, VecDeque};

use super::diagram::{ArcId, Crossing, Diagram, Marking, Sign, Slot};
use super::LinkError;

/// Slot semantics of a crossing list with arbitrary labels: (tail, head) per label.
fn ends(crossings: &[Crossing]) -> HashMap<ArcId, (Slot, Slot)> {
    let mut t: HashMap<ArcId, Slot> = HashMap::new();
    let mut h: HashMap<ArcId, Slot> = HashMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for pos in 0..4 {
            let s = Slot { crossing: c, pos };
            if x.is_outgoing(pos) {
                t.insert(x.arcs[pos], s);
            } else {
                h.insert(x.arcs[pos], s);
            }
        }
    }
    t.into_iter().map(|(a, s)| (a, (s, h[&a]))).collect()
}

fn relabel_from(crossings: &[Crossing], starts: &[ArcId]) -> (Vec<Crossing>, HashMap<ArcId, ArcId>) {
    let e = ends(crossings);
    let mut map: HashMap<ArcId, ArcId> = HashMap::new();
    let mut next = 1;
    let mut labels: Vec<ArcId> = e.keys().copied().collect();
    labels.sort_unstable();
    let order = starts.iter().copied().chain(labels);
    for start in order {
        if map.contains_key(&start) {
            continue;
        }
        let mut a = start;
        while !map.contains_key(&a) {
            map.insert(a, next);
            next += 1;
            let h = e[&a].1;
            a = crossings[h.crossing].arcs[(h.pos + 2) % 4];
        }
    }
    let out = crossings.iter().map(|x| Crossing::new(x.arcs.map(|a| map[&a]), x.sign)).collect();
    (out, map)
}

/// Renumber arcs 1..2n so labels increase along each component; components are taken in
/// order of their lowest old label.
pub fn relabel_along_components(crossings: &[Crossing]) -> (Vec<Crossing>, HashMap<ArcId, ArcId>) {
    relabel_from(crossings, &[])
}

/// Canonical representative of a diagram up to arc relabelling and crossing order.
pub fn canonical_form(d: &Diagram) -> (Vec<([ArcId; 4], Sign)>, usize) {
    let comps = d.components();
    let mut best: Option<Vec<([ArcId; 4], Sign)>> = None;
    let mut perm: Vec<usize> = (0..comps.len()).collect();
    let mut choice = vec![0usize; comps.len()];
    loop {
        loop {
            let starts: Vec<ArcId> = perm.iter().map(|&ci| comps[ci][choice[ci]]).collect();
            let (xs, _) = relabel_from(d.crossings(), &starts);
            let mut key: Vec<([ArcId; 4], Sign)> = xs.iter().map(|x| (x.arcs, x.sign)).collect();
            key.sort();
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
            // odometer over start arcs
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < comps[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    (best.unwrap_or_default(), d.free_circles())
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Diagram equality up to relabelling of arcs.
pub fn isomorphic(a: &Diagram, b: &Diagram) -> bool {
    a.n() == b.n() && a.free_circles() == b.free_circles() && canonical_form(a) == canonical_form(b)
}

pub fn emit_pd(d: &Diagram) -> String {
    let mut out = String::new();
    if d.free_circles() > 0 {
        out.push_str(&format!("circles={}\n", d.free_circles()));
    }
    if let Some(m) = d.marking() {
        if let Some(f) = m.face {
            out.push_str(&format!("*face={f}\n"));
        }
        if let Some(o) = m.outer {
            out.push_str(&format!("*outer={o}\n"));
        }
    }
    if let Some(a) = d.basepoint() {
        out.push_str(&format!("@arc={a}\n"));
    }
    let body: Vec<String> = d
        .crossings()
        .iter()
        .map(|x| format!("X({},{},{},{})", x.arcs[0], x.arcs[1], x.arcs[2], x.arcs[3]))
        .collect();
    out.push_str(&body.join(" "));
    out.push('\n');
    out
}

struct Scanner<'a> {
    s: &'a [u8],
    i: usize,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() {
            match self.s[self.i] {
                b'\n' => {
                    self.i += 1;
                    self.line += 1;
                    self.col = 1;
                }
                b'#' => {
                    while self.i < self.s.len() && self.s[self.i] != b'\n' {
                        self.bump();
                    }
                }
                c if c.is_ascii_whitespace() || c == b',' => self.bump(),
                _ => break,
            }
        }
    }

    fn bump(&mut self) {
        self.i += 1;
        self.col += 1;
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.i..].starts_with(lit.as_bytes()) {
            for _ in 0..lit.len() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), LinkError> {
        while self.i < self.s.len() && self.s[self.i] == b' ' {
            self.bump();
        }
        if self.i < self.s.len() && self.s[self.i] == c {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<u64, LinkError> {
        while self.i < self.s.len() && self.s[self.i] == b' ' {
            self.bump();
        }
        let start = self.i;
        let (line, col) = (self.line, self.col);
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.bump();
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .map_err(|_| LinkError::at(line, col, "expected a non-negative integer"))
    }

    fn err(&self, msg: impl Into<String>) -> LinkError {
        LinkError::at(self.line, self.col, msg)
    }
}

/// Parse PD text: `X(a,b,c,d)` tokens, plus optional `circles=<k>`, `*face=<id>`,
/// `*outer=<id>` and `@arc=<id>` directives.
pub fn parse_pd(text: &str) -> Result<Diagram, LinkError> {
    let mut sc = Scanner { s: text.as_bytes(), i: 0, line: 1, col: 1 };
    let mut raw: Vec<[u64; 4]> = Vec::new();
    let mut seen: HashMap<u64, usize> = HashMap::new();
    let mut circles = 0usize;
    let mut face = None;
    let mut outer = None;
    let mut arc = None;
    loop {
        sc.skip_ws();
        if sc.i >= sc.s.len() {
            break;
        }
        let (line, col) = (sc.line, sc.col);
        if sc.eat("X(") || sc.eat("X[") {
            let mut t = [0u64; 4];
            for (k, slot) in t.iter_mut().enumerate() {
                if k > 0 {
                    sc.expect(b',')?;
                }
                let (l, c) = (sc.line, sc.col);
                *slot = sc.number()?;
                if *slot == 0 {
                    return Err(LinkError::at(l, c, "arc labels must be positive"));
                }
                let e = seen.entry(*slot).or_insert(0);
                *e += 1;
                if *e > 2 {
                    return Err(LinkError::at(l, c, format!("arc label {} used more than twice", slot)));
                }
            }
            if sc.expect(b')').is_err() {
                sc.expect(b']')?;
            }
            raw.push(t);
        } else if sc.eat("circles=") {
            circles = sc.number()? as usize;
        } else if sc.eat("*face=") {
            face = Some(sc.number()? as usize);
        } else if sc.eat("*outer=") {
            outer = Some(sc.number()? as usize);
        } else if sc.eat("@arc=") {
            arc = Some(sc.number()?);
        } else {
            return Err(LinkError::at(line, col, "unexpected token"));
        }
    }
    if let Some((&a, _)) = seen.iter().filter(|(_, &k)| k != 2).min_by_key(|(a, _)| **a) {
        return Err(LinkError::at(sc.line, sc.col, format!("arc label {a} appears only once")));
    }
    // monotone renumbering to 1..2n
    let mut labels: Vec<u64> = seen.keys().copied().collect();
    labels.sort_unstable();
    let rank: HashMap<u64, ArcId> = labels.iter().enumerate().map(|(i, &l)| (l, i as ArcId + 1)).collect();
    let tuples: Vec<[ArcId; 4]> = raw.iter().map(|t| t.map(|l| rank[&l])).collect();
    let signs = orient(&tuples)?;
    let crossings: Vec<Crossing> = tuples.iter().zip(signs).map(|(t, s)| Crossing::new(*t, s)).collect();
    let mut d = Diagram::new(crossings, circles)?;
    let bp = match arc {
        Some(a) if d.n() == 0 => Some(a as ArcId),
        Some(a) => Some(*rank.get(&a).ok_or_else(|| LinkError::malformed(format!("basepoint arc {a} not in diagram")))?),
        None => None,
    };
    d = d.with_basepoint(bp)?;
    if let Some(f) = face {
        d = mark_face(d, f, outer)?;
    }
    Ok(d)
}

/// Choose a direction for every component from the under-strand data, falling back to
/// increasing labels for components that never pass under.
fn orient(tuples: &[[ArcId; 4]]) -> Result<Vec<Sign>, LinkError> {
    let na = 2 * tuples.len();
    let mut occ: Vec<Vec<Slot>> = vec![Vec::new(); na + 1];
    for (c, t) in tuples.iter().enumerate() {
        for pos in 0..4 {
            occ[t[pos] as usize].push(Slot { crossing: c, pos });
        }
    }
    let other = |a: ArcId, s: Slot| -> Slot {
        let o = &occ[a as usize];
        if o[0] == s {
            o[1]
        } else {
            o[0]
        }
    };
    let mut tail_of: Vec<Option<Slot>> = vec![None; na + 1];
    for start in 1..=na as ArcId {
        if tail_of[start as usize].is_some() {
            continue;
        }
        // walk one direction: (arc, tail, head)
        let mut walk = Vec::new();
        let t0 = occ[start as usize][0];
        let (mut a, mut t) = (start, t0);
        loop {
            let h = other(a, t);
            walk.push((a, t, h));
            let nt = Slot { crossing: h.crossing, pos: (h.pos + 2) % 4 };
            let na_ = tuples[nt.crossing][nt.pos];
            if na_ == start && nt == t0 {
                break;
            }
            a = na_;
            t = nt;
            if walk.len() > na {
                return Err(LinkError::InconsistentOrientation(format!("component through arc {start} does not close")));
            }
        }
        let ok = |w: &[(ArcId, Slot, Slot)]| w.iter().all(|&(_, t, h)| t.pos != 0 && h.pos != 2);
        let reversed: Vec<(ArcId, Slot, Slot)> = walk.iter().map(|&(a, t, h)| (a, h, t)).collect();
        let fwd_ok = ok(&walk);
        let rev_ok = ok(&reversed);
        let pick = match (fwd_ok, rev_ok) {
            (true, false) => &walk,
            (false, true) => &reversed,
            (false, false) => {
                return Err(LinkError::InconsistentOrientation(format!(
                    "component through arc {start} passes under in both directions"
                )))
            }
            (true, true) => {
                let incr = |seq: &mut dyn Iterator<Item = ArcId>| {
                    let v: Vec<ArcId> = seq.collect();
                    (0..v.len()).filter(|&i| v[(i + 1) % v.len()] == v[i] + 1).count()
                };
                let f = incr(&mut walk.iter().map(|w| w.0));
                let r = incr(&mut walk.iter().rev().map(|w| w.0));
                if r > f {
                    &reversed
                } else {
                    &walk
                }
            }
        };
        for &(a, t, _) in pick {
            tail_of[a as usize] = Some(t);
        }
    }
    Ok(tuples
        .iter()
        .enumerate()
        .map(|(c, t)| {
            let s1 = Slot { crossing: c, pos: 1 };
            if tail_of[t[1] as usize] == Some(s1) {
                Sign::Pos
            } else {
                Sign::Neg
            }
        })
        .collect())
}

/// Attach an annular marking at face `face`; the ray runs through the dual graph to `outer`
/// (default: the largest face of that projection component).
pub fn mark_face(d: Diagram, face: usize, outer: Option<usize>) -> Result<Diagram, LinkError> {
    let faces = d.faces();
    if face >= faces.count {
        return Err(LinkError::malformed(format!("face {face} does not exist ({} faces)", faces.count)));
    }
    let outer = match outer {
        Some(o) if o < faces.count => o,
        Some(o) => return Err(LinkError::malformed(format!("face {o} does not exist"))),
        None => d.outer_face_of_component(&faces, faces.component[face]),
    };
    // breadth-first search over faces, remembering the arc used to enter each face
    let mut prev: BTreeMap<usize, (usize, ArcId)> = BTreeMap::new();
    let mut queue = VecDeque::from([face]);
    let mut seen = vec![false; faces.count];
    seen[face] = true;
    while let Some(f) = queue.pop_front() {
        if f == outer {
            break;
        }
        for &(a, _) in &faces.boundary[f] {
            let i = a as usize - 1;
            let g = if faces.left[i] == f { faces.right[i] } else { faces.left[i] };
            if !seen[g] {
                seen[g] = true;
                prev.insert(g, (f, a));
                queue.push_back(g);
            }
        }
    }
    if !seen[outer] {
        return Err(LinkError::malformed("marking face and outer face lie in different projection components"));
    }
    let mut ray = Vec::new();
    let mut f = outer;
    while f != face {
        let (p, a) = prev[&f];
        // crossing from the arc's right side to its left counts +1
        let s = if faces.right[a as usize - 1] == p { 1 } else { -1 };
        ray.push((a, s));
        f = p;
    }
    ray.reverse();
    Ok(d.with_marking(Marking { face: Some(face), outer: Some(outer), ray, essential_free: 0 }))
}
