use std::collections::HashMap;

use super::diagram::{ArcId, Crossing, Diagram, Sign, Slot};
use super::pd::relabel_along_components;
use super::LinkError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// Add a kink on `arc` (arc 0 means a free circle). `under_first`: the strand passes
    /// under on its first visit to the new crossing.
    R1Add { arc: ArcId, sign: Sign, under_first: bool },
    R1Remove { crossing: usize },
    /// Push arc `over` across arc `under` inside `face`.
    R2Add { face: usize, over: ArcId, under: ArcId },
    R2Remove { face: usize },
    R3 { face: usize },
}

pub fn apply_reidemeister(d: &Diagram, mv: Move) -> Result<Diagram, LinkError> {
    let illegal = || LinkError::IllegalSite(format!("{mv:?}"));
    let out = match mv {
        Move::R1Add { arc, sign, under_first } => r1_add(d, arc, sign, under_first).ok_or_else(illegal)?,
        Move::R1Remove { crossing } => r1_remove(d, crossing).ok_or_else(illegal)?,
        Move::R2Add { face, over, under } => r2_add(d, face, over, under).ok_or_else(illegal)?,
        Move::R2Remove { face } => r2_remove(d, face).ok_or_else(illegal)?,
        Move::R3 { face } => r3(d, face).ok_or_else(illegal)?,
    };
    Ok(out)
}

/// Every legal site of every move kind.
pub fn legal_sites(d: &Diagram) -> Vec<Move> {
    let mut out = Vec::new();
    let arcs: Vec<ArcId> = if d.n() == 0 { if d.free_circles() > 0 { vec![0] } else { vec![] } } else { (1..=d.num_arcs() as ArcId).collect() };
    for &arc in &arcs {
        for sign in [Sign::Pos, Sign::Neg] {
            for under_first in [true, false] {
                out.push(Move::R1Add { arc, sign, under_first });
            }
        }
    }
    for c in 0..d.n() {
        if kink_loop(d, c).is_some() {
            out.push(Move::R1Remove { crossing: c });
        }
    }
    if d.n() > 0 {
        let faces = d.faces();
        for f in 0..faces.count {
            let b = &faces.boundary[f];
            for &(e, _) in b {
                for &(g, _) in b {
                    if e != g {
                        out.push(Move::R2Add { face: f, over: e, under: g });
                    }
                }
            }
            if r2_remove(d, f).is_some() {
                out.push(Move::R2Remove { face: f });
            }
            if r3(d, f).is_some() {
                out.push(Move::R3 { face: f });
            }
        }
    }
    out
}

fn finish(d: &Diagram, crossings: Vec<Crossing>, free: usize) -> Option<Diagram> {
    let (xs, map) = relabel_along_components(&crossings);
    let out = Diagram::new(xs, free).ok()?;
    let bp = d.basepoint().and_then(|a| map.get(&a).copied());
    out.with_basepoint(bp).ok()
}

fn r1_add(d: &Diagram, arc: ArcId, sign: Sign, under_first: bool) -> Option<Diagram> {
    let mut xs = d.crossings().to_vec();
    let mut free = d.free_circles();
    let (e_in, e_out, l) = if arc == 0 {
        if d.n() > 0 || free == 0 {
            return None;
        }
        free -= 1;
        (1, 1, 2)
    } else {
        if arc as usize > d.num_arcs() {
            return None;
        }
        let h = d.head(arc);
        let na = d.num_arcs() as ArcId;
        xs[h.crossing].arcs[h.pos] = na + 2;
        (arc, na + 2, na + 1)
    };
    let arcs = match (under_first, sign) {
        (true, Sign::Pos) => [e_in, e_out, l, l],
        (true, Sign::Neg) => [e_in, l, l, e_out],
        (false, Sign::Pos) => [l, l, e_out, e_in],
        (false, Sign::Neg) => [l, e_in, e_out, l],
    };
    xs.push(Crossing::new(arcs, sign));
    finish(d, xs, free)
}

/// Slots of a crossing holding a kink loop: two adjacent slots with the same arc.
fn kink_loop(d: &Diagram, c: usize) -> Option<usize> {
    let a = d.crossings()[c].arcs;
    (0..4).find(|&k| a[k] == a[(k + 1) % 4])
}

/// Remove crossings, joining labels per `unions`; closed strands left without crossings
/// become free circles.
fn remove_crossings(d: &Diagram, remove: &[usize], unions: &[(ArcId, ArcId)]) -> Option<Diagram> {
    let mut parent: HashMap<ArcId, ArcId> = HashMap::new();
    fn root(p: &mut HashMap<ArcId, ArcId>, mut a: ArcId) -> ArcId {
        while let Some(&b) = p.get(&a) {
            if b == a {
                break;
            }
            a = b;
        }
        a
    }
    for &(a, b) in unions {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra != rb {
            parent.insert(ra.max(rb), ra.min(rb));
        }
    }
    let xs: Vec<Crossing> = d
        .crossings()
        .iter()
        .enumerate()
        .filter(|(c, _)| !remove.contains(c))
        .map(|(_, x)| Crossing::new(x.arcs.map(|a| root(&mut parent, a)), x.sign))
        .collect();
    let used: std::collections::HashSet<ArcId> = xs.iter().flat_map(|x| x.arcs).collect();
    let mut closed: Vec<ArcId> = unions.iter().flat_map(|&(a, b)| [a, b]).map(|a| root(&mut parent, a)).filter(|r| !used.contains(r)).collect();
    closed.sort_unstable();
    closed.dedup();
    finish(d, xs, d.free_circles() + closed.len())
}

fn r1_remove(d: &Diagram, c: usize) -> Option<Diagram> {
    if c >= d.n() {
        return None;
    }
    let k = kink_loop(d, c)?;
    let a = d.crossings()[c].arcs;
    let (p, q) = (a[(k + 2) % 4], a[(k + 3) % 4]);
    remove_crossings(d, &[c], &[(p, q)])
}

/// Half-edge at a new crossing: direction in degrees, label, over strand, incoming.
type HalfEdge = (i32, ArcId, bool, bool);

fn crossing_from_geometry(mut h: [HalfEdge; 4]) -> Crossing {
    h.sort_by_key(|e| e.0);
    let start = (0..4).find(|&i| !h[i].2 && h[i].3).expect("under strand has an incoming half-edge");
    let arcs = [0, 1, 2, 3].map(|k| h[(start + k) % 4].1);
    let over_in_at_3 = h[(start + 3) % 4].2 && h[(start + 3) % 4].3;
    Crossing::new(arcs, if over_in_at_3 { Sign::Pos } else { Sign::Neg })
}

fn r2_add(d: &Diagram, face: usize, e: ArcId, f: ArcId) -> Option<Diagram> {
    if d.n() == 0 || e == f {
        return None;
    }
    let faces = d.faces();
    if face >= faces.count {
        return None;
    }
    let b = &faces.boundary[face];
    let fe = b.iter().find(|x| x.0 == e)?.1;
    let ff = b.iter().find(|x| x.0 == f)?.1;
    // Local model: the face is the strip between e (above) and f (below); traversing the
    // boundary with the face on the left runs e westward and f eastward.
    let e_east = !fe;
    let f_east = ff;
    let na = d.num_arcs() as ArcId;
    let (em, eh, fm, fh) = (na + 1, na + 2, na + 3, na + 4);
    let mut xs = d.crossings().to_vec();
    let he = d.head(e);
    let hf = d.head(f);
    xs[he.crossing].arcs[he.pos] = eh;
    xs[hf.crossing].arcs[hf.pos] = fh;
    let (e_w, e_e) = if e_east { (e, eh) } else { (eh, e) };
    let (f_w, f_e) = if f_east { (f, fh) } else { (fh, f) };
    let p = crossing_from_geometry([(117, e_w, true, e_east), (315, em, true, !e_east), (180, f_w, false, f_east), (0, fm, false, !f_east)]);
    let q = crossing_from_geometry([(225, em, true, e_east), (63, e_e, true, !e_east), (180, fm, false, f_east), (0, f_e, false, !f_east)]);
    xs.push(p);
    xs.push(q);
    finish(d, xs, d.free_circles())
}

/// Incoming and outgoing neighbours of a side arc along its strand.
fn strand_pieces(d: &Diagram, s: ArcId) -> (Slot, Slot, ArcId, ArcId) {
    let t = d.tail(s);
    let h = d.head(s);
    let pin = d.arc_at(Slot { crossing: t.crossing, pos: (t.pos + 2) % 4 });
    let pout = d.arc_at(Slot { crossing: h.crossing, pos: (h.pos + 2) % 4 });
    (t, h, pin, pout)
}

fn r2_remove(d: &Diagram, face: usize) -> Option<Diagram> {
    if d.n() < 2 {
        return None;
    }
    let faces = d.faces();
    if face >= faces.count || faces.boundary[face].len() != 2 {
        return None;
    }
    let (s1, s2) = (faces.boundary[face][0].0, faces.boundary[face][1].0);
    if s1 == s2 {
        return None;
    }
    let (t1, h1, in1, out1) = strand_pieces(d, s1);
    let (t2, h2, in2, out2) = strand_pieces(d, s2);
    if t1.crossing == h1.crossing {
        return None;
    }
    // s1 must lie on the same level at both crossings
    if t1.pos % 2 != h1.pos % 2 {
        return None;
    }
    let cs = [t1.crossing, h1.crossing];
    if !cs.contains(&t2.crossing) || !cs.contains(&h2.crossing) {
        return None;
    }
    remove_crossings(d, &cs, &[(in1, out1), (in2, out2)])
}

fn r3(d: &Diagram, face: usize) -> Option<Diagram> {
    if d.n() < 3 {
        return None;
    }
    let faces = d.faces();
    if face >= faces.count || faces.boundary[face].len() != 3 {
        return None;
    }
    let sides: Vec<ArcId> = faces.boundary[face].iter().map(|x| x.0).collect();
    let mut cs: Vec<usize> = faces.corners[face].iter().map(|s| s.crossing).collect();
    cs.sort_unstable();
    cs.dedup();
    if cs.len() != 3 || sides[0] == sides[1] || sides[1] == sides[2] || sides[0] == sides[2] {
        return None;
    }
    let pieces: Vec<_> = sides.iter().map(|&s| strand_pieces(d, s)).collect();
    // some strand must pass over at both of its crossings
    if !pieces.iter().any(|(t, h, _, _)| t.pos % 2 == 1 && h.pos % 2 == 1) {
        return None;
    }
    for (_, _, pin, pout) in &pieces {
        if sides.contains(pin) || sides.contains(pout) {
            return None;
        }
    }
    let mut xs = d.crossings().to_vec();
    for (k, (t, h, pin, pout)) in pieces.iter().enumerate() {
        let s = sides[k];
        xs[h.crossing].arcs[h.pos] = *pin;
        xs[h.crossing].arcs[(h.pos + 2) % 4] = s;
        xs[t.crossing].arcs[(t.pos + 2) % 4] = s;
        xs[t.crossing].arcs[t.pos] = *pout;
    }
    let out = finish(d, xs, d.free_circles())?;
    (out.n() == d.n() && out.writhe() == d.writhe()).then_some(out)
}
