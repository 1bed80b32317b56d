use std::fmt;

use super::diagram::{ArcId, Crossing, Diagram, Marking, Sign};
use super::pd::relabel_along_components;
use super::LinkError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    /// 1-based generator index.
    pub index: usize,
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<BraidWord, LinkError> {
        if strands == 0 {
            return Err(LinkError::malformed("a braid needs at least one strand"));
        }
        for l in &letters {
            if l.index == 0 || l.index >= strands {
                return Err(LinkError::IndexOutOfRange { index: l.index, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Build from signed indices: `3` is σ₃, `-3` is σ₃⁻¹.
    pub fn from_ints(strands: usize, word: &[i32]) -> Result<BraidWord, LinkError> {
        let letters = word
            .iter()
            .map(|&i| BraidLetter {
                index: i.unsigned_abs() as usize,
                sign: if i > 0 { Sign::Pos } else { Sign::Neg },
            })
            .collect();
        BraidWord::new(strands, letters)
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.as_i64()).sum()
    }

    pub fn mirror(&self) -> BraidWord {
        let letters = self.letters.iter().map(|l| BraidLetter { index: l.index, sign: l.sign.flip() }).collect();
        BraidWord { strands: self.strands, letters }
    }

    pub fn inverse(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|l| BraidLetter { index: l.index, sign: l.sign.flip() }).collect();
        BraidWord { strands: self.strands, letters }
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    /// Conjugate ω β ω⁻¹.
    pub fn conjugate(&self, w: &BraidWord) -> BraidWord {
        w.concat(self).concat(&w.inverse())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b={};", self.strands)?;
        for l in &self.letters {
            let c = if l.sign == Sign::Pos { 's' } else { 'S' };
            write!(f, " {c}{}", l.index)?;
        }
        Ok(())
    }
}

/// Grammar: `b=<int>; (s<int>|S<int>)*`, whitespace-insensitive between tokens.
pub fn parse_braid(text: &str) -> Result<BraidWord, LinkError> {
    let (line, col0, body) = first_content_line(text);
    let err = |col: usize, msg: &str| LinkError::at(line, col0 + col, msg);
    let semi = body.find(';').ok_or_else(|| err(body.len() + 1, "expected ';' after strand count"))?;
    let head = &body[..semi];
    let lead = head.len() - head.trim_start().len();
    let h = head.trim();
    let num = h
        .strip_prefix("b=")
        .or_else(|| h.strip_prefix("b ="))
        .ok_or_else(|| err(lead + 1, "expected 'b=<strands>'"))?
        .trim();
    let strands: usize = num.parse().map_err(|_| err(lead + 3, "strand count is not a positive integer"))?;
    if strands == 0 {
        return Err(err(lead + 3, "strand count must be positive"));
    }
    let mut letters = Vec::new();
    for (at, tok) in tokens(&body[semi + 1..]) {
        let col = semi + 1 + at + 1;
        let mut chars = tok.chars();
        let sign = match chars.next() {
            Some('s') => Sign::Pos,
            Some('S') => Sign::Neg,
            _ => return Err(err(col, "expected generator 's<k>' or 'S<k>'")),
        };
        let index: usize = chars.as_str().parse().map_err(|_| err(col + 1, "generator index is not an integer"))?;
        if index == 0 || index >= strands {
            return Err(LinkError::IndexOutOfRange { index, strands });
        }
        letters.push(BraidLetter { index, sign });
    }
    Ok(BraidWord { strands, letters })
}

/// Whitespace-separated tokens with their byte offsets.
pub(crate) fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

/// Returns (1-based line, column offset, text) of the first line that is not blank or a comment.
pub(crate) fn first_content_line(text: &str) -> (usize, usize, &str) {
    for (i, l) in text.lines().enumerate() {
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        return (i + 1, 0, l);
    }
    (1, 0, "")
}

/// Closure of a braid with strands running upward and return strands on the right.
/// The marking is the axis face enclosed by all closure arcs.
pub fn braid_closure(b: &BraidWord) -> Diagram {
    let mut next: ArcId = 1;
    let mut fresh = || {
        let a = next;
        next += 1;
        a
    };
    let init: Vec<ArcId> = (0..b.strands).map(|_| fresh()).collect();
    let mut cur = init.clone();
    let mut crossings = Vec::with_capacity(b.letters.len());
    for l in &b.letters {
        let i = l.index - 1;
        let (in_l, in_r) = (cur[i], cur[i + 1]);
        let (out_l, out_r) = (fresh(), fresh());
        let arcs = match l.sign {
            Sign::Pos => [in_r, out_r, out_l, in_l],
            Sign::Neg => [in_l, in_r, out_r, out_l],
        };
        crossings.push(Crossing::new(arcs, l.sign));
        cur[i] = out_l;
        cur[i + 1] = out_r;
    }
    let used: Vec<bool> = (0..b.strands).map(|i| cur[i] != init[i]).collect();
    // identify the bottom end of each position with its top end
    let mut rename: std::collections::HashMap<ArcId, ArcId> = std::collections::HashMap::new();
    for i in 0..b.strands {
        if used[i] {
            rename.insert(init[i], cur[i]);
        }
    }
    for x in crossings.iter_mut() {
        for a in x.arcs.iter_mut() {
            if let Some(&r) = rename.get(a) {
                *a = r;
            }
        }
    }
    let free = used.iter().filter(|u| !**u).count();
    let (crossings, map) = relabel_along_components(&crossings);
    let closure: Vec<Option<ArcId>> = (0..b.strands).map(|i| used[i].then(|| map[&cur[i]])).collect();
    let d = Diagram::new(crossings, free).expect("braid closures are planar");
    let ray: Vec<(ArcId, i64)> = closure.iter().flatten().map(|&a| (a, 1)).collect();
    let (face, outer) = if ray.is_empty() {
        (None, None)
    } else {
        let faces = d.faces();
        let inner = closure.iter().rev().flatten().next().unwrap();
        let outermost = closure.iter().flatten().next().unwrap();
        (Some(faces.right[*inner as usize - 1]), Some(faces.left[*outermost as usize - 1]))
    };
    d.with_marking(Marking { face, outer, ray, essential_free: free })
}
