use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;

use super::scalar::Scalar;

/// Row-major sparse matrix; each row is sorted by column and holds no zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<T> {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> SparseMatrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    /// Build from (row, col, value) triples; repeated positions are summed.
    pub fn from_triples(nrows: usize, ncols: usize, triples: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triples {
            assert!(r < nrows && c < ncols, "entry ({r},{c}) outside {nrows}x{ncols}");
            rows[r].push((c, v));
        }
        for row in rows.iter_mut() {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, T)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv = lv.checked_add(&v).expect("overflow while assembling matrix"),
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_dense(d: &[Vec<T>]) -> Self {
        let nrows = d.len();
        let ncols = d.first().map_or(0, |r| r.len());
        let triples = d.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone())));
        SparseMatrix::from_triples(nrows, ncols, triples)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SparseMatrix<U> {
        let triples = self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v))).map(|(r, c, v)| (r, c, f(v)));
        SparseMatrix::from_triples(self.nrows, self.ncols, triples)
    }
}

#[derive(Debug)]
pub(crate) struct Overflow;

/// row_a - m * row_b, both sorted.
fn axpy<T: Scalar>(a: &[(usize, T)], m: &T, b: &[(usize, T)]) -> Result<Vec<(usize, T)>, Overflow> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else {
            let t = m.checked_mul(&b[j].1).ok_or(Overflow)?;
            if i < a.len() && a[i].0 == b[j].0 {
                let v = a[i].1.checked_sub(&t).ok_or(Overflow)?;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
            } else {
                out.push((b[j].0, t.neg()));
            }
            j += 1;
        }
    }
    Ok(out)
}

/// Outcome of eliminating every unit pivot reachable by Markowitz-style search.
pub(crate) struct Elimination<T> {
    pub unit_pivots: usize,
    /// What is left once no unit entries remain.
    pub rest: Vec<Vec<(usize, T)>>,
}

/// Gaussian elimination on unit pivots, choosing at each step the sparsest column and,
/// within it, the sparsest row. Since pivots are units the pivot row and column can be
/// dropped without affecting the rest.
pub(crate) fn eliminate_units<T: Scalar>(m: &SparseMatrix<T>) -> Result<Elimination<T>, Overflow> {
    let mut rows: Vec<Vec<(usize, T)>> = m.rows.clone();
    let mut cols: Vec<HashSet<usize>> = vec![HashSet::new(); m.ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            cols[*c].insert(r);
        }
    }
    let mut units = 0;
    loop {
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = cols.iter().enumerate().filter(|(_, s)| !s.is_empty()).map(|(c, s)| Reverse((s.len(), c))).collect();
        let mut progressed = false;
        while let Some(Reverse((len, c))) = heap.pop() {
            if cols[c].len() != len {
                if !cols[c].is_empty() {
                    heap.push(Reverse((cols[c].len(), c)));
                }
                continue;
            }
            let pivot_row = cols[c]
                .iter()
                .copied()
                .filter(|&r| rows[r].iter().find(|e| e.0 == c).map_or(false, |e| e.1.is_unit()))
                .min_by_key(|&r| (rows[r].len(), r));
            let Some(r) = pivot_row else { continue };
            let prow = std::mem::take(&mut rows[r]);
            let pval = prow.iter().find(|e| e.0 == c).unwrap().1.clone();
            let inv = pval.unit_inverse();
            for (cc, _) in &prow {
                cols[*cc].remove(&r);
            }
            let others: Vec<usize> = cols[c].iter().copied().collect();
            for r2 in others {
                let a = rows[r2].iter().find(|e| e.0 == c).unwrap().1.clone();
                let mult = a.checked_mul(&inv).ok_or(Overflow)?;
                let new = axpy(&rows[r2], &mult, &prow)?;
                let old: HashSet<usize> = rows[r2].iter().map(|e| e.0).collect();
                let now: HashSet<usize> = new.iter().map(|e| e.0).collect();
                for cc in old.difference(&now) {
                    cols[*cc].remove(&r2);
                }
                for cc in now.difference(&old) {
                    cols[*cc].insert(r2);
                    heap.push(Reverse((cols[*cc].len(), *cc)));
                }
                rows[r2] = new;
            }
            debug_assert!(cols[c].is_empty());
            units += 1;
            progressed = true;
            for (cc, _) in &prow {
                if !cols[*cc].is_empty() {
                    heap.push(Reverse((cols[*cc].len(), *cc)));
                }
            }
        }
        if !progressed {
            break;
        }
    }
    Ok(Elimination { unit_pivots: units, rest: rows })
}

/// Smith form diagonal of a small dense integer matrix (nonzero entries, unnormalised).
fn dense_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    use num_integer::Integer;
    use num_traits::Signed;
    let nz = |x: &BigInt| !num_traits::Zero::is_zero(x);
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if nz(&a[i][j]) && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if nz(&a[i][t]) {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..nc {
                        let v = &a[i][j] - &q * &a[t][j];
                        a[i][j] = v;
                    }
                    dirty |= nz(&a[i][t]);
                }
            }
            for j in t + 1..nc {
                if nz(&a[t][j]) {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..nr {
                        let v = &a[i][j] - &q * &a[i][t];
                        a[i][j] = v;
                    }
                    dirty |= nz(&a[t][j]);
                }
            }
            if !dirty {
                break;
            }
            // move the smallest remainder in row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..nr {
                if nz(&a[i][t]) && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..nc {
                if nz(&a[t][j]) && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Rewrite a multiset of nonzero diagonal entries into invariant factors d₁ | d₂ | ….
fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    d.sort();
    let k = d.len();
    for i in 0..k {
        for j in i + 1..k {
            if !(&d[j] % &d[i] == BigInt::from(0)) {
                let g = d[i].gcd(&d[j]);
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d.sort();
    d
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// Invariant factors, ascending, each dividing the next.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

fn snf_with<T: Scalar>(m: &SparseMatrix<T>, to_big: impl Fn(&T) -> BigInt) -> Result<Snf, Overflow> {
    let e = eliminate_units(m)?;
    let live_rows: Vec<&Vec<(usize, T)>> = e.rest.iter().filter(|r| !r.is_empty()).collect();
    let mut live_cols: Vec<usize> = live_rows.iter().flat_map(|r| r.iter().map(|x| x.0)).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let dense: Vec<Vec<BigInt>> = live_rows
        .iter()
        .map(|r| {
            let mut v = vec![BigInt::from(0); live_cols.len()];
            for (c, x) in r.iter() {
                v[live_cols.binary_search(c).unwrap()] = to_big(x);
            }
            v
        })
        .collect();
    let mut factors = vec![BigInt::from(1); e.unit_pivots];
    factors.extend(invariant_factors(dense_diagonal(dense)));
    let factors = invariant_factors(factors);
    Ok(Snf { rank: factors.len(), factors })
}

/// Smith normal form over ℤ: machine integers first, big integers on overflow.
pub fn smith_normal_form(m: &SparseMatrix<i64>) -> Snf {
    match snf_with(m, |x| BigInt::from(*x)) {
        Ok(s) => s,
        Err(Overflow) => snf_with(&m.map(|x| BigInt::from(*x)), |x| x.clone()).expect("big integers do not overflow"),
    }
}

/// Rank over a field (every nonzero entry is a pivot candidate).
pub fn field_rank<T: Scalar>(m: &SparseMatrix<T>) -> usize {
    let e = eliminate_units(m).expect("field arithmetic does not overflow");
    debug_assert!(e.rest.iter().all(|r| r.is_empty()));
    e.unit_pivots
}
