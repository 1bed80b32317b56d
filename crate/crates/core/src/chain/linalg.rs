//! Exact linear algebra over a field on sparse vectors indexed by `usize`.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

pub type SparseVec<F> = BTreeMap<usize, F>;

pub fn sparse_from<F: Field>(ctx: F::Ctx, v: &[(usize, i64)]) -> SparseVec<F> {
    let mut out = SparseVec::new();
    for &(i, c) in v {
        add_to(&mut out, i, F::from_i64(ctx, c));
    }
    out
}

fn add_to<F: Scalar>(v: &mut SparseVec<F>, i: usize, c: F) {
    let e = v.entry(i).or_insert_with(F::zero);
    *e = e.checked_add(&c).expect("field arithmetic");
    if e.is_zero() {
        v.remove(&i);
    }
}

/// Echelon basis of a subspace; each stored vector's smallest index is its pivot and
/// pivots are distinct.
#[derive(Clone, Debug, Default)]
pub struct ReducedBasis<F> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> ReducedBasis<F> {
    pub fn new() -> Self {
        ReducedBasis { rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Subtract basis vectors until no index of `v` is a pivot.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        let mut from = 0;
        loop {
            let Some((&i, c)) = v.range(from..).find(|(i, _)| self.rows.contains_key(i)) else { break };
            let row = &self.rows[&i];
            let m = c.checked_mul(&row[&i].unit_inverse()).expect("field arithmetic");
            for (&j, x) in row {
                add_to(&mut v, j, m.checked_mul(x).expect("field arithmetic").neg());
            }
            from = i + 1;
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(v);
        match r.keys().next() {
            Some(&p) => {
                self.rows.insert(p, r);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }
}
