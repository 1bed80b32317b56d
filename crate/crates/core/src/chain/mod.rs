//! Bigraded chain complexes, Smith normal form and homology over ℤ, ℚ and 𝔽_p.

mod complex;
mod cone;
mod homology;
pub mod linalg;
mod scalar;
mod sparse;

pub use complex::{BigradedComplex, Generator};
pub use cone::{mapping_cone, ChainMap, Cone};
pub use homology::{homology, ungraded_homology, BigradedGroup, GroupEntry};
pub(crate) use homology::homology_by;
pub use scalar::{Field, Fp, Rat, Ring, Scalar};
pub use sparse::{field_rank, smith_normal_form, Snf, SparseMatrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("d² ≠ 0: generator {from} reaches {to} with nonzero coefficient")]
    NotAComplex { from: usize, to: usize },
    #[error("arrow {from} -> {to} has the wrong bidegree")]
    BadDegree { from: usize, to: usize },
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("complex is only filtered, not graded")]
    NotGraded,
}

/// Is `v` in the ℤ-span of the columns `cols` (all vectors over the same index set)?
pub fn in_integer_span(nrows: usize, cols: &[Vec<(usize, i64)>], v: &[(usize, i64)]) -> bool {
    let triples = |extra: bool| {
        let mut t: Vec<(usize, usize, i64)> = cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, x)| (r, c, x))).collect();
        if extra {
            t.extend(v.iter().map(|&(r, x)| (r, cols.len(), x)));
        }
        t
    };
    let a = smith_normal_form(&SparseMatrix::from_triples(nrows, cols.len(), triples(false)));
    let b = smith_normal_form(&SparseMatrix::from_triples(nrows, cols.len() + 1, triples(true)));
    // same rank and same lattice index inside the common saturation
    a == b
}
