//! Cube-of-resolutions complexes for rank-2 Frobenius algebras.

mod cube;
mod spec;

pub use cube::{build_cube_complex, CubeComplex, GenInfo};
pub use spec::{builtin_spec, FrobeniusSpec, Tensor2, Theory, Vec2};

use thiserror::Error;

use crate::chain::{homology, BigradedGroup, ChainError, Ring};
use crate::links::{ArcId, Diagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CubeError {
    #[error("reduced homology needs a basepoint on an arc of the diagram")]
    MissingBasepoint,
    #[error("reduced quotient is not a subcomplex when X² has a unit component")]
    ReducedUnsupported,
    #[error("{0} crossings is beyond the naive cube engine")]
    TooLarge(usize),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

pub fn khovanov_homology(d: &Diagram, ring: Ring) -> Result<BigradedGroup, CubeError> {
    let spec = builtin_spec(Theory::Kh).with_ring(ring);
    let c = build_cube_complex(d, &spec, None)?;
    Ok(homology(&c.complex)?)
}

/// Reduced Khovanov homology with the given basepoint arc (arc 0 for a crossingless diagram).
pub fn reduced_khovanov(d: &Diagram, basepoint: ArcId, ring: Ring) -> Result<BigradedGroup, CubeError> {
    let spec = builtin_spec(Theory::Kh).with_ring(ring);
    let c = build_cube_complex(d, &spec, Some(basepoint))?;
    Ok(homology(&c.complex)?)
}

/// min over the rational support of Kh of δ = j − i; an upper bound for the maximal
/// Thurston–Bennequin number. `None` for the empty link.
pub fn ng_tb_bound(d: &Diagram) -> Result<Option<i64>, CubeError> {
    let kh = khovanov_homology(d, Ring::Q)?;
    Ok(kh.groups.iter().filter(|(_, g)| g.rank > 0).map(|(&(i, j), _)| j - i).min())
}
