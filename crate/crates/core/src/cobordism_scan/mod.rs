//! The scanning engine: complexes of flat tangles and dotted cobordisms, simplified by
//! delooping and Gaussian elimination as each crossing is added.

mod cobordism;
mod complex;
mod scan;
mod tangle;

pub use cobordism::{reduce_cobordism, reduce_cobordism_randomly, DottedCobordism, Mask, RawComponent, RawSurface};
pub use complex::{TangleComplex, TangleObject};
pub use scan::{scan_compute, scan_order, scan_tangle_complex, tensor_crossing};
pub use tangle::{compose, FlatTangle};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("object {0} has no closed circle to deloop")]
    NoCircle(usize),
    #[error("arrow {0} -> {1} is not ± an identity cobordism")]
    NotInvertible(usize, usize),
    #[error("arrow {0} -> {1} does not have quantum degree 0")]
    BadDegree(usize, usize),
    #[error("d² ≠ 0 between objects {0} and {1}")]
    NotAComplex(usize, usize),
    #[error("the dotted cobordism category only models the Khovanov theory")]
    UnsupportedTheory,
}
