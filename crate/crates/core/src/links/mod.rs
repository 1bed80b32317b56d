//! Link presentations: braid words, PD codes, oriented diagrams and their resolutions.

mod braid;
mod diagram;
mod moves;
mod pd;
mod resolution;

pub use braid::{braid_closure, parse_braid, BraidLetter, BraidWord};
pub use diagram::{ArcId, Crossing, Diagram, Faces, Marking, Sign, Slot};
pub use moves::{apply_reidemeister, legal_sites, Move};
pub use pd::{canonical_form, emit_pd, isomorphic, parse_pd, relabel_along_components};
pub use resolution::{edge_info, oriented_resolution, resolve, Bitstring, EdgeInfo, EdgeKind, Resolution};
pub(crate) use resolution::edge_between;
pub use pd::mark_face;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("malformed input at line {line}, column {col}: {msg}")]
    Malformed { line: usize, col: usize, msg: String },
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("inconsistent orientation: {0}")]
    InconsistentOrientation(String),
    #[error("illegal site for {0}")]
    IllegalSite(String),
    #[error("bit {0} is already 1")]
    BitAlreadyOne(usize),
}

impl LinkError {
    pub(crate) fn malformed(msg: impl Into<String>) -> LinkError {
        LinkError::Malformed { line: 0, col: 0, msg: msg.into() }
    }

    pub(crate) fn at(line: usize, col: usize, msg: impl Into<String>) -> LinkError {
        LinkError::Malformed { line, col, msg: msg.into() }
    }
}
