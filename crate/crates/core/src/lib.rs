//! Khovanov homology and its relatives, computed from braid words and PD codes.

pub mod annular;
pub mod chain;
pub mod cli;
pub mod cobordism_scan;
pub mod frobenius_cube;
pub mod laurent;
pub mod lee_s;
pub mod links;
pub mod spectral;
