use std::path::Path;

use crate::links::{braid_closure, emit_pd, parse_braid, parse_pd, BraidWord, Diagram, LinkError};

/// A parsed link presentation. Braids keep their word so that ψ and κ can be computed.
#[derive(Clone, Debug)]
pub struct LinkInput {
    pub diagram: Diagram,
    pub braid: Option<BraidWord>,
    /// normalised text of the presentation
    pub text: String,
}

fn looks_like_braid(text: &str) -> bool {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).is_some_and(|l| l.starts_with('b'))
}

pub fn from_braid(text: &str) -> Result<LinkInput, LinkError> {
    let b = parse_braid(text)?;
    Ok(LinkInput { diagram: braid_closure(&b), text: b.to_string(), braid: Some(b) })
}

pub fn from_pd(text: &str) -> Result<LinkInput, LinkError> {
    let d = parse_pd(text)?;
    Ok(LinkInput { text: emit_pd(&d).trim_end().to_string(), diagram: d, braid: None })
}

/// Braid or PD, decided by the first non-comment line.
pub fn from_text(text: &str) -> Result<LinkInput, LinkError> {
    if looks_like_braid(text) {
        from_braid(text)
    } else {
        from_pd(text)
    }
}

pub fn read_file(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// `#! key = value` lines embedded in an input file.
pub fn golden_values(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix("#!"))
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}
