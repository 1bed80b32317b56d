use serde_json::Value;

use crate::chain::BigradedGroup;

#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
}

impl Report {
    /// Keys are emitted in sorted order, so equal reports serialize to equal bytes.
    pub fn json_string(&self) -> String {
        serde_json::to_string_pretty(&self.json).expect("serializable")
    }
}

/// One-line form `i,j:R^r+Z/t ...` sorted by (j, i); used for golden values.
pub fn kh_summary(g: &BigradedGroup) -> String {
    let mut keys: Vec<(i64, i64)> = g.groups.keys().copied().collect();
    keys.sort_by_key(|&(i, j)| (j, i));
    let parts: Vec<String> = keys
        .into_iter()
        .map(|(i, j)| {
            let e = &g.groups[&(i, j)];
            let mut s = Vec::new();
            if e.rank > 0 {
                s.push(if e.rank == 1 { g.ring.to_string() } else { format!("{}^{}", g.ring, e.rank) });
            }
            s.extend(e.torsion.iter().map(|t| format!("Z/{t}")));
            format!("{i},{j}:{}", s.join("+"))
        })
        .collect();
    parts.join(" ")
}
