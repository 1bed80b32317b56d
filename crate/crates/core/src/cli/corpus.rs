use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::input::{from_text, golden_values, read_file};
use super::{kh_summary, CliError};
use crate::annular::{akh_homology, kappa, plamenevskaya_cycle, psi_nonzero, KappaMethod};
use crate::chain::{homology, Ring};
use crate::cobordism_scan::scan_compute;
use crate::frobenius_cube::{build_cube_complex, builtin_spec, ng_tb_bound, Theory};
use crate::laurent::unnormalized_jones;
use crate::lee_s::{lee_homology, s_levels};

/// Largest diagram on which the corpus runner also cross-checks the scanning engine.
const SCAN_CHECK_CROSSINGS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JobOutcome {
    Pass { checked: usize },
    Mismatch(Vec<String>),
    Failed { code: i32, message: String },
}

#[derive(Clone, Debug)]
pub struct CorpusSummary {
    pub jobs: Vec<(String, JobOutcome)>,
}

impl CorpusSummary {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, o) in &self.jobs {
            match o {
                JobOutcome::Pass { checked } => out.push_str(&format!("PASS  {name} ({checked} golden values)\n")),
                JobOutcome::Mismatch(m) => {
                    out.push_str(&format!("FAIL  {name}\n"));
                    for line in m {
                        out.push_str(&format!("      {line}\n"));
                    }
                }
                JobOutcome::Failed { code, message } => out.push_str(&format!("ERROR {name} (exit {code}): {message}\n")),
            }
        }
        let pass = self.jobs.iter().filter(|(_, o)| matches!(o, JobOutcome::Pass { .. })).count();
        out.push_str(&format!("{} jobs, {pass} passed\n", self.jobs.len()));
        out
    }

    /// 1 on any golden mismatch, otherwise the worst job error code, otherwise 0.
    pub fn exit_code(&self) -> i32 {
        if self.jobs.iter().any(|(_, o)| matches!(o, JobOutcome::Mismatch(_))) {
            return 1;
        }
        self.jobs.iter().filter_map(|(_, o)| if let JobOutcome::Failed { code, .. } = o { Some(*code) } else { None }).max().unwrap_or(0)
    }
}

/// Every invariant the runner knows, as strings keyed like the golden values.
pub fn invariant_suite(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let inp = from_text(text)?;
    let d = &inp.diagram;
    let mut v = BTreeMap::new();
    let jones = unnormalized_jones(d);
    v.insert("jones".to_string(), jones.to_string());
    v.insert("components".to_string(), d.num_components().to_string());
    let cube = build_cube_complex(d, &builtin_spec(Theory::Kh), None)?;
    let kh = homology(&cube.complex)?;
    if cube.complex.graded_euler_char() != jones {
        return Err(CliError::Internal("graded Euler characteristic differs from the Jones polynomial".into()));
    }
    if d.n() <= SCAN_CHECK_CROSSINGS {
        let scanned = homology(&scan_compute(d, &builtin_spec(Theory::Kh))?)?;
        if scanned != kh {
            return Err(CliError::Internal("scan engine disagrees with the cube engine".into()));
        }
    }
    v.insert("kh".to_string(), kh_summary(&kh));
    v.insert("kh_rank".to_string(), kh.total_rank().to_string());
    let lee: usize = lee_homology(d)?.values().sum();
    v.insert("lee_dim".to_string(), lee.to_string());
    if d.num_components() == 1 {
        v.insert("s".to_string(), s_levels(d)?.s.to_string());
    }
    v.insert("ngbound".to_string(), ng_tb_bound(d)?.map_or("none".into(), |b| b.to_string()));
    if d.marking().is_some() {
        v.insert("akh_rank_f2".to_string(), akh_homology(d, Ring::F2)?.total_rank().to_string());
    }
    if let Some(b) = &inp.braid {
        let p = plamenevskaya_cycle(b, Ring::Z)?;
        v.insert("psi_gr_q".to_string(), p.gr_q().to_string());
        v.insert("psi".to_string(), if psi_nonzero(b, Ring::Z)? { "nonzero" } else { "zero" }.to_string());
        let k = kappa(b, Ring::F2, KappaMethod::Direct)?;
        if k != kappa(b, Ring::F2, KappaMethod::PageCount)? {
            return Err(CliError::Internal("kappa methods disagree".into()));
        }
        v.insert("kappa".to_string(), k.to_string());
    }
    Ok(v)
}

fn run_job(path: &Path) -> (Value, JobOutcome) {
    let text = match read_file(path) {
        Ok(t) => t,
        Err(e) => return (json!({"schema": 1, "error": e}), JobOutcome::Failed { code: 2, message: e }),
    };
    let golden = golden_values(&text);
    match invariant_suite(&text) {
        Err(e) => {
            let j = json!({"schema": 1, "error": e.to_string(), "exit_code": e.exit_code()});
            (j, JobOutcome::Failed { code: e.exit_code(), message: e.to_string() })
        }
        Ok(vals) => {
            let mismatches: Vec<String> = golden
                .iter()
                .filter(|(k, want)| vals.get(k) != Some(want))
                .map(|(k, want)| format!("{k}: expected {want}, got {}", vals.get(k).map_or("(not computed)", |s| s.as_str())))
                .collect();
            let j = json!({"schema": 1, "invariants": vals, "golden_checked": golden.len(), "mismatches": mismatches});
            let o = if mismatches.is_empty() { JobOutcome::Pass { checked: golden.len() } } else { JobOutcome::Mismatch(mismatches) };
            (j, o)
        }
    }
}

/// Runs every regular, non-hidden, non-JSON file of `dir` (sorted by name).
pub fn run_corpus(dir: &Path, out: Option<&Path>) -> Result<CorpusSummary, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .filter(|p| p.file_name().and_then(|n| n.to_str()).is_some_and(|n| !n.starts_with('.')))
        .filter(|p| p.extension().is_none_or(|e| e != "json"))
        .collect();
    files.sort();
    if let Some(o) = out {
        std::fs::create_dir_all(o).map_err(|e| CliError::Input(format!("{}: {e}", o.display())))?;
    }
    let results: Vec<(String, Value, JobOutcome)> = files
        .par_iter()
        .map(|p| {
            let (j, o) = run_job(p);
            (p.file_name().expect("file").to_string_lossy().into_owned(), j, o)
        })
        .collect();
    let mut jobs = Vec::new();
    for (name, j, o) in results {
        if let Some(o) = out {
            let stem = Path::new(&name).file_stem().expect("file").to_string_lossy().into_owned();
            let body = serde_json::to_string_pretty(&j).expect("serializable");
            std::fs::write(o.join(format!("{stem}.json")), body + "\n").map_err(|e| CliError::Input(format!("{}: {e}", o.display())))?;
        }
        jobs.push((name, o));
    }
    Ok(CorpusSummary { jobs })
}
