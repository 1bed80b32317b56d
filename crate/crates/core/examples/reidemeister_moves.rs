//! Reidemeister moves on PD diagrams and invariance of Khovanov homology.

use khovanov::chain::Ring;
use khovanov::frobenius_cube::khovanov_homology;
use khovanov::links::{apply_reidemeister, emit_pd, legal_sites, parse_pd, Move};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")?;
    let before = khovanov_homology(&d, Ring::Z)?;
    let sites = legal_sites(&d);
    let count = |pred: fn(&Move) -> bool| sites.iter().filter(|m| pred(m)).count();
    println!(
        "{} legal sites: {} R1, {} R2, {} R3",
        sites.len(),
        count(|m| matches!(m, Move::R1Add { .. } | Move::R1Remove { .. })),
        count(|m| matches!(m, Move::R2Add { .. } | Move::R2Remove { .. })),
        count(|m| matches!(m, Move::R3 { .. }))
    );
    for mv in sites.iter().step_by(7).take(5) {
        let e = apply_reidemeister(&d, *mv)?;
        let after = khovanov_homology(&e, Ring::Z)?;
        println!("{mv:?}: {} crossings, Kh unchanged: {}", e.n(), after == before);
    }
    let e = apply_reidemeister(&d, sites[0])?;
    println!("after the first move:\n{}", emit_pd(&e));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
