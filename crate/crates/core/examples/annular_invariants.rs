//! Annular Khovanov homology, the Plamenevskaya class and κ for braid closures.

use khovanov::annular::{akh_homology, kappa, plamenevskaya_cycle, psi_nonzero, self_linking, KappaMethod};
use khovanov::chain::Ring;
use khovanov::frobenius_cube::khovanov_homology;
use khovanov::links::{braid_closure, parse_braid};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let hopf = braid_closure(&parse_braid("b=2; s1 s1")?);
    let akh = akh_homology(&hopf, Ring::F2)?;
    println!("AKh(Hopf; F2), (i,j,k):");
    print!("{akh}");
    println!("total {} vs Kh total {}", akh.total_rank(), khovanov_homology(&hopf, Ring::F2)?.total_rank());

    for word in ["b=1;", "b=2; s1 s1 s1", "b=2; S1", "b=3; s1 S2 s1 S2", "b=3; s1 s2 s1 s2"] {
        let b = parse_braid(word)?;
        let p = plamenevskaya_cycle(&b, Ring::Z)?;
        println!(
            "{word:<18} sl = {:>2}, gr_q(psi) = {:>2}, psi {}, kappa = {}",
            self_linking(&b),
            p.gr_q(),
            if psi_nonzero(&b, Ring::Z)? { "nonzero" } else { "zero" },
            kappa(&b, Ring::F2, KappaMethod::Direct)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
