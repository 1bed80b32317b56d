//! Filtration spectral sequences: Kh to Bar-Natan, Kh to Lee, AKh to Kh.

use khovanov::chain::Ring;
use khovanov::frobenius_cube::Theory;
use khovanov::links::{braid_closure, parse_braid};
use khovanov::spectral::{akh_to_kh_ss, kh_to_localized_ss, pages, FilteredComplex, FilteredGen, Page};

fn show(title: &str, ps: &[Page]) {
    let totals: Vec<String> = ps.iter().map(|p| format!("E{}={}", p.r, p.total_dim())).collect();
    println!("{title}: {}", totals.join(", "));
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let trefoil = braid_closure(&parse_braid("b=2; s1 s1 s1")?);
    show("trefoil Kh => BN over F2", &kh_to_localized_ss(&trefoil, Theory::Bn)?);
    show("trefoil Kh => Lee over Q", &kh_to_localized_ss(&trefoil, Theory::Lee)?);
    let hopf = braid_closure(&parse_braid("b=2; s1 s1")?);
    let ss = akh_to_kh_ss(&hopf, Ring::F2)?;
    show("Hopf AKh => Kh over F2", &ss);
    println!("  E_inf by homological degree: {:?}", ss.last().map(|p| p.dims_by_h()));

    // a hand-made filtered complex: a -> b with a jump of two steps
    let gens = vec![FilteredGen { h: 0, f: 0 }, FilteredGen { h: 1, f: 2 }];
    let fc = FilteredComplex::new(Ring::Q, gens, vec![vec![(1, 1)], vec![]], 1, false)?;
    for p in pages(&fc) {
        println!("  E{}: dims {:?}, rank d = {}", p.r, p.dims, p.rank);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
