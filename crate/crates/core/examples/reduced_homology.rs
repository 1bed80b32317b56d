//! Reduced Khovanov homology with a chosen basepoint.

use khovanov::chain::Ring;
use khovanov::frobenius_cube::{khovanov_homology, reduced_khovanov};
use khovanov::links::{braid_closure, parse_braid};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (name, word) in [("trefoil", "b=2; s1 s1 s1"), ("figure-eight", "b=3; s1 S2 s1 S2"), ("T(2,5)", "b=2; s1 s1 s1 s1 s1")] {
        let d = braid_closure(&parse_braid(word)?);
        let red = reduced_khovanov(&d, 1, Ring::Q)?;
        let full = khovanov_homology(&d, Ring::Q)?;
        println!("{name}: reduced rank {}, unreduced rank {}", red.total_rank(), full.total_rank());
        print!("{red}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
