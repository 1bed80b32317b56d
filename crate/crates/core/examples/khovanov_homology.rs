//! Khovanov homology over several rings with the cube-of-resolutions engine.

use khovanov::chain::Ring;
use khovanov::frobenius_cube::{build_cube_complex, builtin_spec, khovanov_homology, Theory};
use khovanov::laurent::unnormalized_jones;
use khovanov::links::{braid_closure, parse_braid};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = braid_closure(&parse_braid("b=2; s1 s1 s1")?);
    for ring in [Ring::Z, Ring::Q, Ring::F2] {
        let kh = khovanov_homology(&d, ring)?;
        println!("Kh(trefoil; {ring}), total rank {}", kh.total_rank());
        print!("{kh}");
    }

    // the graded Euler characteristic recovers the Jones polynomial
    let c = build_cube_complex(&d, &builtin_spec(Theory::Kh), None)?;
    println!("{} generators, chi_q = {}", c.complex.len(), c.complex.graded_euler_char());
    println!("Jones          = {}", unnormalized_jones(&d));

    let fig8 = braid_closure(&parse_braid("b=3; s1 S2 s1 S2")?);
    println!("Kh(figure-eight; Z) as JSON: {}", khovanov_homology(&fig8, Ring::Z)?.to_json());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
