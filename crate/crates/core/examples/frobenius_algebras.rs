//! The built-in rank-two Frobenius algebras and the complexes they produce.

use khovanov::chain::ungraded_homology;
use khovanov::frobenius_cube::{build_cube_complex, builtin_spec, Theory};
use khovanov::links::{braid_closure, parse_braid};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let d = braid_closure(&parse_braid("b=2; s1 s1")?);
    for t in [Theory::Kh, Theory::Lee, Theory::Bn] {
        let spec = builtin_spec(t);
        spec.check()?;
        println!("{t:?} over {}: m(X,X) = {:?}, graded {}, filtration jump {}", spec.ring, spec.merge[1][1], spec.graded, spec.filtered_jump);
        let c = build_cube_complex(&d, &spec, None)?;
        let ranks: Vec<(i64, usize)> = ungraded_homology(&c.complex)?.into_iter().map(|(h, g)| (h, g.rank)).collect();
        println!("  Hopf link homology by degree: {ranks:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
