//! Lee homology, canonical generators and the s-invariant.

use khovanov::lee_s::{canonical_generator, class_filtration_level, lee_complex, lee_homology, s_levels, slice_genus_lower_bound};
use khovanov::links::{braid_closure, parse_braid};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let knots = [
        ("unknot", "b=1;"),
        ("right trefoil", "b=2; s1 s1 s1"),
        ("left trefoil", "b=2; S1 S1 S1"),
        ("figure-eight", "b=3; s1 S2 s1 S2"),
        ("T(2,5)", "b=2; s1 s1 s1 s1 s1"),
        ("T(3,4)", "b=3; s1 s2 s1 s2 s1 s2 s1 s2"),
        ("granny", "b=3; s1 s1 s1 s2 s2 s2"),
        ("square", "b=3; s1 s1 s1 S2 S2 S2"),
    ];
    for (name, word) in knots {
        let d = braid_closure(&parse_braid(word)?);
        let lv = s_levels(&d)?;
        println!("{name:>14}: s = {:>2}  (s_min {}, s_max {}), g4 >= {}", lv.s, lv.s_min, lv.s_max, slice_genus_lower_bound(&d)?);
    }

    let hopf = braid_closure(&parse_braid("b=2; s1 s1")?);
    println!("Lee homology of the Hopf link by degree: {:?}", lee_homology(&hopf)?);
    let c = lee_complex(&hopf)?;
    for rev in [[false, false], [false, true]] {
        let z = canonical_generator(&hopf, &c, &rev)?;
        println!("  reverse {:?}: canonical generator at level {:?}", rev, class_filtration_level(&c, &z)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
