//! Reducing dotted cobordisms with the sphere, dot and neck-cutting relations.

use khovanov::cobordism_scan::{reduce_cobordism, reduce_cobordism_randomly, RawComponent, RawSurface};
use rand::SeedableRng;

fn piece(boundary: &[usize], genus: u32, dots: u32) -> RawComponent {
    RawComponent { boundary: boundary.to_vec(), genus, dots }
}

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("torus", RawSurface { num_cycles: 0, components: vec![piece(&[], 1, 0)] }),
        ("dotted sphere", RawSurface { num_cycles: 0, components: vec![piece(&[], 0, 1)] }),
        ("tube between two circles", RawSurface { num_cycles: 2, components: vec![piece(&[0, 1], 0, 0)] }),
        ("punctured torus", RawSurface { num_cycles: 1, components: vec![piece(&[0], 1, 0)] }),
        ("pants plus a dotted disk", RawSurface { num_cycles: 4, components: vec![piece(&[0, 1, 2], 0, 0), piece(&[3], 0, 1)] }),
    ];
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for (name, s) in cases {
        let canon = reduce_cobordism(&s);
        let random = reduce_cobordism_randomly(&s, &mut rng);
        println!("{name:>26}: {:?} (random order agrees: {})", canon.terms, canon == random);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
