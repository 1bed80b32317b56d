//! Bigraded complexes, Smith normal form and mapping cones.

use khovanov::chain::{homology, mapping_cone, smith_normal_form, BigradedComplex, ChainMap, Generator, Ring, SparseMatrix};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let m = SparseMatrix::from_dense(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("invariant factors {:?}, rank {}", snf.factors, snf.rank);

    // Z --2--> Z has homology Z/2 in degree 1
    let g = |h| Generator { h, q: 0 };
    let c = BigradedComplex::new(Ring::Z, vec![g(0), g(1)], vec![vec![(1, 2)], vec![]], false);
    print!("H(Z -2-> Z):\n{}", homology(&c)?);

    // the cone of the identity is acyclic
    let a = BigradedComplex::new(Ring::Z, vec![g(0)], vec![vec![]], false);
    let f = ChainMap { source: &a, target: &a, map: vec![vec![(0, 1)]] };
    let cone = mapping_cone(&f)?;
    println!("cone of id: {} generators, total rank {}", cone.complex.len(), homology(&cone.complex)?.total_rank());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
