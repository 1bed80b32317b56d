//! Kauffman bracket and Jones polynomials from braid words and PD codes.

use khovanov::laurent::{kauffman_bracket, normalized_jones, unnormalized_jones};
use khovanov::links::{braid_closure, parse_braid, parse_pd};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let hopf = braid_closure(&parse_braid("b=2; s1 s1")?);
    println!("Hopf link");
    println!("  <D>   = {}", kauffman_bracket(&hopf));
    println!("  J^(D) = {}", unnormalized_jones(&hopf));
    println!("  J(D)  = {}", normalized_jones(&hopf)?);

    let trefoil = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")?;
    println!("trefoil from PD, writhe {}", trefoil.writhe());
    println!("  J^(D) = {}", unnormalized_jones(&trefoil));
    println!("  J(D)  = {}", normalized_jones(&trefoil)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
