//! The cobordism scanning engine: tensor one crossing at a time, deloop and cancel.

use std::time::Instant;

use khovanov::chain::homology;
use khovanov::cobordism_scan::{scan_compute, scan_order, scan_tangle_complex};
use khovanov::frobenius_cube::{builtin_spec, khovanov_homology, Theory};
use khovanov::chain::Ring;
use khovanov::links::{braid_closure, parse_braid};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let spec = builtin_spec(Theory::Kh);
    let d = braid_closure(&parse_braid("b=3; s1 s2 s1 s2 s1 s2 s1 s2")?);
    println!("T(3,4): crossing order {:?}", scan_order(&d));
    let tc = scan_tangle_complex(&d);
    println!("  {} objects left after elimination", tc.num_objects());
    let scanned = homology(&scan_compute(&d, &spec)?)?;
    let naive = khovanov_homology(&d, Ring::Z)?;
    println!("  scan == naive: {}", scanned == naive);

    // twelve crossings; the naive cube would have 4096 vertices
    let big = braid_closure(&parse_braid("b=4; s1 S2 s3 s1 S2 s3 S1 s2 S3 s1 s2 S3")?);
    let t = Instant::now();
    let c = scan_compute(&big, &spec)?;
    let kh = homology(&c)?;
    println!("12 crossings: {} generators, total rank {} in {:?}", c.len(), kh.total_rank(), t.elapsed());
    print!("{kh}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
