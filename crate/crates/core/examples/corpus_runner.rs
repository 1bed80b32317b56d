//! Running the invariant suite over the shipped corpus of knots and links.

use std::path::Path;

use khovanov::cli::{invariant_suite, run_corpus};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let summary = run_corpus(&dir, None)?;
    print!("{}", summary.render());

    for (k, v) in invariant_suite("b=2; s1 s1 s1 s1 s1")? {
        println!("T(2,5) {k} = {v}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
