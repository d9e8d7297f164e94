//! Builds the generator family of every norm tag on a few shapes and prints
//! them in canonical text form.

use nuclear_ideals::ideals::{build_ideal, PTag};
use nuclear_ideals::index::TensorShape;

fn main() {
    for dims in [vec![2, 2], vec![2, 3], vec![2, 2, 2]] {
        let shape = TensorShape::new(dims).unwrap();
        println!("== shape {shape} ({} variables) ==", shape.num_vars());
        for p in [PTag::P0, PTag::P1, PTag::PEven(1), PTag::PEven(2), PTag::PInf] {
            let spec = build_ideal(&shape, p);
            println!(
                "p = {p}: {} generators, claimed Groebner basis: {}",
                spec.generators.len(),
                if spec.claimed_groebner { "yes" } else { "no" }
            );
            for g in &spec.generators {
                println!("    {g}");
            }
        }
        println!();
    }
}
