//! Re-verifies the claimed Groebner bases by the all-pairs S-polynomial
//! test, and completes the unclaimed max-norm family with Buchberger's
//! algorithm before certifying the completed basis the same way.

use nuclear_ideals::groebner::{buchberger, is_groebner_basis, reduced_basis, Limits};
use nuclear_ideals::ideals::{build_ideal, PTag};
use nuclear_ideals::index::TensorShape;
use nuclear_ideals::poly::MonomialOrder;

fn main() {
    let order = MonomialOrder::Grevlex;
    let limits = Limits::default();

    for dims in [vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2]] {
        let shape = TensorShape::new(dims).unwrap();
        for p in [PTag::P0, PTag::P1, PTag::PEven(1)] {
            let spec = build_ideal(&shape, p);
            let check = is_groebner_basis(&spec.generators, &order).unwrap();
            println!(
                "shape {shape}, p = {p}: claim {} over {} s-pairs",
                if check.is_gb { "verified" } else { "REFUTED" },
                check.spairs_checked
            );
        }
    }

    // the max-norm family makes no claim, and indeed is not a basis as given
    let shape = TensorShape::new(vec![2, 2]).unwrap();
    let spec = build_ideal(&shape, PTag::PInf);
    let check = is_groebner_basis(&spec.generators, &order).unwrap();
    let witness = check.witness.unwrap();
    println!(
        "\nshape {shape}, p = inf: generators alone are {}a Groebner basis",
        if check.is_gb { "" } else { "not " }
    );
    println!(
        "  witness: s-pair ({}, {}) reduces to {}",
        witness.i, witness.j, witness.remainder
    );

    let completed = buchberger(&spec.generators, &order, &limits).unwrap();
    let reduced = reduced_basis(&completed, &order).unwrap();
    let recheck = is_groebner_basis(&reduced, &order).unwrap();
    println!(
        "  completion: {} elements, reduced to {}, certified: {}",
        completed.len(),
        reduced.len(),
        recheck.is_gb
    );
    for g in &reduced {
        println!("    {g}");
    }
}
