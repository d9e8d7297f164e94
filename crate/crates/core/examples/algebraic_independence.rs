//! Algebraic independence of the coordinate set J (the all-ones variable
//! plus the axis variables, minus one redundancy): eliminating every other
//! variable from the 2-norm ideal must leave nothing, which proves the
//! ideal meets Q[J] trivially and bounds the dimension from below by |J|.

use nuclear_ideals::certificates::{expected_dimension, independence_check, independent_set};
use nuclear_ideals::groebner::Limits;
use nuclear_ideals::ideals::{build_ideal, PTag};
use nuclear_ideals::index::TensorShape;

fn main() {
    let limits = Limits::default();
    for dims in [vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2]] {
        let shape = TensorShape::new(dims).unwrap();
        let j = independent_set(&shape);
        println!(
            "shape {shape}: J = {{{}}}, |J| = {} = dimension {}",
            j.iter().map(|a| format!("x{a}")).collect::<Vec<_>>().join(", "),
            j.len(),
            expected_dimension(&shape)
        );
        let spec = build_ideal(&shape, PTag::PEven(1));
        let check = independence_check(&spec, &limits).unwrap();
        println!(
            "  eliminated {} variables, intersection basis size {:?}: {}",
            check.eliminated_count,
            check.intersection_basis_size,
            if check.verified { "independent" } else { "NOT verified" }
        );
    }
}
