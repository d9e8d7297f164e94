//! Ideal membership by normal form against a verified basis, with division
//! quotients that re-expand to the input, and an elimination ideal computed
//! through a block order.

use std::collections::BTreeSet;

use nuclear_ideals::groebner::{eliminate, ideal_member, reduce_with_quotients, Limits};
use nuclear_ideals::ideals::{build_ideal, PTag};
use nuclear_ideals::index::TensorShape;
use nuclear_ideals::poly::{parse_polynomial, MonomialOrder};

fn main() {
    let shape = TensorShape::new(vec![2, 2]).unwrap();
    let spec = build_ideal(&shape, PTag::PEven(1));
    let order = MonomialOrder::Grevlex;

    // the 2x2 determinant relation belongs to the 2-norm ideal
    let minor = parse_polynomial("x[1,1]*x[2,2] - x[1,2]*x[2,1]", &shape).unwrap();
    println!("minor in ideal: {}", ideal_member(&minor, &spec.generators, &order).unwrap());

    // a generic polynomial does not; its normal form is the canonical
    // representative modulo the ideal
    let f = parse_polynomial("x[1,1]^3 + x[2,2]", &shape).unwrap();
    let (remainder, quotients) = reduce_with_quotients(&f, &spec.generators, &order).unwrap();
    println!("normal form of {f}:");
    println!("  {remainder}");
    for (q, g) in quotients.iter().zip(&spec.generators) {
        if !q.is_zero() {
            println!("  quotient {q}  against  {g}");
        }
    }

    // elimination: intersect the ideal with Q[x(1,1), x(2,1)]
    let keep: BTreeSet<usize> = [0usize, 2].into_iter().collect();
    let intersection = eliminate(&spec.generators, &keep, &shape, &Limits::default()).unwrap();
    println!(
        "intersection with Q[x(1,1), x(2,1)]: {} elements",
        intersection.len()
    );
}
