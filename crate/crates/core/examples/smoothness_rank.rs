//! Smoothness of the base point (a one in the all-ones slot, zeros
//! elsewhere) on the 2-norm variety: the exact Jacobian rank, computed by
//! fraction-free Bareiss elimination over the integers, must equal the
//! number of variables minus the dimension.

use nuclear_ideals::certificates::smoothness_certificate;
use nuclear_ideals::ideals::{build_ideal, PTag};
use nuclear_ideals::index::TensorShape;

fn main() {
    for dims in [vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2]] {
        let shape = TensorShape::new(dims).unwrap();
        let spec = build_ideal(&shape, PTag::PEven(1));
        let cert = smoothness_certificate(&spec).unwrap();
        println!("shape {shape}: point {}", cert.point);
        println!(
            "  jacobian {} x {}, rank {} (required {}), dimension {}: {}",
            cert.jacobian_rows,
            cert.jacobian_cols,
            cert.jacobian_rank,
            cert.required_rank,
            cert.expected_dimension,
            if cert.smooth_point { "smooth point" } else { "NOT smooth" }
        );
    }
}
