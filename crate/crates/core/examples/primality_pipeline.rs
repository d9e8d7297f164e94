//! The full primality pipeline for the 2-norm ideal on the 3x3 grid:
//! verified Groebner data, algebraic independence of J, one membership
//! polynomial per remaining variable (squarefree over Q(J)), and the
//! granted primariness hypothesis combine into a primality verdict with
//! dimension 4.

use nuclear_ideals::certificates::primality_certificate;
use nuclear_ideals::groebner::Limits;
use nuclear_ideals::ideals::{build_ideal, PTag};
use nuclear_ideals::index::TensorShape;

fn main() {
    let shape = TensorShape::new(vec![3, 3]).unwrap();
    let spec = build_ideal(&shape, PTag::PEven(1));
    let cert = primality_certificate(&spec, &Limits::default(), false).unwrap();

    println!("shape {shape}, p = {}", cert.p);
    println!("independent set: {}", cert.independent_set.join(" "));
    println!("dimension: {}", cert.dimension);
    println!(
        "groebner: claim verified = {:?}, basis size {}",
        cert.groebner.claim_verified, cert.groebner.basis_size
    );
    println!(
        "independence: {} (intersection basis size {:?})",
        cert.independence.verified, cert.independence.intersection_basis_size
    );
    println!(
        "primary hypothesis: granted = {}\n  {}",
        cert.primary_hypothesis.granted, cert.primary_hypothesis.reason
    );
    for v in &cert.variables {
        println!(
            "{}: case {}, degree {} in the variable, membership {}, squarefree {}",
            v.variable,
            v.case,
            v.degree_in_variable,
            v.membership_verified,
            v.squarefree_over_parameters
        );
        println!("    H = {}", v.membership_poly);
    }
    println!("verdict: {:?}", cert.verdict);

    // for higher even norms the hypothesis is not granted automatically
    let spec4 = build_ideal(&shape, PTag::PEven(2));
    let cert4 = primality_certificate(&spec4, &Limits::default(), false).unwrap();
    println!("\np = 4 without the hypothesis: {:?}", cert4.verdict);
    let cert4 = primality_certificate(&spec4, &Limits::default(), true).unwrap();
    println!("p = 4 with --assume-primary:  {:?}", cert4.verdict);
}
