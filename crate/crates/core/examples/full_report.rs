//! Everything at once for one shape, the way the `report` subcommand does
//! it: Groebner verification for every tag, radicality, primality,
//! smoothness, and the numeric oracle.

use nuclear_ideals::certificates::{
    groebner_report, primality_certificate, radical_certificate, smoothness_certificate,
};
use nuclear_ideals::groebner::Limits;
use nuclear_ideals::ideals::{build_ideal, PTag};
use nuclear_ideals::index::TensorShape;
use nuclear_ideals::numeric::{numeric_report, NumericOptions};

fn main() {
    let shape = TensorShape::new(vec![2, 3]).unwrap();
    let limits = Limits::default();
    println!("report for shape {shape}\n");

    for p in [PTag::P0, PTag::P1, PTag::PEven(1), PTag::PInf] {
        let rep = groebner_report(&build_ideal(&shape, p), &limits).unwrap();
        println!(
            "groebner p = {p}: claim verified = {:?}, completed = {}, basis size {}, certified = {}",
            rep.claim_verified,
            rep.completed,
            rep.reduced_basis.len(),
            rep.verified
        );
    }
    println!();

    for p in [PTag::P0, PTag::P1, PTag::PInf] {
        let cert = radical_certificate(&build_ideal(&shape, p), &limits).unwrap();
        println!("radical p = {p}: {:?} via {:?}", cert.verdict, cert.method);
    }
    println!();

    let two_norm = build_ideal(&shape, PTag::PEven(1));
    let prime = primality_certificate(&two_norm, &limits, false).unwrap();
    println!(
        "prime p = 2: {:?}, dimension {}, independent set {}",
        prime.verdict,
        prime.dimension,
        prime.independent_set.join(" ")
    );

    let smooth = smoothness_certificate(&two_norm).unwrap();
    println!(
        "smooth p = 2: rank {} of required {}: {}",
        smooth.jacobian_rank, smooth.required_rank, smooth.smooth_point
    );
    println!();

    for p in [PTag::P0, PTag::P1, PTag::PEven(1), PTag::PInf] {
        let opts = NumericOptions { seed: 1, samples: 500, ..NumericOptions::default() };
        let rep = numeric_report(&build_ideal(&shape, p), &opts).unwrap();
        println!(
            "numeric p = {p}: max residual {:.3e}, overall = {}",
            rep.max_residual, rep.overall_ok
        );
    }
}
