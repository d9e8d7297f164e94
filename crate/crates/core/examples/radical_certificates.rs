//! Radicality certificates.  The binomial ideal falls to the squarefree
//! leading-term criterion; the 1-norm and max-norm ideals are
//! zero-dimensional and fall to the univariate criterion; the 2-norm ideal
//! matches neither method and the certificate honestly says so.

use nuclear_ideals::certificates::radical_certificate;
use nuclear_ideals::groebner::Limits;
use nuclear_ideals::ideals::{build_ideal, PTag};
use nuclear_ideals::index::TensorShape;

fn main() {
    let limits = Limits::default();
    for dims in [vec![2, 2], vec![2, 3]] {
        let shape = TensorShape::new(dims).unwrap();
        for p in [PTag::P0, PTag::P1, PTag::PEven(1), PTag::PInf] {
            let cert = radical_certificate(&build_ideal(&shape, p), &limits).unwrap();
            print!("shape {shape}, p = {p}: {:?}", cert.verdict);
            if let Some(method) = cert.method {
                print!(" via {method}");
            }
            println!();
            if let Some(sei) = &cert.seidenberg {
                if sei.zero_dimensional {
                    for v in &sei.variables {
                        println!(
                            "    {}: {} in the ideal, gcd with derivative has degree {}",
                            v.variable, v.f, v.gcd_degree
                        );
                    }
                } else {
                    println!(
                        "    not zero-dimensional: no pure power of {} among the leading terms",
                        sei.zero_dim_missing.as_deref().unwrap_or("?")
                    );
                }
            }
        }
        println!();
    }
}
