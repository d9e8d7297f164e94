//! The floating-point oracle: seeded sampling of variety points, generator
//! residuals, nuclear norms of convex combinations (which stay at or below
//! one because the nuclear ball is the convex hull of unit rank-one
//! matrices), rotation-orbit invariance, and numeric Jacobian ranks.

use nuclear_ideals::ideals::{build_ideal, PTag};
use nuclear_ideals::index::TensorShape;
use nuclear_ideals::numeric::{
    max_generator_residual, numeric_report, sample_variety_point, NumericOptions, SplitMix64,
};

fn main() {
    let shape = TensorShape::new(vec![3, 3]).unwrap();
    let spec = build_ideal(&shape, PTag::PEven(1));

    // a single sampled point, by hand
    let mut rng = SplitMix64::new(7);
    let point = sample_variety_point(&shape, PTag::PEven(1), &mut rng).unwrap();
    println!("sampled point: {point:.4?}");
    println!("max generator residual: {:.3e}", max_generator_residual(&spec, &point));
    let doubled: Vec<f64> = point.iter().map(|v| 2.0 * v).collect();
    println!(
        "same point scaled by 2 (off the variety): residual {:.3e}\n",
        max_generator_residual(&spec, &doubled)
    );

    // the full report, deterministic for a fixed seed
    let opts = NumericOptions { seed: 7, samples: 2000, ..NumericOptions::default() };
    let report = numeric_report(&spec, &opts).unwrap();
    println!(
        "{} samples: max residual {:.3e} (tolerance {:.1e})",
        report.samples, report.max_residual, report.residual_tolerance
    );
    if let Some(n) = &report.nuclear {
        println!(
            "{} convex combinations: max nuclear norm {:.12} (allowed 1 + {:.1e})",
            n.combinations, n.max_nuclear_norm, n.tolerance
        );
    }
    if let Some(o) = &report.orbit {
        println!("{} rotation orbits: max residual {:.3e}", o.trials, o.max_residual);
    }
    if let Some(j) = &report.jacobian {
        println!(
            "{} jacobian trials: {} matched the expected rank {}",
            j.trials, j.matched, j.expected_rank
        );
    }
    println!("overall: {}", report.overall_ok);
}
