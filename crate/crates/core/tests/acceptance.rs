//! Acceptance gate.  One test per headline criterion; each prints a single
//! PASS/FAIL line with the numbers it measured, and fails the build if the
//! criterion does not hold.

use std::time::Instant;

use nuclear_ideals::certificates::{
    independence_check, primality_certificate, radical_certificate, smoothness_certificate,
    PrimeVerdict, RadicalVerdict,
};
use nuclear_ideals::groebner::{ensure_groebner, is_groebner_basis, reduce, Limits};
use nuclear_ideals::ideals::{build_ideal, PTag};
use nuclear_ideals::index::TensorShape;
use nuclear_ideals::numeric::{
    max_generator_residual, numeric_report, sample_variety_point, NumericOptions, SplitMix64,
};
use nuclear_ideals::poly::{Monomial, MonomialOrder, Polynomial};
use num_rational::BigRational;

fn shape(dims: &[usize]) -> TensorShape {
    TensorShape::new(dims.to_vec()).unwrap()
}

fn verdict_line(name: &str, pass: bool, detail: &str) {
    println!("{}: {name} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{name}: {detail}");
}

#[test]
fn criterion_1_claimed_bases_verify() {
    let start = Instant::now();
    let order = MonomialOrder::Grevlex;
    let mut checked = 0;
    let mut pairs = 0;
    for dims in [vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2]] {
        for p in [PTag::P0, PTag::P1, PTag::PEven(1)] {
            let spec = build_ideal(&shape(&dims), p);
            assert!(spec.claimed_groebner);
            let check = is_groebner_basis(&spec.generators, &order).unwrap();
            assert!(check.is_gb, "claim failed for {dims:?} p = {p}");
            checked += 1;
            pairs += check.spairs_checked;
        }
    }
    verdict_line(
        "claimed Groebner bases verify on all four shapes",
        checked == 12,
        &format!("{checked} families, {pairs} s-pairs, {:.2?}", start.elapsed()),
    );
}

#[test]
fn criterion_2_radicality_certificates() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut all = true;
    for dims in [vec![2, 2], vec![2, 3]] {
        for p in [PTag::P1, PTag::PInf] {
            let cert = radical_certificate(&build_ideal(&shape(&dims), p), &limits).unwrap();
            all &= cert.verdict == RadicalVerdict::Radical && cert.method == Some("seidenberg");
        }
    }
    for dims in [vec![3, 3], vec![2, 2, 2]] {
        let cert = radical_certificate(&build_ideal(&shape(&dims), PTag::P0), &limits).unwrap();
        all &= cert.verdict == RadicalVerdict::Radical
            && cert.method == Some("squarefree_leading_terms");
    }
    verdict_line(
        "radicality: 1-norm and max-norm by the univariate criterion, binomials by squarefree leading terms",
        all,
        &format!("6 certificates, {:.2?}", start.elapsed()),
    );
}

#[test]
fn criterion_3_primality_with_frozen_data() {
    let start = Instant::now();
    let limits = Limits::default();

    let cert = primality_certificate(
        &build_ideal(&shape(&[3, 3]), PTag::PEven(1)),
        &limits,
        false,
    )
    .unwrap();
    let mut pass = cert.verdict == PrimeVerdict::Prime;
    pass &= cert.dimension == 4;
    pass &= cert.independent_set == ["x(1,1)", "x(1,2)", "x(2,1)", "x(3,1)"];
    let minor = cert.variables.iter().find(|v| v.variable == "x(2,2)").unwrap();
    pass &= minor.membership_poly == "-x[1,2]*x[2,1] + x[1,1]*x[2,2]";
    pass &= minor.case == 1 && minor.degree_in_variable == 1;

    for (dims, dim) in [(vec![2, 2], 2), (vec![2, 2, 2], 3)] {
        let cert = primality_certificate(
            &build_ideal(&shape(&dims), PTag::PEven(1)),
            &limits,
            false,
        )
        .unwrap();
        pass &= cert.verdict == PrimeVerdict::Prime && cert.dimension == dim;
    }
    verdict_line(
        "2-norm ideals are prime with dimensions 4 / 2 / 3 and the frozen 3x3 data",
        pass,
        &format!("{:.2?}", start.elapsed()),
    );
}

#[test]
fn criterion_4_smoothness_ranks() {
    let start = Instant::now();
    let mut pass = true;
    for (dims, rank) in [(vec![2, 2], 2), (vec![3, 3], 5), (vec![2, 2, 2], 5)] {
        let cert =
            smoothness_certificate(&build_ideal(&shape(&dims), PTag::PEven(1))).unwrap();
        pass &= cert.smooth_point
            && cert.jacobian_rank == rank
            && cert.required_rank == rank
            && cert.point_on_variety;
    }
    verdict_line(
        "base point is smooth with exact Jacobian ranks 2 / 5 / 5",
        pass,
        &format!("{:.2?}", start.elapsed()),
    );
}

#[test]
fn criterion_5_algebraic_independence() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut pass = true;
    for dims in [vec![2, 2], vec![3, 3], vec![2, 2, 2]] {
        let check =
            independence_check(&build_ideal(&shape(&dims), PTag::PEven(1)), &limits).unwrap();
        pass &= check.verified && check.intersection_basis_size == Some(0);
    }
    verdict_line(
        "elimination proves the 2-norm ideal meets Q[J] trivially",
        pass,
        &format!("3 shapes, {:.2?}", start.elapsed()),
    );
}

fn random_polynomial(sh: &TensorShape, rng: &mut SplitMix64) -> Polynomial {
    let n = sh.num_vars() as u64;
    let terms = 1 + rng.next_u64() % 4;
    let mut parts = Vec::new();
    for _ in 0..terms {
        let deg = rng.next_u64() % 4;
        let mut m = Monomial::one();
        for _ in 0..deg {
            m = m.mul(&Monomial::var((rng.next_u64() % n) as usize));
        }
        let c = (rng.next_u64() % 6) as i64 - 3;
        let c = if c == 0 { 1 } else { c };
        parts.push((m, BigRational::from_integer(c.into())));
    }
    Polynomial::from_terms(sh.clone(), parts)
}

#[test]
fn criterion_6_radicality_cross_check_by_squaring() {
    let start = Instant::now();
    let order = MonomialOrder::Grevlex;
    let limits = Limits::default();
    let mut trials = 0;
    let mut members = 0;
    for dims in [vec![2, 2], vec![2, 3]] {
        let sh = shape(&dims);
        for p in [PTag::P0, PTag::P1] {
            let spec = build_ideal(&sh, p);
            let ensured = ensure_groebner(&spec, &limits).unwrap();
            let mut rng = SplitMix64::substream(2024, trials as u64);
            for _ in 0..125 {
                let f = random_polynomial(&sh, &mut rng);
                let nf = reduce(&f, &ensured.basis, &order).unwrap();
                let nf2 = reduce(&f.mul(&f).unwrap(), &ensured.basis, &order).unwrap();
                // in a radical ideal f^2 lies inside exactly when f does
                assert_eq!(nf.is_zero(), nf2.is_zero(), "squaring broke membership for {f}");
                trials += 1;
                // sanity on the other side: a multiple of a generator is a member
                let g = &spec.generators[(rng.next_u64() as usize) % spec.generators.len()];
                let member = f.mul(g).unwrap();
                assert!(reduce(&member, &ensured.basis, &order).unwrap().is_zero());
                if nf.is_zero() {
                    members += 1;
                }
            }
        }
    }
    verdict_line(
        "500 random polynomials: normal form of f and of f^2 vanish together",
        trials == 500,
        &format!("{trials} trials, {members} incidental members, {:.2?}", start.elapsed()),
    );
}

#[test]
fn criterion_7_numeric_oracle_at_tolerance() {
    let start = Instant::now();
    let opts = NumericOptions {
        seed: 7,
        samples: 10_000,
        tolerance: 1e-9,
        combinations: 1000,
        rotations: 100,
        jacobian_trials: 100,
    };
    let report = numeric_report(&build_ideal(&shape(&[3, 3]), PTag::PEven(1)), &opts).unwrap();
    let nuclear = report.nuclear.as_ref().unwrap();
    let orbit = report.orbit.as_ref().unwrap();
    let jacobian = report.jacobian.as_ref().unwrap();
    let mut pass = report.residuals_ok && nuclear.ok && orbit.ok && jacobian.ok;

    // residuals for the other tags and a three-mode shape
    for (dims, p) in [
        (vec![3, 3], PTag::P1),
        (vec![3, 3], PTag::PInf),
        (vec![2, 2, 2], PTag::PEven(1)),
        (vec![2, 2, 2], PTag::PInf),
    ] {
        let opts = NumericOptions { seed: 7, samples: 10_000, ..NumericOptions::default() };
        let r = numeric_report(&build_ideal(&shape(&dims), p), &opts).unwrap();
        pass &= r.overall_ok;
    }
    verdict_line(
        "numeric oracle: 10^4 residuals <= 1e-9, 10^3 nuclear norms <= 1 + 1e-9, orbit <= 1e-8, 100 Jacobian ranks",
        pass,
        &format!(
            "max residual {:.2e}, max nuclear {:.12}, max orbit {:.2e}, {}/100 ranks, {:.2?}",
            report.max_residual,
            nuclear.max_nuclear_norm,
            orbit.max_residual,
            jacobian.matched,
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_8_negative_controls() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut pass = true;

    // the positive-dimensional 2-norm ideal must not slip through the
    // zero-dimensional radicality route
    let cert =
        radical_certificate(&build_ideal(&shape(&[2, 2]), PTag::PEven(1)), &limits).unwrap();
    pass &= cert.verdict == RadicalVerdict::NotConcluded;
    pass &= !cert.seidenberg.as_ref().unwrap().zero_dimensional;

    // 4-norm primality stays open without the hypothesis and closes with it
    let spec4 = build_ideal(&shape(&[3, 3]), PTag::PEven(2));
    let open = primality_certificate(&spec4, &limits, false).unwrap();
    pass &= open.verdict == PrimeVerdict::NotEstablished && !open.primary_hypothesis.granted;
    pass &= open.independence.verified;
    let closed = primality_certificate(&spec4, &limits, true).unwrap();
    pass &= closed.verdict == PrimeVerdict::Prime;

    // the generators-as-given of the max-norm family are not a basis, and
    // the trusted checker produces a nonzero witness
    let pinf = build_ideal(&shape(&[2, 2]), PTag::PInf);
    let check = is_groebner_basis(&pinf.generators, &MonomialOrder::Grevlex).unwrap();
    pass &= !check.is_gb && check.witness.is_some();

    // scaling a sampled point off the variety must blow up the residual
    let mut rng = SplitMix64::new(3);
    let sh = shape(&[3, 3]);
    let spec = build_ideal(&sh, PTag::PEven(1));
    let mut point = sample_variety_point(&sh, PTag::PEven(1), &mut rng).unwrap();
    for v in &mut point {
        *v *= 2.0;
    }
    pass &= max_generator_residual(&spec, &point) > 0.5;

    verdict_line(
        "negative controls trip: open verdicts stay open, refuted claims carry witnesses, off-variety points are caught",
        pass,
        &format!("{:.2?}", start.elapsed()),
    );
}
