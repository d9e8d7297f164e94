//! Command-line front end.  Thin dispatch over the library: each subcommand
//! builds an ideal, runs the matching certificate or numeric check, and
//! renders either a short text summary or a versioned JSON document.
//!
//! Exit codes: 0 when the requested verdict holds, 1 when the computation
//! finished but the verdict is negative, 2 for usage or input errors, 3 when
//! a configured resource cap stopped a computation.

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::certificates::{
    groebner_report, primality_certificate, radical_certificate, smoothness_certificate,
    GroebnerReport, PrimalityCertificate, PrimeVerdict, RadicalCertificate, RadicalVerdict,
    SmoothnessCertificate,
};
use crate::error::{Error, Result};
use crate::groebner::Limits;
use crate::ideals::{build_ideal, PTag};
use crate::index::TensorShape;
use crate::numeric::{numeric_report, NumericOptions, NumericReport};

const SCHEMA: &str = "v1";

#[derive(Parser)]
#[command(
    name = "nuclear-ideals",
    version,
    about = "Exact certificates for ideals of norm-constrained rank-one tensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the generator family for a shape and norm tag
    Gens {
        /// Grid shape, for example 2x3 or 2x2x2
        #[arg(long)]
        shape: String,
        /// Norm tag: 0, 1, an even integer, or inf
        #[arg(long)]
        p: String,
        /// Emit a JSON document instead of text
        #[arg(long)]
        json: bool,
    },
    /// Verify a claimed Groebner basis, or complete and certify one
    GbVerify {
        #[arg(long)]
        shape: String,
        /// Norm tag: 0, 1, an even integer, or inf
        #[arg(long)]
        p: String,
        #[arg(long)]
        json: bool,
        /// Cap on basis size during completion
        #[arg(long, default_value_t = 5000)]
        max_basis: usize,
        /// Cap on term count during reduction
        #[arg(long, default_value_t = 1_000_000)]
        max_terms: usize,
    },
    /// Radicality certificate (squarefree leading terms, then the
    /// zero-dimensional univariate criterion)
    Radical {
        #[arg(long)]
        shape: String,
        /// Norm tag: 0, 1, an even integer, or inf
        #[arg(long)]
        p: String,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 5000)]
        max_basis: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_terms: usize,
    },
    /// Primality certificate for an even norm tag
    Prime {
        #[arg(long)]
        shape: String,
        /// Even norm tag
        #[arg(long, default_value = "2")]
        p: String,
        /// Grant the primariness hypothesis instead of deriving it
        #[arg(long)]
        assume_primary: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 5000)]
        max_basis: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_terms: usize,
    },
    /// Exact Jacobian rank at the base point
    Smooth {
        #[arg(long)]
        shape: String,
        /// Even norm tag
        #[arg(long, default_value = "2")]
        p: String,
        #[arg(long)]
        json: bool,
    },
    /// Floating-point cross-checks on sampled variety points
    Numeric {
        #[arg(long)]
        shape: String,
        /// Norm tag: 0, 1, an even integer, or inf
        #[arg(long, default_value = "2")]
        p: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Convex combinations for the nuclear-norm check
        #[arg(long, default_value_t = 200)]
        combinations: usize,
        /// Rotation-orbit trials
        #[arg(long, default_value_t = 50)]
        rotations: usize,
        /// Jacobian-rank spot checks
        #[arg(long, default_value_t = 20)]
        jacobian_trials: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the whole pipeline for one shape across all norm tags
    Report {
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Samples per numeric check
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 5000)]
        max_basis: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_terms: usize,
    },
}

/// Parses arguments, runs the selected command, and writes results to `out`
/// and diagnostics to `err`.  Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        // a reader closing the pipe early (`... | head`) is not our error
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ResourceLimit(_) => 3,
                _ => 2,
            }
        }
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, command: &'static str, payload: &T) -> Result<()> {
    #[derive(Serialize)]
    struct Document<'a, T: Serialize> {
        schema: &'static str,
        command: &'static str,
        #[serde(flatten)]
        payload: &'a T,
    }
    let doc = Document { schema: SCHEMA, command, payload };
    let text = serde_json::to_string_pretty(&doc).expect("report types serialize cleanly");
    writeln!(out, "{text}")?;
    Ok(())
}

fn ok_str(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Gens { shape, p, json } => {
            let shape: TensorShape = shape.parse()?;
            let p: PTag = p.parse()?;
            let spec = build_ideal(&shape, p);
            #[derive(Serialize)]
            struct Payload {
                shape: TensorShape,
                p: PTag,
                claimed_groebner: bool,
                generator_count: usize,
                generators: Vec<String>,
            }
            let payload = Payload {
                shape: spec.shape.clone(),
                p: spec.p_tag,
                claimed_groebner: spec.claimed_groebner,
                generator_count: spec.generators.len(),
                generators: spec.generators.iter().map(ToString::to_string).collect(),
            };
            if json {
                emit_json(out, "gens", &payload)?;
            } else {
                writeln!(
                    out,
                    "shape {}, p = {}: {} generators, claimed Groebner basis: {}",
                    payload.shape,
                    payload.p,
                    payload.generator_count,
                    if payload.claimed_groebner { "yes" } else { "no" }
                )?;
                for g in &payload.generators {
                    writeln!(out, "  {g}")?;
                }
            }
            Ok(0)
        }
        Command::GbVerify { shape, p, json, max_basis, max_terms } => {
            let shape: TensorShape = shape.parse()?;
            let p: PTag = p.parse()?;
            let spec = build_ideal(&shape, p);
            let limits = Limits { max_basis, max_terms };
            let report = groebner_report(&spec, &limits)?;
            if json {
                emit_json(out, "gb-verify", &report)?;
            } else {
                render_groebner(out, &report)?;
            }
            Ok(if groebner_ok(&report) { 0 } else { 1 })
        }
        Command::Radical { shape, p, json, max_basis, max_terms } => {
            let shape: TensorShape = shape.parse()?;
            let p: PTag = p.parse()?;
            let spec = build_ideal(&shape, p);
            let limits = Limits { max_basis, max_terms };
            let cert = radical_certificate(&spec, &limits)?;
            if json {
                emit_json(out, "radical", &cert)?;
            } else {
                render_radical(out, &cert)?;
            }
            Ok(if cert.verdict == RadicalVerdict::Radical { 0 } else { 1 })
        }
        Command::Prime { shape, p, assume_primary, json, max_basis, max_terms } => {
            let shape: TensorShape = shape.parse()?;
            let p: PTag = p.parse()?;
            let spec = build_ideal(&shape, p);
            let limits = Limits { max_basis, max_terms };
            let cert = primality_certificate(&spec, &limits, assume_primary)?;
            if json {
                emit_json(out, "prime", &cert)?;
            } else {
                render_prime(out, &cert)?;
            }
            Ok(if cert.verdict == PrimeVerdict::Prime { 0 } else { 1 })
        }
        Command::Smooth { shape, p, json } => {
            let shape: TensorShape = shape.parse()?;
            let p: PTag = p.parse()?;
            let spec = build_ideal(&shape, p);
            let cert = smoothness_certificate(&spec)?;
            if json {
                emit_json(out, "smooth", &cert)?;
            } else {
                render_smooth(out, &cert)?;
            }
            Ok(if cert.smooth_point { 0 } else { 1 })
        }
        Command::Numeric {
            shape,
            p,
            seed,
            samples,
            tolerance,
            combinations,
            rotations,
            jacobian_trials,
            json,
        } => {
            let shape: TensorShape = shape.parse()?;
            let p: PTag = p.parse()?;
            let spec = build_ideal(&shape, p);
            let opts = NumericOptions {
                seed,
                samples,
                tolerance,
                combinations,
                rotations,
                jacobian_trials,
            };
            let report = numeric_report(&spec, &opts)?;
            if json {
                emit_json(out, "numeric", &report)?;
            } else {
                render_numeric(out, &report)?;
            }
            Ok(if report.overall_ok { 0 } else { 1 })
        }
        Command::Report { shape, seed, samples, json, max_basis, max_terms } => {
            let shape: TensorShape = shape.parse()?;
            let limits = Limits { max_basis, max_terms };
            let report = full_report(&shape, seed, samples, &limits)?;
            if json {
                emit_json(out, "report", &report)?;
            } else {
                render_full(out, &report)?;
            }
            Ok(if report.overall_ok { 0 } else { 1 })
        }
    }
}

fn groebner_ok(report: &GroebnerReport) -> bool {
    report.verified && report.claim_verified != Some(false)
}

fn render_groebner(out: &mut dyn Write, r: &GroebnerReport) -> Result<()> {
    write!(out, "shape {}, p = {}: ", r.shape, r.p)?;
    match r.claim_verified {
        Some(true) => write!(out, "claim verified over {} s-pairs", r.spairs_checked)?,
        Some(false) => write!(out, "claim REFUTED")?,
        None => write!(out, "no claim made")?,
    }
    if r.completed {
        write!(out, "; completed and certified over {} s-pairs", r.spairs_checked)?;
    }
    writeln!(
        out,
        "; reduced basis has {} elements: {}",
        r.reduced_basis.len(),
        ok_str(groebner_ok(r))
    )?;
    if let Some(w) = &r.claim_witness {
        writeln!(out, "  witness: s-pair ({}, {}) leaves remainder {}", w.i, w.j, w.normal_form)?;
    }
    for g in &r.reduced_basis {
        writeln!(out, "  {g}")?;
    }
    Ok(())
}

fn radical_verdict_line(c: &RadicalCertificate) -> String {
    match (c.verdict, c.method) {
        (RadicalVerdict::Radical, Some(m)) => format!("radical ({})", m.replace('_', " ")),
        (RadicalVerdict::Radical, None) => "radical".to_string(),
        _ => "not concluded".to_string(),
    }
}

fn render_radical(out: &mut dyn Write, c: &RadicalCertificate) -> Result<()> {
    writeln!(out, "shape {}, p = {}: {}", c.shape, c.p, radical_verdict_line(c))?;
    let sq = &c.squarefree_leading_terms;
    writeln!(
        out,
        "  leading terms ({}): {}squarefree",
        sq.leading_terms.len(),
        if sq.all_squarefree { "all " } else { "not all " }
    )?;
    if let Some(sei) = &c.seidenberg {
        if sei.zero_dimensional {
            writeln!(out, "  zero-dimensional: yes")?;
            for v in &sei.variables {
                writeln!(
                    out,
                    "  {}: {} in the ideal: {}, gcd with derivative has degree {}",
                    v.variable,
                    v.f,
                    if v.membership_verified { "yes" } else { "NO" },
                    v.gcd_degree
                )?;
            }
        } else {
            writeln!(
                out,
                "  zero-dimensional: no (no pure power of {} among the leading terms)",
                sei.zero_dim_missing.as_deref().unwrap_or("?")
            )?;
        }
        if let Some(reason) = &sei.reason {
            writeln!(out, "  note: {reason}")?;
        }
    }
    Ok(())
}

fn render_prime(out: &mut dyn Write, c: &PrimalityCertificate) -> Result<()> {
    writeln!(
        out,
        "shape {}, p = {}: dimension {}, independent set {}",
        c.shape,
        c.p,
        c.dimension,
        c.independent_set.join(" ")
    )?;
    writeln!(
        out,
        "  independence: {}",
        if c.independence.verified { "verified (elimination ideal is zero)" } else { "NOT verified" }
    )?;
    if let Some(note) = &c.independence.note {
        writeln!(out, "    {note}")?;
    }
    writeln!(
        out,
        "  primary hypothesis: {} ({})",
        if c.primary_hypothesis.granted { "granted" } else { "not granted" },
        c.primary_hypothesis.reason
    )?;
    for v in &c.variables {
        writeln!(
            out,
            "  {}: case {}, degree {}, membership {}, squarefree over Q(J): {}",
            v.variable,
            v.case,
            v.degree_in_variable,
            if v.membership_verified { "ok" } else { "FAIL" },
            if v.squarefree_over_parameters { "ok" } else { "FAIL" }
        )?;
    }
    writeln!(
        out,
        "verdict: {}",
        match c.verdict {
            PrimeVerdict::Prime => "prime",
            PrimeVerdict::NotEstablished => "not established",
        }
    )?;
    Ok(())
}

fn render_smooth(out: &mut dyn Write, c: &SmoothnessCertificate) -> Result<()> {
    writeln!(
        out,
        "shape {}, p = {}: base point {} ({} the variety)",
        c.shape,
        c.p,
        c.point,
        if c.point_on_variety { "on" } else { "NOT on" }
    )?;
    writeln!(
        out,
        "  jacobian is {} x {}, rank {} of required {} ({} variables, dimension {}): {}",
        c.jacobian_rows,
        c.jacobian_cols,
        c.jacobian_rank,
        c.required_rank,
        c.jacobian_cols,
        c.expected_dimension,
        if c.smooth_point { "smooth point" } else { "NOT smooth" }
    )?;
    Ok(())
}

fn render_numeric(out: &mut dyn Write, r: &NumericReport) -> Result<()> {
    writeln!(
        out,
        "shape {}, p = {}, seed {}: {} samples, max residual {:.3e} (tolerance {:.1e}): {}",
        r.shape,
        r.p,
        r.seed,
        r.samples,
        r.max_residual,
        r.residual_tolerance,
        ok_str(r.residuals_ok)
    )?;
    if let Some(n) = &r.nuclear {
        writeln!(
            out,
            "  nuclear norms of {} convex combinations: max {:.12} (allowed 1 + {:.1e}): {}",
            n.combinations, n.max_nuclear_norm, n.tolerance, ok_str(n.ok)
        )?;
    }
    if let Some(o) = &r.orbit {
        writeln!(
            out,
            "  rotation orbit, {} trials: max residual {:.3e} (tolerance {:.1e}): {}",
            o.trials, o.max_residual, o.tolerance, ok_str(o.ok)
        )?;
    }
    if let Some(j) = &r.jacobian {
        writeln!(
            out,
            "  jacobian rank, {} trials: {} matched expected rank {}: {}",
            j.trials, j.matched, j.expected_rank, ok_str(j.ok)
        )?;
    }
    writeln!(out, "overall: {}", ok_str(r.overall_ok))?;
    Ok(())
}

#[derive(Serialize)]
struct FullReport {
    shape: TensorShape,
    groebner: Vec<GroebnerReport>,
    radical: Vec<RadicalCertificate>,
    primality: PrimalityCertificate,
    smoothness: SmoothnessCertificate,
    numeric: Vec<NumericReport>,
    overall_ok: bool,
}

fn full_report(shape: &TensorShape, seed: u64, samples: usize, limits: &Limits) -> Result<FullReport> {
    let tags = [PTag::P0, PTag::P1, PTag::PEven(1), PTag::PInf];
    let mut groebner = Vec::new();
    for p in tags {
        groebner.push(groebner_report(&build_ideal(shape, p), limits)?);
    }
    let mut radical = Vec::new();
    for p in [PTag::P0, PTag::P1, PTag::PInf] {
        radical.push(radical_certificate(&build_ideal(shape, p), limits)?);
    }
    let two_norm = build_ideal(shape, PTag::PEven(1));
    let primality = primality_certificate(&two_norm, limits, false)?;
    let smoothness = smoothness_certificate(&two_norm)?;
    let mut numeric = Vec::new();
    for p in tags {
        let opts = NumericOptions { seed, samples, ..NumericOptions::default() };
        numeric.push(numeric_report(&build_ideal(shape, p), &opts)?);
    }
    let overall_ok = groebner.iter().all(groebner_ok)
        && radical.iter().all(|c| c.verdict == RadicalVerdict::Radical)
        && primality.verdict == PrimeVerdict::Prime
        && smoothness.smooth_point
        && numeric.iter().all(|r| r.overall_ok);
    Ok(FullReport {
        shape: shape.clone(),
        groebner,
        radical,
        primality,
        smoothness,
        numeric,
        overall_ok,
    })
}

fn render_full(out: &mut dyn Write, r: &FullReport) -> Result<()> {
    writeln!(out, "report for shape {}", r.shape)?;
    for g in &r.groebner {
        write!(out, "  groebner p = {}: ", g.p)?;
        match g.claim_verified {
            Some(true) => write!(out, "claim verified")?,
            Some(false) => write!(out, "claim refuted")?,
            None => write!(out, "completed")?,
        }
        writeln!(out, ", basis size {}: {}", g.reduced_basis.len(), ok_str(groebner_ok(g)))?;
    }
    for c in &r.radical {
        writeln!(out, "  radical p = {}: {}", c.p, radical_verdict_line(c))?;
    }
    writeln!(
        out,
        "  prime p = 2: {} (dimension {})",
        match r.primality.verdict {
            PrimeVerdict::Prime => "prime",
            PrimeVerdict::NotEstablished => "not established",
        },
        r.primality.dimension
    )?;
    writeln!(
        out,
        "  smooth p = 2: rank {} of {}: {}",
        r.smoothness.jacobian_rank,
        r.smoothness.required_rank,
        ok_str(r.smoothness.smooth_point)
    )?;
    for n in &r.numeric {
        writeln!(
            out,
            "  numeric p = {}: max residual {:.3e}: {}",
            n.p,
            n.max_residual,
            ok_str(n.overall_ok)
        )?;
    }
    writeln!(out, "overall: {}", ok_str(r.overall_ok))?;
    Ok(())
}
