//! Machine-checkable certificates: Groebner property, radicality,
//! primality, and smoothness at the base point.
//!
//! Every certificate is built from verified computations only.  Claims that
//! arrive with the generator families (for example "these generators are
//! already a Groebner basis") are re-checked by the all-pairs test before
//! anything downstream relies on them, and each serialized certificate
//! records exactly which facts were machine-checked and which were granted
//! as hypotheses.
//!
//! The primality pipeline follows a Noether-style decomposition.  Writing
//! `J` for the independent index set (the all-ones index and the first-mode
//! axis indices, minus one redundancy), the certificate establishes:
//!
//! 1. the ideal meets `Q[J]` trivially (elimination),
//! 2. for every variable `x_a` outside `J` there is a member `H_a` of the
//!    ideal involving only `J` and `x_a`, with positive degree in `x_a` and
//!    squarefree over the fraction field `Q(J)` (subresultant gcd),
//! 3. a primariness hypothesis, granted for the 2-norm ideal on shapes with
//!    a mode of size at least two, or supplied explicitly by the caller.
//!
//! Together these force the ideal to be prime of dimension `|J|`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, eliminate, ensure_groebner, is_groebner_basis, reduce, reduced_basis,
    EnsuredBasis, Limits,
};
use crate::ideals::{IdealSpec, PTag};
use crate::index::{MultiIndex, TensorShape};
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::ratfield::{as_univariate, gcd_over_field, UnivariateOverField};

/// The independent index set `J`: indices with at most one entry different
/// from one, excluding `(1, ..., 1, n_d)`, in lexicographic order.
pub fn independent_set(shape: &TensorShape) -> Vec<MultiIndex> {
    let d = shape.ndim();
    let last_dim = shape.dims()[d - 1];
    let mut excluded = vec![1; d];
    excluded[d - 1] = last_dim;
    shape
        .indices()
        .filter(|a| a.count_not_one() <= 1 && a.entries() != excluded.as_slice())
        .collect()
}

/// `n_1 + ... + n_d - d`, the dimension the primality certificate verifies.
pub fn expected_dimension(shape: &TensorShape) -> usize {
    shape.dims().iter().sum::<usize>() - shape.ndim()
}

/// Product of the axis variables matching the entries of `b`: the monomial
/// `prod_i x_(1, ..., b_i, ..., 1)`, with the all-ones variable standing in
/// for modes where `b_i = 1`.
fn axis_product(shape: &TensorShape, b: &MultiIndex) -> Result<Monomial> {
    let mut m = Monomial::one();
    for (mode, &v) in b.entries().iter().enumerate() {
        let axis = shape.axis_index(mode, v)?;
        m = m.mul(&Monomial::var(shape.rank_of(&axis)?));
    }
    Ok(m)
}

/// Same product restricted to the modes before the last one.
fn axis_product_head(shape: &TensorShape, b: &MultiIndex) -> Result<Monomial> {
    let mut m = Monomial::one();
    for (mode, &v) in b.entries().iter().enumerate().take(shape.ndim() - 1) {
        let axis = shape.axis_index(mode, v)?;
        m = m.mul(&Monomial::var(shape.rank_of(&axis)?));
    }
    Ok(m)
}

/// Membership polynomial for an index with at least two entries different
/// from one and last entry below `n_d`:
/// `x_(1..1)^(d-1) * x_a - prod_i x_(1, ..., a_i, ..., 1)`.
/// Lies in the binomial ideal, hence in every norm ideal over it.
pub fn case1_membership(shape: &TensorShape, a: &MultiIndex) -> Result<Polynomial> {
    let d = shape.ndim();
    let ones_rank = shape.rank_of(&shape.all_ones())?;
    let a_rank = shape.rank_of(a)?;
    let one = BigRational::one();
    let mut h = Polynomial::zero(shape.clone());
    h.add_term(
        Monomial::var_pow(ones_rank, (d - 1) as u32).mul(&Monomial::var(a_rank)),
        one.clone(),
    );
    h.add_term(axis_product(shape, a)?, -one);
    Ok(h)
}

/// Membership polynomial for an index whose last entry equals `n_d`, for the
/// `2s`-norm ideal.  Built by multiplying the power sphere by a monomial in
/// `J` and rewriting every stray variable through the shift binomials; the
/// result involves only `J` and `x_a`.  On shapes with `n_d = 1` the raw
/// polynomial is divisible by a power of `x_a`, which is stripped; the
/// returned pair is `(H, stripped_power)`.
pub fn case2_membership(
    shape: &TensorShape,
    a: &MultiIndex,
    s: u32,
) -> Result<(Polynomial, u32)> {
    let d = shape.ndim();
    let last_dim = shape.dims()[d - 1];
    let ones_rank = shape.rank_of(&shape.all_ones())?;
    let a_rank = shape.rank_of(a)?;
    let one = BigRational::one();
    let j_set: BTreeSet<MultiIndex> = independent_set(shape).into_iter().collect();

    // c = x_(1..1)^(2s(d-1)) * prod_(i<d) x_(1, ..., a_i, ..., 1)^(2s)
    let c = Monomial::var_pow(ones_rank, 2 * s * (d as u32 - 1))
        .mul(&axis_product_head(shape, a)?.pow(2 * s));

    // seed: c * (1 - sum_(b in J) x_b^(2s)), entirely inside Q[J]
    let mut seed = Polynomial::from_monomial(shape.clone(), c.clone(), one.clone());
    for b in &j_set {
        let rb = shape.rank_of(b)?;
        seed.add_term(c.mul(&Monomial::var_pow(rb, 2 * s)), -one.clone());
    }

    // rewritten counterpart: each complement index contributes the image of
    // c * x_b^(2s) under the shift-binomial rewriting
    let mut rewritten = Polynomial::zero(shape.clone());
    for b in shape.indices().filter(|b| !j_set.contains(b)) {
        let term = if b == *a {
            c.mul(&Monomial::var_pow(a_rank, 2 * s))
        } else if b.entries()[d - 1] != last_dim {
            // x_(1..1)^(d-1) x_b == prod_i x_(1, ..., b_i, ..., 1): trades the
            // all-ones power for axis variables, all of which lie in J here
            axis_product(shape, &b)?
                .pow(2 * s)
                .mul(&axis_product_head(shape, a)?.pow(2 * s))
        } else {
            // shares its last entry with a: the pair rewrite moves the
            // discrepancy into x_a and the head axis variables of b
            axis_product_head(shape, &b)?
                .pow(2 * s)
                .mul(&Monomial::var_pow(ones_rank, 2 * s * (d as u32 - 1)))
                .mul(&Monomial::var_pow(a_rank, 2 * s))
        };
        rewritten.add_term(term, one.clone());
    }

    let h_raw = rewritten.sub(&seed)?;
    let strip = h_raw.min_degree_in(a_rank);
    let h = h_raw.div_var_pow(a_rank, strip)?;
    Ok((h, strip))
}

#[derive(Debug, Clone, Serialize)]
pub struct GroebnerSummary {
    pub claimed: bool,
    pub claim_verified: Option<bool>,
    pub completed: bool,
    pub basis_size: usize,
    pub spairs_checked: usize,
}

impl GroebnerSummary {
    fn from_ensured(claimed: bool, e: &EnsuredBasis) -> Self {
        GroebnerSummary {
            claimed,
            claim_verified: e.claimed_verified,
            completed: e.completed,
            basis_size: e.basis.len(),
            spairs_checked: e.spairs_checked,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimWitness {
    pub i: usize,
    pub j: usize,
    pub normal_form: String,
}

/// Full report for the Groebner verification command: checks the claim when
/// one is made, completes the basis otherwise, and certifies the final basis
/// either way.
#[derive(Debug, Clone, Serialize)]
pub struct GroebnerReport {
    pub shape: TensorShape,
    pub p: PTag,
    pub generator_count: usize,
    pub claimed_groebner: bool,
    pub claim_verified: Option<bool>,
    pub claim_witness: Option<ClaimWitness>,
    pub completed: bool,
    pub spairs_checked: usize,
    pub reduced_basis: Vec<String>,
    pub verified: bool,
}

pub fn groebner_report(spec: &IdealSpec, limits: &Limits) -> Result<GroebnerReport> {
    let order = MonomialOrder::Grevlex;
    let mut claim_verified = None;
    let mut claim_witness = None;
    let mut completed = false;
    let mut basis = spec.generators.clone();
    let mut spairs;
    if spec.claimed_groebner {
        let check = is_groebner_basis(&basis, &order)?;
        claim_verified = Some(check.is_gb);
        spairs = check.spairs_checked;
        if let Some(w) = check.witness {
            claim_witness = Some(ClaimWitness {
                i: w.i,
                j: w.j,
                normal_form: w.remainder.to_string(),
            });
        }
        if !check.is_gb {
            completed = true;
            basis = buchberger(&basis, &order, limits)?;
        }
    } else {
        completed = true;
        basis = buchberger(&basis, &order, limits)?;
        spairs = 0;
    }
    let basis = reduced_basis(&basis, &order)?;
    let final_check = is_groebner_basis(&basis, &order)?;
    if completed {
        spairs = final_check.spairs_checked;
    }
    Ok(GroebnerReport {
        shape: spec.shape.clone(),
        p: spec.p_tag,
        generator_count: spec.generators.len(),
        claimed_groebner: spec.claimed_groebner,
        claim_verified,
        claim_witness,
        completed,
        spairs_checked: spairs,
        reduced_basis: basis.iter().map(|g| g.to_string()).collect(),
        verified: final_check.is_gb,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalVerdict {
    Radical,
    NotConcluded,
}

/// Radicality via squarefree leading terms: if every leading monomial of a
/// reduced Groebner basis is squarefree, the initial ideal is radical and
/// therefore so is the ideal.  The converse fails, so a negative outcome is
/// only "not concluded".
#[derive(Debug, Clone, Serialize)]
pub struct SquarefreeLtCertificate {
    pub shape: TensorShape,
    pub p: PTag,
    pub groebner: GroebnerSummary,
    pub leading_terms: Vec<String>,
    pub all_squarefree: bool,
    pub verdict: RadicalVerdict,
}

fn monomial_display(shape: &TensorShape, m: &Monomial) -> String {
    Polynomial::from_monomial(shape.clone(), m.clone(), BigRational::one()).to_string()
}

fn squarefree_lt_with(spec: &IdealSpec, ensured: &EnsuredBasis) -> Result<SquarefreeLtCertificate> {
    let order = MonomialOrder::Grevlex;
    let mut lts = Vec::with_capacity(ensured.basis.len());
    let mut all_squarefree = true;
    for g in &ensured.basis {
        let lm = g.leading_monomial(&order)?;
        all_squarefree &= lm.is_squarefree();
        lts.push(monomial_display(&spec.shape, &lm));
    }
    Ok(SquarefreeLtCertificate {
        shape: spec.shape.clone(),
        p: spec.p_tag,
        groebner: GroebnerSummary::from_ensured(spec.claimed_groebner, ensured),
        leading_terms: lts,
        all_squarefree,
        verdict: if all_squarefree { RadicalVerdict::Radical } else { RadicalVerdict::NotConcluded },
    })
}

pub fn squarefree_lt_certificate(
    spec: &IdealSpec,
    limits: &Limits,
) -> Result<SquarefreeLtCertificate> {
    let ensured = ensure_groebner(spec, limits)?;
    squarefree_lt_with(spec, &ensured)
}

/// Radicality for zero-dimensional ideals: if the ideal contains, for every
/// variable, a univariate polynomial coprime with its own derivative, the
/// ideal is radical.  The univariate family is `x^3 - x` for the 1-norm
/// ideal and `x^2 - 1` for the max-norm ideal; other families are not
/// covered and report "not concluded".
#[derive(Debug, Clone, Serialize)]
pub struct SeidenbergCertificate {
    pub shape: TensorShape,
    pub p: PTag,
    pub groebner: GroebnerSummary,
    pub zero_dimensional: bool,
    pub zero_dim_missing: Option<String>,
    pub variables: Vec<SeidenbergVariable>,
    pub verdict: RadicalVerdict,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeidenbergVariable {
    pub variable: String,
    pub f: String,
    pub membership_verified: bool,
    pub gcd_with_derivative: String,
    pub gcd_degree: usize,
    pub squarefree: bool,
}

/// Finiteness test on a verified basis: every variable must appear as a
/// pure power among the leading monomials.
fn zero_dimensional_check(
    basis: &[Polynomial],
    shape: &TensorShape,
) -> Result<(bool, Option<String>)> {
    let order = MonomialOrder::Grevlex;
    let mut lts = Vec::with_capacity(basis.len());
    for g in basis {
        lts.push(g.leading_monomial(&order)?);
    }
    if lts.iter().any(Monomial::is_one) {
        // unit ideal: the empty variety is trivially finite
        return Ok((true, None));
    }
    for rank in 0..shape.num_vars() {
        let found = lts.iter().any(|m| {
            let mut ranks = m.ranks();
            matches!((ranks.next(), ranks.next()), (Some(r), None) if r == rank)
        });
        if !found {
            return Ok((false, Some(format!("x{}", shape.index_at_rank(rank)?))));
        }
    }
    Ok((true, None))
}

fn seidenberg_with(spec: &IdealSpec, ensured: &EnsuredBasis) -> Result<SeidenbergCertificate> {
    let order = MonomialOrder::Grevlex;
    let shape = &spec.shape;
    let summary = GroebnerSummary::from_ensured(spec.claimed_groebner, ensured);
    let (zero_dimensional, zero_dim_missing) = zero_dimensional_check(&ensured.basis, shape)?;
    if !zero_dimensional {
        return Ok(SeidenbergCertificate {
            shape: shape.clone(),
            p: spec.p_tag,
            groebner: summary,
            zero_dimensional,
            zero_dim_missing,
            variables: Vec::new(),
            verdict: RadicalVerdict::NotConcluded,
            reason: Some("ideal is not zero-dimensional".to_string()),
        });
    }
    // univariate family per norm tag
    let family: Option<fn(&TensorShape, usize) -> Polynomial> = match spec.p_tag {
        PTag::P1 => Some(|shape, rank| {
            let mut f = Polynomial::zero(shape.clone());
            f.add_term(Monomial::var_pow(rank, 3), BigRational::one());
            f.add_term(Monomial::var(rank), -BigRational::one());
            f
        }),
        PTag::PInf => Some(|shape, rank| {
            let mut f = Polynomial::zero(shape.clone());
            f.add_term(Monomial::var_pow(rank, 2), BigRational::one());
            f.add_term(Monomial::one(), -BigRational::one());
            f
        }),
        _ => None,
    };
    let Some(family) = family else {
        return Ok(SeidenbergCertificate {
            shape: shape.clone(),
            p: spec.p_tag,
            groebner: summary,
            zero_dimensional,
            zero_dim_missing,
            variables: Vec::new(),
            verdict: RadicalVerdict::NotConcluded,
            reason: Some(format!("no univariate family on record for p = {}", spec.p_tag)),
        });
    };
    let empty: BTreeSet<usize> = BTreeSet::new();
    let mut variables = Vec::with_capacity(shape.num_vars());
    let mut all_ok = true;
    for rank in 0..shape.num_vars() {
        let idx = shape.index_at_rank(rank)?;
        let f = family(shape, rank);
        let membership_verified = reduce(&f, &ensured.basis, &order)?.is_zero();
        let u = as_univariate(&f, &idx, &empty)?;
        let gcd = gcd_over_field(&u, &u.derivative())?;
        let gcd_degree = gcd.degree().unwrap_or(0);
        let squarefree = gcd_degree == 0;
        all_ok &= membership_verified && squarefree;
        variables.push(SeidenbergVariable {
            variable: format!("x{idx}"),
            f: f.to_string(),
            membership_verified,
            gcd_with_derivative: gcd.to_polynomial().to_string(),
            gcd_degree,
            squarefree,
        });
    }
    Ok(SeidenbergCertificate {
        shape: shape.clone(),
        p: spec.p_tag,
        groebner: summary,
        zero_dimensional,
        zero_dim_missing,
        variables,
        verdict: if all_ok { RadicalVerdict::Radical } else { RadicalVerdict::NotConcluded },
        reason: if all_ok { None } else { Some("a univariate check failed".to_string()) },
    })
}

pub fn seidenberg_certificate(spec: &IdealSpec, limits: &Limits) -> Result<SeidenbergCertificate> {
    let ensured = ensure_groebner(spec, limits)?;
    seidenberg_with(spec, &ensured)
}

/// Composite radicality certificate: tries squarefree leading terms first,
/// then the zero-dimensional criterion; reports both attempts.
#[derive(Debug, Clone, Serialize)]
pub struct RadicalCertificate {
    pub shape: TensorShape,
    pub p: PTag,
    pub verdict: RadicalVerdict,
    pub method: Option<&'static str>,
    pub squarefree_leading_terms: SquarefreeLtCertificate,
    pub seidenberg: Option<SeidenbergCertificate>,
}

pub fn radical_certificate(spec: &IdealSpec, limits: &Limits) -> Result<RadicalCertificate> {
    let ensured = ensure_groebner(spec, limits)?;
    let sqf = squarefree_lt_with(spec, &ensured)?;
    if sqf.verdict == RadicalVerdict::Radical {
        return Ok(RadicalCertificate {
            shape: spec.shape.clone(),
            p: spec.p_tag,
            verdict: RadicalVerdict::Radical,
            method: Some("squarefree_leading_terms"),
            squarefree_leading_terms: sqf,
            seidenberg: None,
        });
    }
    let sei = seidenberg_with(spec, &ensured)?;
    let verdict = sei.verdict;
    Ok(RadicalCertificate {
        shape: spec.shape.clone(),
        p: spec.p_tag,
        verdict,
        method: if verdict == RadicalVerdict::Radical { Some("seidenberg") } else { None },
        squarefree_leading_terms: sqf,
        seidenberg: Some(sei),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IndependenceCheck {
    pub kept_variables: Vec<String>,
    pub eliminated_count: usize,
    pub intersection_basis_size: Option<usize>,
    pub verified: bool,
    pub note: Option<String>,
}

/// Checks that the ideal meets `Q[J]` trivially by elimination: the block
/// order pushes every other variable ahead, and the certificate holds when
/// no basis element survives inside `Q[J]`.
pub fn independence_check(spec: &IdealSpec, limits: &Limits) -> Result<IndependenceCheck> {
    let shape = &spec.shape;
    let j = independent_set(shape);
    let mut keep = BTreeSet::new();
    for a in &j {
        keep.insert(shape.rank_of(a)?);
    }
    let kept_variables = j.iter().map(|a| format!("x{a}")).collect();
    let eliminated_count = shape.num_vars() - keep.len();
    match eliminate(&spec.generators, &keep, shape, limits) {
        Ok(intersection) => Ok(IndependenceCheck {
            kept_variables,
            eliminated_count,
            intersection_basis_size: Some(intersection.len()),
            verified: intersection.is_empty(),
            note: None,
        }),
        Err(Error::ResourceLimit(msg)) => Ok(IndependenceCheck {
            kept_variables,
            eliminated_count,
            intersection_basis_size: None,
            verified: false,
            note: Some(format!("elimination hit a resource limit: {msg}")),
        }),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeVerdict {
    Prime,
    NotEstablished,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimaryHypothesis {
    pub granted: bool,
    pub assumed_by_flag: bool,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VariableRecord {
    pub variable: String,
    /// 1: last entry below `n_d`, degree-one membership polynomial.
    /// 2: last entry equal to `n_d`, even-power membership polynomial.
    pub case: u8,
    pub membership_poly: String,
    pub degree_in_variable: usize,
    pub stripped_power: u32,
    pub membership_verified: bool,
    pub gcd_degree: usize,
    pub squarefree_over_parameters: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrimalityCertificate {
    pub shape: TensorShape,
    pub p: PTag,
    pub verdict: PrimeVerdict,
    pub dimension: usize,
    pub independent_set: Vec<String>,
    pub groebner: GroebnerSummary,
    pub independence: IndependenceCheck,
    pub primary_hypothesis: PrimaryHypothesis,
    pub variables: Vec<VariableRecord>,
    pub coefficient_field_note: &'static str,
}

const FIELD_NOTE: &str = "gcds are computed over Q(J); a degree-zero gcd certifies \
coprimality over every field extension, in particular over the complex numbers, \
because polynomial gcds are preserved by extension of the coefficient field";

fn primary_hypothesis(shape: &TensorShape, s: u32, assume: bool) -> PrimaryHypothesis {
    if assume {
        return PrimaryHypothesis {
            granted: true,
            assumed_by_flag: true,
            reason: "primariness assumed by caller flag; the verdict is conditional on it"
                .to_string(),
        };
    }
    if s == 1 && shape.dims().iter().any(|&n| n >= 2) {
        PrimaryHypothesis {
            granted: true,
            assumed_by_flag: false,
            reason: "for the 2-norm ideal the real points form the image of a product of \
unit spheres under the outer-product map, connected because some mode has size at \
least two; this grants the primariness hypothesis (it is not machine-checked)"
                .to_string(),
        }
    } else {
        PrimaryHypothesis {
            granted: false,
            assumed_by_flag: false,
            reason: if s == 1 {
                "every mode has size one, so the variety is a disconnected point pair and \
the ideal is not primary"
                    .to_string()
            } else {
                "no primariness grounds on record for this exponent; pass the assume flag \
to supply the hypothesis"
                    .to_string()
            },
        }
    }
}

/// The full primality pipeline for a `2s`-norm ideal.
pub fn primality_certificate(
    spec: &IdealSpec,
    limits: &Limits,
    assume_primary: bool,
) -> Result<PrimalityCertificate> {
    let Some(s) = spec.p_tag.half_exponent() else {
        return Err(Error::InvalidArgument(format!(
            "primality certificate covers even norms only, got p = {}",
            spec.p_tag
        )));
    };
    let shape = &spec.shape;
    let d = shape.ndim();
    let last_dim = shape.dims()[d - 1];
    let ensured = ensure_groebner(spec, limits)?;
    let order = MonomialOrder::Grevlex;

    let j = independent_set(shape);
    let dimension = expected_dimension(shape);
    debug_assert_eq!(j.len(), dimension);
    let j_set: BTreeSet<MultiIndex> = j.iter().cloned().collect();
    let mut param_ranks = BTreeSet::new();
    for a in &j {
        param_ranks.insert(shape.rank_of(a)?);
    }

    let independence = independence_check(spec, limits)?;
    let hypothesis = primary_hypothesis(shape, s, assume_primary);

    let mut variables = Vec::new();
    let mut all_vars_ok = true;
    for a in shape.indices().filter(|a| !j_set.contains(a)) {
        let case2 = a.entries()[d - 1] == last_dim;
        let (h, stripped) = if case2 {
            case2_membership(shape, &a, s)?
        } else {
            (case1_membership(shape, &a)?, 0)
        };
        let membership_verified = reduce(&h, &ensured.basis, &order)?.is_zero();
        let u: UnivariateOverField = as_univariate(&h, &a, &param_ranks)?;
        let degree = u.degree().unwrap_or(0);
        let gcd = gcd_over_field(&u, &u.derivative())?;
        let gcd_degree = gcd.degree().unwrap_or(0);
        let squarefree = gcd_degree == 0;
        all_vars_ok &= membership_verified && squarefree && degree >= 1;
        variables.push(VariableRecord {
            variable: format!("x{a}"),
            case: if case2 { 2 } else { 1 },
            membership_poly: h.to_string(),
            degree_in_variable: degree,
            stripped_power: stripped,
            membership_verified,
            gcd_degree,
            squarefree_over_parameters: squarefree,
        });
    }

    let prime = independence.verified && hypothesis.granted && all_vars_ok;
    Ok(PrimalityCertificate {
        shape: shape.clone(),
        p: spec.p_tag,
        verdict: if prime { PrimeVerdict::Prime } else { PrimeVerdict::NotEstablished },
        dimension,
        independent_set: j.iter().map(|a| format!("x{a}")).collect(),
        groebner: GroebnerSummary::from_ensured(spec.claimed_groebner, &ensured),
        independence,
        primary_hypothesis: hypothesis,
        variables,
        coefficient_field_note: FIELD_NOTE,
    })
}

/// Exact rank of an integer matrix by Bareiss fraction-free elimination.
fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pivot) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pivot);
        for i in (row + 1)..rows {
            for j in (col + 1)..cols {
                let num = &m[row][col] * &m[i][j] - &m[i][col] * &m[row][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        rank += 1;
        row += 1;
    }
    rank
}

#[derive(Debug, Clone, Serialize)]
pub struct SmoothnessCertificate {
    pub shape: TensorShape,
    pub p: PTag,
    pub point: String,
    pub point_on_variety: bool,
    pub jacobian_rows: usize,
    pub jacobian_cols: usize,
    pub jacobian_rank: usize,
    pub required_rank: usize,
    pub expected_dimension: usize,
    pub smooth_point: bool,
}

/// Exact Jacobian rank at the base point with a one in the all-ones slot and
/// zeros elsewhere.  The point is a smooth point of the variety exactly when
/// the rank equals the number of variables minus the dimension.
pub fn smoothness_certificate(spec: &IdealSpec) -> Result<SmoothnessCertificate> {
    if spec.p_tag.half_exponent().is_none() {
        return Err(Error::InvalidArgument(format!(
            "smoothness certificate covers even norms only, got p = {}",
            spec.p_tag
        )));
    }
    let shape = &spec.shape;
    let n = shape.num_vars();
    let ones_rank = shape.rank_of(&shape.all_ones())?;
    let mut point = vec![BigRational::zero(); n];
    point[ones_rank] = BigRational::one();

    let mut on_variety = true;
    for g in &spec.generators {
        if !g.evaluate_at(&point)?.is_zero() {
            on_variety = false;
        }
    }

    let mut matrix: Vec<Vec<BigInt>> = Vec::with_capacity(spec.generators.len());
    for g in &spec.generators {
        let mut row_rat = Vec::with_capacity(n);
        for rank in 0..n {
            row_rat.push(g.partial_derivative_rank(rank).evaluate_at(&point)?);
        }
        let mut denom = BigInt::one();
        for v in &row_rat {
            denom = denom.lcm(v.denom());
        }
        let denom = BigRational::from_integer(denom);
        let row = row_rat
            .into_iter()
            .map(|v| {
                let scaled = v * &denom;
                debug_assert!(scaled.is_integer());
                scaled.to_integer()
            })
            .collect();
        matrix.push(row);
    }
    let rank = bareiss_rank(matrix);
    let dim = expected_dimension(shape);
    let required = n - dim;
    Ok(SmoothnessCertificate {
        shape: shape.clone(),
        p: spec.p_tag,
        point: format!("x{} = 1, all other entries 0", shape.all_ones()),
        point_on_variety: on_variety,
        jacobian_rows: spec.generators.len(),
        jacobian_cols: n,
        jacobian_rank: rank,
        required_rank: required,
        expected_dimension: dim,
        smooth_point: on_variety && rank == required,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::build_ideal;
    use crate::poly::parse_polynomial;

    fn shape(dims: &[usize]) -> TensorShape {
        TensorShape::new(dims.to_vec()).unwrap()
    }

    fn idx(entries: &[usize]) -> MultiIndex {
        MultiIndex::new(entries.to_vec()).unwrap()
    }

    fn names(v: &[MultiIndex]) -> Vec<String> {
        v.iter().map(|a| a.to_string()).collect()
    }

    #[test]
    fn independent_sets_frozen() {
        assert_eq!(names(&independent_set(&shape(&[2, 2]))), ["(1,1)", "(2,1)"]);
        assert_eq!(
            names(&independent_set(&shape(&[3, 3]))),
            ["(1,1)", "(1,2)", "(2,1)", "(3,1)"]
        );
        assert_eq!(
            names(&independent_set(&shape(&[2, 3]))),
            ["(1,1)", "(1,2)", "(2,1)"]
        );
        assert_eq!(
            names(&independent_set(&shape(&[2, 2, 2]))),
            ["(1,1,1)", "(1,2,1)", "(2,1,1)"]
        );
        // degenerate last mode: the excluded index is the all-ones index
        assert_eq!(names(&independent_set(&shape(&[2, 1]))), ["(2,1)"]);
        for dims in [vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2], vec![4, 1, 2]] {
            let s = shape(&dims);
            assert_eq!(independent_set(&s).len(), expected_dimension(&s));
        }
        assert_eq!(expected_dimension(&shape(&[3, 3])), 4);
        assert_eq!(expected_dimension(&shape(&[2, 2])), 2);
        assert_eq!(expected_dimension(&shape(&[2, 2, 2])), 3);
    }

    #[test]
    fn case1_polynomials() {
        // (3,3), a = (2,2): x11*x22 - x21*x12
        let s = shape(&[3, 3]);
        let h = case1_membership(&s, &idx(&[2, 2])).unwrap();
        let expected = parse_polynomial("x[1,1]*x[2,2] - x[2,1]*x[1,2]", &s).unwrap();
        assert_eq!(h, expected);
        assert_eq!(h.to_string(), "-x[1,2]*x[2,1] + x[1,1]*x[2,2]");
        // membership in the verified 2-norm basis
        let spec = build_ideal(&s, PTag::PEven(1));
        let r = reduce(&h, &spec.generators, &MonomialOrder::Grevlex).unwrap();
        assert!(r.is_zero());
        // (2,2,2), a = (2,2,1): cube relation x111^2 * x221 - x211*x121*x111
        let s3 = shape(&[2, 2, 2]);
        let h3 = case1_membership(&s3, &idx(&[2, 2, 1])).unwrap();
        let expected3 =
            parse_polynomial("x[1,1,1]^2*x[2,2,1] - x[2,1,1]*x[1,2,1]*x[1,1,1]", &s3).unwrap();
        assert_eq!(h3, expected3);
        let spec3 = build_ideal(&s3, PTag::P0);
        let r3 = reduce(&h3, &spec3.generators, &MonomialOrder::Grevlex).unwrap();
        assert!(r3.is_zero());
    }

    #[test]
    fn case2_polynomial_matches_hand_computation() {
        // (2,2), a = (2,2), s = 1
        let s = shape(&[2, 2]);
        let (h, stripped) = case2_membership(&s, &idx(&[2, 2]), 1).unwrap();
        assert_eq!(stripped, 0);
        let expected = parse_polynomial(
            "x[1,1]^4*x[2,2]^2 + x[1,1]^2*x[2,1]^2*x[2,2]^2 + x[1,1]^4*x[2,1]^2 \
             + x[1,1]^2*x[2,1]^4 - x[1,1]^2*x[2,1]^2",
            &s,
        )
        .unwrap();
        assert_eq!(h, expected);
        // vanishes on a rational rank-one point of the unit sphere
        let vals: Vec<BigRational> = ["3/5", "0", "4/5", "0"]
            .iter()
            .map(|t| t.parse().unwrap())
            .collect();
        assert!(h.evaluate_at(&vals).unwrap().is_zero());
        // and reduces to zero against the verified generators
        let spec = build_ideal(&s, PTag::PEven(1));
        assert!(reduce(&h, &spec.generators, &MonomialOrder::Grevlex).unwrap().is_zero());
    }

    #[test]
    fn case2_degenerate_last_mode_strips_content() {
        // (2,1): the raw polynomial is x11^4 * (x11^2 - 1 + x21^2)
        let s = shape(&[2, 1]);
        let (h, stripped) = case2_membership(&s, &idx(&[1, 1]), 1).unwrap();
        assert_eq!(stripped, 4);
        let expected = parse_polynomial("x[1,1]^2 - 1 + x[2,1]^2", &s).unwrap();
        assert_eq!(h, expected);
        let spec = build_ideal(&s, PTag::PEven(1));
        assert!(reduce(&h, &spec.generators, &MonomialOrder::Grevlex).unwrap().is_zero());
    }

    #[test]
    fn groebner_reports() {
        let limits = Limits::default();
        // verified claim
        let rep = groebner_report(&build_ideal(&shape(&[2, 2]), PTag::PEven(1)), &limits).unwrap();
        assert_eq!(rep.claim_verified, Some(true));
        assert!(!rep.completed);
        assert!(rep.verified);
        assert_eq!(rep.reduced_basis.len(), 2);
        // false claim would carry a witness; the max-norm family makes none,
        // it is honest about not being a basis
        let rep = groebner_report(&build_ideal(&shape(&[2, 2]), PTag::PInf), &limits).unwrap();
        assert_eq!(rep.claim_verified, None);
        assert!(rep.completed);
        assert!(rep.verified);
        // the 2-norm family reduced basis reproduces the generators
        let spec = build_ideal(&shape(&[3, 3]), PTag::PEven(1));
        let rep = groebner_report(&spec, &limits).unwrap();
        let gen_strings: BTreeSet<String> =
            spec.generators.iter().map(|g| g.to_string()).collect();
        let basis_strings: BTreeSet<String> = rep.reduced_basis.iter().cloned().collect();
        assert_eq!(gen_strings, basis_strings);
    }

    #[test]
    fn radical_certificates_by_method() {
        let limits = Limits::default();
        // binomial ideal: squarefree leading terms
        let cert = radical_certificate(&build_ideal(&shape(&[3, 3]), PTag::P0), &limits).unwrap();
        assert_eq!(cert.verdict, RadicalVerdict::Radical);
        assert_eq!(cert.method, Some("squarefree_leading_terms"));
        // 1-norm ideal: zero-dimensional with x^3 - x
        let cert = radical_certificate(&build_ideal(&shape(&[2, 2]), PTag::P1), &limits).unwrap();
        assert_eq!(cert.verdict, RadicalVerdict::Radical);
        assert_eq!(cert.method, Some("seidenberg"));
        let sei = cert.seidenberg.unwrap();
        assert!(sei.zero_dimensional);
        assert!(sei.variables.iter().all(|v| v.membership_verified && v.squarefree));
        // max-norm ideal: zero-dimensional with x^2 - 1
        let cert = radical_certificate(&build_ideal(&shape(&[2, 2]), PTag::PInf), &limits).unwrap();
        assert_eq!(cert.verdict, RadicalVerdict::Radical);
        assert_eq!(cert.method, Some("seidenberg"));
        // 2-norm ideal: positive-dimensional, neither method applies
        let cert =
            radical_certificate(&build_ideal(&shape(&[2, 2]), PTag::PEven(1)), &limits).unwrap();
        assert_eq!(cert.verdict, RadicalVerdict::NotConcluded);
        assert_eq!(cert.method, None);
        let sei = cert.seidenberg.unwrap();
        assert!(!sei.zero_dimensional);
        assert_eq!(sei.zero_dim_missing.as_deref(), Some("x(1,2)"));
    }

    #[test]
    fn seidenberg_guard_rejects_positive_dimensional_ideals() {
        let limits = Limits::default();
        let cert =
            seidenberg_certificate(&build_ideal(&shape(&[2, 3]), PTag::PEven(1)), &limits).unwrap();
        assert_eq!(cert.verdict, RadicalVerdict::NotConcluded);
        assert!(!cert.zero_dimensional);
        assert!(cert.variables.is_empty());
    }

    #[test]
    fn independence_checks() {
        let limits = Limits::default();
        let check =
            independence_check(&build_ideal(&shape(&[2, 2]), PTag::PEven(1)), &limits).unwrap();
        assert!(check.verified);
        assert_eq!(check.kept_variables, ["x(1,1)", "x(2,1)"]);
        assert_eq!(check.eliminated_count, 2);
        assert_eq!(check.intersection_basis_size, Some(0));
        // resource limits surface as unverified, not as errors
        let tight = Limits { max_basis: 1, max_terms: 1_000_000 };
        let check =
            independence_check(&build_ideal(&shape(&[3, 3]), PTag::PEven(1)), &tight).unwrap();
        assert!(!check.verified);
        assert!(check.note.is_some());
    }

    #[test]
    fn primality_small_shapes() {
        let limits = Limits::default();
        for dims in [vec![2, 2], vec![2, 1]] {
            let spec = build_ideal(&shape(&dims), PTag::PEven(1));
            let cert = primality_certificate(&spec, &limits, false).unwrap();
            assert_eq!(cert.verdict, PrimeVerdict::Prime, "shape {dims:?}");
            assert!(cert.independence.verified);
            assert!(cert.primary_hypothesis.granted);
            assert!(cert
                .variables
                .iter()
                .all(|v| v.membership_verified && v.squarefree_over_parameters));
        }
        let cert = primality_certificate(
            &build_ideal(&shape(&[2, 2]), PTag::PEven(1)),
            &limits,
            false,
        )
        .unwrap();
        assert_eq!(cert.dimension, 2);
        assert_eq!(cert.independent_set, ["x(1,1)", "x(2,1)"]);
    }

    #[test]
    fn primality_needs_the_hypothesis_for_higher_even_norms() {
        let limits = Limits::default();
        let spec = build_ideal(&shape(&[2, 2]), PTag::PEven(2));
        let cert = primality_certificate(&spec, &limits, false).unwrap();
        assert_eq!(cert.verdict, PrimeVerdict::NotEstablished);
        assert!(!cert.primary_hypothesis.granted);
        // the machine-checked parts hold even without the hypothesis
        assert!(cert.independence.verified);
        assert!(cert
            .variables
            .iter()
            .all(|v| v.membership_verified && v.squarefree_over_parameters));
        let cert = primality_certificate(&spec, &limits, true).unwrap();
        assert_eq!(cert.verdict, PrimeVerdict::Prime);
        assert!(cert.primary_hypothesis.assumed_by_flag);
    }

    #[test]
    fn primality_rejects_all_ones_shapes_without_flag() {
        let limits = Limits::default();
        let spec = build_ideal(&shape(&[1, 1]), PTag::PEven(1));
        let cert = primality_certificate(&spec, &limits, false).unwrap();
        assert_eq!(cert.verdict, PrimeVerdict::NotEstablished);
        assert!(!cert.primary_hypothesis.granted);
        // and rightly so: x^2 - 1 factors, the ideal is not prime
    }

    #[test]
    fn primality_rejects_odd_norms() {
        let limits = Limits::default();
        let spec = build_ideal(&shape(&[2, 2]), PTag::P1);
        assert!(primality_certificate(&spec, &limits, false).is_err());
    }

    #[test]
    fn bareiss_rank_examples() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
        };
        assert_eq!(bareiss_rank(m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(m(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(bareiss_rank(m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(
            bareiss_rank(m(&[&[2, 4, 6, 8], &[1, 3, 5, 7], &[3, 7, 11, 15]])),
            2
        );
        assert_eq!(bareiss_rank(m(&[&[0, 5], &[7, 0], &[1, 1]])), 2);
    }

    #[test]
    fn smoothness_ranks_frozen() {
        for (dims, rank) in [(vec![2, 2], 2), (vec![3, 3], 5), (vec![2, 2, 2], 5)] {
            let spec = build_ideal(&shape(&dims), PTag::PEven(1));
            let cert = smoothness_certificate(&spec).unwrap();
            assert!(cert.point_on_variety);
            assert_eq!(cert.jacobian_rank, rank, "shape {dims:?}");
            assert_eq!(cert.required_rank, rank);
            assert!(cert.smooth_point);
        }
        // the 4-norm ideal has the same base point and rank behaviour
        let cert = smoothness_certificate(&build_ideal(&shape(&[2, 2]), PTag::PEven(2))).unwrap();
        assert!(cert.smooth_point);
        assert!(smoothness_certificate(&build_ideal(&shape(&[2, 2]), PTag::P1)).is_err());
    }
}
