//! Buchberger's algorithm, normal forms, and elimination.
//!
//! Two roles are deliberately kept apart:
//!
//! * [`is_groebner_basis`] is the trusted checker.  It reduces the
//!   S-polynomial of *every* pair with no selection criteria, so a positive
//!   answer is a certificate and a negative one carries a witness pair.
//! * [`buchberger`] is the untrusted search.  It uses the product and chain
//!   criteria to skip predictably-zero pairs and is subject to [`Limits`];
//!   certificate code always re-checks its output with the trusted checker.
//!
//! Reduction works on term lists kept sorted ascending under the active
//! order, so each cancellation step is a single linear merge instead of a
//! tree edit per term.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index::TensorShape;
use crate::poly::{Monomial, MonomialOrder, Polynomial};

/// Caps on the Buchberger loop so runaway completions fail cleanly with
/// [`Error::ResourceLimit`] instead of exhausting memory.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of basis elements the completion may accumulate.
    pub max_basis: usize,
    /// Maximum number of terms in any intermediate polynomial.
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_basis: 5000, max_terms: 1_000_000 }
    }
}

/// Outcome of the trusted all-pairs check.
#[derive(Debug, Clone)]
pub struct GbCheck {
    pub is_gb: bool,
    /// Pairs whose S-polynomial was reduced (stops at the first failure).
    pub spairs_checked: usize,
    /// For a failed check: the offending pair and its nonzero normal form.
    pub witness: Option<SPairWitness>,
}

#[derive(Debug, Clone)]
pub struct SPairWitness {
    pub i: usize,
    pub j: usize,
    pub remainder: Polynomial,
}

/// Basis element prepared for repeated reduction: leading term split out and
/// the full term list pre-sorted ascending under the active order.
struct Divisor {
    lm: Monomial,
    lc: BigRational,
    terms: Vec<(Monomial, BigRational)>,
    source: usize,
}

fn sorted_terms(p: &Polynomial, order: &MonomialOrder) -> Vec<(Monomial, BigRational)> {
    let mut v: Vec<(Monomial, BigRational)> =
        p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    if matches!(order, MonomialOrder::Block { .. }) {
        v.sort_by(|a, b| order.compare(&a.0, &b.0));
    }
    v
}

/// Sparser divisors first, then larger leading term; deterministic because
/// the sort is stable over a deterministic input order.
fn sort_divisors(divisors: &mut [Divisor], order: &MonomialOrder) {
    divisors.sort_by(|a, b| {
        a.terms.len().cmp(&b.terms.len()).then_with(|| order.compare(&b.lm, &a.lm))
    });
}

fn make_divisor(g: &Polynomial, source: usize, order: &MonomialOrder) -> Divisor {
    let (lm, lc) = g.leading_term(order).expect("nonzero");
    Divisor { lm, lc, terms: sorted_terms(g, order), source }
}

fn prepare_divisors(basis: &[Polynomial], order: &MonomialOrder) -> Vec<Divisor> {
    let mut divisors: Vec<Divisor> = basis
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| make_divisor(g, i, order))
        .collect();
    sort_divisors(&mut divisors, order);
    divisors
}

/// `work - scaled`, both ascending under `order`; zero coefficients drop out.
fn merge_sub(
    work: Vec<(Monomial, BigRational)>,
    scaled: Vec<(Monomial, BigRational)>,
    order: &MonomialOrder,
) -> Vec<(Monomial, BigRational)> {
    let mut out = Vec::with_capacity(work.len() + scaled.len());
    let mut wi = work.into_iter().peekable();
    let mut si = scaled.into_iter().peekable();
    loop {
        match (wi.peek(), si.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(wi.next().expect("peeked")),
            (None, Some(_)) => {
                let (m, c) = si.next().expect("peeked");
                out.push((m, -c));
            }
            (Some((wm, _)), Some((sm, _))) => match order.compare(wm, sm) {
                Ordering::Less => out.push(wi.next().expect("peeked")),
                Ordering::Greater => {
                    let (m, c) = si.next().expect("peeked");
                    out.push((m, -c));
                }
                Ordering::Equal => {
                    let (m, wc) = wi.next().expect("peeked");
                    let (_, sc) = si.next().expect("peeked");
                    let c = wc - sc;
                    if !c.is_zero() {
                        out.push((m, c));
                    }
                }
            },
        }
    }
    out
}

/// Full normal form: repeatedly cancels the largest term divisible by some
/// divisor leading monomial; irreducible terms move to the result.  With
/// `quotients`, accumulates `f = sum q_i g_i + r` cofactors by source index.
fn normal_form(
    f: &Polynomial,
    divisors: &[Divisor],
    order: &MonomialOrder,
    shape: &TensorShape,
    mut quotients: Option<&mut [Polynomial]>,
    max_terms: Option<usize>,
) -> Result<Polynomial> {
    let mut work = sorted_terms(f, order);
    let mut done: Vec<(Monomial, BigRational)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.last().cloned() {
        if let Some(cap) = max_terms {
            if work.len() + done.len() > cap {
                return Err(Error::ResourceLimit(format!(
                    "intermediate polynomial exceeded {cap} terms during reduction"
                )));
            }
        }
        for d in divisors {
            if d.lm.divides(&lm) {
                let qm = lm.div(&d.lm).expect("divides");
                let qc = &lc / &d.lc;
                if let Some(q) = quotients.as_deref_mut() {
                    q[d.source].add_term(qm.clone(), qc.clone());
                }
                let scaled: Vec<(Monomial, BigRational)> =
                    d.terms.iter().map(|(m, c)| (m.mul(&qm), c * &qc)).collect();
                work = merge_sub(work, scaled, order);
                continue 'outer;
            }
        }
        work.pop();
        done.push((lm, lc));
    }
    Ok(Polynomial::from_terms(shape.clone(), done))
}

fn common_shape<'a>(f: &'a Polynomial, basis: &[Polynomial]) -> Result<&'a TensorShape> {
    for g in basis {
        if g.shape() != f.shape() {
            return Err(Error::ShapeMismatch(format!(
                "reduction mixes shapes {} and {}",
                f.shape(),
                g.shape()
            )));
        }
    }
    Ok(f.shape())
}

/// Normal form of `f` modulo `basis` under `order`.
pub fn reduce(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Result<Polynomial> {
    let shape = common_shape(f, basis)?;
    let divisors = prepare_divisors(basis, order);
    normal_form(f, &divisors, order, shape, None, None)
}

/// Normal form together with cofactors: `f = sum_i q_i * basis_i + r`.
pub fn reduce_with_quotients(
    f: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
) -> Result<(Polynomial, Vec<Polynomial>)> {
    let shape = common_shape(f, basis)?.clone();
    let divisors = prepare_divisors(basis, order);
    let mut quotients = vec![Polynomial::zero(shape.clone()); basis.len()];
    let r = normal_form(f, &divisors, order, &shape, Some(&mut quotients), None)?;
    Ok((r, quotients))
}

/// S-polynomial `(L/lt f) f - (L/lt g) g` with `L = lcm(lm f, lm g)`.
pub fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    order: &MonomialOrder,
) -> Result<Polynomial> {
    if f.shape() != g.shape() {
        return Err(Error::ShapeMismatch(format!(
            "S-polynomial mixes shapes {} and {}",
            f.shape(),
            g.shape()
        )));
    }
    let (fm, fc) = f.leading_term(order)?;
    let (gm, gc) = g.leading_term(order)?;
    let l = fm.lcm(&gm);
    let left = f.mul_term(&l.div(&fm).expect("lcm"), &fc.recip());
    let right = g.mul_term(&l.div(&gm).expect("lcm"), &gc.recip());
    left.sub(&right)
}

/// Trusted Groebner property check: reduces every S-polynomial with no
/// shortcuts.  Errors on zero basis elements rather than skipping them.
pub fn is_groebner_basis(basis: &[Polynomial], order: &MonomialOrder) -> Result<GbCheck> {
    if basis.is_empty() {
        return Ok(GbCheck { is_gb: true, spairs_checked: 0, witness: None });
    }
    if basis.iter().any(Polynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let shape = common_shape(&basis[0], basis)?.clone();
    let divisors = prepare_divisors(basis, order);
    let mut checked = 0;
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], order)?;
            let r = normal_form(&s, &divisors, order, &shape, None, None)?;
            checked += 1;
            if !r.is_zero() {
                return Ok(GbCheck {
                    is_gb: false,
                    spairs_checked: checked,
                    witness: Some(SPairWitness { i, j, remainder: r }),
                });
            }
        }
    }
    Ok(GbCheck { is_gb: true, spairs_checked: checked, witness: None })
}

/// Buchberger completion with the product criterion, the chain criterion,
/// and normal (smallest lcm degree first) pair selection.
///
/// The chain criterion here skips pair `(i, j)` only when some `k` divides
/// `lcm(lm_i, lm_j)` and both `(i, k)` and `(j, k)` have already been
/// handled; at most one pair is in flight at a time, so every skip cites
/// strictly earlier pairs and the usual syzygy induction applies.
pub fn buchberger(
    generators: &[Polynomial],
    order: &MonomialOrder,
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Ok(basis);
    }
    let shape = common_shape(&basis[0], &basis)?.clone();
    for g in &mut basis {
        *g = g.monic(order)?;
    }

    let mut lms: Vec<Monomial> = Vec::with_capacity(basis.len());
    for g in &basis {
        lms.push(g.leading_monomial(order)?);
    }

    struct Pair {
        i: usize,
        j: usize,
        lcm: Monomial,
    }
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.push(Pair { i, j, lcm: lms[i].lcm(&lms[j]) });
            pending_set.insert((i, j));
        }
    }
    let mut divisors = prepare_divisors(&basis, order);

    while !pending.is_empty() {
        // normal selection: smallest lcm degree, then smallest lcm
        let mut best = 0;
        for (idx, p) in pending.iter().enumerate().skip(1) {
            let cand = (p.lcm.degree(), &p.lcm);
            let cur = (pending[best].lcm.degree(), &pending[best].lcm);
            if cand.0 < cur.0 || (cand.0 == cur.0 && order.compare(cand.1, cur.1) == Ordering::Less)
            {
                best = idx;
            }
        }
        let pair = pending.swap_remove(best);
        pending_set.remove(&(pair.i, pair.j));

        // product criterion: coprime leading monomials reduce to zero
        if lms[pair.i].gcd(&lms[pair.j]).is_one() {
            continue;
        }
        // chain criterion
        let chained = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && lms[k].divides(&pair.lcm)
                && !pending_set.contains(&key(pair.i, k))
                && !pending_set.contains(&key(pair.j, k))
        });
        if chained {
            continue;
        }

        let s = s_polynomial(&basis[pair.i], &basis[pair.j], order)?;
        let r = normal_form(&s, &divisors, order, &shape, None, Some(limits.max_terms))?;
        if r.is_zero() {
            continue;
        }
        let r = r.monic(order)?;
        let new_lm = r.leading_monomial(order)?;
        basis.push(r);
        lms.push(new_lm);
        let new = basis.len() - 1;
        divisors.push(make_divisor(&basis[new], new, order));
        sort_divisors(&mut divisors, order);
        if basis.len() > limits.max_basis {
            return Err(Error::ResourceLimit(format!(
                "Groebner basis exceeded {} elements",
                limits.max_basis
            )));
        }
        for i in 0..new {
            pending.push(Pair { i, j: new, lcm: lms[i].lcm(&lms[new]) });
            pending_set.insert((i, new));
        }
    }
    Ok(basis)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Minimal, interreduced, monic basis sorted by decreasing leading term.
/// Applied to any Groebner basis this yields *the* reduced basis, which is
/// unique for the ideal and order, so equality of reduced bases is equality
/// of ideals.
pub fn reduced_basis(basis: &[Polynomial], order: &MonomialOrder) -> Result<Vec<Polynomial>> {
    let mut kept: Vec<Polynomial> = Vec::new();
    // minimality: ascending scan keeps an element only if no earlier kept
    // leading monomial divides its own (divisors always sort earlier)
    let mut sorted: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    let mut lm_cache: Vec<Monomial> = Vec::with_capacity(sorted.len());
    sorted.sort_by(|a, b| {
        let la = a.leading_monomial(order).expect("nonzero");
        let lb = b.leading_monomial(order).expect("nonzero");
        order.compare(&la, &lb)
    });
    for g in sorted {
        let lm = g.leading_monomial(order)?;
        if !lm_cache.iter().any(|k| k.divides(&lm)) {
            lm_cache.push(lm);
            kept.push(g.monic(order)?);
        }
    }
    // interreduce tails to a fixpoint (leading monomials are already
    // pairwise non-dividing, so they survive reduction untouched)
    loop {
        let mut changed = false;
        for i in 0..kept.len() {
            let others: Vec<Polynomial> =
                kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let r = reduce(&kept[i], &others, order)?;
            if r != kept[i] {
                kept[i] = r.monic(order)?;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = kept;
    out.sort_by(|a, b| {
        let la = a.leading_monomial(order).expect("nonzero");
        let lb = b.leading_monomial(order).expect("nonzero");
        order.compare(&lb, &la)
    });
    Ok(out)
}

/// Groebner basis of the elimination ideal: completes under a block order
/// that eliminates every variable outside `keep`, then retains the basis
/// elements supported on `keep` alone.  Returned polynomials form a basis of
/// the intersection with the kept subring; in particular an empty result
/// means that intersection is the zero ideal.
pub fn eliminate(
    generators: &[Polynomial],
    keep: &BTreeSet<usize>,
    shape: &TensorShape,
    limits: &Limits,
) -> Result<Vec<Polynomial>> {
    let eliminated: BTreeSet<usize> =
        (0..shape.num_vars()).filter(|r| !keep.contains(r)).collect();
    let order = MonomialOrder::elimination(eliminated);
    let gb = buchberger(generators, &order, limits)?;
    let gb = reduced_basis(&gb, &order)?;
    Ok(gb.into_iter().filter(|g| g.uses_only(keep)).collect())
}

/// Membership test through a basis already known to be a Groebner basis.
pub fn ideal_member(f: &Polynomial, gb: &[Polynomial], order: &MonomialOrder) -> Result<bool> {
    Ok(reduce(f, gb, order)?.is_zero())
}

/// A basis whose Groebner property has been established by the trusted
/// checker, with bookkeeping on how it was obtained.
#[derive(Debug, Clone)]
pub struct EnsuredBasis {
    pub basis: Vec<Polynomial>,
    /// `Some(outcome)` when the input claimed to already be a Groebner
    /// basis: the claim's verified truth value (never assumed).
    pub claimed_verified: Option<bool>,
    /// Whether a Buchberger completion run was needed.
    pub completed: bool,
    /// S-pairs reduced by the final trusted check.
    pub spairs_checked: usize,
}

/// Produces a verified reduced grevlex Groebner basis for the ideal: checks
/// a claimed basis rather than trusting it, completes when the claim is
/// absent or false, and always certifies the final result pair by pair.
pub fn ensure_groebner(
    spec: &crate::ideals::IdealSpec,
    limits: &Limits,
) -> Result<EnsuredBasis> {
    let order = MonomialOrder::Grevlex;
    let mut claimed_verified = None;
    let mut completed = false;
    let mut basis = spec.generators.clone();
    if spec.claimed_groebner {
        let check = is_groebner_basis(&basis, &order)?;
        claimed_verified = Some(check.is_gb);
        if check.is_gb {
            let reduced = reduced_basis(&basis, &order)?;
            return Ok(EnsuredBasis {
                basis: reduced,
                claimed_verified,
                completed,
                spairs_checked: check.spairs_checked,
            });
        }
    }
    completed = true;
    basis = buchberger(&basis, &order, limits)?;
    basis = reduced_basis(&basis, &order)?;
    let check = is_groebner_basis(&basis, &order)?;
    if !check.is_gb {
        return Err(Error::CertificateFailure(
            "completed basis failed the trusted Groebner check".to_string(),
        ));
    }
    Ok(EnsuredBasis { basis, claimed_verified, completed, spairs_checked: check.spairs_checked })
}
