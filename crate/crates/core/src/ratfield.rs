//! Univariate polynomials over a rational function field.
//!
//! A polynomial in the full tensor ring that only involves one distinguished
//! variable `x_a` plus a set of parameter variables can be read as an
//! element of `K[x_a]` with `K = Q(parameters)`.  Squarefreeness over `K` is
//! what the radical and primality certificates need, and it is decided by a
//! gcd with the derivative.
//!
//! The gcd runs the subresultant polynomial remainder sequence on integer
//! representatives, so no fraction-field arithmetic ever happens: parameter
//! denominators are cleared up front and each pseudo-remainder is divided by
//! the predicted `g * h^delta` factor.  If that exact division ever fails
//! the undivided remainder is kept instead; the sequence then differs from
//! the textbook one only by nonzero parameter factors, which are units of
//! `K`, so the computed gcd degree is unaffected.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::index::{MultiIndex, TensorShape};
use crate::poly::{Monomial, Polynomial};

/// Element of `K[x_main]` with `K = Q(parameters)`, stored densely:
/// `coeffs[k]` multiplies `x_main^k` and involves parameter variables only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateOverField {
    shape: TensorShape,
    main_rank: usize,
    coeffs: Vec<Polynomial>,
}

impl UnivariateOverField {
    fn from_coeffs(shape: TensorShape, main_rank: usize, mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        UnivariateOverField { shape, main_rank, coeffs }
    }

    pub fn main_rank(&self) -> usize {
        self.main_rank
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in the main variable; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, k: usize) -> Polynomial {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Polynomial::zero(self.shape.clone()))
    }

    pub fn leading_coefficient(&self) -> Result<&Polynomial> {
        self.coeffs.last().ok_or(Error::ZeroPolynomial)
    }

    /// Reassembles the element as a polynomial of the full ring.
    pub fn to_polynomial(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.shape.clone());
        let one = BigRational::one();
        for (k, c) in self.coeffs.iter().enumerate() {
            let shifted = c.mul_term(&Monomial::var_pow(self.main_rank, k as u32), &one);
            out = out.add(&shifted).expect("same shape");
        }
        out
    }

    /// Formal derivative with respect to the main variable.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<Polynomial> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&BigRational::from_integer(BigInt::from(k))))
            .collect();
        UnivariateOverField::from_coeffs(self.shape.clone(), self.main_rank, coeffs)
    }

    fn scale_poly(&self, c: &Polynomial) -> Self {
        let coeffs = self.coeffs.iter().map(|k| k.mul(c).expect("same shape")).collect();
        UnivariateOverField::from_coeffs(self.shape.clone(), self.main_rank, coeffs)
    }

    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coefficient(k) - &other.coefficient(k)).collect();
        UnivariateOverField::from_coeffs(self.shape.clone(), self.main_rank, coeffs)
    }

    /// Multiplication by `x_main^k`.
    fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Polynomial::zero(self.shape.clone()); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UnivariateOverField { shape: self.shape.clone(), main_rank: self.main_rank, coeffs }
    }

    fn div_exact_coeffs(&self, d: &Polynomial) -> Option<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.div_exact(d)?);
        }
        Some(UnivariateOverField::from_coeffs(self.shape.clone(), self.main_rank, coeffs))
    }
}

/// Reads `h` as an element of `Q(parameters)[x_a]`.  Every variable of `h`
/// must be `x_a` itself or lie in `parameters`; denominators are cleared, so
/// the result equals `h` up to a positive rational factor.
pub fn as_univariate(
    h: &Polynomial,
    a: &MultiIndex,
    parameters: &BTreeSet<usize>,
) -> Result<UnivariateOverField> {
    let shape = h.shape().clone();
    let main_rank = shape.rank_of(a)?;
    if parameters.contains(&main_rank) {
        return Err(Error::InvalidArgument(format!(
            "main variable x{a} also listed as a parameter"
        )));
    }
    for r in h.variables() {
        if r != main_rank && !parameters.contains(&r) {
            let idx = shape.index_at_rank(r)?;
            return Err(Error::ForeignVariable(format!("x{idx}")));
        }
    }
    let cleared = h.denominators_cleared();
    let coeffs = (0..=cleared.degree_in(main_rank))
        .map(|k| cleared.coefficient_of_power(main_rank, k))
        .collect();
    Ok(UnivariateOverField::from_coeffs(shape, main_rank, coeffs))
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a  mod  b` in the main
/// variable.  Padded to the uniform power even when the degree drops fast.
fn prem(a: &UnivariateOverField, b: &UnivariateOverField) -> Result<UnivariateOverField> {
    let db = b.degree().ok_or(Error::ZeroPolynomial)?;
    let lcb = b.leading_coefficient()?.clone();
    let mut r = a.clone();
    let mut e = a.degree().map_or(0, |da| da.saturating_sub(db)) + 1;
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lead = r.leading_coefficient()?.clone();
        r = r.scale_poly(&lcb).sub(&b.shift(dr - db).scale_poly(&lead));
        e -= 1;
    }
    for _ in 0..e {
        r = r.scale_poly(&lcb);
    }
    Ok(r)
}

/// Gcd in `Q(parameters)[x_main]`, up to units of the field, computed by the
/// subresultant remainder sequence.  The result is normalized: integer
/// coefficients with trivial rational and parameter content (when the
/// budgeted parameter gcd finds it) and a positive leading sign.  A degree-0
/// result means the inputs are coprime over the field.
pub fn gcd_over_field(
    f: &UnivariateOverField,
    g: &UnivariateOverField,
) -> Result<UnivariateOverField> {
    if f.shape != g.shape || f.main_rank != g.main_rank {
        return Err(Error::VariableMismatch(format!(
            "gcd inputs are univariate in ranks {} and {}",
            f.main_rank, g.main_rank
        )));
    }
    if f.is_zero() {
        return Ok(normalize(g));
    }
    if g.is_zero() {
        return Ok(normalize(f));
    }
    let (mut a, mut b) = if f.degree() >= g.degree() { (f.clone(), g.clone()) } else {
        (g.clone(), f.clone())
    };
    let mut gc = Polynomial::one(f.shape.clone());
    let mut hc = Polynomial::one(f.shape.clone());
    loop {
        let da = a.degree().expect("nonzero");
        let db = b.degree().expect("nonzero");
        if db == 0 {
            // nonzero element of Q(parameters): a unit, so the gcd is 1
            return Ok(normalize(&b));
        }
        let delta = (da - db) as u32;
        let r = prem(&a, &b)?;
        if r.is_zero() {
            return Ok(normalize(&b));
        }
        let divisor = gc.mul(&hc.pow(delta)).expect("same shape");
        let next = r.div_exact_coeffs(&divisor).unwrap_or(r);
        a = b;
        b = next;
        gc = a.leading_coefficient()?.clone();
        hc = match delta {
            0 => hc,
            1 => gc.clone(),
            d => {
                let num = gc.pow(d);
                num.div_exact(&hc.pow(d - 1)).unwrap_or(num)
            }
        };
    }
}

/// Whether `f` is squarefree as an element of `Q(parameters)[x_main]`,
/// i.e. `gcd(f, f')` has degree zero.
pub fn is_strongly_squarefree(f: &UnivariateOverField) -> Result<bool> {
    Ok(gcd_over_field(f, &f.derivative())?.degree() == Some(0))
}

/// Strips rational content, then parameter content (budget permitting), then
/// fixes the leading sign.  Every removed factor is a unit of the field.
fn normalize(u: &UnivariateOverField) -> UnivariateOverField {
    if u.is_zero() {
        return u.clone();
    }
    let content = u.to_polynomial().rational_content();
    let mut coeffs: Vec<Polynomial> =
        u.coeffs.iter().map(|c| c.scale(&content.recip())).collect();
    let mut budget = 2_000usize;
    let mut pc: Option<Polynomial> = None;
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        let next = match &pc {
            None => Some(make_primitive(c)),
            Some(acc) => poly_gcd(acc, c, &mut budget),
        };
        match next {
            Some(g) => {
                let trivial = g.total_degree() == Some(0);
                pc = Some(g);
                if trivial {
                    break;
                }
            }
            None => {
                pc = None;
                break;
            }
        }
    }
    if let Some(pc) = pc {
        if pc.total_degree().unwrap_or(0) > 0 {
            if let Some(divided) =
                coeffs.iter().map(|c| c.div_exact(&pc)).collect::<Option<Vec<_>>>()
            {
                coeffs = divided;
            }
        }
    }
    let mut out = UnivariateOverField::from_coeffs(u.shape.clone(), u.main_rank, coeffs);
    let negative = out
        .leading_coefficient()
        .ok()
        .and_then(|lc| lc.terms().next_back().map(|(_, c)| c.is_negative()))
        .unwrap_or(false);
    if negative {
        out = out.scale_poly(&Polynomial::constant(
            u.shape.clone(),
            -BigRational::one(),
        ));
    }
    out
}

fn make_primitive(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let mut q = p.scale(&p.rational_content().recip());
    let negative = q.terms().next_back().map(|(_, c)| c.is_negative()).unwrap_or(false);
    if negative {
        q = q.negated();
    }
    q
}

fn prem_in_var(a: &Polynomial, b: &Polynomial, rank: usize) -> Polynomial {
    let db = b.degree_in(rank);
    let one = BigRational::one();
    let lcb = b.coefficient_of_power(rank, db);
    let mut r = a.clone();
    let mut e = a.degree_in(rank).saturating_sub(db) + 1;
    while !r.is_zero() && r.degree_in(rank) >= db {
        let dr = r.degree_in(rank);
        let lead = r.coefficient_of_power(rank, dr);
        let shifted = b.mul_term(&Monomial::var_pow(rank, dr - db), &one);
        r = &(&r * &lcb) - &(&shifted * &lead);
        e -= 1;
    }
    for _ in 0..e {
        r = &r * &lcb;
    }
    r
}

fn content_in_var(p: &Polynomial, rank: usize, budget: &mut usize) -> Option<Polynomial> {
    let mut acc: Option<Polynomial> = None;
    for k in 0..=p.degree_in(rank) {
        let c = p.coefficient_of_power(rank, k);
        if c.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => make_primitive(&c),
            Some(a) => poly_gcd(&a, &c, budget)?,
        });
        if acc.as_ref().is_some_and(|a| a.total_degree() == Some(0)) {
            break;
        }
    }
    Some(acc.unwrap_or_else(|| Polynomial::zero(p.shape().clone())))
}

/// Multivariate gcd over `Q`, up to rational units: the result is integer
/// primitive with positive leading sign.  `None` when the step budget runs
/// out, which callers treat as "content unknown, skip the cosmetic division".
pub(crate) fn poly_gcd(
    f: &Polynomial,
    g: &Polynomial,
    budget: &mut usize,
) -> Option<Polynomial> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    if f.is_zero() {
        return Some(make_primitive(g));
    }
    if g.is_zero() {
        return Some(make_primitive(f));
    }
    let mut vars = f.variables();
    vars.extend(g.variables());
    let main = match vars.iter().next_back() {
        None => return Some(Polynomial::one(f.shape().clone())),
        Some(&r) => r,
    };
    let content_f = content_in_var(f, main, budget)?;
    let content_g = content_in_var(g, main, budget)?;
    let cont = poly_gcd(&content_f, &content_g, budget)?;
    let pp_f = f.div_exact(&content_f).unwrap_or_else(|| f.clone());
    let pp_g = g.div_exact(&content_g).unwrap_or_else(|| g.clone());
    let (mut a, mut b) = if pp_f.degree_in(main) >= pp_g.degree_in(main) {
        (pp_f, pp_g)
    } else {
        (pp_g, pp_f)
    };
    loop {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        if b.is_zero() {
            break;
        }
        if b.degree_in(main) == 0 {
            // primitive parts share no factor involving the main variable,
            // and as primitives they share no content either
            return Some(make_primitive(&cont));
        }
        let r = prem_in_var(&a, &b, main);
        let r = if r.is_zero() {
            r
        } else {
            let rc = content_in_var(&r, main, budget)?;
            r.div_exact(&rc).unwrap_or(r)
        };
        a = b;
        b = r;
    }
    Some(make_primitive(&cont.mul(&a).expect("same shape")))
}
