//! Generator sets for the defining ideals of unit-scale rank-one tensors.
//!
//! For a shape `n1 x ... x nd` the ring has one variable per grid point.  A
//! tensor is rank one with unit p-norm exactly when it satisfies the
//! corresponding generator family below, one family per [`PTag`]:
//!
//! * `P0`: the shift binomials `x_a*x_b - x_{a v b}*x_{a ^ b}` over all
//!   incomparable index pairs.  These cut out rank-one tensors with no scale
//!   constraint.
//! * `P1`: unit 1-norm points have a single nonzero entry of absolute value
//!   one, so the ideal is generated by the 2-norm sphere, the cubes
//!   `x_a^3 - x_a`, and all pairwise products `x_a*x_b` for `a != b`.
//! * `PEven(s)`: the 2s-norm sphere `sum_a x_a^{2s} - 1` together with the
//!   `P0` binomials.
//! * `PInf`: `x_a^2 - 1` for every entry, together with the `P0` binomials
//!   (entries of a unit max-norm rank-one point are all +-1).
//!
//! `claimed_groebner` records which of these families are already reduced
//! Groebner bases under grevlex: the binomials alone, the `P1` family, and
//! the `PEven(1)` family are; `PInf` and `PEven(s >= 2)` are not.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index::TensorShape;
use crate::poly::{Monomial, Polynomial};

/// Which p-norm constraint the ideal carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PTag {
    /// No norm constraint (rank-one only).
    P0,
    /// Unit 1-norm.
    P1,
    /// Unit 2s-norm for the stored s >= 1, so `PEven(1)` is p = 2.
    PEven(u32),
    /// Unit max-norm.
    PInf,
}

impl PTag {
    /// Half the even exponent, if this is a `PEven` tag.
    pub fn half_exponent(&self) -> Option<u32> {
        match self {
            PTag::PEven(s) => Some(*s),
            _ => None,
        }
    }
}

impl fmt::Display for PTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PTag::P0 => write!(f, "0"),
            PTag::P1 => write!(f, "1"),
            PTag::PEven(s) => write!(f, "{}", 2 * s),
            PTag::PInf => write!(f, "inf"),
        }
    }
}

impl FromStr for PTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(PTag::P0),
            "1" => Ok(PTag::P1),
            "inf" | "oo" => Ok(PTag::PInf),
            other => {
                let p: u64 = other.parse().map_err(|_| {
                    Error::InvalidArgument(format!(
                        "p must be 0, 1, an even integer, or 'inf', got '{other}'"
                    ))
                })?;
                if p >= 2 && p % 2 == 0 && p <= 2 * u64::from(u32::MAX) {
                    Ok(PTag::PEven((p / 2) as u32))
                } else {
                    Err(Error::InvalidArgument(format!(
                        "p must be 0, 1, an even integer, or 'inf', got '{other}'"
                    )))
                }
            }
        }
    }
}

impl Serialize for PTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A named generator set with its shape and Groebner claim.
#[derive(Debug, Clone)]
pub struct IdealSpec {
    pub shape: TensorShape,
    pub p_tag: PTag,
    pub generators: Vec<Polynomial>,
    /// Whether `generators` is itself claimed to be a reduced grevlex
    /// Groebner basis.  Verified, never trusted, by the certificate layer.
    pub claimed_groebner: bool,
}

/// The shift binomials `x_a*x_b - x_{a v b}*x_{a ^ b}`, one per incomparable
/// pair, in lexicographic pair order.
pub fn rank1_binomials(shape: &TensorShape) -> Vec<Polynomial> {
    let one = BigRational::one();
    shape
        .incomparable_pairs()
        .into_iter()
        .map(|(a, b)| {
            let ra = shape.rank_of(&a).expect("pair in shape");
            let rb = shape.rank_of(&b).expect("pair in shape");
            let join = a.join(&b).expect("same ndim");
            let meet = a.meet(&b).expect("same ndim");
            let rj = shape.rank_of(&join).expect("join in shape");
            let rm = shape.rank_of(&meet).expect("meet in shape");
            let mut p = Polynomial::zero(shape.clone());
            p.add_term(Monomial::var(ra).mul(&Monomial::var(rb)), one.clone());
            p.add_term(Monomial::var(rj).mul(&Monomial::var(rm)), -one.clone());
            p
        })
        .collect()
}

/// `sum_a x_a^(2s) - 1`.
fn power_sphere(shape: &TensorShape, s: u32) -> Polynomial {
    let one = BigRational::one();
    let mut p = Polynomial::zero(shape.clone());
    for rank in 0..shape.num_vars() {
        p.add_term(Monomial::var_pow(rank, 2 * s), one.clone());
    }
    p.add_term(Monomial::one(), -one);
    p
}

/// Builds the generator family for the given shape and p-norm tag.
pub fn build_ideal(shape: &TensorShape, p_tag: PTag) -> IdealSpec {
    let one = BigRational::one;
    let generators = match p_tag {
        PTag::P0 => rank1_binomials(shape),
        PTag::P1 => {
            let n = shape.num_vars();
            let mut gens = vec![power_sphere(shape, 1)];
            for rank in 0..n {
                let mut cube = Polynomial::zero(shape.clone());
                cube.add_term(Monomial::var_pow(rank, 3), one());
                cube.add_term(Monomial::var(rank), -one());
                gens.push(cube);
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    gens.push(Polynomial::from_monomial(
                        shape.clone(),
                        Monomial::var(i).mul(&Monomial::var(j)),
                        one(),
                    ));
                }
            }
            gens
        }
        PTag::PEven(s) => {
            let mut gens = vec![power_sphere(shape, s)];
            gens.extend(rank1_binomials(shape));
            gens
        }
        PTag::PInf => {
            let mut gens = Vec::with_capacity(shape.num_vars());
            for rank in 0..shape.num_vars() {
                let mut sq = Polynomial::zero(shape.clone());
                sq.add_term(Monomial::var_pow(rank, 2), one());
                sq.add_term(Monomial::one(), -one());
                gens.push(sq);
            }
            gens.extend(rank1_binomials(shape));
            gens
        }
    };
    let claimed_groebner = matches!(p_tag, PTag::P0 | PTag::P1 | PTag::PEven(1));
    IdealSpec { shape: shape.clone(), p_tag, generators, claimed_groebner }
}
